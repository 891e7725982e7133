#include <cmath>

#include "doctest.h"
#include "tdosc/errors.hpp"
#include "tdosc/invariants.hpp"

using namespace tdosc;

namespace {
double recompose_error(const QuadraticInvariant& a, const QuadraticInvariant& b) {
  return std::max({std::abs(a.A - b.A), std::abs(a.B - b.B), std::abs(a.D - b.D), std::abs(a.E - b.E)});
}
}  // namespace

TEST_SUITE("invariants") {
  TEST_CASE("already canonical") {
    const CanonicalInvariant c = canonicalize({0.0, 1.0, 0.0, 0.0});
    CHECK(c.pair.mu == cdouble{1.0, 0.0});
    CHECK(c.pair.nu == cdouble{0.0, 0.0});
    CHECK(c.hbar_omega0 == 1.0);
    CHECK(c.delta == cdouble{0.0, 0.0});
    CHECK(c.epsilon == 0.5);
  }

  TEST_CASE("real squeezing term") {
    const CanonicalInvariant c = canonicalize({3.0, 5.0, 0.0, 0.0});
    CHECK(c.hbar_omega0 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(c.pair.mu.real() == doctest::Approx(3.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-15));
    CHECK(c.pair.mu.imag() == 0.0);
    CHECK(std::abs(c.pair.nu - cdouble(-1.0 / (2.0 * std::sqrt(2.0)))) < 1e-15);
    CHECK(std::abs(c.pair.residual()) < 1e-15);
    CHECK(c.epsilon == doctest::Approx(2.0));
    CHECK(c.imaginary_residue < 1e-12);
  }

  TEST_CASE("hbar omega0 equals sqrt(B^2 - |A|^2)") {
    for (const QuadraticInvariant& inv : {QuadraticInvariant{{1.0, 2.0}, 3.0, {0.5, -0.1}, 0.2},
                                          QuadraticInvariant{{-0.3, 0.0}, 0.4, {2.0, 1.0}, -1.0},
                                          QuadraticInvariant{{0.0, 9.99}, 10.0, {0.0, 0.0}, 0.0}}) {
      const CanonicalInvariant c = canonicalize(inv);
      CHECK(c.hbar_omega0 == doctest::Approx(std::sqrt(inv.B * inv.B - std::norm(inv.A))).epsilon(1e-10));
      CHECK(std::abs(c.pair.residual()) < 1e-12);
      CHECK(c.imaginary_residue < 1e-12 * inv.B);
      CHECK(c.epsilon == doctest::Approx(inv.E + 0.5 * c.hbar_omega0));
      CHECK(c.pair.mu.imag() == 0.0);
      CHECK(c.pair.mu.real() > 0.0);
    }
  }

  TEST_CASE("round trip") {
    const QuadraticInvariant cases[] = {
        {3.0, 5.0, 0.0, 0.0},
        {{1.0, 2.0}, 3.0, {0.5, -0.1}, 0.2},
        {{-0.3, 0.0}, 0.4, {2.0, 1.0}, -1.0},
        {{0.7, -0.7}, 1.0, {-3.0, 0.25}, 4.0},
        {{0.0, 0.0}, 2.0, {1.0, 1.0}, 0.0},
    };
    for (const auto& inv : cases) CHECK(recompose_error(recompose(canonicalize(inv)), inv) < 1e-12);
  }

  TEST_CASE("phase covariance") {
    const QuadraticInvariant base{{1.0, 0.5}, 2.0, {0.3, -0.8}, 0.1};
    const CanonicalInvariant c0 = canonicalize(base);
    for (double phi : {0.3, 1.2, -2.5}) {
      const cdouble e = std::polar(1.0, phi);
      const CanonicalInvariant c = canonicalize({base.A * e * e, base.B, base.D * e, base.E});
      CHECK(c.hbar_omega0 == doctest::Approx(c0.hbar_omega0).epsilon(1e-14));
      CHECK(std::abs(c.delta) == doctest::Approx(std::abs(c0.delta)).epsilon(1e-14));
      CHECK(std::abs(c.pair.nu) == doctest::Approx(std::abs(c0.pair.nu)).epsilon(1e-14));
    }
  }

  TEST_CASE("non-elliptic invariants are rejected") {
    CHECK_THROWS_AS(canonicalize({3.0, 3.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(canonicalize({4.0, 3.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(canonicalize({0.0, -1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(canonicalize({1.0, -2.0, 0.0, 0.0}), DomainError);
  }
}
