#include "tdosc/invariants.hpp"

#include <cmath>

#include "tdosc/errors.hpp"

namespace tdosc {

CanonicalInvariant canonicalize(const QuadraticInvariant& inv) {
  const double disc = inv.B * inv.B - std::norm(inv.A);
  if (!(disc > 0.0)) {
    throw DomainError("invariant is not elliptic (B^2 <= |A|^2); no thermal state exists");
  }
  if (inv.B < 0.0) {
    throw DomainError("invariant has B < 0 (negative-temperature orientation)");
  }
  // Roots of A + 2 B r + A* r^2 = 0 have reciprocal moduli; this form picks |r| < 1 without
  // dividing by A.
  const cdouble r = -inv.A / (inv.B + std::sqrt(disc));
  const double mu = 1.0 / std::sqrt(1.0 - std::norm(r));
  const cdouble nu = r * mu;

  const cdouble w = inv.A * mu * std::conj(nu) + inv.B * (mu * mu + std::norm(nu)) +
                    std::conj(inv.A) * mu * nu;
  CanonicalInvariant out;
  out.hbar_omega0 = w.real();
  out.imaginary_residue = std::abs(w.imag());
  out.delta = inv.D * mu + std::conj(inv.D) * nu;
  out.epsilon = inv.E + 0.5 * out.hbar_omega0;
  out.pair = {mu, nu};
  return out;
}

QuadraticInvariant recompose(const CanonicalInvariant& canon) {
  const cdouble mu = canon.pair.mu, nu = canon.pair.nu;
  const double w = canon.hbar_omega0;
  QuadraticInvariant inv;
  inv.A = -2.0 * w * mu * nu;
  inv.B = w * (std::norm(mu) + std::norm(nu));
  inv.D = canon.delta * mu - std::conj(canon.delta) * nu;
  inv.E = canon.epsilon - 0.5 * w;
  return inv;
}

}  // namespace tdosc
