#pragma once

#include "tdosc/modes.hpp"

namespace tdosc {

/// I = (A/2) a+^2 + (B/2)(a+ a + a a+) + (A*/2) a^2 + D a+ + D* a + E in some mode basis.
struct QuadraticInvariant {
  cdouble A;
  double B = 0.0;
  cdouble D;
  double E = 0.0;
};

/// I = hbar_omega0 a+ a + delta a+ + delta* a + epsilon in the canonicalizing basis.
struct CanonicalInvariant {
  double hbar_omega0 = 0.0;
  cdouble delta;
  double epsilon = 0.0;
  BogoliubovPair pair;  // gauge mu > 0
  double imaginary_residue = 0.0;  // |Im| of the computed hbar_omega0 before rounding to real
};

/// Chooses (mu, nu) to remove the squeezing terms. Throws DomainError for B^2 <= |A|^2
/// (no thermal state) and for B < 0 (negative-temperature orientation).
CanonicalInvariant canonicalize(const QuadraticInvariant& inv);

/// Inverse substitution: the (A, B, D, E) that canonicalizes to `canon`.
QuadraticInvariant recompose(const CanonicalInvariant& canon);

}  // namespace tdosc
