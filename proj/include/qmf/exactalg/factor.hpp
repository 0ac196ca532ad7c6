#pragma once

#include "qmf/exactalg/intpoly.hpp"

#include <utility>
#include <vector>

namespace qmf {

struct PolyFactor {
  IntPoly factor;
  int multiplicity;
};

/// Complete factorization over Q of a nonzero integer polynomial.
///
/// Factors are primitive, irreducible, with positive leading coefficient (so monic whenever the
/// input is monic), sorted by (degree, coefficients). Their product with multiplicities equals the
/// input up to the integer content and sign. Squarefree parts are split with Zassenhaus: factor
/// modulo a well-chosen small prime, Hensel-lift quadratically, then recombine.
std::vector<PolyFactor> factor_int_poly(const IntPoly& p);

/// True when p has no repeated factor over Q. Certified by a modular check when possible,
/// with an exact gcd fallback.
bool is_squarefree(const IntPoly& p);

/// Characteristic polynomial det(xI - A) of a square integer matrix (row-major, n x n), computed
/// modulo enough word-size primes to pass a rigorous coefficient bound, then CRT-lifted.
IntPoly charpoly(const std::vector<std::vector<Int>>& a);

}  // namespace qmf
