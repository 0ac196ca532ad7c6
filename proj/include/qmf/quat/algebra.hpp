#pragma once

#include "qmf/exactalg/integers.hpp"

#include <cstdint>
#include <vector>

namespace qmf {

/// (a, b | Q): i^2 = a, j^2 = b, k = ij = -ji.
struct QuaternionAlgebra {
  std::int64_t a = -1, b = -1;
  std::vector<std::int64_t> ramified;  // finite ramified primes, ascending
  std::int64_t discriminant = 1;       // product of ramified primes
};

/// Hilbert symbol (a, b)_p for a prime p, or the real place when p == 0.
int hilbert_symbol(std::int64_t a, std::int64_t b, std::int64_t p);

/// Definite algebra ramified exactly at the primes of N (and infinity). Searches negative
/// squarefree coprime (a, b) ordered by |b| then |a| with |a| <= |b|.
QuaternionAlgebra build_algebra(std::int64_t n);

}  // namespace qmf
