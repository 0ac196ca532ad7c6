#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmf {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an input violates an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (a bug, not bad input).
class DefectError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw DefectError(what);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t mod64(std::int64_t a, std::int64_t m);  // result in [0, m)
std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod64(std::uint64_t a, std::uint64_t m);

bool is_prime64(std::uint64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
std::int64_t next_prime(std::int64_t n);  // smallest prime > n

struct PrimePower {
  std::int64_t prime;
  int exponent;
};
std::vector<PrimePower> factor_int(std::int64_t n);  // |n| >= 1, trial division
std::vector<std::int64_t> prime_divisors(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);  // sorted ascending, n > 0
bool is_squarefree(std::int64_t n);
int omega(std::int64_t n);

/// Kronecker symbol (a | n), with the usual conventions at n = -1, n = 2 and n = 0.
int kronecker_symbol(std::int64_t a, std::int64_t n);

/// Fundamental discriminant of Q(sqrt(-d)) for squarefree d > 0.
std::int64_t iq_field_discriminant(std::int64_t d);

Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);
std::string to_string(const Int& x);
std::string to_string(const Rat& x);

/// Integer square root test: returns true and sets root when n is a perfect square.
bool is_square(const Int& n, Int* root = nullptr);

}  // namespace qmf
