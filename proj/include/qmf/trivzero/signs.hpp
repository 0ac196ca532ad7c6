#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmf {

/// A choice of +-1 for each prime p | N, extended multiplicatively to divisors.
struct SignPattern {
  std::int64_t level = 1;
  std::vector<std::int64_t> primes;  // ascending
  std::vector<int> signs;            // parallel to primes

  int at(std::int64_t p) const;        // sign at a prime divisor
  int eps(std::int64_t d) const;       // multiplicative extension to d | N
  bool all_plus() const;
  std::string to_string() const;       // e.g. "+--" in prime order
  std::uint32_t bits() const;          // bit k set when the k-th prime has sign -1
  bool operator==(const SignPattern& o) const { return level == o.level && signs == o.signs; }

  static SignPattern from_bits(std::int64_t n, std::uint32_t bits);
  static std::vector<SignPattern> all(std::int64_t n);  // ordered by bits
};

}  // namespace qmf
