#include "qmf/trivzero/signs.hpp"

#include "qmf/exactalg/integers.hpp"

namespace qmf {

int SignPattern::at(std::int64_t p) const {
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (primes[k] == p) return signs[k];
  throw PreconditionError("SignPattern: p does not divide N");
}

int SignPattern::eps(std::int64_t d) const {
  require(d > 0 && level % d == 0, "SignPattern: d must divide N");
  int s = 1;
  for (std::size_t k = 0; k < primes.size(); ++k)
    if (d % primes[k] == 0) s *= signs[k];
  return s;
}

bool SignPattern::all_plus() const {
  for (int s : signs)
    if (s != 1) return false;
  return true;
}

std::string SignPattern::to_string() const {
  std::string out;
  for (int s : signs) out += s > 0 ? '+' : '-';
  return out;
}

std::uint32_t SignPattern::bits() const {
  std::uint32_t b = 0;
  for (std::size_t k = 0; k < signs.size(); ++k)
    if (signs[k] < 0) b |= 1u << k;
  return b;
}

SignPattern SignPattern::from_bits(std::int64_t n, std::uint32_t bits) {
  SignPattern s;
  s.level = n;
  s.primes = prime_divisors(n);
  for (std::size_t k = 0; k < s.primes.size(); ++k) s.signs.push_back((bits >> k) & 1u ? -1 : 1);
  return s;
}

std::vector<SignPattern> SignPattern::all(std::int64_t n) {
  const auto w = prime_divisors(n).size();
  std::vector<SignPattern> out;
  for (std::uint32_t b = 0; b < (1u << w); ++b) out.push_back(from_bits(n, b));
  return out;
}

}  // namespace qmf
