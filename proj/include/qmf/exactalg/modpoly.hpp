#pragma once

#include "qmf/exactalg/intpoly.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qmf {

/// Polynomial over Z/pZ for a prime p < 2^62, coefficients lowest degree first.
class ModPoly {
public:
  using u64 = std::uint64_t;

  explicit ModPoly(u64 p) : p_(p) {}
  ModPoly(u64 p, std::vector<u64> c);
  static ModPoly from_int(const IntPoly& f, u64 p);
  static ModPoly x(u64 p);
  static ModPoly constant(u64 p, u64 c);

  u64 modulus() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<u64>& coeffs() const { return c_; }
  u64 leading() const { return c_.back(); }

  ModPoly operator+(const ModPoly& o) const;
  ModPoly operator-(const ModPoly& o) const;
  ModPoly operator*(const ModPoly& o) const;
  ModPoly scaled(u64 s) const;
  ModPoly monic() const;
  ModPoly derivative() const;
  void divrem(const ModPoly& b, ModPoly* q, ModPoly* r) const;
  ModPoly operator%(const ModPoly& b) const;
  ModPoly operator/(const ModPoly& b) const;
  bool operator==(const ModPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

  /// Symmetric-residue lift to Z[x].
  IntPoly lift_symmetric() const;

private:
  void trim();
  u64 p_;
  std::vector<u64> c_;
};

ModPoly gcd(const ModPoly& a, const ModPoly& b);  // monic
/// s*a + t*b = g (monic gcd)
ModPoly ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly* s, ModPoly* t);
ModPoly powmod(const ModPoly& base, std::uint64_t e, const ModPoly& f);

bool is_squarefree_mod(const ModPoly& f);

/// Distinct-degree factorization of a monic squarefree polynomial: pairs (degree, product).
std::vector<std::pair<int, ModPoly>> distinct_degree_factor(const ModPoly& f);
/// Full factorization of a monic squarefree polynomial over F_p (p odd) into monic irreducibles,
/// sorted by (degree, coefficients). Deterministic for a given seed.
std::vector<ModPoly> factor_squarefree_mod(const ModPoly& f, std::uint64_t seed = 0x5eed);

}  // namespace qmf
