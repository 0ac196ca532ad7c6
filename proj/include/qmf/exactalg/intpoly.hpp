#pragma once

#include "qmf/exactalg/integers.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace qmf {

/// Dense univariate polynomial over Z, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the top one is nonzero.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const Int& c, int degree);
  static IntPoly x_minus(const Int& root);  // x - root

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<Int>& coeffs() const { return c_; }
  Int coeff(int i) const;
  const Int& leading() const { return c_.back(); }

  Int content() const;            // nonnegative gcd of coefficients
  IntPoly primitive_part() const;  // leading coefficient made positive
  IntPoly derivative() const;
  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const Int& s);
  IntPoly& operator*=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend IntPoly operator*(IntPoly a, const Int& s) { return a *= s; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  /// Exact division; returns false when b does not divide *this in Z[x].
  bool divides_into(const IntPoly& b, IntPoly* quotient) const;
  /// Divides by an integer that must divide every coefficient.
  IntPoly exact_div(const Int& s) const;

  /// Ordering used for determinism: by degree, then coefficients from the constant term up.
  friend bool operator<(const IntPoly& a, const IntPoly& b);

  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Int> c_;
};

/// Pseudo-remainder based gcd in Z[x]; result primitive with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

}  // namespace qmf
