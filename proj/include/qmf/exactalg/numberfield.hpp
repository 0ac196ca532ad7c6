#pragma once

#include "qmf/exactalg/intpoly.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qmf {

/// Q(alpha) presented by a monic irreducible integer polynomial.
class NumberField {
public:
  /// Checks monic and irreducible (via factor_int_poly) unless trusted is set.
  explicit NumberField(IntPoly modulus, bool trusted = false);
  const IntPoly& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }

private:
  IntPoly modulus_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of a number field as a rational polynomial of degree < field degree.
class NFElem {
public:
  NFElem() = default;
  NFElem(FieldPtr field, std::vector<Rat> rep);
  static NFElem from_rat(FieldPtr field, const Rat& r);
  static NFElem generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& rep() const { return rep_; }
  bool is_zero() const;

  NFElem operator+(const NFElem& o) const;
  NFElem operator-(const NFElem& o) const;
  NFElem operator-() const;
  NFElem operator*(const NFElem& o) const;
  NFElem operator*(const Rat& s) const;
  NFElem inverse() const;
  NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }
  bool operator==(const NFElem& o) const;
  bool operator!=(const NFElem& o) const { return !(*this == o); }

  /// Trace from the field to Q.
  Rat trace() const;
  std::string to_string(const std::string& var = "a") const;

private:
  void check_same(const NFElem& o) const;
  FieldPtr field_;
  std::vector<Rat> rep_;
};

using NFMatrix = std::vector<std::vector<NFElem>>;

/// Right kernel of M, as the rows of its reduced echelon basis (pivot order by column index;
/// each basis vector has a 1 in its own free column and 0 in the other free columns).
std::vector<std::vector<NFElem>> kernel_over_field(const NFMatrix& m);

}  // namespace qmf
