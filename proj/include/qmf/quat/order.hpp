#pragma once

#include "qmf/quat/algebra.hpp"
#include "qmf/quat/lattice.hpp"

namespace qmf {

/// A maximal order O of a definite algebra. `frame` is the multiplication table in O's own
/// basis, so O itself is Z^4 and integral ideals are integer sublattices.
struct MaximalOrder {
  QuaternionAlgebra algebra;
  Lattice std_basis;  // O inside Z<1,i,j,k> coordinates (rational)
  Frame frame;        // structure constants in the O basis

  std::int64_t level() const { return algebra.discriminant; }
  /// Coordinates of an O-coordinate vector in the 1, i, j, k frame.
  std::array<Rat, 4> to_standard(const Vec4& v, const Int& den = 1) const;
};

/// Reduced discriminant sqrt|det(trd(b_r conj b_s))| of a lattice in the standard frame.
Rat reduced_discriminant(const QuaternionAlgebra& b, const Lattice& l);

MaximalOrder maximal_order(const QuaternionAlgebra& b);

}  // namespace qmf
