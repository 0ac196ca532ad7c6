#pragma once

#include "qmf/exactalg/integers.hpp"

#include <array>
#include <vector>

namespace qmf {

using Vec4 = std::array<Int, 4>;
using Mat4 = std::array<Vec4, 4>;

/// Multiplication data of a Z-basis e_0..e_3 of an order (or of Z<1,i,j,k>): all integral.
struct Frame {
  Int mult[4][4][4];  // e_a e_b = sum_c mult[a][b][c] e_c
  Mat4 conj;          // conj(e_a) = sum_b conj[a][b] e_b
  Vec4 trd;
  Mat4 gram;  // trd(e_a conj(e_b))

  static Frame standard(std::int64_t a, std::int64_t b);
  void finish();  // fills gram from mult, conj, trd
};

Vec4 qmul(const Frame& f, const Vec4& x, const Vec4& y);
Vec4 qconj(const Frame& f, const Vec4& x);
Int qtrd(const Frame& f, const Vec4& x);
Int qnrd(const Frame& f, const Vec4& x);  // 1/2 x^T gram x

/// Full-rank lattice (1/den) * rowspan(basis) with basis in row Hermite normal form.
struct Lattice {
  Int den = 1;
  Mat4 basis;

  static Lattice from_generators(const std::vector<Vec4>& gens, const Int& den);
  static Lattice identity();
  bool operator==(const Lattice& o) const { return den == o.den && basis == o.basis; }
  bool operator<(const Lattice& o) const;

  Rat covolume() const;  // |det basis| / den^4
  bool contains(const Vec4& v, const Int& vden) const;
  bool contains(const Lattice& o) const;
  Lattice scaled(const Rat& s) const;
};

/// Row HNF of an integer matrix of rank 4 (upper triangular, positive pivots, reduced above).
Mat4 hnf(std::vector<Vec4> rows);

Lattice lattice_product(const Frame& f, const Lattice& x, const Lattice& y);
Lattice lattice_conj(const Frame& f, const Lattice& x);
Lattice lattice_sum(const Lattice& x, const Lattice& y);

Int det4(const Mat4& m);

}  // namespace qmf
