#pragma once

#include "qmf/quat/lattice.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace qmf {

using SmallVec = std::array<std::int64_t, 4>;
using SmallGram = std::array<std::array<std::int64_t, 4>, 4>;

/// Even integral positive definite form q(x) = x^T A x / 2 after LLL reduction,
/// with the change of basis: reduced basis row r = sum_c transform[r][c] * (original row c).
struct ReducedForm {
  SmallGram gram;
  Mat4 transform;

  std::int64_t value(const SmallVec& x) const;
  /// Coordinates in the original basis of the reduced-basis vector x.
  Vec4 to_original(const SmallVec& x) const;
};

/// LLL (delta = 0.99) on an exact Gram matrix.
ReducedForm lll_reduce(const Mat4& gram);

/// Calls visit(x, q(x)) for every nonzero x with q(x) <= bound, one of each pair +-x, in a
/// deterministic order. Floating-point search with a widened bound; every vector is verified exactly.
void enumerate_short(const ReducedForm& f, std::int64_t bound,
                     const std::function<void(const SmallVec&, std::int64_t)>& visit);

/// counts[n] = #{x : q(x) = n} (both signs), n = 0..bound; counts[0] = 1.
std::vector<std::int64_t> theta_series(const ReducedForm& f, std::int64_t bound);

/// Smallest nonzero value of q, with the first minimal vector in enumeration order.
std::int64_t minimum(const ReducedForm& f, SmallVec* argmin = nullptr);

/// Gram matrix B G B^T / scale of a lattice under an integral form G on the ambient frame.
Mat4 lattice_gram(const Lattice& l, const Mat4& g, const Rat& scale);

}  // namespace qmf
