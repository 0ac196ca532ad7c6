#pragma once

#include "qmf/quat/enumerate.hpp"
#include "qmf/quat/order.hpp"

#include <map>
#include <memory>
#include <vector>

namespace qmf {

/// Integral right O-ideal in O coordinates, kept in a small-norm representative form.
struct ClassRep {
  Lattice ideal;
  std::int64_t norm = 1;
  int weight = 1;     // e_i = #O_l(I)^x / 2
  ReducedForm form;   // q(x) = nrd(x) / norm on the ideal
  std::vector<std::int64_t> invariant;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using Permutation = std::vector<int>;

class IdealClassSet {
public:
  /// Right ideal classes of a maximal order by p-neighbour search, certified by the mass formula.
  static IdealClassSet compute(const MaximalOrder& o);

  const MaximalOrder& order() const { return *order_; }
  std::int64_t level() const { return order_->level(); }
  std::size_t size() const { return reps_.size(); }
  const ClassRep& rep(std::size_t i) const { return reps_[i]; }
  std::vector<int> weights() const;
  std::int64_t neighbour_prime() const { return neighbour_prime_; }
  Rat mass() const;
  static Rat expected_mass(std::int64_t n);

  /// Index of the class of an arbitrary right O-ideal.
  int classify(const Lattice& ideal) const;
  /// Norm of a right O-ideal (square root of its index in O).
  static Rat ideal_norm(const Lattice& ideal);
  bool equivalent(const Lattice& i, const Lattice& j) const;

  /// O_l(I_i) in O coordinates.
  Lattice left_order(std::size_t i) const;
  /// The two-sided ideal above p | N (P^2 = pO).
  Lattice two_sided_prime(std::int64_t p) const;
  /// sigma_p: class of I_i P.
  Permutation involution(std::int64_t p) const;

  /// Reduced representative x^- J / nrd(J) with x a minimal vector of J.
  ClassRep reduce(const Lattice& ideal) const;

private:
  bool same_class(const ClassRep& a, const ClassRep& b) const;
  int unit_weight(const Lattice& ideal, std::int64_t norm) const;

  std::shared_ptr<const MaximalOrder> order_;
  std::vector<ClassRep> reps_;
  std::multimap<std::vector<std::int64_t>, int> by_invariant_;
  std::int64_t neighbour_prime_ = 2;
};

/// Pairwise theta series of I_i conj(I_j) under nrd / (nrd I_i nrd I_j); source of all T_n.
class BrandtModule {
public:
  BrandtModule(std::shared_ptr<const IdealClassSet> classes, std::int64_t bound);

  const IdealClassSet& classes() const { return *classes_; }
  std::int64_t bound() const { return bound_; }
  /// T_n (entries count_ij(n) / (2 e_j)); n <= bound.
  IntMatrix matrix(std::int64_t n) const;
  std::int64_t count(std::size_t i, std::size_t j, std::int64_t n) const;

private:
  std::shared_ptr<const IdealClassSet> classes_;
  std::int64_t bound_;
  std::vector<std::vector<std::int64_t>> theta_;  // packed upper triangle
};

IntMatrix permutation_matrix(const Permutation& s);

}  // namespace qmf
