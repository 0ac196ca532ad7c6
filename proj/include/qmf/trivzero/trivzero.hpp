#pragma once

#include "qmf/quat/classes.hpp"
#include "qmf/trivzero/signs.hpp"

#include <map>
#include <set>

namespace qmf {

struct InvolutionSet {
  std::int64_t level = 1;
  std::map<std::int64_t, Permutation> sigma;  // p | N
};

struct OrbitPartition {
  std::vector<std::vector<int>> orbits;  // sorted by least element
  std::vector<int> orbit_of;             // class -> orbit index
  std::vector<int> weight;               // e on each orbit
};

struct SignedEdge {
  int u, v;
  std::int64_t p;
  int sign;
};

struct SignedGraph {
  SignPattern eps;
  std::size_t vertices = 0;
  std::vector<SignedEdge> edges;  // one per sigma_p-orbit {i, sigma_p(i)}, loops included
};

struct TrivialZeroReport {
  SignPattern eps;
  std::vector<int> admissible;    // orbit indices
  std::vector<int> inadmissible;
  std::vector<int> trivial_zero_classes;
  std::vector<int> fundamental_domain;  // least class of each admissible orbit
  std::vector<int> class_sign;  // +-1 relative to the orbit's least class; 0 on inadmissible orbits
};

InvolutionSet involutions(const IdealClassSet& classes);
OrbitPartition orbit_structure(const InvolutionSet& inv, const std::vector<int>& weights);
SignedGraph signed_graph(const InvolutionSet& inv, const SignPattern& eps);
TrivialZeroReport admissibility(const SignedGraph& g, const OrbitPartition& orbits);

struct ZeroSplit {
  std::set<int> trivial, nontrivial;
};
/// Splits a zero set; throws DefectError when the form is nonzero somewhere on an inadmissible orbit.
ZeroSplit classify_zeroes(const std::set<int>& zero_set, const TrivialZeroReport& report);

std::vector<int> fixed_points(const Permutation& s);
Permutation compose(const Permutation& a, const Permutation& b);  // a after b

}  // namespace qmf
