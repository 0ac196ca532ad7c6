#pragma once

#include "qmf/exactalg/factor.hpp"
#include "qmf/exactalg/numberfield.hpp"
#include "qmf/trivzero/trivzero.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace qmf {

/// Everything about one level that the eigenform computation reads.
struct LevelData {
  std::int64_t level = 1;
  std::shared_ptr<const IdealClassSet> classes;
  std::shared_ptr<const BrandtModule> brandt;
  InvolutionSet involutions;
  OrbitPartition orbits;
  std::vector<TrivialZeroReport> reports;  // indexed by SignPattern::bits()

  /// Classes, Brandt theta data up to theta_bound, involutions and all admissibility reports.
  static LevelData compute(std::int64_t n, std::int64_t theta_bound);
  const TrivialZeroReport& report(const SignPattern& eps) const { return reports.at(eps.bits()); }
  std::size_t class_count() const { return classes->size(); }
};

struct EigenConfig {
  std::int64_t separating_bound = 200;   // search T_p for p below this
  std::int64_t verify_bound = 20;        // eigenvalues and commutation checks for q up to here
  int eigenvalue_degree_limit = 24;      // a_q as field elements only up to this degree
  bool check_orthogonality = true;
  std::uint64_t seed = 20240607;         // fallback combination coefficients
};

/// An integer combination sum c_k T_{p_k}; usually a single T_p.
struct SeparatingOperator {
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // (prime, coefficient)
  bool fallback = false;
  std::string to_string() const;
};

struct Eigenform {
  std::int64_t level = 1;
  FieldPtr field;                              // Q(alpha), alpha the separating eigenvalue
  int degree = 1;
  std::vector<std::vector<Int>> coeffs;        // per class, power-basis coefficients in alpha
  SignPattern sign_pattern;
  std::map<std::int64_t, NFElem> eigenvalues;  // computed a_q
  bool is_eisenstein = false;

  NFElem value(std::size_t i) const;
  std::vector<NFElem> values() const;
  bool vanishes_at(std::size_t i) const;
};

struct GaloisOrbit {
  IntPoly defining_factor;
  Eigenform form;
  std::set<int> zero_set;
  std::set<int> trivial_zeroes, nontrivial_zeroes;
};

struct Spectrum {
  std::int64_t level = 1;
  SeparatingOperator op;
  std::vector<GaloisOrbit> orbits;  // Eisenstein first, then by (degree, factor, signs)
  std::map<std::uint32_t, std::size_t> block_dims;  // by sign bits
};

/// Eigen-decomposition of M(O) by blocks M^eps, exact throughout.
/// Throws DefectError when a verification fails.
Spectrum split_spectrum(const LevelData& data, const EigenConfig& cfg = {});

/// Signs read off phi(sigma_p x) = eps_p phi(x); DefectError when some ratio is not +-1.
SignPattern sign_pattern_of(const Eigenform& phi, const LevelData& data);
std::set<int> zero_set(const Eigenform& phi);

struct BoundViolation {
  std::size_t orbit;
  std::string rule;
  std::string detail;
};
/// Fundamental-domain zero bound, the 2^omega count bound and the one-orbit-per-space conclusion.
std::vector<BoundViolation> verify_orbit_bounds(const Spectrum& s, const LevelData& data);

/// Weighted inner product of two orbits vanishes for all conjugate pairs.
bool orbits_orthogonal(const Eigenform& a, const Eigenform& b, const std::vector<int>& weights);

nlohmann::json to_json(const GaloisOrbit& o);
nlohmann::json to_json(const Spectrum& s);

}  // namespace qmf
