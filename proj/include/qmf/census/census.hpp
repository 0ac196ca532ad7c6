#pragma once

#include "qmf/eigen/eigen.hpp"

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace qmf {

/// Raised when a level would exceed the configured size budget.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Levels described by comma separated filters: "prime", "composite", "odd", "even",
/// "omega=k" (or "ω=k"), "<X", "<=X", ">X", ">=X", "a..b" or a single number.
/// Only squarefree levels with an odd number of prime factors are produced.
struct LevelRange {
  std::int64_t lo = 2, hi = 0;  // inclusive
  std::optional<bool> prime, odd;
  std::optional<int> omega;

  static LevelRange parse(const std::string& text);
  bool contains(std::int64_t n) const;
  std::vector<std::int64_t> levels() const;
};

struct OrbitRecord {
  int degree = 1;
  std::string signs;
  bool eisenstein = false;
  int trivial = 0;     // classes, per eigenform
  int nontrivial = 0;
  bool zero_free() const { return trivial == 0 && nontrivial == 0; }
};

struct CensusRecord {
  std::int64_t level = 1;
  std::size_t h = 0;
  std::map<std::string, std::size_t> dims;  // by sign pattern
  std::vector<OrbitRecord> orbits;
  std::string separating;
  std::string error;  // non-empty when the level failed

  bool ok() const { return error.empty(); }
  /// Degree-weighted counts over cusp forms.
  std::int64_t trivial_zeroes() const;
  std::int64_t nontrivial_zeroes() const;
};

nlohmann::json to_json(const CensusRecord& r);
CensusRecord census_record_from_json(const nlohmann::json& j);

struct CensusConfig {
  std::int64_t theta_bound = 20;
  EigenConfig eigen;
  std::int64_t budget = 1000;  // largest admissible mass sum 1/e_i
  unsigned jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
};

/// Throws BudgetError when the mass of level n exceeds the budget.
void check_budget(std::int64_t n, std::int64_t budget);

/// Per-level record from a spectrum; also reconciles trivial zeroes with the sign-pattern data.
CensusRecord census_record(const LevelData& data, const Spectrum& s);
CensusRecord compute_census_record(std::int64_t n, const CensusConfig& cfg);

/// One JSON file per level, keyed by level, code version and the algebra (a, b).
class CensusCache {
public:
  static constexpr int version = 1;
  explicit CensusCache(std::filesystem::path dir);

  std::optional<CensusRecord> load(std::int64_t n) const;
  void store(const CensusRecord& r) const;
  std::vector<std::int64_t> levels() const;  // cached, ascending
  std::size_t clear() const;
  std::filesystem::path path(std::int64_t n) const;
  const std::filesystem::path& dir() const { return dir_; }

private:
  std::filesystem::path dir_;
};

using CensusSink = std::function<void(const CensusRecord&)>;

/// Records in level order. Failed levels keep their error string.
std::vector<CensusRecord> run_census(const std::vector<std::int64_t>& levels, const CensusConfig& cfg,
                                     const CensusSink& sink = {});

struct DegreeRow {
  int degree = 0;  // 10 stands for >= 10
  std::int64_t orbits = 0, with_nontrivial = 0, nontrivial = 0, values = 0;
  Rat proportion() const { return values ? Rat(nontrivial, values) : Rat(0); }
};
/// Degree histogram of nontrivial zeroes over cusp orbits, degrees 1..9 and >= 10.
std::vector<DegreeRow> degree_histogram(const std::vector<CensusRecord>& data);

/// Value counts of one orbit. Degree 1: integer buckets; degree 2: power-basis coordinate pairs.
std::map<std::vector<Int>, std::size_t> value_histogram(const GaloisOrbit& orbit);

struct PlotPoint {
  std::int64_t x;
  Rat y;
};
/// kinds: nontrivial-per-level, cumulative-nontrivial, degree1-share, degree1-zero-proportion,
/// zero-free-prime, zero-free-nonprime.
std::vector<PlotPoint> plot_series(const std::vector<CensusRecord>& data, const std::string& kind);
const std::vector<std::string>& plot_kinds();
/// Writes "x,y" rows under a header (csv) or "(x, y)" lines (coordinates).
void emit_plot_data(const std::vector<CensusRecord>& data, const std::string& kind, std::ostream& out,
                    bool coordinates = false);

}  // namespace qmf
