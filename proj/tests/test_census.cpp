#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmf/census/census.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qmf;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("qmf-test-" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

Rat at(const std::vector<PlotPoint>& pts, std::int64_t x) {
  for (const auto& p : pts)
    if (p.x == x) return p.y;
  FAIL("no point at " << x);
  return Rat(-1);
}

}  // namespace

TEST_CASE("level ranges") {
  CHECK(LevelRange::parse("prime,<30").levels() == std::vector<std::int64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(LevelRange::parse("odd,ω=3,<200").levels() == std::vector<std::int64_t>{105, 165, 195});
  CHECK(LevelRange::parse("omega=3, 1..110").levels() == std::vector<std::int64_t>{30, 42, 66, 70, 78, 102, 105, 110});
  CHECK(LevelRange::parse("154").levels() == std::vector<std::int64_t>{154});
  CHECK(LevelRange::parse("4").levels().empty());
  CHECK(LevelRange::parse("composite,<=42").levels() == std::vector<std::int64_t>{30, 42});
  CHECK_THROWS_AS(LevelRange::parse("prime"), PreconditionError);
  CHECK_THROWS_AS(LevelRange::parse("<abc"), PreconditionError);
}

TEST_CASE("N = 154 record") {
  auto r = compute_census_record(154, {});
  CHECK(r.h == 6);
  CHECK(r.separating == "T17");
  CHECK(r.orbits.size() == 5);
  CHECK(r.nontrivial_zeroes() == 0);
  CHECK(r.trivial_zeroes() == 3 * 4);
  std::size_t total = 0;
  for (const auto& [signs, d] : r.dims) total += d;
  CHECK(total == 6);
  CHECK(census_record_from_json(to_json(r)).orbits.size() == 5);
  CHECK(to_json(census_record_from_json(to_json(r))).dump() == to_json(r).dump());
}

TEST_CASE("value histograms") {
  auto d30 = LevelData::compute(30, 20);
  auto s30 = split_spectrum(d30);
  auto eis = value_histogram(s30.orbits[0]);
  CHECK(eis.size() == 1);
  CHECK(eis.begin()->second == d30.class_count());
  auto cusp = value_histogram(s30.orbits[1]);
  CHECK(cusp.size() == 2);
  CHECK(cusp[{Int(1)}] == 1);
  CHECK(cusp[{Int(-1)}] == 1);

  auto d154 = LevelData::compute(154, 20);
  auto s154 = split_spectrum(d154);
  for (const auto& o : s154.orbits)
    if (o.form.degree == 2) {
      auto hist = value_histogram(o);
      CHECK(hist.size() == 3);
      for (const auto& [v, c] : hist) CHECK(c == 2);
    }

  auto d53 = LevelData::compute(53, 20);
  auto s53 = split_spectrum(d53);
  REQUIRE(s53.orbits.back().form.degree == 3);
  CHECK_THROWS_AS(value_histogram(s53.orbits.back()), PreconditionError);
}

TEST_CASE("prime level plot data") {
  auto data = run_census(LevelRange::parse("prime,<=181").levels(), {});
  for (const auto& r : data) CHECK(r.ok());

  // proportion of zero-free forms among cusp eigenforms without trivial zeroes
  auto zf = plot_series(data, "zero-free-prime");
  CHECK(at(zf, 61) == 1);
  CHECK(at(zf, 71) == Rat(38, 39));
  CHECK(at(zf, 79) == Rat(46, 47));
  CHECK(at(zf, 101) == Rat(69, 70));
  CHECK(at(zf, 139) == Rat(41, 42));
  CHECK(at(zf, 151) == Rat(23, 24));
  for (const auto& p : zf) CHECK((p.y >= 0 && p.y <= 1));
  CHECK(plot_series(data, "zero-free-nonprime").empty());

  auto cum = plot_series(data, "cumulative-nontrivial");
  CHECK(at(cum, 37) == 0);
  CHECK(at(cum, 79) == 2);
  CHECK(at(cum, 131) == 7);
  CHECK(at(cum, 181) == 33);

  auto d1 = plot_series(data, "degree1-zero-proportion");
  CHECK(at(d1, 43) == 0);
  CHECK(at(d1, 73) == Rat(2, 29));
  CHECK(at(d1, 83) == Rat(2, 33));
  CHECK(at(d1, 101) == Rat(2, 45));
  CHECK(at(d1, 113) == Rat(7, 64));
  CHECK(at(plot_series(data, "degree1-share"), 83) == 1);

  std::ostringstream coords;
  emit_plot_data(data, "zero-free-prime", coords, true);
  CHECK(coords.str().find("(151, 0.9583333333333334)\n") != std::string::npos);
  CHECK(coords.str().find("(71, 0.9743589743589743)\n") != std::string::npos);
  CHECK_THROWS_AS(plot_series(data, "nope"), PreconditionError);

  auto rows = degree_histogram(data);
  CHECK(rows.size() == 10);
  std::int64_t total = 0;
  for (const auto& row : rows) total += row.nontrivial;
  CHECK(total == 33);
}

TEST_CASE("empty range gives a header only") {
  std::ostringstream out;
  emit_plot_data({}, "cumulative-nontrivial", out);
  CHECK(out.str() == "x,y,y_exact\n");
}

TEST_CASE("failures are recorded, not dropped") {
  CensusConfig cfg;
  cfg.budget = 20;
  auto data = run_census({6, 11, 389}, cfg);
  REQUIRE(data.size() == 3);
  CHECK(data[0].error.rfind("precondition:", 0) == 0);
  CHECK(data[1].ok());
  CHECK(data[2].error.rfind("budget:", 0) == 0);
  CHECK_THROWS_AS(check_budget(389, 20), BudgetError);
}

TEST_CASE("cache round trip and invalidation") {
  const auto dir = scratch_dir("cache");
  CensusConfig cfg;
  cfg.cache_dir = dir;
  std::vector<std::int64_t> levels{30, 37, 42};
  std::string first;
  run_census(levels, cfg, [&](const CensusRecord& r) { first += to_json(r).dump() + "\n"; });
  CensusCache cache(dir);
  CHECK(cache.levels() == levels);
  std::string second;
  run_census(levels, cfg, [&](const CensusRecord& r) { second += to_json(r).dump() + "\n"; });
  CHECK(first == second);

  // two workers give the same ordered output
  cfg.jobs = 2;
  cfg.cache_dir.reset();
  std::string third;
  run_census(levels, cfg, [&](const CensusRecord& r) { third += to_json(r).dump() + "\n"; });
  CHECK(first == third);

  // a stale version is ignored
  {
    std::ifstream in(cache.path(37));
    auto j = nlohmann::json::parse(in);
    j["version"] = CensusCache::version + 1;
    std::ofstream out(cache.path(37));
    out << j.dump();
  }
  CHECK_FALSE(cache.load(37).has_value());
  CHECK(cache.load(30).has_value());
  CHECK(cache.clear() == 3);
  CHECK(cache.levels().empty());
  std::filesystem::remove_all(dir);
}
