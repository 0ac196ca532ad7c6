#include "qmf/census/census.hpp"

#include "qmf/dimform/dimform.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <mutex>
#include <thread>

namespace qmf {

namespace {

std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), "level range: not a number: '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

LevelRange LevelRange::parse(const std::string& text) {
  LevelRange r;
  bool bounded = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string::npos) end = text.size();
    const std::string tok = trim(text.substr(start, end - start));
    start = end + 1;
    if (tok.empty()) continue;
    if (tok == "prime") r.prime = true;
    else if (tok == "composite" || tok == "nonprime") r.prime = false;
    else if (tok == "odd") r.odd = true;
    else if (tok == "even") r.odd = false;
    else if (tok.rfind("omega=", 0) == 0) r.omega = static_cast<int>(parse_int(tok.substr(6)));
    else if (tok.rfind("ω=", 0) == 0) r.omega = static_cast<int>(parse_int(tok.substr(std::string("ω=").size())));
    else if (tok.rfind("<=", 0) == 0) r.hi = parse_int(tok.substr(2)), bounded = true;
    else if (tok.rfind(">=", 0) == 0) r.lo = parse_int(tok.substr(2));
    else if (tok[0] == '<') r.hi = parse_int(tok.substr(1)) - 1, bounded = true;
    else if (tok[0] == '>') r.lo = parse_int(tok.substr(1)) + 1;
    else if (auto dots = tok.find(".."); dots != std::string::npos) {
      r.lo = parse_int(tok.substr(0, dots));
      r.hi = parse_int(tok.substr(dots + 2));
      bounded = true;
    } else {
      r.lo = r.hi = parse_int(tok);
      bounded = true;
    }
  }
  require(bounded, "level range: needs an upper bound");
  require(r.lo >= 1, "level range: lower bound must be positive");
  return r;
}

bool LevelRange::contains(std::int64_t n) const {
  if (n < lo || n > hi || n < 2) return false;
  if (!is_squarefree(n) || ::qmf::omega(n) % 2 == 0) return false;
  if (prime && is_prime64(static_cast<std::uint64_t>(n)) != *prime) return false;
  if (odd && (n % 2 == 1) != *odd) return false;
  if (omega && ::qmf::omega(n) != *omega) return false;
  return true;
}

std::vector<std::int64_t> LevelRange::levels() const {
  std::vector<std::int64_t> out;
  for (std::int64_t n = std::max<std::int64_t>(lo, 2); n <= hi; ++n)
    if (contains(n)) out.push_back(n);
  return out;
}

std::int64_t CensusRecord::trivial_zeroes() const {
  std::int64_t t = 0;
  for (const auto& o : orbits)
    if (!o.eisenstein) t += std::int64_t{o.degree} * o.trivial;
  return t;
}

std::int64_t CensusRecord::nontrivial_zeroes() const {
  std::int64_t t = 0;
  for (const auto& o : orbits)
    if (!o.eisenstein) t += std::int64_t{o.degree} * o.nontrivial;
  return t;
}

nlohmann::json to_json(const CensusRecord& r) {
  nlohmann::json j;
  j["level"] = r.level;
  if (!r.ok()) {
    j["error"] = r.error;
    return j;
  }
  j["h"] = r.h;
  j["separating"] = r.separating;
  j["dims"] = r.dims;
  auto orbits = nlohmann::json::array();
  for (const auto& o : r.orbits)
    orbits.push_back({{"degree", o.degree}, {"signs", o.signs}, {"eisenstein", o.eisenstein},
                      {"trivial", o.trivial}, {"nontrivial", o.nontrivial}});
  j["orbits"] = orbits;
  j["trivial_zeroes"] = r.trivial_zeroes();
  j["nontrivial_zeroes"] = r.nontrivial_zeroes();
  return j;
}

CensusRecord census_record_from_json(const nlohmann::json& j) {
  CensusRecord r;
  r.level = j.at("level").get<std::int64_t>();
  if (j.contains("error")) {
    r.error = j.at("error").get<std::string>();
    return r;
  }
  r.h = j.at("h").get<std::size_t>();
  r.separating = j.at("separating").get<std::string>();
  r.dims = j.at("dims").get<std::map<std::string, std::size_t>>();
  for (const auto& o : j.at("orbits")) {
    OrbitRecord x;
    x.degree = o.at("degree").get<int>();
    x.signs = o.at("signs").get<std::string>();
    x.eisenstein = o.at("eisenstein").get<bool>();
    x.trivial = o.at("trivial").get<int>();
    x.nontrivial = o.at("nontrivial").get<int>();
    r.orbits.push_back(x);
  }
  return r;
}

void check_budget(std::int64_t n, std::int64_t budget) {
  const Rat mass = IdealClassSet::expected_mass(n);
  if (mass > Rat(budget))
    throw BudgetError("level " + std::to_string(n) + " has mass " + to_string(mass) + " above the budget " +
                      std::to_string(budget));
}

CensusRecord census_record(const LevelData& data, const Spectrum& s) {
  CensusRecord r;
  r.level = data.level;
  r.h = data.class_count();
  r.separating = s.op.to_string();
  for (const auto& [bits, dim] : s.block_dims) r.dims[SignPattern::from_bits(data.level, bits).to_string()] = dim;

  std::int64_t slots = 0;
  for (const auto& o : s.orbits) {
    OrbitRecord x;
    x.degree = o.form.degree;
    x.signs = o.form.sign_pattern.to_string();
    x.eisenstein = o.form.is_eisenstein;
    x.trivial = static_cast<int>(o.trivial_zeroes.size());
    x.nontrivial = static_cast<int>(o.nontrivial_zeroes.size());
    // every form of a pattern vanishes on exactly the inadmissible orbits
    const auto& rep = data.report(o.form.sign_pattern);
    ensure(static_cast<std::size_t>(x.trivial) == rep.trivial_zero_classes.size(),
           "census: trivial zeroes differ from the inadmissible classes at " + std::to_string(data.level));
    if (!x.eisenstein) slots += std::int64_t{x.degree} * (x.trivial + x.nontrivial);
    r.orbits.push_back(x);
  }
  const auto h = static_cast<std::int64_t>(r.h);
  ensure(slots <= (h - 1) * (h - 1), "census: more zeroes than value slots");
  if (data.level % 2 == 1)
    for (const auto& eps : SignPattern::all(data.level)) {
      if (eps.all_plus()) continue;
      ensure(no_trivial_zeroes_criterion(data.level, eps) == data.report(eps).inadmissible.empty(),
             "census: trivial zero criterion disagrees with the graph at " + std::to_string(data.level));
    }
  return r;
}

CensusRecord compute_census_record(std::int64_t n, const CensusConfig& cfg) {
  check_budget(n, cfg.budget);
  const auto data = LevelData::compute(n, cfg.theta_bound);
  return census_record(data, split_spectrum(data, cfg.eigen));
}

CensusCache::CensusCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path CensusCache::path(std::int64_t n) const {
  return dir_ / ("level-" + std::to_string(n) + ".json");
}

std::optional<CensusRecord> CensusCache::load(std::int64_t n) const {
  std::ifstream in(path(n));
  if (!in) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  const auto alg = build_algebra(n);
  if (j.value("version", 0) != version || j.value("level", std::int64_t{0}) != n) return std::nullopt;
  if (j.value("algebra", nlohmann::json()) != nlohmann::json::array({alg.a, alg.b})) return std::nullopt;
  try {
    return census_record_from_json(j.at("record"));
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
}

void CensusCache::store(const CensusRecord& r) const {
  const auto alg = build_algebra(r.level);
  nlohmann::json j{{"level", r.level}, {"version", version}, {"algebra", {alg.a, alg.b}}, {"record", to_json(r)}};
  const auto target = path(r.level);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, target);
}

std::vector<std::int64_t> CensusCache::levels() const {
  std::vector<std::int64_t> out;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (name.rfind("level-", 0) != 0 || e.path().extension() != ".json") continue;
    try {
      out.push_back(std::stoll(name.substr(6)));
    } catch (const std::exception&) {
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t CensusCache::clear() const {
  std::size_t removed = 0;
  for (auto n : levels()) removed += std::filesystem::remove(path(n));
  return removed;
}

std::vector<CensusRecord> run_census(const std::vector<std::int64_t>& levels, const CensusConfig& cfg,
                                     const CensusSink& sink) {
  std::optional<CensusCache> cache;
  if (cfg.cache_dir) cache.emplace(*cfg.cache_dir);
  std::vector<CensusRecord> out(levels.size());
  std::vector<char> done(levels.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t emitted = 0;

  auto one = [&](std::int64_t n) {
    CensusRecord r;
    r.level = n;
    try {
      if (cache)
        if (auto hit = cache->load(n)) return *hit;
      r = compute_census_record(n, cfg);
      if (cache) cache->store(r);
    } catch (const BudgetError& e) {
      r.error = std::string("budget: ") + e.what();
    } catch (const PreconditionError& e) {
      r.error = std::string("precondition: ") + e.what();
    } catch (const std::exception& e) {
      r.error = std::string("defect: ") + e.what();
    }
    return r;
  };
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < levels.size();) {
      auto r = one(levels[i]);
      std::lock_guard<std::mutex> lock(mu);
      out[i] = std::move(r);
      done[i] = 1;
      while (emitted < levels.size() && done[emitted]) {
        if (sink) sink(out[emitted]);
        ++emitted;
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(levels.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

std::vector<DegreeRow> degree_histogram(const std::vector<CensusRecord>& data) {
  std::vector<DegreeRow> rows(10);
  for (int d = 0; d < 10; ++d) rows[static_cast<std::size_t>(d)].degree = d + 1;
  for (const auto& r : data) {
    if (!r.ok()) continue;
    for (const auto& o : r.orbits) {
      if (o.eisenstein) continue;
      auto& row = rows[static_cast<std::size_t>(std::min(o.degree, 10) - 1)];
      ++row.orbits;
      if (o.nontrivial > 0) ++row.with_nontrivial;
      row.nontrivial += std::int64_t{o.degree} * o.nontrivial;
      row.values += std::int64_t{o.degree} * static_cast<std::int64_t>(r.h);
    }
  }
  return rows;
}

std::map<std::vector<Int>, std::size_t> value_histogram(const GaloisOrbit& orbit) {
  require(orbit.form.degree <= 2, "value_histogram: degree " + std::to_string(orbit.form.degree) + " is not supported");
  std::map<std::vector<Int>, std::size_t> out;
  for (const auto& v : orbit.form.coeffs) ++out[v];
  return out;
}

const std::vector<std::string>& plot_kinds() {
  static const std::vector<std::string> kinds{"nontrivial-per-level",    "cumulative-nontrivial",
                                              "degree1-share",           "degree1-zero-proportion",
                                              "zero-free-prime",         "zero-free-nonprime"};
  return kinds;
}

std::vector<PlotPoint> plot_series(const std::vector<CensusRecord>& data, const std::string& kind) {
  require(std::find(plot_kinds().begin(), plot_kinds().end(), kind) != plot_kinds().end(),
          "emit_plot_data: unknown kind '" + kind + "'");
  std::vector<PlotPoint> out;
  std::int64_t all = 0, deg1 = 0, deg1_values = 0, good = 0, free = 0;
  for (const auto& r : data) {
    if (!r.ok()) continue;
    const bool prime = is_prime64(static_cast<std::uint64_t>(r.level));
    if (kind == "zero-free-prime" && !prime) continue;
    if (kind == "zero-free-nonprime" && prime) continue;
    for (const auto& o : r.orbits) {
      if (o.eisenstein) continue;
      all += std::int64_t{o.degree} * o.nontrivial;
      if (o.degree == 1) {
        deg1 += o.nontrivial;
        deg1_values += static_cast<std::int64_t>(r.h) - o.trivial;
      }
      if (o.trivial == 0) {
        good += o.degree;
        if (o.zero_free()) free += o.degree;
      }
    }
    if (kind == "nontrivial-per-level") out.push_back({r.level, Rat(r.nontrivial_zeroes())});
    else if (kind == "cumulative-nontrivial") out.push_back({r.level, Rat(all)});
    else if (kind == "degree1-share") {
      if (all) out.push_back({r.level, Rat(deg1, all)});
    } else if (kind == "degree1-zero-proportion") {
      if (deg1_values) out.push_back({r.level, Rat(deg1, deg1_values)});
    } else if (good) {
      out.push_back({r.level, Rat(free, good)});
    }
  }
  for (auto& p : out) p.y.canonicalize();
  return out;
}

void emit_plot_data(const std::vector<CensusRecord>& data, const std::string& kind, std::ostream& out,
                    bool coordinates) {
  const auto pts = plot_series(data, kind);
  if (!coordinates) out << "x,y,y_exact\n";
  for (const auto& p : pts) {
    const double y = p.y.get_num().get_d() / p.y.get_den().get_d();
    char buf[32];
    const auto end = std::to_chars(buf, buf + sizeof buf, y).ptr;  // shortest round trip
    std::string ys(buf, end);
    if (ys.find_first_of(".en") == std::string::npos) ys += ".0";
    if (coordinates) out << "(" << p.x << ", " << ys << ")\n";
    else out << p.x << "," << ys << "," << to_string(p.y) << "\n";
  }
}

}  // namespace qmf
