// qmf: quaternionic modular forms of squarefree level, from the command line.
//
// Exit codes: 0 ok, 2 precondition (bad input), 3 budget exceeded, 4 internal defect.

#include "qmf/census/census.hpp"
#include "qmf/dimform/dimform.hpp"
#include "qmf/periods/periods.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qmf;
using nlohmann::json;

namespace {

struct Settings {
  std::string format = "pretty";
  std::optional<std::filesystem::path> cache_dir;
  unsigned jobs = 1;
  std::int64_t budget = 1000;
  std::int64_t theta_bound = 20;
  EigenConfig eigen;
  PeriodConfig period;
};

// flag, then environment, then config file, then default
struct Layer {
  json config = json::object();

  template <class T>
  void pick(CLI::Option* flag, const T& flag_value, const char* env, const char* key, T& out) const {
    if (flag && flag->count() > 0) {
      out = flag_value;
    } else if (const char* e = env ? std::getenv(env) : nullptr; e && *e) {
      out = parse<T>(e, env);
    } else if (config.contains(key)) {
      try {
        out = config.at(key).get<T>();
      } catch (const json::exception&) {
        throw PreconditionError(std::string("config: bad value for '") + key + "'");
      }
    }
  }

  template <class T>
  static T parse(const std::string& s, const std::string& what) {
    if constexpr (std::is_same_v<T, std::string>) {
      return s;
    } else {
      std::istringstream in(s);
      T v{};
      in >> v;
      require(in && in.peek() == EOF, what + ": cannot parse '" + s + "'");
      return v;
    }
  }
};

std::string poly(const std::vector<Int>& c, const std::string& var = "a") {
  return IntPoly(c).to_string(var);
}

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

void emit_csv(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ",";
      const bool quote = r[i].find_first_of(",\"") != std::string::npos;
      if (!quote) {
        out << r[i];
        continue;
      }
      out << '"';
      for (char ch : r[i]) out << (ch == '"' ? "\"\"" : std::string(1, ch));
      out << '"';
    }
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

LevelData level_data(std::int64_t n, const Settings& s, std::int64_t theta) {
  require(n >= 2 && is_squarefree(n) && omega(n) % 2 == 1,
          "level " + std::to_string(n) + " must be squarefree with an odd number of prime factors");
  check_budget(n, s.budget);
  return LevelData::compute(n, std::max(theta, s.theta_bound));
}

std::string set_string(const std::set<int>& s) {
  std::string out = "{";
  for (int x : s) out += (out.size() > 1 ? " " : "") + std::to_string(x);
  return out + "}";
}

// ---- brandt

int cmd_brandt(const Settings& s, std::int64_t n, std::vector<std::int64_t> ops) {
  require(n >= 2, "level must be at least 2");
  if (ops.empty()) {
    std::int64_t p = 2;
    while (n % p == 0) p = next_prime(p);
    ops.push_back(p);
  }
  std::int64_t top = 1;
  for (auto p : ops) {
    require(p >= 1, "brandt: operator index must be positive");
    top = std::max(top, p);
  }
  const auto data = level_data(n, s, top);
  const auto& cs = *data.classes;
  const auto w = cs.weights();
  if (s.format == "json") {
    json j;
    j["level"] = n;
    j["algebra"] = {cs.order().algebra.a, cs.order().algebra.b};
    j["h"] = cs.size();
    j["weights"] = w;
    j["mass"] = to_string(cs.mass());
    json m = json::object();
    for (auto p : ops) m[std::to_string(p)] = data.brandt->matrix(p);
    j["matrices"] = m;
    std::cout << j.dump(2) << "\n";
  } else if (s.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (auto p : ops) {
      const auto t = data.brandt->matrix(p);
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t k = 0; k < t.size(); ++k)
          rows.push_back({std::to_string(p), std::to_string(i), std::to_string(k), std::to_string(t[i][k])});
    }
    emit_csv(std::cout, {"n", "row", "col", "entry"}, rows);
  } else {
    std::cout << "level " << n << "  B = (" << cs.order().algebra.a << ", " << cs.order().algebra.b << ")  h = "
              << cs.size() << "  mass = " << to_string(cs.mass()) << "\n";
    std::cout << "weights:";
    for (int e : w) std::cout << " " << e;
    std::cout << "\n";
    for (auto p : ops) {
      std::cout << "\nT_" << p << ":\n";
      for (const auto& row : data.brandt->matrix(p)) {
        for (auto x : row) std::cout << " " << std::setw(4) << x;
        std::cout << "\n";
      }
    }
  }
  return 0;
}

// ---- eigenforms / zeroes

Spectrum spectrum_of(const LevelData& data, const Settings& s) { return split_spectrum(data, s.eigen); }

int cmd_eigenforms(const Settings& s, std::int64_t n) {
  const auto data = level_data(n, s, s.eigen.verify_bound);
  const auto sp = spectrum_of(data, s);
  if (s.format == "json") {
    std::cout << to_json(sp).dump(2) << "\n";
  } else if (s.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < sp.orbits.size(); ++k) {
      const auto& o = sp.orbits[k];
      for (std::size_t i = 0; i < o.form.coeffs.size(); ++i)
        rows.push_back({std::to_string(k), std::to_string(o.form.degree), o.form.sign_pattern.to_string(),
                        o.defining_factor.to_string("a"), std::to_string(i), poly(o.form.coeffs[i])});
    }
    emit_csv(std::cout, {"orbit", "degree", "signs", "polynomial", "class", "value"}, rows);
  } else {
    std::cout << "level " << n << "  h = " << data.class_count() << "  separating operator " << sp.op.to_string()
              << "\n";
    for (std::size_t k = 0; k < sp.orbits.size(); ++k) {
      const auto& o = sp.orbits[k];
      std::cout << "\norbit " << k << (o.form.is_eisenstein ? " (Eisenstein)" : "") << "  degree " << o.form.degree
                << "  signs " << o.form.sign_pattern.to_string();
      if (o.form.degree > 1) std::cout << "  a root of " << o.defining_factor.to_string("a");
      std::cout << "\n  values:";
      for (const auto& v : o.form.coeffs) std::cout << "  " << poly(v);
      std::cout << "\n  a_q:";
      for (const auto& [q, a] : o.form.eigenvalues) {
        std::vector<Int> num;
        Int den = 1;
        for (const auto& r : a.rep()) den = lcm(den, r.get_den());
        for (const auto& r : a.rep()) num.push_back(r.get_num() * (den / r.get_den()));
        std::cout << "  " << q << ":" << poly(num) << (den != 1 ? "/" + den.get_str() : "");
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_zeroes(const Settings& s, std::int64_t n) {
  const auto data = level_data(n, s, s.eigen.verify_bound);
  const auto sp = spectrum_of(data, s);
  const auto bad = verify_orbit_bounds(sp, data);
  std::size_t nontrivial = 0;
  for (const auto& o : sp.orbits) nontrivial += o.nontrivial_zeroes.size() * static_cast<std::size_t>(o.form.degree);

  json patterns = json::array();
  for (const auto& eps : SignPattern::all(n)) {
    const auto& r = data.report(eps);
    const auto it = sp.block_dims.find(eps.bits());
    patterns.push_back({{"signs", eps.to_string()},
                        {"dim", it == sp.block_dims.end() ? 0 : it->second},
                        {"inadmissible_orbits", r.inadmissible},
                        {"trivial_zero_classes", r.trivial_zero_classes}});
  }
  json orbits = json::array();
  for (std::size_t k = 0; k < sp.orbits.size(); ++k) {
    const auto& o = sp.orbits[k];
    orbits.push_back({{"orbit", k},
                      {"degree", o.form.degree},
                      {"signs", o.form.sign_pattern.to_string()},
                      {"eisenstein", o.form.is_eisenstein},
                      {"zero_set", o.zero_set},
                      {"trivial_zeroes", o.trivial_zeroes},
                      {"nontrivial_zeroes", o.nontrivial_zeroes},
                      {"zero_free", o.zero_set.empty()}});
  }
  json violations = json::array();
  for (const auto& v : bad) violations.push_back({{"orbit", v.orbit}, {"rule", v.rule}, {"detail", v.detail}});

  if (s.format == "json") {
    json j{{"level", n},        {"h", data.class_count()},          {"patterns", patterns},
           {"orbits", orbits},  {"nontrivial_zero_count", nontrivial}, {"all_zeroes_trivial", nontrivial == 0},
           {"bound_violations", violations}};
    std::cout << j.dump(2) << "\n";
  } else if (s.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& o : orbits)
      rows.push_back({std::to_string(o["orbit"].get<int>()), std::to_string(o["degree"].get<int>()),
                      o["signs"].get<std::string>(), o["eisenstein"].get<bool>() ? "1" : "0",
                      std::to_string(o["trivial_zeroes"].size()), std::to_string(o["nontrivial_zeroes"].size()),
                      o["zero_free"].get<bool>() ? "1" : "0"});
    emit_csv(std::cout, {"orbit", "degree", "signs", "eisenstein", "trivial", "nontrivial", "zero_free"}, rows);
  } else {
    std::cout << "level " << n << "  h = " << data.class_count() << "\n\nsign patterns:\n";
    for (const auto& p : patterns)
      std::cout << "  " << p["signs"].get<std::string>() << "  dim " << p["dim"] << "  trivial zeroes on classes "
                << p["trivial_zero_classes"].dump() << "\n";
    std::cout << "\norbits:\n";
    for (std::size_t k = 0; k < sp.orbits.size(); ++k) {
      const auto& o = sp.orbits[k];
      std::cout << "  " << k << "  degree " << o.form.degree << "  " << o.form.sign_pattern.to_string()
                << (o.form.is_eisenstein ? "  Eisenstein" : "") << "  trivial " << set_string(o.trivial_zeroes)
                << "  nontrivial " << set_string(o.nontrivial_zeroes) << (o.zero_set.empty() ? "  zero-free" : "")
                << "\n";
    }
    std::cout << "\n" << (nontrivial == 0 ? "all zeroes are trivial" : std::to_string(nontrivial) + " nontrivial zeroes")
              << "\n";
    for (const auto& v : bad) std::cout << "BOUND VIOLATION orbit " << v.orbit << " " << v.rule << ": " << v.detail << "\n";
  }
  return bad.empty() ? 0 : 4;
}

// ---- dims

json dims_of(std::int64_t n, const std::optional<std::string>& only) {
  require(n % 2 == 1 && is_squarefree(n), "dims: level " + std::to_string(n) + " must be odd and squarefree");
  json rows = json::array();
  for (const auto& eps : SignPattern::all(n)) {
    if (only && eps.to_string() != *only) continue;
    rows.push_back({{"signs", eps.to_string()},
                    {"dim_bias", dim_bias(n, eps)},
                    {"no_trivial_zeroes", eps.all_plus() || no_trivial_zeroes_criterion(n, eps)}});
  }
  if (only) require(!rows.empty(), "dims: no sign pattern '" + *only + "' at level " + std::to_string(n));
  return rows;
}

int cmd_dims(const Settings& s, std::optional<std::int64_t> n, const std::optional<std::string>& range,
             const std::optional<std::string>& eps) {
  require(n.has_value() != range.has_value(), "dims: give exactly one of a level or --range");
  if (n) {
    const auto rows = dims_of(*n, eps);
    if (s.format == "json") {
      std::cout << json{{"level", *n}, {"patterns", rows}}.dump(2) << "\n";
    } else if (s.format == "csv") {
      std::vector<std::vector<std::string>> out;
      for (const auto& r : rows)
        out.push_back({std::to_string(*n), r["signs"].get<std::string>(), std::to_string(r["dim_bias"].get<std::int64_t>()),
                       r["no_trivial_zeroes"].get<bool>() ? "1" : "0"});
      emit_csv(std::cout, {"level", "signs", "dim_bias", "no_trivial_zeroes"}, out);
    } else {
      std::cout << "level " << *n << "\n";
      for (const auto& r : rows)
        std::cout << "  " << r["signs"].get<std::string>() << "  dim M^+ - dim M^eps = " << r["dim_bias"]
                  << (r["no_trivial_zeroes"].get<bool>() ? "  no trivial zeroes" : "") << "\n";
    }
    return 0;
  }
  const auto levels = LevelRange::parse(*range).levels();
  std::size_t with = 0, patterns = 0;
  std::vector<std::vector<std::string>> out;
  json per = json::array();
  for (auto m : levels) {
    if (m % 2 == 0) continue;
    std::size_t here = 0;
    for (const auto& r : dims_of(m, eps)) {
      if (r["signs"].get<std::string>().find('-') == std::string::npos) continue;
      if (r["no_trivial_zeroes"].get<bool>()) {
        ++here;
        out.push_back({std::to_string(m), r["signs"].get<std::string>()});
      }
    }
    if (here) per.push_back({{"level", m}, {"patterns", here}});
    with += here > 0;
    patterns += here;
  }
  if (s.format == "json") {
    std::cout << json{{"range", *range}, {"levels", levels.size()}, {"levels_with_pattern", with},
                      {"patterns", patterns}, {"per_level", per}}.dump(2)
              << "\n";
  } else if (s.format == "csv") {
    emit_csv(std::cout, {"level", "signs"}, out);
  } else {
    std::cout << "range " << *range << ": " << levels.size() << " levels, " << with
              << " with a non-trivial sign pattern free of trivial zeroes, " << patterns << " such patterns ("
              << with << "/" << patterns << ")\n";
  }
  return 0;
}

// ---- periods

int cmd_periods(const Settings& s, std::int64_t n, std::int64_t d, std::optional<std::size_t> chi) {
  const auto data = level_data(n, s, s.eigen.verify_bound);
  const auto k = iq_field(d);
  require(embeds(d, n), "periods: Q(sqrt(-" + std::to_string(d) + ")) does not embed at level " + std::to_string(n));
  const auto sp = spectrum_of(data, s);
  const auto e = embed(k, data);
  const auto m = ideal_class_map(e, k, data);
  const auto bad = check_class_map(m, k, data);
  if (chi) require(*chi < k.characters.size(), "periods: no character " + std::to_string(*chi));

  json table = json::array();
  for (std::size_t o = 0; o < sp.orbits.size(); ++o) {
    const auto& phi = sp.orbits[o].form;
    if (phi.is_eisenstein) continue;
    for (std::size_t c = 0; c < k.characters.size(); ++c) {
      if (chi && c != *chi) continue;
      auto v = to_json(nonvanishing_verdict(phi, k, m, c, s.period));
      v["orbit"] = o;
      v["signs"] = phi.sign_pattern.to_string();
      v["character"] = c;
      v["character_order"] = k.characters[c].order;
      table.push_back(v);
    }
  }
  json forms = json::array();
  for (const auto& f : k.forms) forms.push_back({f.a, f.b, f.c});
  json j{{"level", n},
         {"D", d},
         {"class_number", k.h()},
         {"forms", forms},
         {"embedding", {{"orbit", e.orbit}, {"target", e.target}, {"shift", m.shift}}},
         {"class_map", m.map},
         {"twist", m.twist},
         {"identity_failures", bad},
         {"verdicts", table}};
  if (s.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else if (s.format == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& v : table)
      rows.push_back({std::to_string(v["orbit"].get<int>()), v["signs"].get<std::string>(),
                      std::to_string(v["character"].get<int>()), std::to_string(v["character_order"].get<int>()),
                      v["verdict"].get<std::string>(), v["reason"].get<std::string>()});
    emit_csv(std::cout, {"orbit", "signs", "character", "order", "verdict", "reason"}, rows);
  } else {
    std::cout << "level " << n << "  K = Q(sqrt(-" << d << "))  h_K = " << k.h() << "\nclass map:";
    for (std::size_t t = 0; t < k.h(); ++t)
      std::cout << "  (" << k.forms[t].a << "," << k.forms[t].b << "," << k.forms[t].c << ")->" << m.map[t];
    std::cout << "\ntwist class " << m.twist << (bad.empty() ? ", identities hold" : ", identities fail:");
    for (const auto& b : bad) std::cout << "\n  " << b;
    std::cout << "\n\n";
    for (const auto& v : table)
      std::cout << "  orbit " << v["orbit"] << " " << v["signs"].get<std::string>() << "  chi" << v["character"]
                << " (order " << v["character_order"] << ")  " << v["verdict"].get<std::string>() << "  "
                << v["reason"].get<std::string>() << "\n";
  }
  return 0;
}

// ---- census

CensusConfig census_config(const Settings& s) {
  CensusConfig c;
  c.theta_bound = s.theta_bound;
  c.eigen = s.eigen;
  c.budget = s.budget;
  c.jobs = s.jobs;
  c.cache_dir = s.cache_dir;
  return c;
}

int cmd_census(const Settings& s, const std::string& range, const std::optional<std::string>& plot, bool coordinates,
               bool table) {
  const auto levels = LevelRange::parse(range).levels();
  if (plot) require(std::find(plot_kinds().begin(), plot_kinds().end(), *plot) != plot_kinds().end(),
                    "census: unknown plot kind '" + *plot + "'");
  const bool stream = !plot && !table;
  bool header = false;
  auto sink = [&](const CensusRecord& r) {
    if (!stream) return;
    if (s.format == "json") {
      std::cout << to_json(r).dump() << "\n";
    } else if (s.format == "csv") {
      if (!header) std::cout << "level,h,orbits,trivial,nontrivial,error\n";
      header = true;
      std::cout << r.level << "," << r.h << "," << r.orbits.size() << "," << r.trivial_zeroes() << ","
                << r.nontrivial_zeroes() << "," << r.error << "\n";
    } else {
      std::cout << "N = " << r.level;
      if (r.ok())
        std::cout << "  h = " << r.h << "  orbits " << r.orbits.size() << "  trivial " << r.trivial_zeroes()
                  << "  nontrivial " << r.nontrivial_zeroes() << "\n";
      else
        std::cout << "  FAILED " << r.error << "\n";
    }
    std::cout.flush();
  };
  const auto data = run_census(levels, census_config(s), sink);
  if (stream && s.format == "csv" && !header) std::cout << "level,h,orbits,trivial,nontrivial,error\n";

  int code = 0;
  for (const auto& r : data)
    if (!r.ok() && r.error.rfind("defect:", 0) == 0) code = 4;
  if (plot) emit_plot_data(data, *plot, std::cout, coordinates);
  if (table) {
    const auto rows = degree_histogram(data);
    if (s.format == "json") {
      json j = json::array();
      for (const auto& r : rows)
        j.push_back({{"degree", r.degree == 10 ? ">=10" : std::to_string(r.degree)},
                     {"orbits", r.orbits},
                     {"with_nontrivial", r.with_nontrivial},
                     {"nontrivial", r.nontrivial},
                     {"proportion", to_string(r.proportion())}});
      std::cout << j.dump(2) << "\n";
    } else {
      const bool csv = s.format == "csv";
      auto cell = [&](const std::string& v) { std::cout << (csv ? "," : "  ") << (csv ? v : std::string(8 - std::min<std::size_t>(8, v.size()), ' ') + v); };
      auto row = [&](const std::string& name, auto f) {
        std::cout << (csv ? name : name + std::string(16 - name.size(), ' '));
        for (const auto& r : rows) cell(f(r));
        std::cout << "\n";
      };
      row("d", [](const DegreeRow& r) { return r.degree == 10 ? std::string(">=10") : std::to_string(r.degree); });
      row("orbits", [](const DegreeRow& r) { return std::to_string(r.orbits); });
      row("with_nontrivial", [](const DegreeRow& r) { return std::to_string(r.with_nontrivial); });
      row("nontrivial", [](const DegreeRow& r) { return std::to_string(r.nontrivial); });
      row("proportion", [](const DegreeRow& r) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.3f", std::floor(r.proportion().get_d() * 1000) / 1000);
        return std::string(buf);
      });
    }
  }
  return code;
}

// ---- cache

int cmd_cache(const Settings& s, const std::string& action, std::optional<std::int64_t> n) {
  require(s.cache_dir.has_value(), "cache: no cache directory (--cache-dir or QMF_CACHE_DIR)");
  CensusCache cache(*s.cache_dir);
  if (action == "list") {
    const auto levels = cache.levels();
    if (s.format == "json") std::cout << json{{"dir", cache.dir().string()}, {"levels", levels}}.dump(2) << "\n";
    else if (s.format == "csv") {
      std::cout << "level\n";
      for (auto l : levels) std::cout << l << "\n";
    } else {
      std::cout << cache.dir().string() << ": " << levels.size() << " levels\n";
      for (auto l : levels) std::cout << "  " << l << "\n";
    }
  } else if (action == "clear") {
    const auto removed = cache.clear();
    std::cout << (s.format == "json" ? json{{"removed", removed}}.dump() : "removed " + std::to_string(removed)) << "\n";
  } else if (action == "show") {
    require(n.has_value(), "cache show: needs a level");
    const auto r = cache.load(*n);
    require(r.has_value(), "cache show: level " + std::to_string(*n) + " is not cached (or stale)");
    std::cout << to_json(*r).dump(s.format == "json" ? 2 : -1) << "\n";
  } else {
    throw PreconditionError("cache: unknown action '" + action + "' (list, clear, show)");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quaternionic modular forms of squarefree level: Brandt matrices, eigenforms, zeroes, periods."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, format, cache_dir;
  unsigned jobs = 1;
  std::int64_t budget = 0;
  auto* o_config = app.add_option("--config", config_path, "JSON config file (env QMF_CONFIG)");
  auto* o_format = app.add_option("--format", format, "json | csv | pretty (env QMF_FORMAT)")
                       ->check(CLI::IsMember({"json", "csv", "pretty"}));
  auto* o_cache = app.add_option("--cache-dir", cache_dir, "census cache directory (env QMF_CACHE_DIR)");
  auto* o_jobs = app.add_option("--jobs", jobs, "census worker threads (env QMF_JOBS)");
  auto* o_budget = app.add_option("--budget", budget, "largest admissible mass sum 1/e_i (env QMF_BUDGET)");

  std::int64_t level = 0, disc = 0;
  std::vector<std::int64_t> ops;
  auto* brandt = app.add_subcommand("brandt", "class data and Brandt matrices T_n");
  brandt->add_option("N", level, "level")->required();
  brandt->add_option("n", ops, "operator indices (default: least prime not dividing N)");

  auto* eigenforms = app.add_subcommand("eigenforms", "Galois orbits of eigenforms with their values");
  eigenforms->add_option("N", level, "level")->required();

  auto* zeroes = app.add_subcommand("zeroes", "trivial and nontrivial zeroes per orbit");
  zeroes->add_option("N", level, "level")->required();

  std::optional<std::int64_t> dims_level;
  std::optional<std::string> range, eps;
  auto* dims = app.add_subcommand("dims", "dim M^+ - dim M^eps and the trivial zero criterion, odd levels");
  dims->add_option("N", dims_level, "level");
  dims->add_option("--range", range, "level filter, e.g. \"odd,omega=3,<10000\"");
  dims->add_option("--eps", eps, "one sign pattern, e.g. +-+");

  std::optional<std::size_t> chi;
  auto* periods = app.add_subcommand("periods", "toric periods and L-value verdicts for K = Q(sqrt(-D))");
  periods->add_option("N", level, "level")->required();
  periods->add_option("D", disc, "fundamental discriminant -D")->required();
  periods->add_option("--chi", chi, "character index (default: all)");

  std::string census_range;
  std::optional<std::string> plot;
  bool coordinates = false, table = false;
  auto* census = app.add_subcommand("census", "per-level zero statistics over a range");
  census->add_option("RANGE", census_range, "level filter, e.g. \"prime,<1000\"")->required();
  census->add_option("--plot", plot, "emit plot data of this kind instead of records");
  census->add_flag("--coordinates", coordinates, "plot data as (x, y) lines");
  census->add_flag("--table", table, "degree histogram of nontrivial zeroes");

  std::string action;
  std::optional<std::int64_t> cache_level;
  auto* cache = app.add_subcommand("cache", "inspect the census cache");
  cache->add_option("action", action, "list | clear | show")->required();
  cache->add_option("N", cache_level, "level for show");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Layer layer;
    std::string cfg_file;
    layer.pick<std::string>(o_config, config_path, "QMF_CONFIG", "", cfg_file);
    if (!cfg_file.empty()) {
      std::ifstream in(cfg_file);
      require(static_cast<bool>(in), "config: cannot open " + cfg_file);
      layer.config = json::parse(in, nullptr, false);
      require(layer.config.is_object(), "config: " + cfg_file + " is not a JSON object");
    }
    Settings s;
    std::string cdir;
    layer.pick<std::string>(o_format, format, "QMF_FORMAT", "format", s.format);
    layer.pick<std::string>(o_cache, cache_dir, "QMF_CACHE_DIR", "cache_dir", cdir);
    layer.pick<unsigned>(o_jobs, jobs, "QMF_JOBS", "jobs", s.jobs);
    layer.pick<std::int64_t>(o_budget, budget, "QMF_BUDGET", "budget", s.budget);
    layer.pick<std::int64_t>(nullptr, 0, nullptr, "separating_bound", s.eigen.separating_bound);
    layer.pick<std::int64_t>(nullptr, 0, nullptr, "verify_bound", s.eigen.verify_bound);
    layer.pick<std::int64_t>(nullptr, 0, nullptr, "theta_bound", s.theta_bound);
    layer.pick<int>(nullptr, 0, nullptr, "precision", s.period.precision);
    layer.pick<int>(nullptr, 0, nullptr, "max_precision", s.period.max_precision);
    if (!cdir.empty()) s.cache_dir = cdir;
    require(s.format == "json" || s.format == "csv" || s.format == "pretty", "format must be json, csv or pretty");
    require(s.jobs >= 1 && s.budget >= 1 && s.theta_bound >= 2 && s.eigen.separating_bound >= 3 &&
                s.eigen.verify_bound >= 2 && s.period.precision >= 32 && s.period.max_precision >= s.period.precision,
            "config: bounds must be positive (precision >= 32, max_precision >= precision)");

    if (*brandt) return cmd_brandt(s, level, ops);
    if (*eigenforms) return cmd_eigenforms(s, level);
    if (*zeroes) return cmd_zeroes(s, level);
    if (*dims) return cmd_dims(s, dims_level, range, eps);
    if (*periods) return cmd_periods(s, level, disc, chi);
    if (*census) return cmd_census(s, census_range, plot, coordinates, table);
    if (*cache) return cmd_cache(s, action, cache_level);
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal defect: " << e.what() << "\n";
    return 4;
  }
}
