#include "qmf/eigen/eigen.hpp"

#include "qmf/quat/algebra.hpp"

#include <algorithm>
#include <random>

namespace qmf {

namespace {

using IntVec = std::vector<Int>;
using BigMatrix = std::vector<std::vector<Int>>;

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::int64_t x : m[i]) out[i].emplace_back(static_cast<long>(x));
  return out;
}

IntVec mat_vec(const IntMatrix& m, const IntVec& v) {
  IntVec out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    Int acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (m[i][j] != 0 && v[j] != 0) acc += v[j] * static_cast<long>(m[i][j]);
    out[i] = acc;
  }
  return out;
}

Int vec_content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

void remove_content(IntVec& v) {
  Int g = vec_content(v);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// f(M) w by Horner
IntVec poly_apply(const IntMatrix& m, const IntPoly& f, const IntVec& w) {
  const int d = f.degree();
  IntVec r(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[i] * f.coeff(d);
  for (int k = d - 1; k >= 0; --k) {
    r = mat_vec(m, r);
    const Int c = f.coeff(k);
    if (c != 0)
      for (std::size_t i = 0; i < w.size(); ++i) r[i] += c * w[i];
  }
  return r;
}

IntMatrix combine(const std::vector<std::pair<std::int64_t, IntMatrix>>& parts) {
  IntMatrix out = parts.front().second;
  for (auto& row : out)
    for (auto& x : row) x *= parts.front().first;
  for (std::size_t k = 1; k < parts.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = 0; j < out.size(); ++j) out[i][j] += parts[k].first * parts[k].second[i][j];
  return out;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t x = a[i][k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += x * b[k][j];
    }
  return c;
}

// M^eps in the basis of signed orbit indicators, evaluated at the orbit representatives
IntMatrix block_matrix(const IntMatrix& t, const TrivialZeroReport& r, const OrbitPartition& orbits) {
  const std::size_t d = r.admissible.size();
  IntMatrix m(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t k = 0; k < d; ++k) {
    const auto& row = t[static_cast<std::size_t>(r.fundamental_domain[k])];
    for (std::size_t j = 0; j < d; ++j) {
      std::int64_t acc = 0;
      for (int x : orbits.orbits[static_cast<std::size_t>(r.admissible[j])])
        acc += row[static_cast<std::size_t>(x)] * r.class_sign[static_cast<std::size_t>(x)];
      m[k][j] = acc;
    }
  }
  return m;
}

std::int64_t trace(const IntMatrix& m) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

// alpha * v for v in the power basis of Z[x]/(c), c monic
IntVec times_root(const IntVec& v, const IntPoly& c) {
  const std::size_t d = v.size();
  IntVec out(d);
  for (std::size_t l = 1; l < d; ++l) out[l] = v[l - 1];
  const Int top = v[d - 1];
  if (top != 0)
    for (std::size_t l = 0; l < d; ++l) out[l] -= top * c.coeff(static_cast<int>(l));
  return out;
}

NFElem make_elem(const FieldPtr& f, const IntVec& v) {
  std::vector<Rat> r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(x);
  return NFElem(f, r);
}

// Eigenvector of the block matrix m for a root of the irreducible factor c, rows in the power basis
BigMatrix krylov_eigenvector(const IntMatrix& m, const std::vector<PolyFactor>& factors, std::size_t which) {
  const std::size_t n = m.size();
  const IntPoly& c = factors[which].factor;
  const int d = c.degree();
  IntVec w;
  for (std::size_t s = 0; s < n && w.empty(); ++s) {
    IntVec u(n, 0);
    u[s] = 1;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k == which) continue;
      u = poly_apply(m, factors[k].factor, u);
      remove_content(u);
    }
    if (vec_content(u) != 0) w = u;
  }
  ensure(!w.empty(), "eigen: empty generalized eigenspace");

  std::vector<IntVec> krylov{w};
  for (int k = 1; k < d; ++k) krylov.push_back(mat_vec(m, krylov.back()));

  // c(x) / (x - alpha) = sum q_k(alpha) x^k
  std::vector<IntVec> q(static_cast<std::size_t>(d), IntVec(static_cast<std::size_t>(d), 0));
  q[static_cast<std::size_t>(d - 1)][0] = 1;
  for (int k = d - 1; k >= 1; --k) {
    auto& prev = q[static_cast<std::size_t>(k - 1)];
    const auto& cur = q[static_cast<std::size_t>(k)];
    prev[0] = c.coeff(k);
    for (int l = 0; l + 1 < d; ++l) prev[static_cast<std::size_t>(l + 1)] = cur[static_cast<std::size_t>(l)];
  }

  BigMatrix v(n, IntVec(static_cast<std::size_t>(d), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < d; ++k) {
      const Int& kv = krylov[static_cast<std::size_t>(k)][i];
      if (kv == 0) continue;
      const auto& qk = q[static_cast<std::size_t>(k)];
      for (int l = 0; l < d - k; ++l) v[i][static_cast<std::size_t>(l)] += kv * qk[static_cast<std::size_t>(l)];
    }

  Int g = 0;
  for (const auto& row : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), vec_content(row).get_mpz_t());
  ensure(g != 0, "eigen: zero eigenvector");
  for (auto& row : v)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());

  // M v = alpha v, exactly
  for (std::size_t i = 0; i < n; ++i) {
    IntVec lhs(static_cast<std::size_t>(d), 0);
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != 0)
        for (int l = 0; l < d; ++l) lhs[static_cast<std::size_t>(l)] += v[j][static_cast<std::size_t>(l)] * static_cast<long>(m[i][j]);
    ensure(lhs == times_root(v[i], c), "eigen: eigenvector check failed");
  }
  return v;
}

struct Block {
  SignPattern eps;
  IntMatrix m;
  IntPoly charpoly;
};

std::vector<Block> blocks_for(const LevelData& data, const IntMatrix& t) {
  std::vector<Block> out;
  std::int64_t tr = 0;
  std::size_t dims = 0;
  for (const auto& eps : SignPattern::all(data.level)) {
    Block b;
    b.eps = eps;
    b.m = block_matrix(t, data.report(eps), data.orbits);
    dims += b.m.size();
    tr += trace(b.m);
    b.charpoly = b.m.empty() ? IntPoly{1} : charpoly(to_big(b.m));
    out.push_back(std::move(b));
  }
  ensure(dims == data.class_count() && tr == trace(t), "eigen: blocks do not decompose M(O)");
  return out;
}

bool separates(const std::vector<Block>& blocks) {
  IntPoly prod{1};
  for (const auto& b : blocks) prod *= b.charpoly;
  return is_squarefree(prod);
}

Int weight_lcm(const std::vector<int>& w) {
  Int l = 1;
  for (int x : w) mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(x));
  return l;
}

}  // namespace

LevelData LevelData::compute(std::int64_t n, std::int64_t theta_bound) {
  LevelData d;
  d.level = n;
  auto cls = std::make_shared<const IdealClassSet>(IdealClassSet::compute(maximal_order(build_algebra(n))));
  d.classes = cls;
  d.brandt = std::make_shared<const BrandtModule>(cls, theta_bound);
  d.involutions = qmf::involutions(*cls);
  d.orbits = orbit_structure(d.involutions, cls->weights());
  for (const auto& eps : SignPattern::all(n))
    d.reports.push_back(admissibility(signed_graph(d.involutions, eps), d.orbits));
  return d;
}

std::string SeparatingOperator::to_string() const {
  std::string s;
  for (const auto& [p, c] : terms) {
    if (!s.empty()) s += " + ";
    if (c != 1) s += std::to_string(c) + "*";
    s += "T" + std::to_string(p);
  }
  return s;
}

NFElem Eigenform::value(std::size_t i) const { return make_elem(field, coeffs[i]); }

std::vector<NFElem> Eigenform::values() const {
  std::vector<NFElem> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.push_back(value(i));
  return out;
}

bool Eigenform::vanishes_at(std::size_t i) const {
  for (const auto& x : coeffs[i])
    if (x != 0) return false;
  return true;
}

std::set<int> zero_set(const Eigenform& phi) {
  std::set<int> z;
  for (std::size_t i = 0; i < phi.coeffs.size(); ++i)
    if (phi.vanishes_at(i)) z.insert(static_cast<int>(i));
  return z;
}

SignPattern sign_pattern_of(const Eigenform& phi, const LevelData& data) {
  SignPattern s = SignPattern::from_bits(data.level, 0);
  for (std::size_t k = 0; k < s.primes.size(); ++k) {
    const auto& sigma = data.involutions.sigma.at(s.primes[k]);
    int sign = 0;
    for (std::size_t i = 0; i < phi.coeffs.size(); ++i) {
      const auto& a = phi.coeffs[i];
      const auto& b = phi.coeffs[static_cast<std::size_t>(sigma[i])];
      bool plus = true, minus = true;
      for (std::size_t l = 0; l < a.size(); ++l) {
        if (b[l] != a[l]) plus = false;
        if (b[l] != -a[l]) minus = false;
      }
      if (plus && minus) continue;  // zero value
      const int here = plus ? 1 : minus ? -1 : 0;
      ensure(here != 0 && (sign == 0 || sign == here), "sign_pattern_of: eigenvalue of T_p is not +-1");
      sign = here;
    }
    ensure(sign != 0, "sign_pattern_of: zero form");
    s.signs[k] = sign;
  }
  return s;
}

bool orbits_orthogonal(const Eigenform& a, const Eigenform& b, const std::vector<int>& weights) {
  const Int l = weight_lcm(weights);
  std::vector<Int> scale;
  for (int w : weights) scale.push_back(l / w);
  for (int ka = 0; ka < a.degree; ++ka)
    for (int kb = 0; kb < b.degree; ++kb) {
      Int acc = 0;
      for (std::size_t i = 0; i < weights.size(); ++i) {
        const Int& x = a.coeffs[i][static_cast<std::size_t>(ka)];
        if (x == 0) continue;
        const Int& y = b.coeffs[i][static_cast<std::size_t>(kb)];
        if (y != 0) acc += x * y * scale[i];
      }
      if (acc != 0) return false;
    }
  return true;
}

Spectrum split_spectrum(const LevelData& data, const EigenConfig& cfg) {
  const std::int64_t n = data.level;
  const std::size_t h = data.class_count();
  std::shared_ptr<const BrandtModule> brandt = data.brandt;
  auto matrix = [&](std::int64_t p) {
    if (p > brandt->bound())
      brandt = std::make_shared<const BrandtModule>(data.classes, std::max(p, 2 * brandt->bound()));
    return brandt->matrix(p);
  };

  Spectrum out;
  out.level = n;

  std::vector<std::int64_t> good;
  for (std::int64_t p : primes_up_to(cfg.separating_bound - 1))
    if (n % p != 0) good.push_back(p);
  require(good.size() >= 2, "split_spectrum: separating bound too small");

  IntMatrix t;
  std::vector<Block> blocks;
  bool found = false;
  for (std::int64_t p : good) {
    IntMatrix tp = matrix(p);
    auto bl = blocks_for(data, tp);
    if (separates(bl)) {
      out.op.terms = {{p, 1}};
      t = std::move(tp);
      blocks = std::move(bl);
      found = true;
      break;
    }
  }
  if (!found) {
    const std::int64_t p = good[0], q = good[1];
    const IntMatrix tp = matrix(p), tq = matrix(q);
    std::mt19937_64 rng(cfg.seed);
    for (int attempt = 0; attempt < 64 && !found; ++attempt) {
      const auto c = static_cast<std::int64_t>(2 + rng() % 30);
      IntMatrix tc = combine({{1, tp}, {c, tq}});
      auto bl = blocks_for(data, tc);
      if (separates(bl)) {
        out.op.terms = {{p, 1}, {q, c}};
        out.op.fallback = true;
        t = std::move(tc);
        blocks = std::move(bl);
        found = true;
      }
    }
  }
  ensure(found, "split_spectrum: no separating operator found");

  // everything verified later rests on the separating operator commuting with each T_q
  std::vector<std::int64_t> checked;
  for (std::int64_t q : primes_up_to(cfg.verify_bound)) {
    const IntMatrix tq = matrix(q);
    ensure(multiply(t, tq) == multiply(tq, t), "split_spectrum: Hecke operators do not commute");
    checked.push_back(q);
  }

  std::int64_t eis_value = 0;
  for (const auto& [p, c] : out.op.terms) eis_value += c * (p + 1);

  const std::vector<int> weights = data.classes->weights();
  const Int wl = weight_lcm(weights);

  for (const auto& b : blocks) {
    out.block_dims[b.eps.bits()] = b.m.size();
    if (b.m.empty()) continue;
    const auto& rep = data.report(b.eps);
    std::vector<int> block_index(data.orbits.orbits.size(), -1);
    for (std::size_t k = 0; k < rep.admissible.size(); ++k)
      block_index[static_cast<std::size_t>(rep.admissible[k])] = static_cast<int>(k);

    const auto factors = factor_int_poly(b.charpoly);
    for (std::size_t fi = 0; fi < factors.size(); ++fi) {
      const IntPoly& c = factors[fi].factor;
      ensure(factors[fi].multiplicity == 1 && c.is_monic(), "split_spectrum: bad factor");
      const BigMatrix v = krylov_eigenvector(b.m, factors, fi);
      const int d = c.degree();

      GaloisOrbit orb;
      orb.defining_factor = c;
      Eigenform& phi = orb.form;
      phi.level = n;
      phi.degree = d;
      phi.field = std::make_shared<const NumberField>(c, true);
      phi.coeffs.assign(h, IntVec(static_cast<std::size_t>(d), 0));
      for (std::size_t x = 0; x < h; ++x) {
        const int k = block_index[static_cast<std::size_t>(data.orbits.orbit_of[x])];
        if (k < 0) continue;
        const int s = rep.class_sign[x];
        for (int l = 0; l < d; ++l) phi.coeffs[x][static_cast<std::size_t>(l)] = s * v[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      }
      // positive leading coefficient at the first nonzero class
      for (std::size_t x = 0; x < h; ++x) {
        if (phi.vanishes_at(x)) continue;
        int l = d - 1;
        while (phi.coeffs[x][static_cast<std::size_t>(l)] == 0) --l;
        if (phi.coeffs[x][static_cast<std::size_t>(l)] < 0)
          for (auto& row : phi.coeffs)
            for (auto& y : row) y = -y;
        break;
      }

      phi.sign_pattern = sign_pattern_of(phi, data);
      ensure(phi.sign_pattern == b.eps, "split_spectrum: sign pattern differs from its block");

      phi.is_eisenstein = b.eps.all_plus() && d == 1 && c == IntPoly::x_minus(Int(static_cast<long>(eis_value)));
      bool cusp = true;
      for (int l = 0; l < d; ++l) {
        Int acc = 0;
        for (std::size_t x = 0; x < h; ++x) acc += phi.coeffs[x][static_cast<std::size_t>(l)] * (wl / weights[x]);
        if (acc != 0) cusp = false;
      }
      ensure(cusp != phi.is_eisenstein, "split_spectrum: cusp condition disagrees with Eisenstein flag");
      if (phi.is_eisenstein)
        for (std::size_t x = 0; x < h; ++x) ensure(phi.coeffs[x][0] == 1, "split_spectrum: Eisenstein vector not constant");

      // Hecke eigenvalues
      if (out.op.terms.size() == 1) phi.eigenvalues[out.op.terms[0].first] = NFElem::generator(phi.field);
      for (std::int64_t p : prime_divisors(n))
        phi.eigenvalues[p] = NFElem::from_rat(phi.field, Rat(phi.sign_pattern.at(p)));
      if (d <= cfg.eigenvalue_degree_limit) {
        std::size_t i0 = 0;
        while (i0 < rep.admissible.size() && vec_content(v[i0]) == 0) ++i0;
        for (std::int64_t q : checked) {
          if (n % q == 0 || phi.eigenvalues.count(q)) continue;
          const IntMatrix mq = block_matrix(matrix(q), rep, data.orbits);
          std::vector<NFElem> tv, vv;
          for (std::size_t k = 0; k < mq.size(); ++k) {
            IntVec acc(static_cast<std::size_t>(d), 0);
            for (std::size_t j = 0; j < mq.size(); ++j)
              if (mq[k][j] != 0)
                for (int l = 0; l < d; ++l) acc[static_cast<std::size_t>(l)] += v[j][static_cast<std::size_t>(l)] * static_cast<long>(mq[k][j]);
            tv.push_back(make_elem(phi.field, acc));
            vv.push_back(make_elem(phi.field, v[k]));
          }
          const NFElem a = tv[i0] / vv[i0];
          for (std::size_t k = 0; k < tv.size(); ++k) ensure(tv[k] == a * vv[k], "split_spectrum: T_q eigenvalue check failed");
          phi.eigenvalues[q] = a;
        }
      }
      if (phi.is_eisenstein)
        for (const auto& [q, a] : phi.eigenvalues)
          ensure(a == NFElem::from_rat(phi.field, Rat(n % q == 0 ? 1 : q + 1)), "split_spectrum: Eisenstein eigenvalue");

      orb.zero_set = zero_set(phi);
      auto split = classify_zeroes(orb.zero_set, rep);
      orb.trivial_zeroes = std::move(split.trivial);
      orb.nontrivial_zeroes = std::move(split.nontrivial);
      out.orbits.push_back(std::move(orb));
    }
  }

  std::stable_sort(out.orbits.begin(), out.orbits.end(), [](const GaloisOrbit& a, const GaloisOrbit& b) {
    if (a.form.is_eisenstein != b.form.is_eisenstein) return a.form.is_eisenstein;
    if (a.defining_factor != b.defining_factor) return a.defining_factor < b.defining_factor;
    return a.form.sign_pattern.bits() < b.form.sign_pattern.bits();
  });

  std::size_t total = 0;
  for (const auto& o : out.orbits) total += static_cast<std::size_t>(o.form.degree);
  ensure(total == h, "split_spectrum: eigenforms do not span M(O)");

  if (cfg.check_orthogonality)
    for (std::size_t i = 0; i < out.orbits.size(); ++i)
      for (std::size_t j = i + 1; j < out.orbits.size(); ++j) {
        if (out.orbits[i].form.sign_pattern != out.orbits[j].form.sign_pattern) continue;  // different T_p, p | N
        ensure(orbits_orthogonal(out.orbits[i].form, out.orbits[j].form, weights), "split_spectrum: orbits not orthogonal");
      }
  return out;
}

std::vector<BoundViolation> verify_orbit_bounds(const Spectrum& s, const LevelData& data) {
  std::vector<BoundViolation> bad;
  const std::int64_t two_omega = std::int64_t{1} << omega(data.level);
  std::map<std::uint32_t, int> cusp_orbits;
  for (const auto& o : s.orbits)
    if (!o.form.is_eisenstein) ++cusp_orbits[o.form.sign_pattern.bits()];
  bool at_most_one = true;
  for (const auto& [bits, count] : cusp_orbits)
    if (count > 1) at_most_one = false;

  for (std::size_t k = 0; k < s.orbits.size(); ++k) {
    const auto& o = s.orbits[k];
    const auto& rep = data.report(o.form.sign_pattern);
    const auto dim = static_cast<std::int64_t>(rep.fundamental_domain.size());
    std::int64_t on_domain = 0;
    for (int x : rep.fundamental_domain)
      if (o.zero_set.count(x)) ++on_domain;
    if (on_domain > dim - o.form.degree)
      bad.push_back({k, "fundamental-domain", std::to_string(on_domain) + " > " + std::to_string(dim - o.form.degree)});
    const auto nontrivial = static_cast<std::int64_t>(o.nontrivial_zeroes.size());
    if (nontrivial > two_omega * (dim - o.form.degree))
      bad.push_back({k, "orbit-count", std::to_string(nontrivial) + " > " + std::to_string(two_omega * (dim - o.form.degree))});
    if (at_most_one && nontrivial > 0)
      bad.push_back({k, "single-orbit", std::to_string(nontrivial) + " nontrivial zeroes"});
  }
  return bad;
}

namespace {

nlohmann::json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::json vec_json(const std::vector<Rat>& v) {
  auto a = nlohmann::json::array();
  for (const auto& x : v) {
    if (x.get_den() == 1) a.push_back(int_json(x.get_num()));
    else a.push_back(x.get_str());
  }
  return a;
}

}  // namespace

nlohmann::json to_json(const GaloisOrbit& o) {
  nlohmann::json j;
  const auto& f = o.form;
  j["degree"] = f.degree;
  j["eisenstein"] = f.is_eisenstein;
  j["signs"] = f.sign_pattern.to_string();
  auto poly = nlohmann::json::array();
  for (const auto& c : o.defining_factor.coeffs()) poly.push_back(int_json(c));
  j["polynomial"] = poly;
  auto vals = nlohmann::json::array();
  for (const auto& row : f.coeffs) {
    auto r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(int_json(x));
    vals.push_back(r);
  }
  j["values"] = vals;
  j["zero_set"] = o.zero_set;
  j["trivial_zeroes"] = o.trivial_zeroes;
  j["nontrivial_zeroes"] = o.nontrivial_zeroes;
  nlohmann::json ev = nlohmann::json::object();
  for (const auto& [q, a] : f.eigenvalues) ev[std::to_string(q)] = vec_json(a.rep());
  j["eigenvalues"] = ev;
  return j;
}

nlohmann::json to_json(const Spectrum& s) {
  nlohmann::json j;
  j["level"] = s.level;
  auto terms = nlohmann::json::array();
  for (const auto& [p, c] : s.op.terms) terms.push_back({p, c});
  j["separating_operator"] = {{"terms", terms}, {"fallback", s.op.fallback}, {"text", s.op.to_string()}};
  auto orbs = nlohmann::json::array();
  for (const auto& o : s.orbits) orbs.push_back(to_json(o));
  j["orbits"] = orbs;
  return j;
}

}  // namespace qmf
