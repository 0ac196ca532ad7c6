#include "qmf/periods/periods.hpp"

#include <mpfr.h>

#include <algorithm>
#include <map>
#include <numeric>

namespace qmf {

namespace {

bool is_fundamental(std::int64_t D) {
  if (D < 3) return false;
  if (D % 4 == 3) return is_squarefree(D);
  if (D % 4 != 0) return false;
  const std::int64_t m = D / 4;
  return (m % 4 == 1 || m % 4 == 2) && is_squarefree(m);
}

// invariant factors of a small integer matrix (Smith normal form diagonal)
std::vector<std::int64_t> invariant_factors(std::vector<std::vector<std::int64_t>> a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // pivot: smallest nonzero entry in the remaining block
      std::size_t pr = rows, pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) pr = i, pc = j;
      if (pr == rows) return diag;
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the rest by the pivot
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(std::llabs(a[t][t]));
  }
  return diag;
}

Vec4 lattice_vector(const Lattice& l, const Vec4& coords) {
  Vec4 v{0, 0, 0, 0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) v[c] += coords[r] * l.basis[r][c];
  return v;
}

// coordinates of 1 in the basis of O
Vec4 order_one(const MaximalOrder& o) {
  const auto& b = o.std_basis.basis;
  std::array<Rat, 4> c;
  const std::array<Rat, 4> target{Rat(o.std_basis.den), 0, 0, 0};
  for (int col = 0; col < 4; ++col) {
    Rat acc = target[col];
    for (int r = 0; r < col; ++r) acc -= c[r] * Rat(b[r][col]);
    c[col] = acc / Rat(b[col][col]);
  }
  Vec4 out;
  for (int r = 0; r < 4; ++r) {
    ensure(c[r].get_den() == 1, "order_one: 1 is not in O");
    out[r] = c[r].get_num();
  }
  return out;
}

IntPoly cyclotomic(std::int64_t m) {
  static std::map<std::int64_t, IntPoly> memo;
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  std::vector<Int> c(static_cast<std::size_t>(m + 1), 0);
  c[0] = -1;
  c[static_cast<std::size_t>(m)] = 1;
  IntPoly p(c);
  for (std::int64_t d : divisors(m)) {
    if (d == m) continue;
    IntPoly q;
    ensure(p.divides_into(cyclotomic(d), &q), "cyclotomic: inexact division");
    p = q;
  }
  memo[m] = p;
  return p;
}

// x^k mod Phi_m for k < m, as coefficient vectors of length phi(m)
std::vector<std::vector<Int>> root_powers(std::int64_t m) {
  const IntPoly phi = cyclotomic(m);
  const auto d = static_cast<std::size_t>(phi.degree());
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(d, 0);
  cur[0] = 1;
  for (std::int64_t k = 0; k < m; ++k) {
    out.push_back(cur);
    std::vector<Int> next(d, 0);
    for (std::size_t l = 1; l < d; ++l) next[l] = cur[l - 1];
    const Int top = cur[d - 1];
    if (top != 0)
      for (std::size_t l = 0; l < d; ++l) next[l] -= top * phi.coeff(static_cast<int>(l));
    cur = next;
  }
  return out;
}

std::int64_t euler_phi(std::int64_t m) {
  std::int64_t r = m;
  for (std::int64_t p : prime_divisors(m)) r = r / p * (p - 1);
  return r;
}

// exponent of chi^{-1}(t) as a power of zeta_order
std::int64_t inverse_exponent(const IQField& k, const ClassCharacter& chi, std::size_t t, std::int64_t order) {
  const std::int64_t e = chi.exps[t] * order / k.exponent;
  return mod64(-e, order);
}

Rat rat_from_mpfr(const mpfr_t x) {
  mpz_class z;
  const long e = mpfr_get_z_2exp(z.get_mpz_t(), x);
  Rat r(z);
  if (e >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

Rat dyadic(const Int& num, int k) {
  Rat r(num);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
  return r;
}

// true when c(x + a) has no sign variation, so c has no root >= a
bool no_roots_from(const IntPoly& c, const Rat& a) {
  std::vector<Rat> g;
  for (const auto& x : c.coeffs()) g.emplace_back(x);
  const std::size_t n = g.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 2; j + 1 > i; --j) {
      g[j] += a * g[j + 1];
      if (j == 0) break;
    }
  for (const auto& x : g)
    if (sgn(x) <= 0) return false;
  return true;
}

// Rational enclosure [lo, hi] of the largest real root of a monic real-rooted squarefree c
std::optional<std::pair<Rat, Rat>> largest_root_ball(const IntPoly& c, int prec) {
  if (c.degree() == 1) {
    Rat r(-c.coeff(0));
    return std::make_pair(r, r);
  }
  std::size_t bits = 0;
  for (const auto& x : c.coeffs()) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
  const auto wp = static_cast<mpfr_prec_t>(prec + 2 * static_cast<int>(bits) + 64);
  Mpfr x(wp), fx(wp), dfx(wp), step(wp), tmp(wp);
  Int cauchy = 0;
  for (const auto& y : c.coeffs()) cauchy = std::max(cauchy, Int(abs(y)));
  mpfr_set_z(x.v, cauchy.get_mpz_t(), MPFR_RNDU);
  mpfr_add_ui(x.v, x.v, 1, MPFR_RNDU);
  const int d = c.degree();
  for (int iter = 0; iter < 200000; ++iter) {
    mpfr_set_z(fx.v, c.coeff(d).get_mpz_t(), MPFR_RNDN);
    mpfr_set_ui(dfx.v, 0, MPFR_RNDN);
    for (int i = d - 1; i >= 0; --i) {
      mpfr_mul(dfx.v, dfx.v, x.v, MPFR_RNDN);
      mpfr_add(dfx.v, dfx.v, fx.v, MPFR_RNDN);
      mpfr_mul(fx.v, fx.v, x.v, MPFR_RNDN);
      mpfr_set_z(tmp.v, c.coeff(i).get_mpz_t(), MPFR_RNDN);
      mpfr_add(fx.v, fx.v, tmp.v, MPFR_RNDN);
    }
    if (mpfr_zero_p(dfx.v)) break;
    mpfr_div(step.v, fx.v, dfx.v, MPFR_RNDN);
    mpfr_sub(x.v, x.v, step.v, MPFR_RNDN);
    if (mpfr_zero_p(step.v)) break;
    if (mpfr_get_exp(step.v) < -prec - 16 + std::max<long>(0, mpfr_get_exp(x.v))) break;
  }
  mpfr_mul_2si(tmp.v, x.v, prec, MPFR_RNDN);
  Int centre;
  mpfr_get_z(centre.get_mpz_t(), tmp.v, MPFR_RNDN);
  for (Int margin = 2; margin < Int(1) << 40; margin *= 16) {
    const Rat lo = dyadic(centre - margin, prec), hi = dyadic(centre + margin, prec);
    if (sgn(c.eval(lo)) < 0 && sgn(c.eval(hi)) > 0 && no_roots_from(c, hi)) return std::make_pair(lo, hi);
  }
  return std::nullopt;
}

Rat rabs(const Rat& x) { return sgn(x) < 0 ? Rat(-x) : x; }

}  // namespace

int IQField::index_of(const BinaryForm& f) const {
  const BinaryForm r = reduce(f);
  auto it = std::lower_bound(forms.begin(), forms.end(), r);
  ensure(it != forms.end() && *it == r, "iq_field: form not in the class group");
  return static_cast<int>(it - forms.begin());
}

int IQField::ramified_class(std::int64_t p) const {
  require(p > 1 && D % p == 0, "ramified_class: p must divide D");
  for (std::int64_t b = 0; b < 2 * p; ++b)
    if ((b * b + D) % (4 * p) == 0) return index_of({p, b, (b * b + D) / (4 * p)});
  throw DefectError("ramified_class: no form of norm p");
}

IQField iq_field(std::int64_t D) {
  require(is_fundamental(D), "iq_field: -D must be a fundamental discriminant");
  IQField k;
  k.D = D;
  k.forms = reduced_forms(-D);
  std::sort(k.forms.begin(), k.forms.end());
  ensure(k.forms[0] == identity_form(-D), "iq_field: identity is not first");
  const std::size_t h = k.forms.size();
  k.table.assign(h, std::vector<int>(h, 0));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) k.table[i][j] = k.index_of(compose(k.forms[i], k.forms[j]));
  k.inverse.assign(h, 0);
  for (std::size_t i = 0; i < h; ++i) k.inverse[i] = k.index_of(inverse(k.forms[i]));

  // greedy generators; every element is sum e_i g_i with 0 <= e_i < n_i
  std::vector<int> gens;
  std::vector<std::int64_t> rel_order;
  std::vector<std::vector<std::int64_t>> relations;
  std::vector<std::vector<std::int64_t>> coords(h);
  std::vector<bool> in_sub(h, false);
  in_sub[0] = true;
  std::vector<int> members{0};
  for (std::size_t g = 0; g < h; ++g) {
    if (in_sub[g]) continue;
    int x = static_cast<int>(g);
    std::int64_t n = 1;
    while (!in_sub[static_cast<std::size_t>(x)]) {
      x = k.table[static_cast<std::size_t>(x)][g];
      ++n;
    }
    relations.push_back(coords[static_cast<std::size_t>(x)]);
    std::vector<int> next;
    int step = 0;
    for (std::int64_t e = 0; e < n; ++e) {
      for (int s : members) {
        const int t = k.table[static_cast<std::size_t>(s)][static_cast<std::size_t>(step)];
        auto c = coords[static_cast<std::size_t>(s)];
        c.resize(gens.size() + 1, 0);
        c[gens.size()] = e;
        coords[static_cast<std::size_t>(t)] = c;
        in_sub[static_cast<std::size_t>(t)] = true;
        next.push_back(t);
      }
      step = k.table[static_cast<std::size_t>(step)][g];
    }
    members = next;
    gens.push_back(static_cast<int>(g));
    rel_order.push_back(n);
  }
  for (auto& c : coords) c.resize(gens.size(), 0);

  for (std::size_t i = 0; i < h; ++i) {
    std::int64_t ord = 1;
    int x = static_cast<int>(i);
    while (x != 0) {
      x = k.table[static_cast<std::size_t>(x)][i];
      ++ord;
    }
    k.exponent = std::lcm(k.exponent, ord);
  }
  const std::int64_t m = k.exponent;

  std::vector<std::vector<std::int64_t>> rel_matrix;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<std::int64_t> row(gens.size(), 0);
    for (std::size_t j = 0; j < i; ++j) row[j] = -(j < relations[i].size() ? relations[i][j] : 0);
    row[i] = rel_order[i];
    rel_matrix.push_back(row);
  }
  for (std::int64_t d : invariant_factors(rel_matrix))
    if (d != 1) k.structure.push_back(d);
  std::sort(k.structure.begin(), k.structure.end());

  // characters: x_i = chi(g_i) exponents solving n_i x_i = sum_j r_ij x_j mod m
  std::vector<std::vector<std::int64_t>> assignments{{}};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& a : assignments) {
      std::int64_t r = 0;
      for (std::size_t j = 0; j < i; ++j) r += (j < relations[i].size() ? relations[i][j] : 0) * a[j];
      r = mod64(r, m);
      ensure(r % rel_order[i] == 0, "iq_field: character does not extend");
      for (std::int64_t t = 0; t < rel_order[i]; ++t) {
        auto b = a;
        b.push_back(mod64(r / rel_order[i] + t * (m / rel_order[i]), m));
        next.push_back(b);
      }
    }
    assignments = next;
  }
  for (const auto& a : assignments) {
    ClassCharacter chi;
    std::int64_t g = m;
    for (std::size_t t = 0; t < h; ++t) {
      std::int64_t e = 0;
      for (std::size_t i = 0; i < gens.size(); ++i) e += coords[t][i] * a[i];
      chi.exps.push_back(mod64(e, m));
      g = std::gcd(g, chi.exps.back());
    }
    chi.order = m / g;
    k.characters.push_back(chi);
  }

  // sanity: homomorphisms, count, genus theory
  ensure(k.characters.size() == h, "iq_field: wrong number of characters");
  std::int64_t prod = 1;
  for (auto d : k.structure) prod *= d;
  ensure(prod == static_cast<std::int64_t>(h), "iq_field: structure does not multiply to h");
  for (const auto& chi : k.characters)
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j)
        ensure(mod64(chi.exps[i] + chi.exps[j], m) == chi.exps[static_cast<std::size_t>(k.table[i][j])],
               "iq_field: character is not a homomorphism");
  std::int64_t two_torsion = 0;
  for (std::size_t i = 0; i < h; ++i)
    if (k.table[i][i] == 0) ++two_torsion;
  ensure(two_torsion == (std::int64_t{1} << (omega(D) - 1)), "iq_field: genus count");
  return k;
}

bool embeds(std::int64_t D, std::int64_t n) {
  for (std::int64_t p : prime_divisors(n))
    if (kronecker_symbol(-D, p) == 1) return false;
  return true;
}

Embedding embed(const IQField& k, const LevelData& data) {
  require(embeds(k.D, data.level), "embed: K is split at some p | N");
  const Frame& f = data.classes->order().frame;
  const std::int64_t t = k.D % 2 ? 1 : 0;
  const std::int64_t n = k.D % 2 ? (1 + k.D) / 4 : k.D / 4;
  for (std::size_t j = 0; j < data.orbits.orbits.size(); ++j) {
    const int r = data.orbits.orbits[j].front();
    const Lattice ol = data.classes->left_order(static_cast<std::size_t>(r));
    const ReducedForm rf = lll_reduce(lattice_gram(ol, f.gram, Rat(1)));
    std::optional<Vec4> hit;
    enumerate_short(rf, n, [&](const SmallVec& x, std::int64_t q) {
      if (hit || q != n) return;
      Vec4 v = lattice_vector(ol, rf.to_original(x));
      const Int tr = qtrd(f, v);
      if (tr == Int(t) * ol.den) hit = v;
      else if (tr == -Int(t) * ol.den) {
        for (auto& y : v) y = -y;
        hit = v;
      }
    });
    if (hit) {
      Embedding e;
      e.D = k.D;
      e.orbit = static_cast<int>(j);
      e.target = r;
      e.beta = *hit;
      e.den = ol.den;
      ensure(qnrd(f, e.beta) == Int(n) * e.den * e.den, "embed: wrong norm");
      return e;
    }
  }
  throw DefectError("embed: o_K embeds in no maximal order type");
}

ClassMapTable ideal_class_map(const Embedding& e, const IQField& k, const LevelData& data) {
  const auto& cs = *data.classes;
  const Frame& f = cs.order().frame;
  const Vec4 one = order_one(cs.order());
  const Lattice& ir = cs.rep(static_cast<std::size_t>(e.target)).ideal;
  ClassMapTable out;
  for (const auto& form : k.forms) {
    const std::int64_t s = k.D % 2 ? (-form.b - 1) / 2 : -form.b / 2;
    Vec4 g = e.beta;
    for (int c = 0; c < 4; ++c) g[c] += Int(s) * e.den * one[c];
    std::vector<Vec4> gens;
    for (int r = 0; r < 4; ++r) {
      Vec4 y;
      for (int c = 0; c < 4; ++c) y[c] = ir.basis[r][c] * e.den;
      Vec4 ay = y;
      for (auto& v : ay) v *= form.a;
      gens.push_back(ay);
      Vec4 gy;
      for (int c = 0; c < 4; ++c) gy[c] = ir.basis[r][c];
      gens.push_back(qmul(f, g, gy));
    }
    const Lattice img = Lattice::from_generators(gens, e.den * ir.den);
    out.map.push_back(cs.classify(img));
  }
  ensure(out.map[0] == e.target, "ideal_class_map: identity does not map to the target class");
  // moving the embedding by b changes the twist by b^{-2}; the twist's genus cannot move
  out.twist = class_map_twist(out.map, k, data);
  if (out.twist > 0)
    for (std::size_t b = 0; b < k.h(); ++b)
      if (k.table[b][b] == out.twist) {
        std::vector<int> moved;
        for (std::size_t t = 0; t < k.h(); ++t) moved.push_back(out.map[static_cast<std::size_t>(k.table[t][b])]);
        out.map = moved;
        out.shift = static_cast<int>(b);
        out.twist = class_map_twist(out.map, k, data);
        ensure(out.twist == 0, "ideal_class_map: square twist survived the shift");
        break;
      }
  return out;
}

int class_map_twist(const std::vector<int>& map, const IQField& k, const LevelData& data) {
  const auto& sig = data.involutions.sigma;
  auto sigma_n = [&](int x) {
    for (std::int64_t p : prime_divisors(data.level)) x = sig.at(p)[static_cast<std::size_t>(x)];
    return x;
  };
  for (std::size_t c = 0; c < k.h(); ++c) {
    bool ok = true;
    for (std::size_t t = 0; t < k.h() && ok; ++t)
      ok = map[static_cast<std::size_t>(k.inverse[t])] == sigma_n(map[static_cast<std::size_t>(k.table[t][c])]);
    if (ok) return static_cast<int>(c);
  }
  return -1;
}

std::vector<std::string> check_class_map(const ClassMapTable& m, const IQField& k, const LevelData& data) {
  std::vector<std::string> bad;
  const std::int64_t n = data.level;
  const auto& sig = data.involutions.sigma;
  auto sigma_d = [&](std::int64_t d, int x) {
    for (std::int64_t p : prime_divisors(d)) x = sig.at(p)[static_cast<std::size_t>(x)];
    return x;
  };
  const std::size_t h = k.h();
  for (std::size_t t = 0; t < h; ++t) {
    const int img = m.map[t];
    if (m.map[static_cast<std::size_t>(k.inverse[t])] != sigma_d(n, img)) bad.push_back("inverse/sigma_N at t=" + std::to_string(t));
    if (k.table[t][t] == 0 && sigma_d(n, img) != img) bad.push_back("2-torsion fixed point at t=" + std::to_string(t));
  }
  const std::int64_t d = k.D % 4 == 0 ? k.D / 4 : k.D;
  if (d > 1 && n % d == 0)
    for (std::size_t t = 0; t < h; ++t)
      if (sigma_d(d, m.map[t]) != m.map[t]) bad.push_back("sigma_d fixed point at t=" + std::to_string(t));
  for (std::int64_t p : prime_divisors(std::gcd(n, k.D))) {
    const auto jp = static_cast<std::size_t>(k.ramified_class(p));
    for (std::size_t t = 0; t < h; ++t)
      if (m.map[static_cast<std::size_t>(k.table[t][jp])] != sig.at(p)[static_cast<std::size_t>(m.map[t])])
        bad.push_back("sigma_" + std::to_string(p) + " equivariance at t=" + std::to_string(t));
  }
  return bad;
}

PeriodValue period(const Eigenform& phi, const IQField& k, const ClassMapTable& m, std::size_t chi_index,
                   const PeriodConfig& cfg) {
  require(chi_index < k.characters.size(), "period: no such character");
  const auto& chi = k.characters[chi_index];
  PeriodValue out;
  out.order = chi.order;
  const auto red = root_powers(chi.order);
  const std::size_t width = red[0].size();
  const auto d = static_cast<std::size_t>(phi.degree);
  out.exact.assign(d, std::vector<Int>(width, 0));
  for (std::size_t t = 0; t < k.h(); ++t) {
    const auto& val = phi.coeffs[static_cast<std::size_t>(m.map[t])];
    const auto& z = red[static_cast<std::size_t>(inverse_exponent(k, chi, t, chi.order))];
    for (std::size_t l = 0; l < d; ++l)
      if (val[l] != 0)
        for (std::size_t j = 0; j < width; ++j) out.exact[l][j] += val[l] * z[j];
  }
  bool all_zero = true;
  for (const auto& row : out.exact)
    for (const auto& x : row)
      if (x != 0) all_zero = false;
  // Q(alpha) is totally real, so it meets Q(zeta) inside the real subfield of degree phi(m)/2
  const std::int64_t half = std::max<std::int64_t>(1, euler_phi(chi.order) / 2);
  out.decisive = all_zero || std::gcd(static_cast<std::int64_t>(d), half) == 1;
  out.method = "exact";
  if (all_zero) {
    out.status = Vanishing::Zero;
    return out;
  }
  if (out.decisive) {
    out.status = Vanishing::Nonzero;
    return out;
  }

  out.method = "interval";
  for (int prec = cfg.precision; prec <= cfg.max_precision; prec *= 2) {
    out.precision = prec;
    auto ball = largest_root_ball(phi.field->modulus(), prec);
    if (!ball) continue;
    const Rat mid = (ball->first + ball->second) / 2;
    const Rat w = (ball->second - ball->first) / 2;
    const Rat big_r = std::max(rabs(ball->first), rabs(ball->second));
    // zeta^j to prec bits; the argument carries extra bits so the total error stays below 2^(2 - prec)
    std::vector<Rat> cr(width), ci(width);
    {
      Mpfr arg(prec + 32), pi(prec + 32), cv(prec), sv(prec);
      mpfr_const_pi(pi.v, MPFR_RNDN);
      for (std::size_t j = 0; j < width; ++j) {
        mpfr_mul_ui(arg.v, pi.v, static_cast<unsigned long>(2 * j), MPFR_RNDN);
        mpfr_div_ui(arg.v, arg.v, static_cast<unsigned long>(chi.order), MPFR_RNDN);
        mpfr_cos(cv.v, arg.v, MPFR_RNDN);
        mpfr_sin(sv.v, arg.v, MPFR_RNDN);
        cr[j] = rat_from_mpfr(cv.v);
        ci[j] = rat_from_mpfr(sv.v);
      }
    }
    const Rat eps = dyadic(Int(1), prec - 2);
    Rat re = 0, im = 0, err = 0, deriv = 0, apow = 1, rpow = 1, rpow_prev = 0;
    for (std::size_t l = 0; l < d; ++l) {
      Rat zr = 0, zi = 0, mass = 0;
      for (std::size_t j = 0; j < width; ++j) {
        const Rat z(out.exact[l][j]);
        zr += z * cr[j];
        zi += z * ci[j];
        mass += rabs(z);
      }
      re += apow * zr;
      im += apow * zi;
      err += rpow * mass * eps;
      if (l >= 1) deriv += Rat(static_cast<long>(l)) * rpow_prev * mass * (1 + eps);
      apow *= mid;
      rpow_prev = rpow;
      rpow *= big_r;
    }
    err += w * deriv;
    out.re = re;
    out.im = im;
    out.radius = err;
    if (rabs(re) > err || rabs(im) > err) {
      out.status = Vanishing::Nonzero;
      return out;
    }
  }
  out.status = Vanishing::Undecided;
  return out;
}

bool character_sum_identity(const Eigenform& phi, const IQField& k, const ClassMapTable& m) {
  const std::int64_t e = k.exponent;
  const auto red = root_powers(e);
  const std::size_t width = red[0].size();
  const auto d = static_cast<std::size_t>(phi.degree);
  std::vector<std::vector<Int>> sum(d, std::vector<Int>(width, 0));
  for (const auto& chi : k.characters)
    for (std::size_t t = 0; t < k.h(); ++t) {
      const auto& val = phi.coeffs[static_cast<std::size_t>(m.map[t])];
      const auto& z = red[static_cast<std::size_t>(inverse_exponent(k, chi, t, e))];
      for (std::size_t l = 0; l < d; ++l)
        if (val[l] != 0)
          for (std::size_t j = 0; j < width; ++j) sum[l][j] += val[l] * z[j];
    }
  const auto& base = phi.coeffs[static_cast<std::size_t>(m.map[0])];
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t j = 0; j < width; ++j)
      if (sum[l][j] != (j == 0 ? base[l] * static_cast<long>(k.h()) : Int(0))) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::ForcedZero: return "FORCED_ZERO";
    case Verdict::LNonzero: return "L_NONZERO";
    case Verdict::LZero: return "L_ZERO";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "?";
}

VerdictReport nonvanishing_verdict(const Eigenform& phi, const IQField& k, const ClassMapTable& m, std::size_t chi_index,
                                   const PeriodConfig& cfg) {
  require(!phi.is_eisenstein, "nonvanishing_verdict: phi must be cuspidal");
  const auto& chi = k.characters.at(chi_index);
  const std::int64_t n = phi.level;
  VerdictReport r;
  r.period = period(phi, k, m, chi_index, cfg);
  const Vanishing p = r.period->status;

  auto forced = [&](const std::string& why) {
    ensure(p != Vanishing::Nonzero, "nonvanishing_verdict: forced zero has a nonzero period");
    r.verdict = Verdict::ForcedZero;
    r.reason = why;
    return r;
  };
  // the sign in (i) is eps_N chi(c) with c the class map twist; c is trivial whenever the twist is a square
  if (chi.order <= 2 && m.twist >= 0) {
    const int chi_c = chi.exps[static_cast<std::size_t>(m.twist)] == 0 ? 1 : -1;
    if (phi.sign_pattern.eps(n) * chi_c == -1) return forced("(i) eps_N chi(c) = -1");
  }
  const std::int64_t g = std::gcd(n, k.D);
  for (std::int64_t q : prime_divisors(g)) {
    const std::int64_t e = chi.exps[static_cast<std::size_t>(k.ramified_class(q))];
    const int local = e == 0 ? 1 : -1;  // the ramified class has order <= 2
    if (local != phi.sign_pattern.at(q)) return forced("(ii) eps_" + std::to_string(q) + " != chi_" + std::to_string(q));
  }

  bool fast = false;
  if (k.one_class_per_genus()) {
    fast = k.h() == 1;
    if (!fast) {
      fast = true;
      for (std::int64_t q : prime_divisors(k.D))
        if (n % q != 0) fast = false;  // the local sign condition was checked above
    }
  }
  if (fast) {
    const bool nonzero = !phi.vanishes_at(static_cast<std::size_t>(m.map[0]));
    ensure(p == (nonzero ? Vanishing::Nonzero : Vanishing::Zero), "nonvanishing_verdict: one class per genus shortcut disagrees");
    r.verdict = nonzero ? Verdict::LNonzero : Verdict::LZero;
    r.reason = "one class per genus: phi(iota_*(1)) " + std::string(nonzero ? "!= 0" : "= 0");
    return r;
  }
  switch (p) {
    case Vanishing::Nonzero: r.verdict = Verdict::LNonzero; r.reason = "period nonzero"; break;
    case Vanishing::Zero: r.verdict = Verdict::LZero; r.reason = "period zero, local conditions hold"; break;
    case Vanishing::Undecided: r.verdict = Verdict::Undecided; r.reason = "interval contains zero"; break;
  }
  return r;
}

std::optional<std::size_t> find_nonvanishing_character(const Eigenform& phi, const IQField& k, const ClassMapTable& m,
                                                       const PeriodConfig& cfg) {
  bool undecided = false;
  for (std::size_t c = 0; c < k.characters.size(); ++c) {
    const auto v = nonvanishing_verdict(phi, k, m, c, cfg);
    if (v.verdict == Verdict::LNonzero) return c;
    if (v.verdict == Verdict::Undecided) undecided = true;
  }
  ensure(undecided || phi.vanishes_at(static_cast<std::size_t>(m.map[0])),
         "find_nonvanishing_character: phi(iota_*(1)) != 0 but every twist vanishes");
  return std::nullopt;
}

nlohmann::json to_json(const PeriodValue& v) {
  nlohmann::json j;
  j["order"] = v.order;
  j["method"] = v.method;
  j["status"] = v.status == Vanishing::Zero ? "zero" : v.status == Vanishing::Nonzero ? "nonzero" : "undecided";
  auto ex = nlohmann::json::array();
  for (const auto& row : v.exact) {
    auto r = nlohmann::json::array();
    for (const auto& x : row) r.push_back(x.fits_slong_p() ? nlohmann::json(x.get_si()) : nlohmann::json(x.get_str()));
    ex.push_back(r);
  }
  j["exact"] = ex;
  if (v.method == "interval") {
    j["re"] = v.re.get_str();
    j["im"] = v.im.get_str();
    j["radius"] = v.radius.get_str();
    j["precision"] = v.precision;
  }
  return j;
}

nlohmann::json to_json(const VerdictReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["reason"] = r.reason;
  if (r.period) j["period"] = to_json(*r.period);
  return j;
}

}  // namespace qmf
