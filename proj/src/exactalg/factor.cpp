#include "qmf/exactalg/factor.hpp"

#include "qmf/exactalg/modpoly.hpp"

#include <algorithm>
#include <numeric>

namespace qmf {

namespace {

using u64 = std::uint64_t;

Int to_int(u64 v) {
  Int z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &v);
  return z;
}

// --- arithmetic in (Z/mZ)[x] on IntPoly with nonnegative residues ---

IntPoly reduce_mod(const IntPoly& a, const Int& m) {
  std::vector<Int> c = a.coeffs();
  for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return IntPoly(std::move(c));
}

IntPoly symmetric_mod(const IntPoly& a, const Int& m) {
  std::vector<Int> c = a.coeffs();
  Int half = m / 2;
  for (auto& v : c) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (v > half) v -= m;
  }
  return IntPoly(std::move(c));
}

IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Int& m) { return reduce_mod(a * b, m); }

// division by monic h modulo m
void divrem_monic_mod(const IntPoly& a, const IntPoly& h, const Int& m, IntPoly* q, IntPoly* r) {
  std::vector<Int> rem = reduce_mod(a, m).coeffs();
  const int dh = h.degree();
  const int da = static_cast<int>(rem.size()) - 1;
  std::vector<Int> quo(da >= dh ? static_cast<std::size_t>(da - dh + 1) : 0, Int(0));
  for (int i = da; i >= dh; --i) {
    Int t = rem[static_cast<std::size_t>(i)];
    mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
    if (t == 0) continue;
    quo[static_cast<std::size_t>(i - dh)] = t;
    for (int j = 0; j <= dh; ++j)
      mpz_submul(rem[static_cast<std::size_t>(i - dh + j)].get_mpz_t(), t.get_mpz_t(),
                 h.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
  }
  rem.resize(static_cast<std::size_t>(std::max(0, std::min(dh, da + 1))));
  if (q) *q = reduce_mod(IntPoly(std::move(quo)), m);
  if (r) *r = reduce_mod(IntPoly(std::move(rem)), m);
}

struct LiftState {
  IntPoly g, h, s, t;
};

// One quadratic Hensel step: f = g h mod m, s g + t h = 1 mod m, h monic -> same modulo m^2.
LiftState hensel_step(const IntPoly& f, const LiftState& in, const Int& m2) {
  const IntPoly& g = in.g;
  const IntPoly& h = in.h;
  const IntPoly& s = in.s;
  const IntPoly& t = in.t;
  IntPoly e = reduce_mod(f - g * h, m2);
  IntPoly q, r;
  divrem_monic_mod(s * e, h, m2, &q, &r);
  IntPoly g2 = reduce_mod(g + t * e + q * g, m2);
  IntPoly h2 = reduce_mod(h + r, m2);
  IntPoly b = reduce_mod(s * g2 + t * h2 - IntPoly{1}, m2);
  IntPoly c, d;
  divrem_monic_mod(s * b, h2, m2, &c, &d);
  IntPoly s2 = reduce_mod(s - d, m2);
  IntPoly t2 = reduce_mod(t - t * b - c * g2, m2);
  return {g2, h2, s2, t2};
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  ensure(mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) != 0, "inverse_mod: not invertible");
  return r;
}

// Lift f = lc(f) * prod(factors) mod ell to modulus ell^k >= target; returns monic lifts.
std::vector<IntPoly> multifactor_lift(const IntPoly& f, const std::vector<ModPoly>& factors, u64 ell,
                                      const Int& target, Int* modulus_out) {
  const std::size_t r = factors.size();
  Int ellz = to_int(ell);
  Int m = ellz;
  int steps = 0;
  while (m <= target) {
    m = m * m;
    ++steps;
  }
  *modulus_out = m;
  std::vector<IntPoly> lifted;
  IntPoly current = f;  // polynomial to be split at this stage (lc of f on first stage, monic after)
  for (std::size_t i = 0; i + 1 < r; ++i) {
    ModPoly rest = ModPoly::constant(ell, 1);
    for (std::size_t j = i + 1; j < r; ++j) rest = rest * factors[j];
    const ModPoly lcmod = ModPoly::from_int(IntPoly(std::vector<Int>{current.leading()}), ell);
    ModPoly gi = factors[i] * lcmod;  // leading coefficient matches current
    ModPoly s(ell), t(ell);
    ModPoly one = ext_gcd(gi, rest, &s, &t);
    ensure(one.degree() == 0, "multifactor_lift: factors not coprime");
    LiftState st{reduce_mod(gi.lift_symmetric(), ellz), reduce_mod(rest.lift_symmetric(), ellz),
                 reduce_mod(s.lift_symmetric(), ellz), reduce_mod(t.lift_symmetric(), ellz)};
    Int mm = ellz;
    for (int k = 0; k < steps; ++k) {
      mm = mm * mm;
      st = hensel_step(current, st, mm);
    }
    // make the lifted g monic
    Int inv = inverse_mod(st.g.leading(), m);
    lifted.push_back(reduce_mod(st.g * inv, m));
    current = st.h;  // monic modulo m
  }
  lifted.push_back(reduce_mod(current, m));
  return lifted;
}

Int mignotte_target(const IntPoly& f) {
  Int norm2 = 0;
  for (const auto& v : f.coeffs()) norm2 += v * v;
  Int nrm = sqrt(norm2) + 1;
  Int lc = abs(f.leading());
  Int b = lc * nrm;
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(f.degree()));
  return 2 * b + 1;
}

std::size_t count_factors(const ModPoly& f) {
  std::size_t n = 0;
  for (const auto& [d, g] : distinct_degree_factor(f)) n += static_cast<std::size_t>(g.degree() / d);
  return n;
}

// f primitive, squarefree, deg >= 1, positive leading coefficient.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  if (f.degree() <= 1) return {f};
  // choose a prime with few modular factors
  u64 best_ell = 0;
  std::size_t best_count = 0;
  int good = 0;
  for (u64 ell = 3; good < 6 && ell < 100000; ell += 2) {
    if (!is_prime64(ell)) continue;
    ModPoly fm = ModPoly::from_int(f, ell);
    if (fm.degree() != f.degree() || !is_squarefree_mod(fm)) continue;
    ++good;
    std::size_t c = count_factors(fm.monic());
    if (c == 1) return {f};
    if (best_ell == 0 || c < best_count) {
      best_ell = ell;
      best_count = c;
    }
  }
  ensure(best_ell != 0, "zassenhaus: no suitable prime");
  const u64 ell = best_ell;
  std::vector<ModPoly> modf = factor_squarefree_mod(ModPoly::from_int(f, ell).monic());
  Int M;
  std::vector<IntPoly> lifts = multifactor_lift(f, modf, ell, mignotte_target(f), &M);

  std::vector<IntPoly> found;
  IntPoly F = f;
  std::vector<std::size_t> alive(lifts.size());
  std::iota(alive.begin(), alive.end(), 0);
  std::size_t s = 1;
  while (2 * s <= alive.size()) {
    bool restarted = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      const Int L = F.leading();
      Int c0 = L;
      for (std::size_t k : idx) c0 *= lifts[alive[k]].coeff(0);
      mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), M.get_mpz_t());
      if (c0 > M / 2) c0 -= M;
      const Int F0 = L * F.coeff(0);
      bool pass = (F0 == 0) ? true : (c0 != 0 && mpz_divisible_p(F0.get_mpz_t(), c0.get_mpz_t()) != 0);
      if (pass) {
        IntPoly g(std::vector<Int>{L});
        for (std::size_t k : idx) g = mul_mod(g, lifts[alive[k]], M);
        g = symmetric_mod(g, M).primitive_part();
        IntPoly quo;
        if (g.degree() > 0 && F.divides_into(g, &quo)) {
          found.push_back(g);
          F = quo.primitive_part();
          std::vector<std::size_t> next;
          for (std::size_t k = 0; k < alive.size(); ++k)
            if (std::find(idx.begin(), idx.end(), k) == idx.end()) next.push_back(alive[k]);
          alive = std::move(next);
          restarted = true;
          break;
        }
      }
      // next combination
      int pos = static_cast<int>(s) - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == alive.size() - s + static_cast<std::size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (std::size_t k = static_cast<std::size_t>(pos) + 1; k < s; ++k) idx[k] = idx[k - 1] + 1;
    }
    if (!restarted) ++s;
  }
  if (F.degree() > 0) found.push_back(F);
  return found;
}

IntPoly monic_if_possible(const IntPoly& g) {
  IntPoly pp = g.primitive_part();
  return pp;
}

}  // namespace

bool is_squarefree(const IntPoly& p) {
  require(!p.is_zero(), "is_squarefree: zero polynomial");
  if (p.degree() <= 1) return true;
  int tried = 0;
  for (u64 ell = (1ULL << 61) - 1; tried < 4; ell -= 2) {
    if (!is_prime64(ell)) continue;
    ModPoly fm = ModPoly::from_int(p, ell);
    if (fm.degree() != p.degree()) continue;
    ++tried;
    if (is_squarefree_mod(fm)) return true;
  }
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<PolyFactor> factor_int_poly(const IntPoly& p) {
  require(!p.is_zero(), "factor_int_poly: zero polynomial");
  std::vector<PolyFactor> out;
  IntPoly f = p.primitive_part();
  if (f.degree() <= 0) return out;
  IntPoly sqfree = f;
  if (!is_squarefree(f)) {
    IntPoly g = gcd(f, f.derivative());
    IntPoly q;
    ensure(f.divides_into(g, &q), "factor_int_poly: gcd does not divide");
    sqfree = q.primitive_part();
  }
  std::vector<IntPoly> irreducibles = zassenhaus(sqfree);
  for (auto& q : irreducibles) {
    q = monic_if_possible(q);
    int mult = 0;
    IntPoly rest = f;
    IntPoly quo;
    while (rest.divides_into(q, &quo)) {
      rest = quo;
      ++mult;
    }
    ensure(mult > 0, "factor_int_poly: factor does not divide input");
    out.push_back({q, mult});
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.factor < b.factor; });
  return out;
}

namespace {

// charpoly of an n x n matrix over F_ell via Hessenberg reduction
std::vector<u64> charpoly_mod(std::vector<std::vector<u64>> h, u64 ell) {
  const std::size_t n = h.size();
  auto sub = [ell](u64 a, u64 b) { return a >= b ? a - b : a + ell - b; };
  auto add = [ell](u64 a, u64 b) {
    u64 s = a + b;
    return s >= ell ? s - ell : s;
  };
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j + 1; i < n; ++i)
      if (h[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (std::size_t r = 0; r < n; ++r) std::swap(h[r][piv], h[r][j + 1]);
    }
    const u64 inv = invmod64(h[j + 1][j], ell);
    for (std::size_t i = j + 2; i < n; ++i) {
      if (h[i][j] == 0) continue;
      const u64 u = mulmod64(h[i][j], inv, ell);
      for (std::size_t c = 0; c < n; ++c) h[i][c] = sub(h[i][c], mulmod64(u, h[j + 1][c], ell));
      for (std::size_t r = 0; r < n; ++r) h[r][j + 1] = add(h[r][j + 1], mulmod64(u, h[r][i], ell));
    }
  }
  std::vector<std::vector<u64>> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<u64> cur(m + 1, 0);
    const u64 d = h[m - 1][m - 1];
    for (std::size_t k = 0; k < p[m - 1].size(); ++k) {
      cur[k + 1] = add(cur[k + 1], p[m - 1][k]);
      cur[k] = sub(cur[k], mulmod64(d, p[m - 1][k], ell));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = mulmod64(t, h[m - i][m - i - 1], ell);
      const u64 coef = mulmod64(t, h[m - i - 1][m - 1], ell);
      if (coef == 0) continue;
      for (std::size_t k = 0; k < p[m - i - 1].size(); ++k)
        cur[k] = sub(cur[k], mulmod64(coef, p[m - i - 1][k], ell));
    }
    p[m] = std::move(cur);
  }
  return p[n];
}

}  // namespace

IntPoly charpoly(const std::vector<std::vector<Int>>& a) {
  const std::size_t n = a.size();
  for (const auto& row : a) require(row.size() == n, "charpoly: matrix not square");
  if (n == 0) return IntPoly{1};
  Int rho = 0;
  for (const auto& row : a) {
    Int s = 0;
    for (const auto& v : row) s += abs(v);
    if (s > rho) rho = s;
  }
  Int bound;
  mpz_pow_ui(bound.get_mpz_t(), Int(rho + 1).get_mpz_t(), static_cast<unsigned long>(n));
  const Int target = 2 * bound + 1;

  std::vector<Int> acc(n + 1, Int(0));
  Int modulus = 1;
  for (u64 ell = (1ULL << 62) - 57; modulus <= target; ell -= 2) {
    if (!is_prime64(ell)) continue;
    const Int ellz = to_int(ell);
    std::vector<std::vector<u64>> m(n, std::vector<u64>(n));
    Int r;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        mpz_fdiv_r(r.get_mpz_t(), a[i][j].get_mpz_t(), ellz.get_mpz_t());
        u64 w = 0;
        mpz_export(&w, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
        m[i][j] = w;
      }
    std::vector<u64> cp = charpoly_mod(std::move(m), ell);
    // CRT combine: x = acc mod modulus, x = cp mod ell
    const Int inv = inverse_mod(modulus % ellz, ellz);
    for (std::size_t k = 0; k <= n; ++k) {
      Int diff = to_int(cp[k]) - acc[k];
      mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), ellz.get_mpz_t());
      diff = (diff * inv) % ellz;
      acc[k] += modulus * diff;
    }
    modulus *= ellz;
  }
  Int half = modulus / 2;
  for (auto& v : acc)
    if (v > half) v -= modulus;
  return IntPoly(std::move(acc));
}

}  // namespace qmf
