#include "qmf/exactalg/modpoly.hpp"

#include <algorithm>
#include <utility>

namespace qmf {

using u64 = std::uint64_t;

ModPoly::ModPoly(u64 p, std::vector<u64> c) : p_(p), c_(std::move(c)) {
  for (auto& v : c_) v %= p_;
  trim();
}

ModPoly ModPoly::from_int(const IntPoly& f, u64 p) {
  std::vector<u64> c;
  c.reserve(f.coeffs().size());
  Int pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p);
  Int r;
  for (const auto& v : f.coeffs()) {
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
    u64 w = 0;
    mpz_export(&w, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    c.push_back(w);
  }
  return ModPoly(p, std::move(c));
}

ModPoly ModPoly::x(u64 p) { return ModPoly(p, {0, 1}); }
ModPoly ModPoly::constant(u64 p, u64 c) { return ModPoly(p, {c}); }

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
  std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 a = i < c_.size() ? c_[i] : 0, b = i < o.c_.size() ? o.c_[i] : 0;
    u64 s = a + b;
    r[i] = s >= p_ ? s - p_ : s;
  }
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
  std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    u64 a = i < c_.size() ? c_[i] : 0, b = i < o.c_.size() ? o.c_[i] : 0;
    r[i] = a >= b ? a - b : a + p_ - b;
  }
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
  if (is_zero() || o.is_zero()) return ModPoly(p_);
  std::vector<unsigned __int128> acc(c_.size() + o.c_.size() - 1, 0);
  // accumulate with periodic reduction; each product < 2^124
  const std::size_t flush = 8;
  std::vector<u64> r(acc.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(c_[i]) * o.c_[j];
    if ((i + 1) % flush == 0)
      for (auto& a : acc) a %= p_;
  }
  for (std::size_t k = 0; k < acc.size(); ++k) r[k] = static_cast<u64>(acc[k] % p_);
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::scaled(u64 s) const {
  std::vector<u64> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = mulmod64(c_[i], s, p_);
  return ModPoly(p_, std::move(r));
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(invmod64(leading(), p_));
}

ModPoly ModPoly::derivative() const {
  std::vector<u64> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(mulmod64(c_[i], i % p_, p_));
  return ModPoly(p_, std::move(r));
}

void ModPoly::divrem(const ModPoly& b, ModPoly* q, ModPoly* r) const {
  ensure(!b.is_zero(), "ModPoly: division by zero");
  std::vector<u64> rem = c_;
  const int db = b.degree();
  std::vector<u64> quo(degree() >= db ? static_cast<std::size_t>(degree() - db + 1) : 0, 0);
  const u64 inv = invmod64(b.leading(), p_);
  for (int i = degree(); i >= db; --i) {
    u64 t = rem[static_cast<std::size_t>(i)];
    if (t == 0) continue;
    t = mulmod64(t, inv, p_);
    quo[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) {
      u64 sub = mulmod64(t, b.c_[static_cast<std::size_t>(j)], p_);
      u64& cell = rem[static_cast<std::size_t>(i - db + j)];
      cell = cell >= sub ? cell - sub : cell + p_ - sub;
    }
  }
  if (db >= 0) rem.resize(std::min(rem.size(), static_cast<std::size_t>(db)));
  if (q) *q = ModPoly(p_, std::move(quo));
  if (r) *r = ModPoly(p_, std::move(rem));
}

ModPoly ModPoly::operator%(const ModPoly& b) const {
  ModPoly r(p_);
  divrem(b, nullptr, &r);
  return r;
}

ModPoly ModPoly::operator/(const ModPoly& b) const {
  ModPoly q(p_);
  divrem(b, &q, nullptr);
  return q;
}

IntPoly ModPoly::lift_symmetric() const {
  std::vector<Int> out;
  out.reserve(c_.size());
  const u64 half = p_ / 2;
  for (u64 v : c_) {
    Int z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &v);
    if (v > half) {
      Int pz;
      mpz_import(pz.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &p_);
      z -= pz;
    }
    out.push_back(z);
  }
  return IntPoly(std::move(out));
}

ModPoly gcd(const ModPoly& a, const ModPoly& b) {
  ModPoly u = a, v = b;
  while (!v.is_zero()) {
    ModPoly r = u % v;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

ModPoly ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly* s, ModPoly* t) {
  const u64 p = a.modulus();
  ModPoly r0 = a, r1 = b;
  ModPoly s0 = ModPoly::constant(p, 1), s1(p);
  ModPoly t0(p), t1 = ModPoly::constant(p, 1);
  while (!r1.is_zero()) {
    ModPoly q(p), r(p);
    r0.divrem(r1, &q, &r);
    ModPoly ns = s0 - q * s1;
    ModPoly nt = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(ns);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  u64 inv = r0.is_zero() ? 1 : invmod64(r0.leading(), p);
  if (s) *s = s0.scaled(inv);
  if (t) *t = t0.scaled(inv);
  return r0.scaled(inv);
}

ModPoly powmod(const ModPoly& base, std::uint64_t e, const ModPoly& f) {
  ModPoly result = ModPoly::constant(base.modulus(), 1) % f;
  ModPoly b = base % f;
  while (e > 0) {
    if (e & 1) result = (result * b) % f;
    e >>= 1;
    if (e) b = (b * b) % f;
  }
  return result;
}

bool is_squarefree_mod(const ModPoly& f) {
  if (f.degree() <= 0) return true;
  ModPoly d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::vector<std::pair<int, ModPoly>> distinct_degree_factor(const ModPoly& f0) {
  const u64 p = f0.modulus();
  std::vector<std::pair<int, ModPoly>> out;
  ModPoly f = f0.monic();
  ModPoly xp = ModPoly::x(p);
  ModPoly h = xp % f;
  int i = 0;
  while (f.degree() >= 2 * (i + 1)) {
    ++i;
    h = powmod(h, p, f);
    ModPoly g = gcd(f, h - xp);
    if (g.degree() > 0) {
      out.emplace_back(i, g);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.degree(), f);
  return out;
}

namespace {

void equal_degree_split(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  const u64 p = f.modulus();
  // (p^d - 1)/2 exponent applied through repeated powering to avoid big integers
  while (true) {
    std::vector<u64> rc(static_cast<std::size_t>(f.degree()));
    for (auto& v : rc) v = rng() % p;
    ModPoly a(p, rc);
    if (a.degree() <= 0) continue;
    ModPoly g = gcd(f, a);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
    // b = a^((p^d-1)/2) mod f, computed as a^(1 + p + ... + p^{d-1}) then ^((p-1)/2)
    ModPoly acc = a % f;
    ModPoly cur = a % f;
    for (int k = 1; k < d; ++k) {
      cur = powmod(cur, p, f);
      acc = (acc * cur) % f;
    }
    ModPoly b = powmod(acc, (p - 1) / 2, f);
    g = gcd(f, b - ModPoly::constant(p, 1));
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
}

bool modpoly_less(const ModPoly& a, const ModPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coeffs() < b.coeffs();
}

}  // namespace

std::vector<ModPoly> factor_squarefree_mod(const ModPoly& f, std::uint64_t seed) {
  ensure(f.modulus() % 2 == 1, "factor_squarefree_mod: odd characteristic required");
  std::mt19937_64 rng(seed);
  std::vector<ModPoly> out;
  for (auto& [d, g] : distinct_degree_factor(f)) equal_degree_split(g, d, rng, out);
  std::sort(out.begin(), out.end(), modpoly_less);
  return out;
}

}  // namespace qmf
