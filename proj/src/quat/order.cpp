#include "qmf/quat/order.hpp"

#include <optional>

namespace qmf {

namespace {

// smallest lattice containing l and extra that is closed under products; nullopt when some
// element fails to be integral
std::optional<Lattice> ring_closure(const Frame& f, const Lattice& l, const Vec4& extra, const Int& extra_den) {
  std::vector<Vec4> gens;
  Int d = lcm(l.den, extra_den);
  for (const auto& r : l.basis) {
    Vec4 w = r;
    for (auto& v : w) v *= d / l.den;
    gens.push_back(w);
  }
  Vec4 e = extra;
  for (auto& v : e) v *= d / extra_den;
  gens.push_back(e);
  Lattice cur = Lattice::from_generators(gens, d);
  for (int iter = 0; iter < 64; ++iter) {
    for (const auto& r : cur.basis) {
      Int t = qtrd(f, r), n = qnrd(f, r);
      if (t % cur.den != 0 || n % (cur.den * cur.den) != 0) return std::nullopt;
    }
    std::vector<Vec4> g;
    Int dd = cur.den * cur.den;
    for (const auto& r : cur.basis) {
      Vec4 w = r;
      for (auto& v : w) v *= cur.den;
      g.push_back(w);
    }
    for (const auto& x : cur.basis)
      for (const auto& y : cur.basis) g.push_back(qmul(f, x, y));
    Lattice next = Lattice::from_generators(g, dd);
    if (next == cur) return cur;
    cur = next;
  }
  return std::nullopt;
}

bool sqrt_mod(std::int64_t a, std::int64_t p, std::int64_t* root) {
  a = mod64(a, p);
  for (std::int64_t c = 0; c < p; ++c)
    if (mod64(c * c - a, p) == 0) {
      *root = c;
      return true;
    }
  return false;
}

Mat4 invert_rows(const Lattice& l, Int* den_out);

}  // namespace

Rat reduced_discriminant(const QuaternionAlgebra& b, const Lattice& l) {
  // Z<1,i,j,k> has reduced discriminant 4|ab|
  Rat cov = l.covolume();
  Rat d = cov * Rat(4 * std::abs(b.a) * std::abs(b.b));
  d.canonicalize();
  return d;
}

std::array<Rat, 4> MaximalOrder::to_standard(const Vec4& v, const Int& den) const {
  std::array<Rat, 4> out{Rat(0), Rat(0), Rat(0), Rat(0)};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[c] += Rat(v[r] * std_basis.basis[r][c]);
  for (auto& x : out) {
    x /= Rat(den * std_basis.den);
    x.canonicalize();
  }
  return out;
}

namespace {

Mat4 invert_rows(const Lattice& l, Int* den_out) {
  // inverse of the integer basis matrix as (adjugate-style) rational matrix with common denominator
  std::array<std::array<Rat, 8>, 4> m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 8; ++c) m[r][c] = c < 4 ? Rat(l.basis[r][c]) : Rat(c - 4 == r ? 1 : 0);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    Rat inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (int r = 0; r < 4; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat t = m[r][c];
      for (int k = 0; k < 8; ++k) m[r][k] -= t * m[c][k];
    }
  }
  Int d = 1;
  for (int r = 0; r < 4; ++r)
    for (int c = 4; c < 8; ++c) d = lcm(d, Int(m[r][c].get_den()));
  Mat4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Rat v = m[r][c + 4] * Rat(d);
      out[r][c] = v.get_num();
    }
  *den_out = d;
  return out;
}

}  // namespace

MaximalOrder maximal_order(const QuaternionAlgebra& b) {
  const Frame std_frame = Frame::standard(b.a, b.b);
  const Int n = b.discriminant;
  Lattice cur = Lattice::identity();
  // odd split primes dividing ab
  for (std::int64_t p : prime_divisors(std::abs(b.a * b.b))) {
    if (p == 2 || b.discriminant % p == 0) continue;
    Vec4 w;
    std::int64_t c = 0;
    if (b.b % p == 0) {
      ensure(sqrt_mod(b.a, p, &c), "maximal_order: a is not a square at a split prime");
      w = {0, 0, c, 1};  // (c j + k) / p
    } else {
      ensure(sqrt_mod(b.b, p, &c), "maximal_order: b is not a square at a split prime");
      w = {0, c, 0, -1};  // (c i - k) / p
    }
    auto next = ring_closure(std_frame, cur, w, p);
    ensure(next.has_value(), "maximal_order: failed to saturate at an odd prime");
    cur = *next;
  }
  // 2-adic saturation by search over (1/2)O / O
  for (int round = 0; round < 8 && reduced_discriminant(b, cur) != Rat(n); ++round) {
    bool grew = false;
    for (int mask = 1; mask < 16 && !grew; ++mask) {
      Vec4 x{0, 0, 0, 0};
      for (int r = 0; r < 4; ++r)
        if (mask & (1 << r))
          for (int c = 0; c < 4; ++c) x[c] += cur.basis[r][c];
      const Int xden = 2 * cur.den;
      if (cur.contains(x, xden)) continue;
      auto next = ring_closure(std_frame, cur, x, xden);
      if (next) {
        cur = *next;
        grew = true;
      }
    }
    ensure(grew, "maximal_order: 2-adic saturation stalled");
  }
  ensure(reduced_discriminant(b, cur) == Rat(n), "maximal_order: discriminant mismatch");
  ensure(cur.contains(Vec4{1, 0, 0, 0}, 1), "maximal_order: 1 not in order");

  MaximalOrder o;
  o.algebra = b;
  o.std_basis = cur;
  // structure constants in the O basis: coords = v * B^{-1}
  Int inv_den;
  Mat4 inv = invert_rows(cur, &inv_den);
  auto to_o = [&](const Vec4& v, const Int& vden) {
    // v / vden in standard coords; O-coords = (v/vden) * (B/den)^{-1} = v * den * inv / (vden * inv_den)
    Vec4 out;
    for (int c = 0; c < 4; ++c) {
      Int s = 0;
      for (int r = 0; r < 4; ++r) s += v[r] * inv[r][c];
      s *= cur.den;
      Int q = vden * inv_den;
      ensure(mpz_divisible_p(s.get_mpz_t(), q.get_mpz_t()) != 0, "maximal_order: product leaves the order");
      mpz_divexact(out[c].get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
    }
    return out;
  };
  const Int dd = cur.den * cur.den;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      Vec4 z = to_o(qmul(std_frame, cur.basis[p], cur.basis[q]), dd);
      for (int c = 0; c < 4; ++c) o.frame.mult[p][q][c] = z[c];
    }
    o.frame.conj[p] = to_o(qconj(std_frame, cur.basis[p]), cur.den);
    Int t = qtrd(std_frame, cur.basis[p]);
    ensure(t % cur.den == 0, "maximal_order: non-integral trace");
    o.frame.trd[p] = t / cur.den;
  }
  o.frame.finish();
  return o;
}

}  // namespace qmf
