#include "qmf/quat/lattice.hpp"

#include <algorithm>

namespace qmf {

Frame Frame::standard(std::int64_t a, std::int64_t b) {
  Frame f;
  auto prod = [a, b](const std::array<long, 4>& x, const std::array<long, 4>& y) {
    return std::array<long, 4>{x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
                               x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
                               x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
                               x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
  };
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q) {
      std::array<long, 4> x{0, 0, 0, 0}, y{0, 0, 0, 0};
      x[p] = 1;
      y[q] = 1;
      auto z = prod(x, y);
      for (int c = 0; c < 4; ++c) f.mult[p][q][c] = z[c];
    }
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) f.conj[p][q] = 0;
    f.conj[p][p] = p == 0 ? 1 : -1;
    f.trd[p] = p == 0 ? 2 : 0;
  }
  f.finish();
  return f;
}

void Frame::finish() {
  for (int p = 0; p < 4; ++p) {
    Vec4 ep{0, 0, 0, 0};
    ep[p] = 1;
    for (int q = 0; q < 4; ++q) {
      Vec4 eq{0, 0, 0, 0};
      eq[q] = 1;
      gram[p][q] = qtrd(*this, qmul(*this, ep, qconj(*this, eq)));
    }
  }
}

Vec4 qmul(const Frame& f, const Vec4& x, const Vec4& y) {
  Vec4 z{0, 0, 0, 0};
  Int t;
  for (int a = 0; a < 4; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < 4; ++b) {
      if (y[b] == 0) continue;
      t = x[a] * y[b];
      for (int c = 0; c < 4; ++c)
        if (f.mult[a][b][c] != 0) mpz_addmul(z[c].get_mpz_t(), t.get_mpz_t(), f.mult[a][b][c].get_mpz_t());
    }
  }
  return z;
}

Vec4 qconj(const Frame& f, const Vec4& x) {
  Vec4 z{0, 0, 0, 0};
  for (int a = 0; a < 4; ++a) {
    if (x[a] == 0) continue;
    for (int b = 0; b < 4; ++b)
      if (f.conj[a][b] != 0) mpz_addmul(z[b].get_mpz_t(), x[a].get_mpz_t(), f.conj[a][b].get_mpz_t());
  }
  return z;
}

Int qtrd(const Frame& f, const Vec4& x) {
  Int t = 0;
  for (int a = 0; a < 4; ++a) t += x[a] * f.trd[a];
  return t;
}

Int qnrd(const Frame& f, const Vec4& x) {
  Int s = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) s += x[a] * f.gram[a][b] * x[b];
  ensure(s % 2 == 0, "qnrd: odd quadratic value");
  return s / 2;
}

Mat4 hnf(std::vector<Vec4> rows) {
  Mat4 out;
  std::size_t top = 0;
  for (int c = 0; c < 4; ++c) {
    // gcd-eliminate column c among rows[top..]
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        if (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])) best = r;
      }
      ensure(best != rows.size(), "hnf: lattice not of full rank");
      std::swap(rows[top], rows[best]);
      if (rows[top][c] < 0)
        for (auto& v : rows[top]) v = -v;
      bool done = true;
      Int q;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[top][c].get_mpz_t());
        for (int k = c; k < 4; ++k) mpz_submul(rows[r][k].get_mpz_t(), q.get_mpz_t(), rows[top][k].get_mpz_t());
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    ++top;
  }
  for (int r = 0; r < 4; ++r) out[r] = rows[static_cast<std::size_t>(r)];
  // reduce entries above pivots into [0, pivot)
  Int q;
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < c; ++r) {
      mpz_fdiv_q(q.get_mpz_t(), out[r][c].get_mpz_t(), out[c][c].get_mpz_t());
      if (q != 0)
        for (int k = c; k < 4; ++k) mpz_submul(out[r][k].get_mpz_t(), q.get_mpz_t(), out[c][k].get_mpz_t());
    }
  return out;
}

Lattice Lattice::from_generators(const std::vector<Vec4>& gens, const Int& den) {
  require(den > 0, "Lattice: denominator must be positive");
  Lattice l;
  l.basis = hnf(gens);
  Int g = den;
  for (const auto& row : l.basis)
    for (const auto& v : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  l.den = den / g;
  if (g != 1)
    for (auto& row : l.basis)
      for (auto& v : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return l;
}

Lattice Lattice::identity() {
  Lattice l;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) l.basis[r][c] = r == c ? 1 : 0;
  return l;
}

bool Lattice::operator<(const Lattice& o) const {
  if (den != o.den) return den < o.den;
  return basis < o.basis;
}

Int det4(const Mat4& m) {
  // fraction-free Bareiss
  Mat4 a = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < 3; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < 4 && a[p][k] == 0) ++p;
      if (p == 4) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < 4; ++i)
      for (int j = k + 1; j < 4; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[3][3];
}

Rat Lattice::covolume() const {
  Int d = abs(det4(basis));
  Int d4 = den * den * den * den;
  Rat r(d, d4);
  r.canonicalize();
  return r;
}

bool Lattice::contains(const Vec4& v, const Int& vden) const {
  // solve x * basis = v * den / vden with basis upper triangular
  Vec4 t;
  for (int c = 0; c < 4; ++c) {
    t[c] = v[c] * den;
    if (mpz_divisible_p(t[c].get_mpz_t(), vden.get_mpz_t()) == 0) return false;
    mpz_divexact(t[c].get_mpz_t(), t[c].get_mpz_t(), vden.get_mpz_t());
  }
  for (int c = 0; c < 4; ++c) {
    if (mpz_divisible_p(t[c].get_mpz_t(), basis[c][c].get_mpz_t()) == 0) return false;
    Int x;
    mpz_divexact(x.get_mpz_t(), t[c].get_mpz_t(), basis[c][c].get_mpz_t());
    for (int k = c; k < 4; ++k) t[k] -= x * basis[c][k];
  }
  return true;
}

bool Lattice::contains(const Lattice& o) const {
  for (const auto& row : o.basis)
    if (!contains(row, o.den)) return false;
  return true;
}

Lattice Lattice::scaled(const Rat& s) const {
  std::vector<Vec4> g(basis.begin(), basis.end());
  for (auto& row : g)
    for (auto& v : row) v *= s.get_num();
  Int d = den * s.get_den();
  if (s < 0)
    for (auto& row : g)
      for (auto& v : row) v = -v;
  return from_generators(g, d);
}

Lattice lattice_product(const Frame& f, const Lattice& x, const Lattice& y) {
  std::vector<Vec4> g;
  g.reserve(16);
  for (const auto& u : x.basis)
    for (const auto& v : y.basis) g.push_back(qmul(f, u, v));
  return Lattice::from_generators(g, x.den * y.den);
}

Lattice lattice_conj(const Frame& f, const Lattice& x) {
  std::vector<Vec4> g;
  for (const auto& u : x.basis) g.push_back(qconj(f, u));
  return Lattice::from_generators(g, x.den);
}

Lattice lattice_sum(const Lattice& x, const Lattice& y) {
  Int d = lcm(x.den, y.den);
  std::vector<Vec4> g;
  for (const auto& u : x.basis) {
    Vec4 w = u;
    for (auto& v : w) v *= d / x.den;
    g.push_back(w);
  }
  for (const auto& u : y.basis) {
    Vec4 w = u;
    for (auto& v : w) v *= d / y.den;
    g.push_back(w);
  }
  return Lattice::from_generators(g, d);
}

}  // namespace qmf
