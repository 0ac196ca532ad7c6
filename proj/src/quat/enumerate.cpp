#include "qmf/quat/enumerate.hpp"

#include <cmath>
#include <limits>

namespace qmf {

namespace {

using ld = long double;

void gram_schmidt(const Mat4& g, ld mu[4][4], ld bs[4]) {
  ld gd[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) gd[i][j] = static_cast<ld>(g[i][j].get_d());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      ld s = gd[i][j];
      for (int l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * bs[l];
      mu[i][j] = s / bs[j];
    }
    ld s = gd[i][i];
    for (int l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * bs[l];
    bs[i] = s;
  }
}

// row_k -= r row_j on basis, and the matching congruence on the Gram matrix
void reduce_row(Mat4& g, Mat4& t, int k, int j, const Int& r) {
  for (int c = 0; c < 4; ++c) t[k][c] -= r * t[j][c];
  // G' = E G E^T with E = I - r e_k e_j^T
  for (int c = 0; c < 4; ++c) g[k][c] -= r * g[j][c];
  for (int c = 0; c < 4; ++c) g[c][k] -= r * g[c][j];
}

void swap_rows(Mat4& g, Mat4& t, int a, int b) {
  std::swap(t[a], t[b]);
  std::swap(g[a], g[b]);
  for (int c = 0; c < 4; ++c) std::swap(g[c][a], g[c][b]);
}

}  // namespace

std::int64_t ReducedForm::value(const SmallVec& x) const {
  __int128 s = 0;
  for (int i = 0; i < 4; ++i) {
    if (x[i] == 0) continue;
    __int128 row = 0;
    for (int j = 0; j < 4; ++j) row += static_cast<__int128>(gram[i][j]) * x[j];
    s += row * x[i];
  }
  return static_cast<std::int64_t>(s / 2);
}

Vec4 ReducedForm::to_original(const SmallVec& x) const {
  Vec4 v{0, 0, 0, 0};
  for (int r = 0; r < 4; ++r) {
    if (x[r] == 0) continue;
    Int xr = static_cast<long>(x[r]);
    for (int c = 0; c < 4; ++c) v[c] += xr * transform[r][c];
  }
  return v;
}

ReducedForm lll_reduce(const Mat4& gram0) {
  Mat4 g = gram0, t;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t[r][c] = r == c ? 1 : 0;
  ld mu[4][4] = {}, bs[4] = {};
  int k = 1, guard = 0;
  while (k < 4) {
    ensure(++guard < 100000, "lll_reduce: no convergence");
    // size reduction, repeated while floating-point mu is still large
    for (int pass = 0; pass < 64; ++pass) {
      gram_schmidt(g, mu, bs);
      bool changed = false;
      for (int j = k - 1; j >= 0; --j) {
        ld m = mu[k][j];
        if (std::fabs(m) <= 0.51L) continue;
        Int r;
        ld rounded = std::nearbyint(m);
        mpz_set_d(r.get_mpz_t(), static_cast<double>(rounded));
        reduce_row(g, t, k, j, r);
        for (int l = 0; l < j; ++l) mu[k][l] -= rounded * mu[j][l];
        mu[k][j] -= rounded;
        changed = true;
      }
      if (!changed) break;
    }
    gram_schmidt(g, mu, bs);
    if (bs[k] < (0.99L - mu[k][k - 1] * mu[k][k - 1]) * bs[k - 1]) {
      swap_rows(g, t, k, k - 1);
      k = std::max(1, k - 1);
    } else {
      ++k;
    }
  }
  ReducedForm f;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      ensure(g[r][c].fits_slong_p() && abs(g[r][c]) < Int(1L << 40), "lll_reduce: reduced Gram entry too large");
      f.gram[r][c] = g[r][c].get_si();
    }
  f.transform = t;
  for (int r = 0; r < 4; ++r) ensure(f.gram[r][r] > 0, "lll_reduce: form not positive definite");
  return f;
}

void enumerate_short(const ReducedForm& f, std::int64_t bound,
                     const std::function<void(const SmallVec&, std::int64_t)>& visit) {
  if (bound <= 0) return;
  // q(x) = sum_i Q_ii (x_i + sum_{j>i} Q_ij x_j)^2 with Q from A/2
  ld q[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q[i][j] = static_cast<ld>(f.gram[i][j]) / 2;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (int k2 = i + 1; k2 < 4; ++k2)
      for (int l = k2; l < 4; ++l) q[k2][l] -= q[k2][i] * q[i][l];
  }
  const ld slack = 1e-9L * (1 + static_cast<ld>(bound));
  const ld cap = static_cast<ld>(bound) + slack;
  SmallVec x{0, 0, 0, 0};
  ld rem[5];
  rem[4] = cap;
  // iterative depth-first search from coordinate 3 down to 0
  std::function<void(int, bool)> rec = [&](int i, bool higher_zero) {
    ld c = 0;
    for (int j = i + 1; j < 4; ++j) c -= q[i][j] * static_cast<ld>(x[j]);
    const ld r = rem[i + 1];
    if (r < 0) return;
    const ld w = std::sqrt(r / q[i][i]) + 1e-9L;
    std::int64_t lo = static_cast<std::int64_t>(std::ceil(c - w));
    std::int64_t hi = static_cast<std::int64_t>(std::floor(c + w));
    if (higher_zero && lo < 0) lo = 0;
    for (std::int64_t v = lo; v <= hi; ++v) {
      x[i] = v;
      const ld d = static_cast<ld>(v) - c;
      rem[i] = r - q[i][i] * d * d;
      if (rem[i] < -slack) continue;
      if (i == 0) {
        if (higher_zero && v == 0) continue;
        const std::int64_t val = f.value(x);
        if (val <= bound && val > 0) visit(x, val);
      } else {
        rec(i - 1, higher_zero && v == 0);
      }
    }
    x[i] = 0;
  };
  rec(3, true);
}

std::vector<std::int64_t> theta_series(const ReducedForm& f, std::int64_t bound) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bound) + 1, 0);
  counts[0] = 1;
  enumerate_short(f, bound, [&](const SmallVec&, std::int64_t v) { counts[static_cast<std::size_t>(v)] += 2; });
  return counts;
}

std::int64_t minimum(const ReducedForm& f, SmallVec* argmin) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (int i = 0; i < 4; ++i) best = std::min(best, f.gram[i][i] / 2);
  SmallVec arg{0, 0, 0, 0};
  bool found = false;
  enumerate_short(f, best, [&](const SmallVec& x, std::int64_t v) {
    if (!found || v < best) {
      best = v;
      arg = x;
      found = true;
    }
  });
  ensure(found, "minimum: no vector found");
  if (argmin) *argmin = arg;
  return best;
}

Mat4 lattice_gram(const Lattice& l, const Mat4& g, const Rat& scale) {
  Mat4 out;
  Int d = l.den * l.den;
  Rat s = scale * Rat(d);
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c) {
      Int acc = 0;
      for (int a = 0; a < 4; ++a) {
        if (l.basis[r][a] == 0) continue;
        Int row = 0;
        for (int b = 0; b < 4; ++b) row += g[a][b] * l.basis[c][b];
        acc += l.basis[r][a] * row;
      }
      Rat v = Rat(acc) / s;
      v.canonicalize();
      ensure(v.get_den() == 1, "lattice_gram: form not integral on lattice");
      out[r][c] = v.get_num();
      out[c][r] = out[r][c];
    }
  return out;
}

}  // namespace qmf
