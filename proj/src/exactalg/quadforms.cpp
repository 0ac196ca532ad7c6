#include "qmf/exactalg/quadforms.hpp"

#include "qmf/exactalg/integers.hpp"

#include <algorithm>
#include <cmath>

namespace qmf {

namespace {

void check_disc(std::int64_t disc) {
  require(disc < 0, "negative discriminant required");
  const std::int64_t r = mod64(disc, 4);
  require(r == 0 || r == 1, "discriminant must be 0 or 1 mod 4");
}

std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// x with a x = 1 mod m
std::int64_t ext_inv(std::int64_t a, std::int64_t m, std::int64_t* g) {
  std::int64_t r0 = a, r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = floordiv(r0, r1);
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
  }
  *g = r0;
  return s0;
}

}  // namespace

BinaryForm reduce(BinaryForm f) {
  require(f.a > 0 && f.discriminant() < 0, "reduce: positive definite form required");
  while (true) {
    // normalize b into (-a, a]
    if (f.b <= -f.a || f.b > f.a) {
      const std::int64_t two_a = 2 * f.a;
      std::int64_t k = floordiv(f.a - f.b, two_a);
      // b' = b + 2ak in (-a, a]
      std::int64_t nb = f.b + two_a * k;
      f.c = f.a * k * k + f.b * k + f.c;
      f.b = nb;
    }
    if (f.a > f.c) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      continue;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
  }
}

std::vector<BinaryForm> reduced_forms(std::int64_t disc) {
  check_disc(disc);
  std::vector<BinaryForm> out;
  const std::int64_t d = -disc;
  for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b + d;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd64(gcd64(a, b), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t iq_class_number(std::int64_t disc) { return static_cast<std::int64_t>(reduced_forms(disc).size()); }

BinaryForm identity_form(std::int64_t disc) {
  check_disc(disc);
  const std::int64_t b = mod64(disc, 2);
  return {1, b, (b * b - disc) / 4};
}

BinaryForm inverse(const BinaryForm& f) { return reduce({f.a, -f.b, f.c}); }

BinaryForm compose(const BinaryForm& f, const BinaryForm& g) {
  const std::int64_t disc = f.discriminant();
  require(g.discriminant() == disc, "compose: discriminants differ");
  // Shanks / Cohen Alg. 5.4.7 (without NUCOMP), in 128-bit to avoid overflow
  using i128 = __int128;
  std::int64_t a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b, c2 = g.c;
  if (a1 > a2) {
    std::swap(a1, a2);
    std::swap(b1, b2);
    c2 = f.c;
  }
  const std::int64_t s = (b1 + b2) / 2;
  const std::int64_t n = b2 - s;
  std::int64_t d, y1, u, v;
  if (a2 % a1 == 0) {
    y1 = 0;
    d = a1;
  } else {
    std::int64_t g0;
    u = ext_inv(a2, a1, &g0);  // u a2 = d mod a1
    d = g0;
    y1 = u;
  }
  std::int64_t x2, y2, d1;
  if (s % d == 0) {
    y2 = -1;
    x2 = 0;
    d1 = d;
  } else {
    // x2 d + y2 s = d1
    std::int64_t r0 = s, r1 = d, p0 = 1, p1 = 0, q0 = 0, q1 = 1;
    while (r1 != 0) {
      std::int64_t q = floordiv(r0, r1);
      std::int64_t t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = p0 - q * p1;
      p0 = p1;
      p1 = t;
      t = q0 - q * q1;
      q0 = q1;
      q1 = t;
    }
    if (r0 < 0) {
      r0 = -r0;
      p0 = -p0;
      q0 = -q0;
    }
    d1 = r0;
    x2 = p0;
    y2 = -q0;
  }
  v = a1 / d1;
  u = a2 / d1;
  i128 r = (static_cast<i128>(y1) * y2 * n - static_cast<i128>(x2) * c2) % v;
  if (r < 0) r += v;
  i128 b3 = static_cast<i128>(b2) + 2 * static_cast<i128>(u) * r;
  i128 a3 = static_cast<i128>(u) * v;
  i128 c3 = (b3 * b3 - disc) / (4 * a3);
  // bring into range before narrowing
  i128 two_a = 2 * a3;
  i128 k = (a3 - b3) / two_a;
  if ((a3 - b3) % two_a != 0 && (a3 - b3) < 0) --k;
  i128 nb = b3 + two_a * k;
  i128 nc = a3 * k * k + b3 * k + c3;
  BinaryForm out{static_cast<std::int64_t>(a3), static_cast<std::int64_t>(nb), static_cast<std::int64_t>(nc)};
  ensure(out.discriminant() == disc, "compose: discriminant mismatch");
  return reduce(out);
}

}  // namespace qmf
