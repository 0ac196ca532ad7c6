#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmf/quat/enumerate.hpp"
#include "qmf/quat/order.hpp"

using namespace qmf;

TEST_CASE("build_algebra") {
  auto b2 = build_algebra(2);
  CHECK(b2.a == -1);
  CHECK(b2.b == -1);
  auto b11 = build_algebra(11);
  CHECK(b11.a == -1);
  CHECK(b11.b == -11);
  auto b154 = build_algebra(154);
  CHECK(b154.ramified == std::vector<std::int64_t>{2, 7, 11});
  for (std::int64_t p : prime_divisors(2 * b154.a * b154.b))
    CHECK((hilbert_symbol(b154.a, b154.b, p) == -1) == (154 % p == 0));
  CHECK_THROWS_AS(build_algebra(6), PreconditionError);
  CHECK_THROWS_AS(build_algebra(12), PreconditionError);
}

TEST_CASE("hilbert symbol product formula") {
  for (std::int64_t a = -30; a <= 30; ++a)
    for (std::int64_t b = -30; b <= 30; ++b) {
      if (a == 0 || b == 0) continue;
      int prod = hilbert_symbol(a, b, 0);
      for (std::int64_t p : prime_divisors(2 * a * b)) prod *= hilbert_symbol(a, b, p);
      CHECK(prod == 1);
    }
}

TEST_CASE("maximal orders") {
  for (std::int64_t n : {2L, 3L, 5L, 7L, 11L, 13L, 30L, 42L, 154L, 105L, 389L, 997L}) {
    auto o = maximal_order(build_algebra(n));
    CHECK(reduced_discriminant(o.algebra, o.std_basis) == Rat(n));
    // O basis Gram determinant is N^2
    CHECK(abs(det4(o.frame.gram)) == Int(n * n));
    for (int p = 0; p < 4; ++p) CHECK(qnrd(o.frame, Vec4{p == 0, p == 1, p == 2, p == 3}) >= 0);
  }
  auto o2 = maximal_order(build_algebra(2));
  CHECK(o2.std_basis.contains(Vec4{1, 1, 1, 1}, 2));
}

TEST_CASE("lll and enumeration") {
  // D4 root lattice scaled: Hurwitz order norm form has 24 units
  auto o = maximal_order(build_algebra(2));
  auto f = lll_reduce(o.frame.gram);
  auto th = theta_series(f, 3);
  CHECK(th[1] == 24);
  CHECK(th[2] == 24);
  CHECK(th[3] == 96);
  // brute force comparison on a skewed form
  Mat4 g;
  std::int64_t a[4][4] = {{8, 3, 1, 0}, {3, 10, 2, 1}, {1, 2, 12, 5}, {0, 1, 5, 14}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = a[i][j];
  // skew by a unimodular transform
  Mat4 u;
  std::int64_t ut[4][4] = {{1, 5, -3, 2}, {0, 1, 7, -4}, {0, 0, 1, 9}, {0, 0, 0, 1}};
  Mat4 sk;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Int s = 0;
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += Int(static_cast<long>(ut[i][k])) * g[k][l] * Int(static_cast<long>(ut[j][l]));
      sk[i][j] = s;
    }
  auto fr = lll_reduce(sk);
  auto t1 = theta_series(fr, 40);
  std::vector<std::int64_t> brute(41, 0);
  for (long x0 = -6; x0 <= 6; ++x0)
    for (long x1 = -6; x1 <= 6; ++x1)
      for (long x2 = -6; x2 <= 6; ++x2)
        for (long x3 = -6; x3 <= 6; ++x3) {
          long x[4] = {x0, x1, x2, x3};
          long s = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += x[i] * a[i][j] * x[j];
          if (s / 2 <= 40) brute[static_cast<std::size_t>(s / 2)]++;
        }
  CHECK(t1 == brute);
  SmallVec arg;
  CHECK(minimum(fr, &arg) == 4);
  // mapped back it is a vector of the original (skewed) basis with the same value
  Vec4 orig = fr.to_original(arg);
  Int s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) s += orig[i] * sk[i][j] * orig[j];
  CHECK(s == 8);
}

#include "qmf/quat/classes.hpp"

#include <chrono>

namespace {

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t h = a.size();
  IntMatrix c(h, std::vector<std::int64_t>(h, 0));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t k = 0; k < h; ++k)
      for (std::size_t j = 0; j < h; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::shared_ptr<const IdealClassSet> classes_for(std::int64_t n) {
  return std::make_shared<const IdealClassSet>(IdealClassSet::compute(maximal_order(build_algebra(n))));
}

}  // namespace

TEST_CASE("class numbers and weights") {
  auto c2 = classes_for(2);
  CHECK(c2->size() == 1);
  CHECK(c2->rep(0).weight == 12);
  auto c11 = classes_for(11);
  CHECK(c11->size() == 2);
  auto w = c11->weights();
  std::sort(w.begin(), w.end());
  CHECK(w == std::vector<int>{2, 3});
  auto c154 = classes_for(154);
  CHECK(c154->size() == 6);
  CHECK(c154->mass() == IdealClassSet::expected_mass(154));
  CHECK(c11->equivalent(c11->rep(0).ideal, c11->rep(0).ideal));
  CHECK_FALSE(c11->equivalent(c11->rep(0).ideal, c11->rep(1).ideal));
  // O ~ pO
  CHECK(c11->equivalent(Lattice::identity(), Lattice::identity().scaled(Rat(3))));
}

TEST_CASE("Brandt matrices at small levels") {
  auto c11 = classes_for(11);
  BrandtModule bm(c11, 12);
  auto t2 = bm.matrix(2);
  // eigenvalues 3 and -2: trace 1, det -6
  CHECK(t2[0][0] + t2[1][1] == 1);
  CHECK(t2[0][0] * t2[1][1] - t2[0][1] * t2[1][0] == -6);
  auto t11 = bm.matrix(11);
  CHECK(t11 == permutation_matrix(c11->involution(11)));
  auto c2 = classes_for(2);
  BrandtModule b2(c2, 7);
  CHECK(b2.matrix(3) == IntMatrix{{4}});
  CHECK(b2.matrix(5) == IntMatrix{{6}});
}

TEST_CASE("Brandt invariants for several levels") {
  for (std::int64_t n : {2L, 3L, 5L, 7L, 13L, 30L, 42L, 66L, 70L, 105L, 154L, 101L}) {
    CAPTURE(n);
    auto cs = classes_for(n);
    BrandtModule bm(cs, 13);
    const std::size_t h = cs->size();
    auto w = cs->weights();
    std::vector<IntMatrix> ts;
    for (std::int64_t p : primes_up_to(13)) {
      IntMatrix t = bm.matrix(p);
      for (std::size_t i = 0; i < h; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < h; ++j) {
          s += t[i][j];
          CHECK(w[j] * t[i][j] == w[i] * t[j][i]);
        }
        if (n % p != 0) CHECK(s == p + 1);
      }
      if (n % p == 0) {
        CHECK(t == permutation_matrix(cs->involution(p)));
        CHECK(mul(t, t) == permutation_matrix(Permutation([h] {
                Permutation id(h);
                for (std::size_t i = 0; i < h; ++i) id[i] = static_cast<int>(i);
                return id;
              }())));
      }
      ts.push_back(t);
    }
    for (std::size_t a = 0; a < ts.size(); ++a)
      for (std::size_t b = a + 1; b < ts.size(); ++b) CHECK(mul(ts[a], ts[b]) == mul(ts[b], ts[a]));
  }
}

TEST_CASE("N = 154 orbit structure") {
  auto t0 = std::chrono::steady_clock::now();
  auto cs = classes_for(154);
  auto s2 = cs->involution(2), s7 = cs->involution(7), s11 = cs->involution(11);
  auto fixed = [](const Permutation& s) {
    int k = 0;
    for (std::size_t i = 0; i < s.size(); ++i) k += s[i] == static_cast<int>(i);
    return k;
  };
  CHECK(fixed(s2) == 2);
  CHECK(fixed(s7) == 0);
  CHECK(fixed(s11) == 2);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 5.0);
}
