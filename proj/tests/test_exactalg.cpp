#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmf/exactalg/factor.hpp"
#include "qmf/exactalg/modpoly.hpp"

#include <random>

using namespace qmf;

TEST_CASE("kronecker symbol against Euler's criterion") {
  for (std::int64_t p : primes_up_to(60)) {
    if (p == 2) continue;
    for (std::int64_t a = -30; a <= 30; ++a) {
      std::int64_t r = static_cast<std::int64_t>(powmod64(static_cast<std::uint64_t>(mod64(a, p)), (p - 1) / 2, p));
      int expect = r == 0 ? 0 : (r == 1 ? 1 : -1);
      CHECK(kronecker_symbol(a, p) == expect);
    }
  }
  CHECK(kronecker_symbol(-3, 2) == -1);
  CHECK(kronecker_symbol(-7, 2) == 1);
  CHECK(kronecker_symbol(-4, 2) == 0);
  CHECK(kronecker_symbol(5, 1) == 1);
}

TEST_CASE("integer helpers") {
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(12));
  CHECK(omega(154) == 3);
  CHECK(iq_field_discriminant(1) == -4);
  CHECK(iq_field_discriminant(3) == -3);
  CHECK(iq_field_discriminant(5) == -20);
  CHECK(iq_field_discriminant(7) == -7);
  CHECK(is_prime64(2305843009213693951ULL));
  CHECK_FALSE(is_prime64(3215031751ULL));
  CHECK(next_prime(13) == 17);
}

TEST_CASE("polynomial gcd and division") {
  IntPoly a = IntPoly{-1, 1} * IntPoly{2, 0, 1};  // (x-1)(x^2+2)
  IntPoly b = IntPoly{-1, 1} * IntPoly{3, 1};
  CHECK(gcd(a, b) == IntPoly{-1, 1});
  IntPoly q;
  CHECK(a.divides_into(IntPoly{2, 0, 1}, &q));
  CHECK(q == IntPoly{-1, 1});
  CHECK_FALSE(a.divides_into(IntPoly{3, 1}, &q));
}

TEST_CASE("modular factorization multiplies back") {
  const std::uint64_t p = 101;
  IntPoly f{1, 0, 0, 0, 0, 1, 0, 1};  // x^7 + x^5 + 1
  ModPoly fm = ModPoly::from_int(f, p);
  REQUIRE(is_squarefree_mod(fm));
  auto parts = factor_squarefree_mod(fm);
  ModPoly prod = ModPoly::constant(p, 1);
  for (auto& g : parts) prod = prod * g;
  CHECK(prod == fm.monic());
}

TEST_CASE("factor_int_poly small cases") {
  auto fs = factor_int_poly(IntPoly{-1, 0, 1});
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].factor == IntPoly{-1, 1});
  CHECK(fs[1].factor == IntPoly{1, 1});

  // x^4 + 1 is irreducible over Q but splits modulo every prime
  fs = factor_int_poly(IntPoly{1, 0, 0, 0, 1});
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].factor.degree() == 4);

  // Swinnerton-Dyer polynomial for sqrt2, sqrt3: x^4 - 10x^2 + 1
  fs = factor_int_poly(IntPoly{1, 0, -10, 0, 1});
  REQUIRE(fs.size() == 1);

  // repeated factors and non-monic input
  IntPoly g = IntPoly{1, 2} * IntPoly{1, 2} * IntPoly{-2, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{1, 1, 1};
  fs = factor_int_poly(g * Int(6));
  REQUIRE(fs.size() == 3);
  CHECK(fs[0].factor == IntPoly{1, 2});
  CHECK(fs[0].multiplicity == 2);
  CHECK(fs[1].factor == IntPoly{-2, 0, 1});
  CHECK(fs[1].multiplicity == 3);
  CHECK(fs[2].factor == IntPoly{1, 1, 1});
  CHECK(fs[2].multiplicity == 1);
}

TEST_CASE("factor_int_poly random products") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<IntPoly> parts;
    IntPoly prod{1};
    int nparts = 2 + static_cast<int>(rng() % 4);
    for (int k = 0; k < nparts; ++k) {
      int d = 1 + static_cast<int>(rng() % 5);
      std::vector<Int> c;
      for (int i = 0; i < d; ++i) c.push_back(Int(static_cast<long>(rng() % 41) - 20));
      c.push_back(Int(1));
      IntPoly q(c);
      prod *= q;
    }
    auto fs = factor_int_poly(prod);
    IntPoly back{1};
    for (auto& f : fs)
      for (int m = 0; m < f.multiplicity; ++m) back *= f.factor;
    CHECK(back == prod);
    for (auto& f : fs) CHECK(factor_int_poly(f.factor).size() == 1);
  }
}

TEST_CASE("is_squarefree") {
  CHECK(is_squarefree(IntPoly{-2, 0, 1}));
  CHECK_FALSE(is_squarefree(IntPoly{1, 2, 1}));
}

TEST_CASE("charpoly") {
  std::vector<std::vector<Int>> a{{2, 1}, {1, 2}};
  CHECK(charpoly(a) == IntPoly{3, -4, 1});
  std::vector<std::vector<Int>> b{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  CHECK(charpoly(b) == IntPoly{-1, 0, 0, 1});
  // random integer matrix: compare with Faddeev-LeVerrier over Q
  std::mt19937_64 rng(3);
  const int n = 7;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
  for (auto& r : m)
    for (auto& v : r) v = Int(static_cast<long>(rng() % 2001) - 1000);
  std::vector<std::vector<Rat>> mk(n, std::vector<Rat>(n, 0));  // M_k
  std::vector<Rat> c(n + 1, 0);
  c[n] = 1;
  for (int k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    std::vector<std::vector<Rat>> nm(n, std::vector<Rat>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat s = 0;
        for (int l = 0; l < n; ++l) s += Rat(m[i][l]) * mk[l][j];
        nm[i][j] = s + (i == j ? c[n - k + 1] : Rat(0));
      }
    mk = nm;
    Rat tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) tr += Rat(m[i][l]) * mk[l][i];
    c[n - k] = -tr / k;
  }
  IntPoly cp = charpoly(m);
  for (int i = 0; i <= n; ++i) CHECK(Rat(cp.coeff(i)) == c[i]);
}

#include "qmf/exactalg/numberfield.hpp"
#include "qmf/exactalg/quadforms.hpp"

#include <map>
#include <set>

TEST_CASE("class numbers") {
  CHECK(iq_class_number(-3) == 1);
  CHECK(iq_class_number(-4) == 1);
  CHECK(iq_class_number(-23) == 3);
  CHECK(iq_class_number(-84) == 4);
  CHECK(iq_class_number(-52) == 2);
  CHECK(iq_class_number(-163) == 1);
  CHECK_THROWS_AS(iq_class_number(-5), PreconditionError);
  CHECK_THROWS_AS(iq_class_number(4), PreconditionError);
}

// brute-force equivalence classes: reduce every form with small coefficients
TEST_CASE("reduction agrees with forms enumeration") {
  for (std::int64_t d = -3; d > -2000; --d) {
    if (mod64(d, 4) != 0 && mod64(d, 4) != 1) continue;
    auto forms = reduced_forms(d);
    std::set<BinaryForm> seen(forms.begin(), forms.end());
    for (std::int64_t a = 1; a <= 12; ++a)
      for (std::int64_t b = -3 * a; b <= 3 * a; ++b) {
        std::int64_t num = b * b - d;
        if (num % (4 * a) != 0) continue;
        BinaryForm f{a, b, num / (4 * a)};
        if (gcd64(gcd64(a, b), f.c) != 1) continue;
        CHECK(seen.count(reduce(f)) == 1);
      }
  }
}

TEST_CASE("composition is a group law") {
  for (std::int64_t d : {-23, -84, -104, -231, -420, -4 * 1009, -3 * 4 * 5 * 7 * 11 + 0}) {
    if (mod64(d, 4) != 0 && mod64(d, 4) != 1) continue;
    auto forms = reduced_forms(d);
    const BinaryForm e = identity_form(d);
    for (auto& f : forms) {
      CHECK(compose(f, e) == f);
      CHECK(compose(f, inverse(f)) == e);
      for (auto& g : forms) {
        CHECK(compose(f, g) == compose(g, f));
        for (auto& h : forms) CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
      }
    }
  }
  auto forms = reduced_forms(-23);
  BinaryForm g{2, 1, 3};
  CHECK(compose(g, g) == BinaryForm{2, -1, 3});
  CHECK(compose(compose(g, g), g) == identity_form(-23));
}

TEST_CASE("number field arithmetic") {
  auto k = std::make_shared<NumberField>(IntPoly{1, 3, 1});  // x^2 + 3x + 1, root (-3 + sqrt5)/2
  NFElem a = NFElem::generator(k);
  CHECK((a * a + a * Rat(3) + NFElem::from_rat(k, 1)).is_zero());
  NFElem b = a * Rat(2) + NFElem::from_rat(k, 5);
  CHECK(b * b.inverse() == NFElem::from_rat(k, 1));
  CHECK(a.trace() == -3);
  CHECK(NFElem::from_rat(k, 1).trace() == 2);
  CHECK_THROWS_AS(NumberField(IntPoly{-1, 0, 1}), PreconditionError);
}

TEST_CASE("kernel over a field") {
  auto q = std::make_shared<NumberField>(IntPoly{0, 1});  // Q
  NFMatrix z(2, std::vector<NFElem>(2, NFElem::from_rat(q, 0)));
  CHECK(kernel_over_field(z).size() == 2);

  NFMatrix m(3, std::vector<NFElem>(3, NFElem::from_rat(q, 0)));
  int vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = NFElem::from_rat(q, vals[i][j]);
  auto ker = kernel_over_field(m);
  REQUIRE(ker.size() == 1);
  for (int i = 0; i < 3; ++i) {
    NFElem s = NFElem::from_rat(q, 0);
    for (int j = 0; j < 3; ++j) s = s + m[i][j] * ker[0][j];
    CHECK(s.is_zero());
  }

  // (A - alpha I) over Q(sqrt5) with A having charpoly x^2 + 3x + 1
  auto k = std::make_shared<NumberField>(IntPoly{1, 3, 1});
  NFElem a = NFElem::generator(k);
  NFMatrix t{{NFElem::from_rat(k, 0) - a, NFElem::from_rat(k, -1)}, {NFElem::from_rat(k, 1), NFElem::from_rat(k, -3) - a}};
  auto kt = kernel_over_field(t);
  CHECK(kt.size() == 1);
  auto other = std::make_shared<NumberField>(IntPoly{-2, 0, 1});
  NFMatrix bad{{NFElem::from_rat(k, 1), NFElem::from_rat(other, 1)}};
  CHECK_THROWS_AS(kernel_over_field(bad), PreconditionError);
}
