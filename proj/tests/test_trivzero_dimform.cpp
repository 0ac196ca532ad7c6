#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmf/dimform/dimform.hpp"
#include "qmf/exactalg/quadforms.hpp"
#include "qmf/trivzero/trivzero.hpp"

using namespace qmf;

namespace {

struct LevelData {
  std::shared_ptr<const IdealClassSet> classes;
  InvolutionSet inv;
  OrbitPartition orbits;
};

LevelData level(std::int64_t n) {
  LevelData d;
  d.classes = std::make_shared<const IdealClassSet>(IdealClassSet::compute(maximal_order(build_algebra(n))));
  d.inv = involutions(*d.classes);
  d.orbits = orbit_structure(d.inv, d.classes->weights());
  return d;
}

SignPattern pattern(std::int64_t n, const std::string& s) {
  SignPattern p = SignPattern::from_bits(n, 0);
  for (std::size_t k = 0; k < s.size(); ++k) p.signs[k] = s[k] == '+' ? 1 : -1;
  return p;
}

}  // namespace

TEST_CASE("sign patterns") {
  auto e = pattern(154, "+--");
  CHECK(e.eps(1) == 1);
  CHECK(e.eps(14) == -1);
  CHECK(e.eps(77) == 1);
  CHECK(e.eps(154) == 1);
  CHECK(SignPattern::all(154).size() == 8);
  CHECK(SignPattern::from_bits(154, e.bits()) == e);
}

TEST_CASE("N = 154 orbits and admissibility") {
  auto d = level(154);
  CHECK(d.orbits.orbits.size() == 3);
  for (const auto& o : d.orbits.orbits) CHECK(o.size() == 2);
  auto plus = admissibility(signed_graph(d.inv, pattern(154, "+++")), d.orbits);
  CHECK(plus.admissible.size() == 3);
  CHECK(plus.trivial_zero_classes.empty());
  // the orbit on which sigma_7 and sigma_2 act but sigma_11 fixes both points (X_1 in the table)
  int x1 = -1, x2 = -1, x3 = -1;
  for (std::size_t j = 0; j < 3; ++j) {
    int a = d.orbits.orbits[j][0];
    bool f2 = d.inv.sigma[2][static_cast<std::size_t>(a)] == a, f11 = d.inv.sigma[11][static_cast<std::size_t>(a)] == a;
    if (f11) x1 = static_cast<int>(j);
    else if (f2) x3 = static_cast<int>(j);
    else x2 = static_cast<int>(j);
  }
  REQUIRE(x1 >= 0);
  REQUIRE(x2 >= 0);
  REQUIRE(x3 >= 0);
  auto r = admissibility(signed_graph(d.inv, pattern(154, "+--")), d.orbits);
  CHECK(r.admissible == std::vector<int>{x3});
  auto r4 = admissibility(signed_graph(d.inv, pattern(154, "--+")), d.orbits);
  CHECK(r4.admissible == std::vector<int>{x1});
  auto r5 = admissibility(signed_graph(d.inv, pattern(154, "---")), d.orbits);
  CHECK(r5.admissible == std::vector<int>{x2});
  std::set<int> zs(r4.trivial_zero_classes.begin(), r4.trivial_zero_classes.end());
  auto split = classify_zeroes(zs, r4);
  CHECK(split.nontrivial.empty());
  CHECK(split.trivial.size() == 4);
  CHECK_THROWS_AS(classify_zeroes({}, r4), DefectError);
}

TEST_CASE("N = 11 involution is the identity") {
  auto d = level(11);
  CHECK(fixed_points(d.inv.sigma[11]).size() == 2);
  CHECK(d.orbits.orbits.size() == 2);
  CHECK(prime_level_trivial_zero_count(11) == 2);
  CHECK(prime_level_trivial_zero_count(13) == 1);
}

TEST_CASE("b constants and weighted class numbers") {
  CHECK(b_constant(11) == 4);
  CHECK(b_constant(7) == 2);
  CHECK(b_constant(5) == 1);
  CHECK_THROWS_AS(b_constant(4), PreconditionError);
  CHECK(weighted_class_number(-4) == Rat(1, 2));
  CHECK(weighted_class_number(-3) == Rat(1, 3));
  CHECK(weighted_class_number(-11) == 1);
}

TEST_CASE("N = 105 criterion") {
  CHECK(criterion_divisors(105) == std::vector<std::int64_t>{7, 15, 105});
  int count = 0;
  for (const auto& e : SignPattern::all(105)) {
    if (e.all_plus()) continue;
    bool crit = no_trivial_zeroes_criterion(105, e);
    CHECK(crit == (dim_bias(105, e) == 0));
    if (crit) {
      ++count;
      CHECK(e.to_string() == "--+");
    }
  }
  CHECK(count == 1);
  CHECK(dim_bias(105, pattern(105, "+++")) == 0);
}

TEST_CASE("fixed-point-free involutions at N = 154") {
  CHECK(sigma_p_fixed_point_free(7, 154));
  CHECK_FALSE(sigma_p_fixed_point_free(11, 154));
  CHECK_FALSE(sigma_p_fixed_point_free(2, 154));
  CHECK_FALSE(sigma_p_fixed_point_free(13, 13));
  CHECK_THROWS_AS(sigma_p_fixed_point_free(3, 154), PreconditionError);
}

TEST_CASE("graph side equals formula side at sample levels") {
  for (std::int64_t n : {3L, 5L, 7L, 11L, 13L, 23L, 105L, 165L, 195L, 231L, 255L, 273L, 385L, 429L}) {
    CAPTURE(n);
    auto d = level(n);
    for (const auto& e : SignPattern::all(n)) {
      CAPTURE(e.to_string());
      auto r = admissibility(signed_graph(d.inv, e), d.orbits);
      CHECK(static_cast<std::int64_t>(r.inadmissible.size()) == dim_bias(n, e));
      if (!e.all_plus()) CHECK(no_trivial_zeroes_criterion(n, e) == r.inadmissible.empty());
    }
    for (std::int64_t p : prime_divisors(n))
      CHECK(sigma_p_fixed_point_free(p, n) == fixed_points(d.inv.sigma[p]).empty());
  }
}

TEST_CASE("three-prime odd levels below 10000") {
  int levels = 0, with = 0, patterns = 0;
  for (std::int64_t n = 3; n < 10000; n += 2) {
    if (!is_squarefree(n) || omega(n) != 3) continue;
    ++levels;
    int here = 0;
    for (const auto& e : SignPattern::all(n)) {
      if (e.all_plus()) continue;
      bool crit = no_trivial_zeroes_criterion(n, e);
      CHECK(crit == (dim_bias(n, e) == 0));
      here += crit;
    }
    with += here > 0;
    patterns += here;
  }
  CHECK(levels == 820);
  CHECK(with == 465);
  CHECK(patterns == 559);
}
