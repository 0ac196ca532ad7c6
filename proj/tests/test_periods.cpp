#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qmf/periods/periods.hpp"

#include <algorithm>

using namespace qmf;

TEST_CASE("class groups") {
  auto k4 = iq_field(4);
  CHECK(k4.h() == 1);
  CHECK(k4.structure.empty());
  auto k23 = iq_field(23);
  CHECK(k23.h() == 3);
  CHECK(k23.structure == std::vector<std::int64_t>{3});
  CHECK(k23.characters.size() == 3);
  auto k84 = iq_field(84);
  CHECK(k84.structure == std::vector<std::int64_t>{2, 2});
  CHECK(k84.one_class_per_genus());
  auto k56 = iq_field(56);
  CHECK(k56.structure == std::vector<std::int64_t>{4});
  std::vector<std::int64_t> orders;
  for (const auto& c : k56.characters) orders.push_back(c.order);
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<std::int64_t>{1, 2, 4, 4});
  CHECK_THROWS_AS(iq_field(12), PreconditionError);
  CHECK_THROWS_AS(iq_field(7 * 4), PreconditionError);
}

namespace {

const GaloisOrbit* by_signs(const Spectrum& s, int degree, const std::string& signs) {
  for (const auto& o : s.orbits)
    if (!o.form.is_eisenstein && o.form.degree == degree && o.form.sign_pattern.to_string() == signs) return &o;
  return nullptr;
}

}  // namespace

TEST_CASE("N = 154 periods") {
  auto data = LevelData::compute(154, 20);
  auto s = split_spectrum(data);
  const auto* phi12 = by_signs(s, 2, "+++");
  const auto* phi3 = by_signs(s, 1, "+--");
  const auto* phi4 = by_signs(s, 1, "--+");
  const auto* phi5 = by_signs(s, 1, "---");
  REQUIRE(phi12);
  REQUIRE(phi3);
  REQUIRE(phi4);
  REQUIRE(phi5);
  for (std::int64_t D : {4, 11, 67, 163}) {
    CAPTURE(D);
    REQUIRE(embeds(D, 154));
    auto k = iq_field(D);
    auto e = embed(k, data);
    auto m = ideal_class_map(e, k, data);
    CHECK(check_class_map(m, k, data).empty());
    CHECK(nonvanishing_verdict(phi12->form, k, m, 0).verdict == Verdict::LNonzero);
    CHECK(nonvanishing_verdict(phi5->form, k, m, 0).verdict == Verdict::ForcedZero);
    const auto p3 = period(phi3->form, k, m, 0).status;
    const auto p4 = period(phi4->form, k, m, 0).status;
    if (D == 4) {
      CHECK(p3 == Vanishing::Nonzero);
      CHECK(p4 == Vanishing::Zero);
    }
    if (D == 11) {
      CHECK(p3 == Vanishing::Zero);
      CHECK(p4 == Vanishing::Nonzero);
    }
  }
  for (std::int64_t D : {3, 7, 8, 15}) CHECK_FALSE(embeds(D, 154));
}

TEST_CASE("class map identities and character sums") {
  for (std::int64_t n : {2, 3, 5, 11, 30, 37, 42, 70, 105, 154, 231}) {
    auto data = LevelData::compute(n, 20);
    auto s = split_spectrum(data);
    for (std::int64_t D = 3; D <= 100; ++D) {
      if (D % 4 != 0 && D % 4 != 3) continue;
      IQField k;
      try {
        k = iq_field(D);
      } catch (const PreconditionError&) {
        continue;
      }
      if (!embeds(D, n)) continue;
      CAPTURE(n);
      CAPTURE(D);
      auto e = embed(k, data);
      auto m = ideal_class_map(e, k, data);
      // the twist is a non-square exactly when no embedding satisfies the untwisted identity
      REQUIRE(m.twist >= 0);
      bool square = false;
      for (std::size_t b = 0; b < k.h(); ++b)
        if (k.table[b][b] == m.twist) square = true;
      CHECK(square == (m.twist == 0));
      CHECK(check_class_map(m, k, data).empty() == (m.twist == 0));
      for (const auto& o : s.orbits) {
        CHECK(character_sum_identity(o.form, k, m));
        if (o.form.is_eisenstein) continue;
        for (std::size_t c = 0; c < k.characters.size(); ++c) {
          auto v = nonvanishing_verdict(o.form, k, m, c);
          CHECK(v.verdict != Verdict::Undecided);
        }
        if (!o.form.vanishes_at(static_cast<std::size_t>(m.map[0]))) CHECK(find_nonvanishing_character(o.form, k, m).has_value());
      }
    }
  }
}

TEST_CASE("a level where o_K only reaches classes moved by sigma_N") {
  auto data = LevelData::compute(37, 20);
  auto k = iq_field(15);
  auto m = ideal_class_map(embed(k, data), k, data);
  const auto& sig = data.involutions.sigma.at(37);
  // sigma_37 fixes class 0 and swaps 1, 2; only 1 and 2 have left orders containing o_K
  CHECK(sig == std::vector<int>{0, 2, 1});
  CHECK(m.map == std::vector<int>{1, 2});
  CHECK(m.twist == 1);
  CHECK_FALSE(check_class_map(m, k, data).empty());

  // the weight-one form 37a has P = 0 but a nonzero genus twist
  auto s = split_spectrum(data);
  const GaloisOrbit* minus = nullptr;
  for (const auto& o : s.orbits)
    if (o.form.sign_pattern.to_string() == "-") minus = &o;
  REQUIRE(minus);
  CHECK(period(minus->form, k, m, 0).status == Vanishing::Zero);
  CHECK(period(minus->form, k, m, 1).status == Vanishing::Nonzero);
  CHECK(nonvanishing_verdict(minus->form, k, m, 0).verdict == Verdict::ForcedZero);
  CHECK(nonvanishing_verdict(minus->form, k, m, 1).verdict == Verdict::LNonzero);
}
