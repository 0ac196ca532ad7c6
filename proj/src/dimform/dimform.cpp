#include "qmf/dimform/dimform.hpp"

#include "qmf/exactalg/quadforms.hpp"

namespace qmf {

namespace {

void require_odd_level(std::int64_t n) {
  require(n >= 3 && n % 2 == 1 && is_squarefree(n), "level must be odd and squarefree");
}

}  // namespace

int b_constant(std::int64_t d) {
  require(d > 0 && d % 2 == 1, "b_constant: d must be odd and positive");
  if (d % 4 == 1) return 1;
  if (d % 8 == 7) return 2;
  return 4;
}

Rat weighted_class_number(std::int64_t disc) {
  if (disc == -3) return Rat(1, 3);
  if (disc == -4) return Rat(1, 2);
  return Rat(iq_class_number(disc));
}

std::vector<BiasTerm> bias_terms(std::int64_t n, const SignPattern& eps) {
  require_odd_level(n);
  require(eps.level == n, "bias_terms: sign pattern for a different level");
  std::vector<BiasTerm> out;
  for (std::int64_t d : divisors(n)) {
    if (d == 1) continue;
    BiasTerm t;
    t.d = d;
    const std::int64_t disc = iq_field_discriminant(d);
    t.h_weighted = weighted_class_number(disc);
    t.b = b_constant(d);
    t.kronecker_product = 1;
    for (std::int64_t p : prime_divisors(n / d)) t.kronecker_product *= 1 - kronecker_symbol(disc, p);
    t.contribution = Rat(1 - eps.eps(d), 2) * t.h_weighted * Rat(t.b) * Rat(t.kronecker_product);
    t.contribution.canonicalize();
    out.push_back(t);
  }
  if (n % 3 == 0) {
    BiasTerm t;
    t.d = 0;
    t.h_weighted = Rat(1, 3);
    t.b = 1;
    t.kronecker_product = 1;
    for (std::int64_t p : prime_divisors(n / 3)) t.kronecker_product *= 1 - kronecker_symbol(-3, p);
    t.contribution = Rat(1 - eps.eps(3), 3) * Rat(t.kronecker_product);
    t.contribution.canonicalize();
    out.push_back(t);
  }
  return out;
}

std::int64_t dim_bias(std::int64_t n, const SignPattern& eps) {
  Rat total = 0;
  for (const auto& t : bias_terms(n, eps)) {
    ensure(t.contribution >= 0, "dim_bias: negative term at odd level");
    total += t.contribution;
  }
  total /= Rat(Int(1) << static_cast<unsigned>(omega(n)));
  total.canonicalize();
  ensure(total.get_den() == 1, "dim_bias: non-integral value " + to_string(total));
  return total.get_num().get_si();
}

std::vector<std::int64_t> criterion_divisors(std::int64_t n) {
  require_odd_level(n);
  std::vector<std::int64_t> s;
  for (std::int64_t d : divisors(n)) {
    if (d == 1) continue;
    const std::int64_t disc = iq_field_discriminant(d);
    bool all = true;
    for (std::int64_t p : prime_divisors(n / d)) all = all && kronecker_symbol(disc, p) == -1;
    if (all) s.push_back(d);
  }
  return s;
}

bool no_trivial_zeroes_criterion(std::int64_t n, const SignPattern& eps) {
  require(eps.level == n, "criterion: sign pattern for a different level");
  for (std::int64_t d : criterion_divisors(n))
    if (eps.eps(d) != 1) return false;
  if (n % 3 == 0 && eps.at(3) != 1) {
    bool has = false;
    for (std::int64_t p : prime_divisors(n)) has = has || p % 3 == 1;
    if (!has) return false;
  }
  return true;
}

bool sigma_p_fixed_point_free(std::int64_t p, std::int64_t n) {
  require(n > 0 && p > 1 && n % p == 0 && is_prime64(static_cast<std::uint64_t>(p)), "sigma_p_fixed_point_free: p must divide N");
  const auto qs = prime_divisors(n);
  if (p % 2 == 1) {
    for (std::int64_t q : qs)
      if (q % 2 == 1 && q != p && kronecker_symbol(-p, q) == 1) return true;
    if (p % 8 == 7 && n % 2 == 0) return true;
    return false;
  }
  bool kron = false, one_mod_four = false;
  for (std::int64_t q : qs) {
    kron = kron || kronecker_symbol(-2, q) == 1;
    one_mod_four = one_mod_four || q % 4 == 1;
  }
  return kron && one_mod_four;
}

std::int64_t prime_level_trivial_zero_count(std::int64_t n) {
  require(n > 3 && is_prime64(static_cast<std::uint64_t>(n)), "prime_level_trivial_zero_count: N must be a prime > 3");
  const std::int64_t v = iq_class_number(iq_field_discriminant(n)) * b_constant(n);
  ensure(v % 2 == 0, "prime_level_trivial_zero_count: odd product");
  return v / 2;
}

}  // namespace qmf
