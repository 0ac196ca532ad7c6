#pragma once

#include "qmf/exactalg/integers.hpp"
#include "qmf/trivzero/signs.hpp"

#include <vector>

namespace qmf {

struct BiasTerm {
  std::int64_t d;
  Rat h_weighted;
  int b;
  std::int64_t kronecker_product;
  Rat contribution;  // includes the (1 - eps_d) / 2 factor, before division by 2^omega
};

int b_constant(std::int64_t d);
Rat weighted_class_number(std::int64_t disc);

/// Per-divisor terms of the bias sum (the 3 | N correction reported with d = 0).
std::vector<BiasTerm> bias_terms(std::int64_t n, const SignPattern& eps);
/// dim M^{+} - dim M^{eps} from the closed formula; N odd squarefree.
std::int64_t dim_bias(std::int64_t n, const SignPattern& eps);

/// True iff eps has no trivial zeroes by the divisor-set criterion.
bool no_trivial_zeroes_criterion(std::int64_t n, const SignPattern& eps);
/// The divisor set S of the criterion.
std::vector<std::int64_t> criterion_divisors(std::int64_t n);

bool sigma_p_fixed_point_free(std::int64_t p, std::int64_t n);

/// Fixed points of sigma_N at prime N > 3.
std::int64_t prime_level_trivial_zero_count(std::int64_t n);

}  // namespace qmf
