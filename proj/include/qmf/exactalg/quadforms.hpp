#pragma once

#include <cstdint>
#include <vector>

namespace qmf {

/// Primitive positive definite binary quadratic form a x^2 + b xy + c y^2.
struct BinaryForm {
  std::int64_t a, b, c;
  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool operator==(const BinaryForm& o) const { return a == o.a && b == o.b && c == o.c; }
  bool operator<(const BinaryForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

/// Reduced representative: |b| <= a <= c, b >= 0 when |b| = a or a = c.
BinaryForm reduce(BinaryForm f);

/// All reduced primitive forms of discriminant disc < 0, sorted (a, b).
std::vector<BinaryForm> reduced_forms(std::int64_t disc);

std::int64_t iq_class_number(std::int64_t disc);

/// Gaussian composition (Dirichlet / Shanks), result reduced.
BinaryForm compose(const BinaryForm& f, const BinaryForm& g);
BinaryForm inverse(const BinaryForm& f);
BinaryForm identity_form(std::int64_t disc);

}  // namespace qmf
