#include "qmf/exactalg/intpoly.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace qmf {

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::monomial(const Int& c, int degree) {
  std::vector<Int> v(static_cast<std::size_t>(degree) + 1, Int(0));
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x_minus(const Int& root) { return IntPoly(std::vector<Int>{-root, Int(1)}); }

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Int IntPoly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& v : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return *this;
  Int g = content();
  if (leading() < 0) g = -g;
  return exact_div(g);
}

IntPoly IntPoly::derivative() const {
  std::vector<Int> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return IntPoly(std::move(d));
}

Int IntPoly::eval(const Int& x) const {
  Int r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Rat IntPoly::eval(const Rat& x) const {
  Rat r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rat(*it);
  return r;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Int(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Int& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& v : c_) v *= s;
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
  }
  c_ = std::move(r);
  trim();
  return *this;
}

bool IntPoly::divides_into(const IntPoly& b, IntPoly* quotient) const {
  require(!b.is_zero(), "IntPoly: division by zero polynomial");
  if (is_zero()) {
    if (quotient) *quotient = IntPoly();
    return true;
  }
  if (b.degree() > degree()) return false;
  std::vector<Int> rem = c_;
  std::vector<Int> q(static_cast<std::size_t>(degree() - b.degree() + 1), Int(0));
  const Int& lb = b.leading();
  Int t;
  for (int i = degree(); i >= b.degree(); --i) {
    const Int& top = rem[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t()) == 0) return false;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    q[static_cast<std::size_t>(i - b.degree())] = t;
    for (int j = 0; j <= b.degree(); ++j)
      mpz_submul(rem[static_cast<std::size_t>(i - b.degree() + j)].get_mpz_t(), t.get_mpz_t(),
                 b.c_[static_cast<std::size_t>(j)].get_mpz_t());
  }
  for (int i = 0; i < b.degree(); ++i)
    if (rem[static_cast<std::size_t>(i)] != 0) return false;
  if (quotient) *quotient = IntPoly(std::move(q));
  return true;
}

IntPoly IntPoly::exact_div(const Int& s) const {
  IntPoly r = *this;
  for (auto& v : r.c_) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t());
  return r;
}

bool operator<(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& v = c_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    Int mag = abs(v);
    if (first) {
      if (v < 0) os << "-";
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

namespace {

// pseudo-remainder of a by b (deg a >= deg b)
IntPoly prem(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r = a.coeffs();
  const int db = b.degree();
  const Int& lb = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Int top = r[static_cast<std::size_t>(i)];
    for (auto& v : r) v *= lb;
    for (int j = 0; j <= db; ++j)
      mpz_submul(r[static_cast<std::size_t>(i - db + j)].get_mpz_t(), top.get_mpz_t(),
                 b.coeffs()[static_cast<std::size_t>(j)].get_mpz_t());
  }
  r.resize(static_cast<std::size_t>(std::max(db, 0)));
  return IntPoly(std::move(r));
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly u = a.primitive_part(), v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPoly r = prem(u, v);
    u = std::move(v);
    v = r.primitive_part();
  }
  return u.primitive_part();
}

}  // namespace qmf
