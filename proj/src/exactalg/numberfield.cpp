#include "qmf/exactalg/numberfield.hpp"

#include "qmf/exactalg/factor.hpp"

#include <sstream>

namespace qmf {

namespace {

using RatPoly = std::vector<Rat>;  // lowest first, possibly untrimmed

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void rp_divrem(const RatPoly& a, const RatPoly& b, RatPoly* q, RatPoly* r) {
  RatPoly rem = a;
  trim(rem);
  const std::size_t db = b.size() - 1;
  RatPoly quo(rem.size() > db ? rem.size() - db : 0, Rat(0));
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    Rat t = rem[i] / b.back();
    quo[i - db] = t;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= t * b[j];
  }
  rem.resize(std::min(rem.size(), db));
  trim(rem);
  trim(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

RatPoly from_int(const IntPoly& p) {
  RatPoly r;
  for (const auto& c : p.coeffs()) r.emplace_back(c);
  return r;
}

}  // namespace

NumberField::NumberField(IntPoly modulus, bool trusted) : modulus_(std::move(modulus)) {
  require(modulus_.degree() >= 1 && modulus_.is_monic(), "NumberField: modulus must be monic of degree >= 1");
  if (!trusted) {
    auto f = factor_int_poly(modulus_);
    require(f.size() == 1 && f[0].multiplicity == 1, "NumberField: modulus is reducible");
  }
}

NFElem::NFElem(FieldPtr field, std::vector<Rat> rep) : field_(std::move(field)), rep_(std::move(rep)) {
  require(field_ != nullptr, "NFElem: null field");
  const auto d = static_cast<std::size_t>(field_->degree());
  if (rep_.size() > d) {
    RatPoly r;
    rp_divrem(rep_, from_int(field_->modulus()), nullptr, &r);
    rep_ = r;
  }
  rep_.resize(d, Rat(0));
}

NFElem NFElem::from_rat(FieldPtr field, const Rat& r) { return NFElem(std::move(field), {r}); }

NFElem NFElem::generator(FieldPtr field) {
  std::vector<Rat> v{Rat(0), Rat(1)};
  return NFElem(std::move(field), v);
}

bool NFElem::is_zero() const {
  for (const auto& v : rep_)
    if (v != 0) return false;
  return true;
}

void NFElem::check_same(const NFElem& o) const {
  require(field_ && o.field_ && (field_ == o.field_ || field_->modulus() == o.field_->modulus()),
          "NFElem: inconsistent fields");
}

NFElem NFElem::operator+(const NFElem& o) const {
  check_same(o);
  std::vector<Rat> r = rep_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += o.rep_[i];
  return NFElem(field_, std::move(r));
}

NFElem NFElem::operator-(const NFElem& o) const {
  check_same(o);
  std::vector<Rat> r = rep_;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= o.rep_[i];
  return NFElem(field_, std::move(r));
}

NFElem NFElem::operator-() const {
  std::vector<Rat> r = rep_;
  for (auto& v : r) v = -v;
  return NFElem(field_, std::move(r));
}

NFElem NFElem::operator*(const NFElem& o) const {
  check_same(o);
  RatPoly a = rep_, b = o.rep_;
  trim(a);
  trim(b);
  return NFElem(field_, rp_mul(a, b));
}

NFElem NFElem::operator*(const Rat& s) const {
  std::vector<Rat> r = rep_;
  for (auto& v : r) v *= s;
  return NFElem(field_, std::move(r));
}

NFElem NFElem::inverse() const {
  require(!is_zero(), "NFElem: inverse of zero");
  // extended Euclid: s*a + t*m = 1
  RatPoly r0 = from_int(field_->modulus()), r1 = rep_;
  trim(r1);
  RatPoly t0, t1{Rat(1)};
  while (r1.size() > 1) {
    RatPoly q, r;
    rp_divrem(r0, r1, &q, &r);
    RatPoly nt = rp_sub(t0, rp_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  ensure(r1.size() == 1, "NFElem: modulus not irreducible");
  for (auto& v : t1) v /= r1[0];
  return NFElem(field_, t1);
}

bool NFElem::operator==(const NFElem& o) const {
  check_same(o);
  return rep_ == o.rep_;
}

Rat NFElem::trace() const {
  // power sums of the roots via Newton's identities on the monic modulus
  const int d = field_->degree();
  const IntPoly& m = field_->modulus();
  std::vector<Rat> s(static_cast<std::size_t>(d), Rat(0));
  s[0] = d;
  for (int k = 1; k < d; ++k) {
    // s_k + c_{d-1} s_{k-1} + ... + c_{d-k+1} s_1 + k c_{d-k} = 0
    Rat acc = Rat(m.coeff(d - k)) * k;
    for (int i = 1; i < k; ++i) acc += Rat(m.coeff(d - i)) * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = -acc;
  }
  Rat t = 0;
  for (int k = 0; k < d; ++k) t += rep_[static_cast<std::size_t>(k)] * s[static_cast<std::size_t>(k)];
  return t;
}

std::string NFElem::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(rep_.size()) - 1; i >= 0; --i) {
    const Rat& v = rep_[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    Rat mag = abs(v);
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
  return first ? "0" : os.str();
}

std::vector<std::vector<NFElem>> kernel_over_field(const NFMatrix& m0) {
  if (m0.empty()) return {};
  const std::size_t rows = m0.size(), cols = m0[0].size();
  FieldPtr field;
  for (const auto& row : m0) {
    require(row.size() == cols, "kernel_over_field: ragged matrix");
    for (const auto& v : row) {
      if (!field) field = v.field();
      require(v.field() && (v.field() == field || v.field()->modulus() == field->modulus()),
              "kernel_over_field: inconsistent fields");
    }
  }
  NFMatrix m = m0;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    NFElem inv = m[r][c].inverse();
    for (auto& v : m[r]) v = v * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      NFElem f = m[i][c];
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = m[i][k] - f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<NFElem>> basis;
  const NFElem zero = NFElem::from_rat(field, 0), one = NFElem::from_rat(field, 1);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<NFElem> v(cols, zero);
    v[f] = one;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qmf
