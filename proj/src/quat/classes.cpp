#include "qmf/quat/classes.hpp"

#include <algorithm>
#include <set>

namespace qmf {

namespace {

constexpr std::int64_t kInvariantSpan = 3;

Lattice element_times(const Frame& f, const Vec4& x, const Int& xden, const Lattice& l) {
  std::vector<Vec4> g;
  for (const auto& r : l.basis) g.push_back(qmul(f, x, r));
  return Lattice::from_generators(g, xden * l.den);
}

Vec4 lattice_vector(const Lattice& l, const Vec4& coords) {
  Vec4 v{0, 0, 0, 0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) v[c] += coords[r] * l.basis[r][c];
  return v;
}

std::int64_t to_i64(const Rat& r) {
  ensure(r.get_den() == 1 && r.get_num().fits_slong_p(), "expected a small integer");
  return r.get_num().get_si();
}

}  // namespace

Rat IdealClassSet::ideal_norm(const Lattice& ideal) {
  Rat cov = ideal.covolume();
  Int num, den;
  ensure(is_square(cov.get_num(), &num) && is_square(cov.get_den(), &den), "ideal_norm: index is not a square");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat IdealClassSet::expected_mass(std::int64_t n) {
  Rat m(1, 12);
  for (std::int64_t p : prime_divisors(n)) m *= Rat(p - 1);
  m.canonicalize();
  return m;
}

Rat IdealClassSet::mass() const {
  Rat m = 0;
  for (const auto& r : reps_) m += Rat(1, r.weight);
  m.canonicalize();
  return m;
}

std::vector<int> IdealClassSet::weights() const {
  std::vector<int> w;
  for (const auto& r : reps_) w.push_back(r.weight);
  return w;
}

int IdealClassSet::unit_weight(const Lattice& ideal, std::int64_t norm) const {
  const Frame& f = order_->frame;
  Lattice l = lattice_product(f, ideal, lattice_conj(f, ideal));
  ReducedForm rf = lll_reduce(lattice_gram(l, f.gram, Rat(norm) * Rat(norm)));
  auto th = theta_series(rf, 1);
  ensure(th[1] % 2 == 0 && th[1] >= 2, "unit_weight: odd unit count");
  return static_cast<int>(th[1] / 2);
}

ClassRep IdealClassSet::reduce(const Lattice& ideal) const {
  const Frame& f = order_->frame;
  const Rat n = ideal_norm(ideal);
  ReducedForm rf = lll_reduce(lattice_gram(ideal, f.gram, n));
  SmallVec arg;
  const std::int64_t m = minimum(rf, &arg);
  Vec4 x = lattice_vector(ideal, rf.to_original(arg));  // over ideal.den
  Lattice j = element_times(f, qconj(f, x), ideal.den, ideal).scaled(1 / n);
  ensure(j.den == 1, "reduce: representative is not integral");
  ClassRep c;
  c.ideal = j;
  c.norm = m;
  ensure(ideal_norm(j) == Rat(m), "reduce: unexpected norm");
  c.form = lll_reduce(lattice_gram(j, f.gram, Rat(m)));
  auto th = theta_series(c.form, m + kInvariantSpan);
  c.invariant.assign(th.begin() + 1, th.end());
  return c;
}

bool IdealClassSet::equivalent(const Lattice& i, const Lattice& j) const {
  const Frame& f = order_->frame;
  const Rat ni = ideal_norm(i), nj = ideal_norm(j);
  Lattice l = lattice_product(f, i, lattice_conj(f, j));
  ReducedForm rf = lll_reduce(lattice_gram(l, f.gram, ni * nj));
  bool found = false;
  enumerate_short(rf, 1, [&](const SmallVec&, std::int64_t) { found = true; });
  return found;
}

bool IdealClassSet::same_class(const ClassRep& a, const ClassRep& b) const {
  if (a.invariant != b.invariant) return false;
  return equivalent(a.ideal, b.ideal);
}

int IdealClassSet::classify(const Lattice& ideal) const {
  ClassRep c = reduce(ideal);
  auto [lo, hi] = by_invariant_.equal_range(c.invariant);
  for (auto it = lo; it != hi; ++it)
    if (equivalent(c.ideal, reps_[static_cast<std::size_t>(it->second)].ideal)) return it->second;
  throw DefectError("classify: ideal matches no known class");
}

IdealClassSet IdealClassSet::compute(const MaximalOrder& o) {
  IdealClassSet cs;
  cs.order_ = std::make_shared<const MaximalOrder>(o);
  const Frame& f = cs.order_->frame;
  const std::int64_t n = o.level();
  std::int64_t p = 2;
  while (n % p == 0) p = next_prime(p);
  cs.neighbour_prime_ = p;
  const Rat target = expected_mass(n);

  ClassRep start = cs.reduce(Lattice::identity());
  start.weight = cs.unit_weight(start.ideal, start.norm);
  cs.reps_.push_back(start);
  cs.by_invariant_.emplace(start.invariant, 0);

  const Int pz = p;
  for (std::size_t head = 0; head < cs.reps_.size() && cs.mass() < target; ++head) {
    const ClassRep parent = cs.reps_[head];
    // all J = xO + pI with x in I, q_I(x) = 0 mod p, x not in pI
    std::set<Lattice> neigh;
    std::vector<SmallVec> pts;
    for (std::int64_t lead = 0; lead < 4; ++lead) {
      // projective points with first nonzero coordinate (from the top) at position lead equal to 1
      const std::int64_t free = 3 - lead;
      std::int64_t total = 1;
      for (int k = 0; k < free; ++k) total *= p;
      for (std::int64_t t = 0; t < total; ++t) {
        SmallVec c{0, 0, 0, 0};
        c[static_cast<std::size_t>(3 - lead)] = 1;
        std::int64_t u = t;
        for (int k = 0; k < free; ++k) {
          c[static_cast<std::size_t>(k)] = u % p;
          u /= p;
        }
        if (parent.form.value(c) % p == 0) pts.push_back(c);
      }
    }
    for (const auto& c : pts) {
      Vec4 x = lattice_vector(parent.ideal, parent.form.to_original(c));
      std::vector<Vec4> g;
      for (int a = 0; a < 4; ++a) {
        Vec4 e{0, 0, 0, 0};
        e[a] = 1;
        g.push_back(qmul(f, x, e));
      }
      for (const auto& r : parent.ideal.basis) {
        Vec4 w = r;
        for (auto& v : w) v *= pz;
        g.push_back(w);
      }
      neigh.insert(Lattice::from_generators(g, 1));
    }
    ensure(static_cast<std::int64_t>(neigh.size()) == p + 1, "ideal_classes: wrong number of neighbours");
    std::vector<ClassRep> fresh;
    for (const auto& j : neigh) {
      ensure(ideal_norm(j) == Rat(parent.norm * p), "ideal_classes: neighbour has wrong norm");
      ClassRep c = cs.reduce(j);
      bool known = false;
      auto [lo, hi] = cs.by_invariant_.equal_range(c.invariant);
      for (auto it = lo; it != hi && !known; ++it)
        known = cs.same_class(c, cs.reps_[static_cast<std::size_t>(it->second)]);
      for (const auto& d : fresh)
        if (!known) known = cs.same_class(c, d);
      if (!known) fresh.push_back(c);
    }
    std::sort(fresh.begin(), fresh.end(), [](const ClassRep& a, const ClassRep& b) {
      if (a.invariant != b.invariant) return a.invariant < b.invariant;
      return a.ideal < b.ideal;
    });
    for (auto& c : fresh) {
      if (cs.mass() >= target) break;
      c.weight = cs.unit_weight(c.ideal, c.norm);
      cs.by_invariant_.emplace(c.invariant, static_cast<int>(cs.reps_.size()));
      cs.reps_.push_back(c);
    }
  }
  const Rat m = cs.mass();
  ensure(m <= target, "ideal_classes: mass overshoot (equivalence test failure)");
  ensure(m == target, "ideal_classes: mass not reached");
  return cs;
}

Lattice IdealClassSet::left_order(std::size_t i) const {
  const Frame& f = order_->frame;
  const auto& r = reps_[i];
  return lattice_product(f, r.ideal, lattice_conj(f, r.ideal)).scaled(Rat(1, r.norm));
}

Lattice IdealClassSet::two_sided_prime(std::int64_t p) const {
  require(p > 1 && level() % p == 0 && is_prime64(static_cast<std::uint64_t>(p)), "two_sided_prime: p must divide N");
  const Frame& f = order_->frame;
  // kernel of the trace form modulo p, then P = pO + lifts
  std::int64_t m[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = mod64(Int(f.gram[r][c] % Int(p)).get_si(), p);
  int piv_col[4] = {-1, -1, -1, -1};
  int rank = 0;
  for (int c = 0; c < 4 && rank < 4; ++c) {
    int pr = -1;
    for (int r = rank; r < 4; ++r)
      if (m[r][c] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m[pr], m[rank]);
    std::int64_t inv = static_cast<std::int64_t>(invmod64(static_cast<std::uint64_t>(m[rank][c]), static_cast<std::uint64_t>(p)));
    for (int k = 0; k < 4; ++k) m[rank][k] = mod64(m[rank][k] * inv, p);
    for (int r = 0; r < 4; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      std::int64_t t = m[r][c];
      for (int k = 0; k < 4; ++k) m[r][k] = mod64(m[r][k] - t * m[rank][k], p);
    }
    piv_col[rank++] = c;
  }
  std::vector<Vec4> g;
  for (int a = 0; a < 4; ++a) {
    Vec4 e{0, 0, 0, 0};
    e[a] = p;
    g.push_back(e);
  }
  for (int fc = 0; fc < 4; ++fc) {
    bool pivot = false;
    for (int k = 0; k < rank; ++k) pivot = pivot || piv_col[k] == fc;
    if (pivot) continue;
    Vec4 v{0, 0, 0, 0};
    v[fc] = 1;
    for (int k = 0; k < rank; ++k) v[piv_col[k]] = mod64(-m[k][fc], p);
    g.push_back(v);
  }
  Lattice pl = Lattice::from_generators(g, 1);
  ensure(ideal_norm(pl) == Rat(p), "two_sided_prime: wrong norm");
  const Lattice o = Lattice::identity();
  ensure(pl.contains(lattice_product(f, o, pl)) && pl.contains(lattice_product(f, pl, o)),
         "two_sided_prime: not two-sided");
  return pl;
}

Permutation IdealClassSet::involution(std::int64_t p) const {
  const Lattice pl = two_sided_prime(p);
  Permutation s(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i)
    s[i] = classify(lattice_product(order_->frame, reps_[i].ideal, pl));
  for (std::size_t i = 0; i < s.size(); ++i)
    ensure(s[static_cast<std::size_t>(s[i])] == static_cast<int>(i), "involution: not of order 2");
  return s;
}

IntMatrix permutation_matrix(const Permutation& s) {
  IntMatrix m(s.size(), std::vector<std::int64_t>(s.size(), 0));
  for (std::size_t i = 0; i < s.size(); ++i) m[i][static_cast<std::size_t>(s[i])] = 1;
  return m;
}

BrandtModule::BrandtModule(std::shared_ptr<const IdealClassSet> classes, std::int64_t bound)
    : classes_(std::move(classes)), bound_(bound) {
  require(bound >= 1, "BrandtModule: bound must be positive");
  const auto& cs = *classes_;
  const Frame& f = cs.order().frame;
  const std::size_t h = cs.size();
  std::vector<Lattice> conj;
  for (std::size_t j = 0; j < h; ++j) conj.push_back(lattice_conj(f, cs.rep(j).ideal));
  theta_.reserve(h * (h + 1) / 2);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = i; j < h; ++j) {
      Lattice l = lattice_product(f, cs.rep(i).ideal, conj[j]);
      Rat scale = Rat(cs.rep(i).norm) * Rat(cs.rep(j).norm);
      ReducedForm rf = lll_reduce(lattice_gram(l, f.gram, scale));
      theta_.push_back(theta_series(rf, bound_));
    }
  for (std::size_t i = 0; i < h; ++i)
    ensure(count(i, i, 1) == 2 * cs.rep(i).weight, "BrandtModule: unit count mismatch");
  (void)to_i64;
}

std::int64_t BrandtModule::count(std::size_t i, std::size_t j, std::int64_t n) const {
  require(n >= 0 && n <= bound_, "BrandtModule: n beyond theta bound");
  if (i > j) std::swap(i, j);
  const std::size_t h = classes_->size();
  const std::size_t idx = i * h - i * (i - 1) / 2 + (j - i);
  return theta_[idx][static_cast<std::size_t>(n)];
}

IntMatrix BrandtModule::matrix(std::int64_t n) const {
  require(n >= 1 && n <= bound_, "brandt_matrix: n must be in [1, bound]");
  const auto& cs = *classes_;
  const std::size_t h = cs.size();
  IntMatrix t(h, std::vector<std::int64_t>(h, 0));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      const std::int64_t c = count(i, j, n);
      const std::int64_t w = 2 * cs.rep(j).weight;
      ensure(c % w == 0, "brandt_matrix: non-integral entry");
      t[i][j] = c / w;
    }
  return t;
}

}  // namespace qmf
