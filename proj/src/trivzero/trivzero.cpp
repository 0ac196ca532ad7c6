#include "qmf/trivzero/trivzero.hpp"

#include <algorithm>
#include <numeric>

namespace qmf {

namespace {

// union-find carrying the parity of each node relative to its parent
struct ParityDsu {
  std::vector<int> parent, parity;
  std::vector<bool> conflict;
  explicit ParityDsu(std::size_t n) : parent(n), parity(n, 0), conflict(n, false) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x, int* par) {
    int p = 0;
    int r = x;
    while (parent[static_cast<std::size_t>(r)] != r) {
      p ^= parity[static_cast<std::size_t>(r)];
      r = parent[static_cast<std::size_t>(r)];
    }
    // path compression
    int cur = x, acc = p;
    while (parent[static_cast<std::size_t>(cur)] != cur) {
      int next = parent[static_cast<std::size_t>(cur)];
      int np = acc ^ parity[static_cast<std::size_t>(cur)];
      parent[static_cast<std::size_t>(cur)] = r;
      parity[static_cast<std::size_t>(cur)] = acc;
      acc = np;
      cur = next;
    }
    *par = p;
    return r;
  }
  void unite(int u, int v, int odd) {
    int pu, pv;
    int ru = find(u, &pu), rv = find(v, &pv);
    if (ru == rv) {
      if ((pu ^ pv) != odd) conflict[static_cast<std::size_t>(ru)] = true;
      return;
    }
    parent[static_cast<std::size_t>(rv)] = ru;
    parity[static_cast<std::size_t>(rv)] = pu ^ pv ^ odd;
    if (conflict[static_cast<std::size_t>(rv)]) conflict[static_cast<std::size_t>(ru)] = true;
  }
};

}  // namespace

std::vector<int> fixed_points(const Permutation& s) {
  std::vector<int> f;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == static_cast<int>(i)) f.push_back(static_cast<int>(i));
  return f;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
  return c;
}

InvolutionSet involutions(const IdealClassSet& classes) {
  InvolutionSet inv;
  inv.level = classes.level();
  for (std::int64_t p : prime_divisors(inv.level)) inv.sigma[p] = classes.involution(p);
  return inv;
}

OrbitPartition orbit_structure(const InvolutionSet& inv, const std::vector<int>& weights) {
  const std::size_t h = weights.size();
  ParityDsu dsu(h);
  for (const auto& [p, s] : inv.sigma) {
    ensure(s.size() == h, "orbit_structure: permutation size mismatch");
    for (std::size_t i = 0; i < h; ++i) dsu.unite(static_cast<int>(i), s[i], 0);
  }
  OrbitPartition out;
  out.orbit_of.assign(h, -1);
  std::map<int, int> root_to_orbit;
  for (std::size_t i = 0; i < h; ++i) {
    int par;
    int r = dsu.find(static_cast<int>(i), &par);
    auto it = root_to_orbit.find(r);
    if (it == root_to_orbit.end()) {
      it = root_to_orbit.emplace(r, static_cast<int>(out.orbits.size())).first;
      out.orbits.emplace_back();
      out.weight.push_back(weights[i]);
    }
    out.orbits[static_cast<std::size_t>(it->second)].push_back(static_cast<int>(i));
    out.orbit_of[i] = it->second;
    ensure(out.weight[static_cast<std::size_t>(it->second)] == weights[i], "orbit_structure: weight not constant on orbit");
  }
  const std::size_t w = inv.sigma.size();
  for (const auto& o : out.orbits) {
    const std::size_t sz = o.size();
    ensure((sz & (sz - 1)) == 0 && sz <= (std::size_t{1} << w), "orbit_structure: orbit size not a power of 2");
  }
  return out;
}

SignedGraph signed_graph(const InvolutionSet& inv, const SignPattern& eps) {
  SignedGraph g;
  g.eps = eps;
  for (const auto& [p, s] : inv.sigma) {
    g.vertices = s.size();
    const int sign = eps.at(p);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] >= static_cast<int>(i)) g.edges.push_back({static_cast<int>(i), s[i], p, sign});
  }
  return g;
}

TrivialZeroReport admissibility(const SignedGraph& g, const OrbitPartition& orbits) {
  const std::size_t h = orbits.orbit_of.size();
  ParityDsu dsu(h);
  for (const auto& e : g.edges) dsu.unite(e.u, e.v, e.sign < 0 ? 1 : 0);
  TrivialZeroReport rep;
  rep.eps = g.eps;
  rep.class_sign.assign(h, 0);
  for (std::size_t j = 0; j < orbits.orbits.size(); ++j) {
    const auto& o = orbits.orbits[j];
    int p0;
    int r = dsu.find(o.front(), &p0);
    for (int x : o) {
      int px;
      ensure(dsu.find(x, &px) == r, "admissibility: graph components differ from orbits");
    }
    if (dsu.conflict[static_cast<std::size_t>(r)]) {
      rep.inadmissible.push_back(static_cast<int>(j));
      for (int x : o) rep.trivial_zero_classes.push_back(x);
    } else {
      rep.admissible.push_back(static_cast<int>(j));
      rep.fundamental_domain.push_back(o.front());
      for (int x : o) {
        int px;
        dsu.find(x, &px);
        rep.class_sign[static_cast<std::size_t>(x)] = (px ^ p0) ? -1 : 1;
      }
    }
  }
  std::sort(rep.trivial_zero_classes.begin(), rep.trivial_zero_classes.end());
  return rep;
}

ZeroSplit classify_zeroes(const std::set<int>& zero_set, const TrivialZeroReport& report) {
  ZeroSplit z;
  for (int x : report.trivial_zero_classes)
    if (zero_set.count(x) == 0) throw DefectError("classify_zeroes: eigenform nonzero on an inadmissible orbit");
  std::set<int> triv(report.trivial_zero_classes.begin(), report.trivial_zero_classes.end());
  for (int x : zero_set) (triv.count(x) ? z.trivial : z.nontrivial).insert(x);
  return z;
}

}  // namespace qmf
