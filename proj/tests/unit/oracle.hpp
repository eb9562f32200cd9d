#pragma once
// Independent checks used by the unit tests. These deliberately avoid the
// Groebner engine: every quantity is computed by plain linear algebra on
// monomial coordinates in a single degree.

#include <map>
#include <vector>

#include "sheafkit/groebner.hpp"
#include "sheafkit/linalg.hpp"

namespace oracle {

using namespace sheafkit;

inline int monomial_index(const Monomial& m, int n) {
  const auto& all = monomials_of_degree(n, m.deg);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] == m) return static_cast<int>(i);
  return -1;
}

// Coordinates of a homogeneous vector in the monomial basis of F_d, where
// F = sum_j S(-tw_j). Blocks are laid out by component.
inline SparseVec coords(const Vec& v, const Twists& tw, int d, int n) {
  std::map<int, Scalar> acc;
  for (const auto& t : v) {
    int off = 0;
    for (std::uint32_t j = 0; j < t.comp; ++j)
      if (d - tw[j] >= 0) off += static_cast<int>(monomials_of_degree(n, d - tw[j]).size());
    acc[off + monomial_index(t.m, n)] += t.c;
  }
  SparseVec out;
  for (auto& [k, c] : acc)
    if (c != 0) out.e.emplace_back(k, c);
  return out;
}

inline int free_dim(const Twists& tw, int d, int n) {
  int s = 0;
  for (int a : tw)
    if (d - a >= 0) s += static_cast<int>(monomials_of_degree(n, d - a).size());
  return s;
}

// dim of the degree-d piece of the submodule generated by gens.
inline int submodule_dim(const RingPtr& ring, const Twists& tw, const std::vector<Vec>& gens, int d) {
  const int n = ring->nvars();
  std::vector<SparseVec> rows;
  for (const auto& g : gens) {
    auto gd = vec_degree(g, tw);
    if (!gd || d < *gd) continue;
    for (const auto& m : monomials_of_degree(n, d - *gd)) {
      Vec v;
      for (const auto& t : g) v.push_back({m * t.m, t.comp, t.c});
      rows.push_back(coords(v, tw, d, n));
    }
  }
  return sparse_rank(ring->field(), rows);
}

// Hilbert function of coker(relations) in degree d.
inline int hilbert(const ModulePresentation& M, int d) {
  return free_dim(M.gens(), d, M.ring()->nvars()) -
         submodule_dim(M.ring(), M.gens(), M.relations().columns(), d);
}

inline bool in_submodule(const RingPtr& ring, const Twists& tw, const std::vector<Vec>& gens, const Vec& v) {
  auto d = vec_degree(v, tw);
  if (!d) return true;
  int a = submodule_dim(ring, tw, gens, *d);
  std::vector<Vec> more = gens;
  more.push_back(v);
  return submodule_dim(ring, tw, more, *d) == a;
}

}  // namespace oracle
