#pragma once

// Brute-force reference computations. They share no code with the library
// beyond the Graph container and the weight types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "bzphylo/graph.hpp"
#include "bzphylo/weights.hpp"

namespace oracle {

using bzphylo::graphs::Graph;

// Graphs covering the (g, n) types used across the suite.
inline std::vector<Graph> graph_suite() {
  using namespace bzphylo::graphs;
  return {tripod(),           four_leaf_tree(),    caterpillar6(),      snowflake6(),
          make_gamma_gn(1, 1), make_gamma_gn(1, 2), make_gamma_gn(1, 3), make_gamma_gn(2, 2)};
}

inline int vertex_sum(const Graph& g, std::size_t v, const std::vector<int>& labels, int m) {
  int s = 0;
  for (const auto& h : g.incidence(v)) {
    const auto& e = g.edge(h.edge);
    s += (h.side == e.primary_side) ? labels[h.edge] : m - labels[h.edge];
  }
  return s % m;
}

// All labellings in Z/m of the edges with zero sums at inner vertices; leaf
// edges listed in `fixed` keep their prescribed label.
inline std::vector<std::vector<int>> zero_sum_labellings(const Graph& g, int m,
                                                         const std::map<std::size_t, int>& fixed = {}) {
  std::vector<std::vector<int>> out;
  std::vector<int> labels(g.edge_count(), 0);
  for (const auto& [e, a] : fixed) labels[e] = ((a % m) + m) % m;
  std::vector<std::size_t> free;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!fixed.count(e)) free.push_back(e);
  }
  const auto inner = g.inner_vertices();
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == free.size()) {
      for (auto v : inner) {
        if (vertex_sum(g, v, labels, m) != 0) return;
      }
      out.push_back(labels);
      return;
    }
    for (int a = 0; a < m; ++a) {
      labels[free[k]] = a;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// Graded coordinates of a labelling: per edge, indicator of each nonzero label.
inline std::vector<int> coords_of(const std::vector<int>& labels, int m) {
  std::vector<int> c(labels.size() * static_cast<std::size_t>(m - 1), 0);
  for (std::size_t e = 0; e < labels.size(); ++e) {
    if (labels[e] != 0) c[e * static_cast<std::size_t>(m - 1) + static_cast<std::size_t>(labels[e] - 1)] = 1;
  }
  return c;
}

// Number of distinct sums of d degree-one elements. For trees this is the
// Hilbert function; with cycles the semigroup is the larger fiber product.
inline std::uint64_t hilbert(const Graph& g, int m, int d) {
  const auto base = zero_sum_labellings(g, m);
  std::vector<std::vector<int>> gens;
  for (const auto& l : base) gens.push_back(coords_of(l, m));
  std::set<std::vector<int>> seen;
  std::vector<int> acc(gens.empty() ? 0 : gens[0].size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
    if (left == 0) {
      seen.insert(acc);
      return;
    }
    for (std::size_t i = from; i < gens.size(); ++i) {
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += gens[i][k];
      rec(i, left - 1);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] -= gens[i][k];
    }
  };
  rec(0, d);
  return seen.size();
}

// Number of degree-d elements of the fiber product of the vertex stars: each
// inner vertex carries a sum of d local zero-sum labellings, and the two
// ends of an internal edge must read reversed marginals.
inline std::uint64_t hilbert_fiber(const Graph& g, int m, int d) {
  const auto inner = g.inner_vertices();
  const std::size_t w = static_cast<std::size_t>(m - 1);
  // local elements per vertex: one marginal vector per incident half-edge
  std::vector<std::vector<std::vector<std::vector<int>>>> local(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const auto& inc = g.incidence(inner[i]);
    std::vector<std::vector<int>> labellings;
    std::vector<int> l(inc.size(), 0);
    std::function<void(std::size_t)> gen = [&](std::size_t k) {
      if (k == inc.size()) {
        if (std::accumulate(l.begin(), l.end(), 0) % m == 0) labellings.push_back(l);
        return;
      }
      for (int a = 0; a < m; ++a) {
        l[k] = a;
        gen(k + 1);
      }
    };
    gen(0);
    std::set<std::vector<std::vector<int>>> seen;
    std::vector<std::vector<int>> acc(inc.size(), std::vector<int>(w, 0));
    std::function<void(std::size_t, int)> sum = [&](std::size_t from, int left) {
      if (left == 0) {
        seen.insert(acc);
        return;
      }
      for (std::size_t j = from; j < labellings.size(); ++j) {
        for (std::size_t k = 0; k < inc.size(); ++k) {
          if (labellings[j][k]) ++acc[k][static_cast<std::size_t>(labellings[j][k] - 1)];
        }
        sum(j, left - 1);
        for (std::size_t k = 0; k < inc.size(); ++k) {
          if (labellings[j][k]) --acc[k][static_cast<std::size_t>(labellings[j][k] - 1)];
        }
      }
    };
    sum(0, d);
    local[i].assign(seen.begin(), seen.end());
  }
  // half-edge -> (vertex slot, position)
  std::map<std::pair<std::size_t, int>, std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const auto& inc = g.incidence(inner[i]);
    for (std::size_t k = 0; k < inc.size(); ++k) where[{inc[k].edge, inc[k].side}] = {i, k};
  }
  std::vector<std::size_t> choice(inner.size());
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == inner.size()) {
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (g.edge(e).leaf) continue;
        const auto [i0, k0] = where.at({e, 0});
        const auto [i1, k1] = where.at({e, 1});
        const auto& x = local[i0][choice[i0]][k0];
        auto y = local[i1][choice[i1]][k1];
        std::reverse(y.begin(), y.end());
        if (x != y) return;
      }
      ++count;
      return;
    }
    for (std::size_t c = 0; c < local[i].size(); ++c) {
      choice[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

// Kostka number: semistandard tableaux of shape `shape` with content `content`.
inline std::uint64_t kostka(const std::vector<int>& shape, const std::vector<int>& content) {
  const int letters = static_cast<int>(content.size());
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < static_cast<int>(shape.size()); ++r) {
    for (int c = 0; c < shape[static_cast<std::size_t>(r)]; ++c) cells.push_back({r, c});
  }
  if (std::accumulate(content.begin(), content.end(), 0) != static_cast<int>(cells.size())) return 0;
  std::map<std::pair<int, int>, int> t;
  std::vector<int> left = content;
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == cells.size()) {
      ++count;
      return;
    }
    const auto [r, c] = cells[k];
    int lo = 1;
    if (c > 0) lo = std::max(lo, t[{r, c - 1}]);
    if (r > 0) lo = std::max(lo, t[{r - 1, c}] + 1);
    for (int x = lo; x <= letters; ++x) {
      if (left[static_cast<std::size_t>(x - 1)] == 0) continue;
      --left[static_cast<std::size_t>(x - 1)];
      t[{r, c}] = x;
      rec(k + 1);
      ++left[static_cast<std::size_t>(x - 1)];
    }
  };
  rec(0);
  return count;
}

inline std::vector<int> partition_of(const bzphylo::weights::DominantWeight& w) {
  std::vector<int> p(static_cast<std::size_t>(w.m), 0);
  for (int j = w.m - 2; j >= 0; --j) p[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j + 1)] + w.coords[static_cast<std::size_t>(j)];
  return p;
}

// dim (V_l (x) V_u (x) V_v)^SL_m as the coefficient of s_kappa in s_l s_u,
// kappa the partition of v* padded with full columns, via
// c = sum_sigma sgn(sigma) K_{u, kappa + delta - sigma(l + delta)}.
inline long long invariant_dim(const bzphylo::weights::DominantWeight& l, const bzphylo::weights::DominantWeight& u,
                               const bzphylo::weights::DominantWeight& v) {
  const int m = l.m;
  auto pl = partition_of(l), pu = partition_of(u);
  std::vector<int> vdual(v.coords.rbegin(), v.coords.rend());
  auto pk = partition_of(bzphylo::weights::DominantWeight(m, vdual));
  const int total = std::accumulate(pl.begin(), pl.end(), 0) + std::accumulate(pu.begin(), pu.end(), 0);
  const int kappa = std::accumulate(pk.begin(), pk.end(), 0);
  if (total < kappa || (total - kappa) % m != 0) return 0;
  for (auto& x : pk) x += (total - kappa) / m;
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  long long c = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    std::vector<int> content(static_cast<std::size_t>(m));
    bool ok = true;
    for (int i = 0; i < m; ++i) {
      const int src = perm[static_cast<std::size_t>(i)];
      const int x = pk[static_cast<std::size_t>(i)] + (m - 1 - i) - (pl[static_cast<std::size_t>(src)] + (m - 1 - src));
      if (x < 0) ok = false;
      content[static_cast<std::size_t>(i)] = x;
    }
    if (!ok) continue;
    const long long k = static_cast<long long>(kostka(pu, content));
    c += (inversions % 2 ? -k : k);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return c;
}

}  // namespace oracle
