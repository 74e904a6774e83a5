#include <algorithm>
#include <map>
#include <memory>
#include <numeric>

#include "bzphylo/cyclic.hpp"
#include "star.hpp"

namespace bzphylo::cyclic {

using graphs::Graph;
using graphs::HalfEdge;

void check_modulus(int m) {
  if (m < 2) throw ValidationError("modulus must be at least 2");
}

PhyloElement PhyloElement::zero(const Graph& g, int m, int degree) {
  check_modulus(m);
  PhyloElement x;
  x.m = m;
  x.degree = degree;
  x.coords.assign(g.edge_count(), std::vector<int>(static_cast<std::size_t>(m - 1), 0));
  return x;
}

PhyloElement to_element(const Graph& g, const EdgeLabelling& x) {
  if (x.labels.size() != g.edge_count()) throw ValidationError("labelling size mismatch");
  PhyloElement out = PhyloElement::zero(g, x.m, 1);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const int a = mod(x.labels[e], x.m);
    if (a != 0) out.coords[e][static_cast<std::size_t>(a - 1)] = 1;
  }
  return out;
}

PhyloElement add(const PhyloElement& a, const PhyloElement& b) {
  if (a.m != b.m || a.coords.size() != b.coords.size()) {
    throw ValidationError("elements live in different semigroups");
  }
  PhyloElement out = a;
  out.degree += b.degree;
  for (std::size_t e = 0; e < a.coords.size(); ++e) {
    for (std::size_t i = 0; i < a.coords[e].size(); ++i) out.coords[e][i] += b.coords[e][i];
  }
  return out;
}

void validate_element(const Graph& g, const PhyloElement& x) {
  check_modulus(x.m);
  if (x.degree < 0) throw ValidationError("degree must be nonnegative");
  if (x.coords.size() != g.edge_count()) throw ValidationError("element has wrong edge count");
  for (const auto& c : x.coords) {
    if (c.size() != static_cast<std::size_t>(x.m - 1)) {
      throw ValidationError("edge coordinate vector must have m-1 entries");
    }
    int total = 0;
    for (int v : c) {
      if (v < 0) throw ValidationError("negative coordinate");
      total += v;
    }
    if (total > x.degree) throw ValidationError("edge coordinates exceed degree");
  }
}

bool satisfies_vertex_sums(const Graph& g, const EdgeLabelling& x) {
  if (x.labels.size() != g.edge_count()) return false;
  for (auto v : g.inner_vertices()) {
    long long sum = 0;
    for (const HalfEdge& h : g.incidence(v)) sum += g.sign(h) * x.labels[h.edge];
    if (mod(sum, x.m) != 0) return false;
  }
  return true;
}

EdgeLabelling negate(const EdgeLabelling& x) {
  EdgeLabelling out = x;
  for (auto& a : out.labels) a = mod(-a, x.m);
  return out;
}

std::vector<PhyloElement> tripod_vertices(int m) {
  check_modulus(m);
  const Graph t = graphs::tripod();
  std::vector<PhyloElement> out;
  auto make = [&](int a1, int a2, int a3) {
    return to_element(t, EdgeLabelling{m, {a1, a2, a3}});
  };
  out.push_back(make(0, 0, 0));
  for (int i = 1; i < m; ++i) out.push_back(make(i, m - i, 0));
  for (int i = 1; i < m; ++i) out.push_back(make(0, i, m - i));
  for (int i = 1; i < m; ++i) out.push_back(make(i, 0, m - i));
  for (int i = 1; i < m; ++i) {
    for (int j = 1; j < m; ++j) {
      const int k = mod(-i - j, m);
      if (k != 0) out.push_back(make(i, j, k));
    }
  }
  return out;
}

namespace {

void require_connected(const Graph& g) {
  if (!g.connected()) throw ValidationError("graph must be connected");
}

// Backtracking over edges with a vertex check once all of a vertex's edges
// are fixed. `check(v)` returns false to prune.
template <class Assign, class Check, class Emit>
void edge_backtrack(const Graph& g, std::size_t options, Assign assign,
                    Check check, Emit emit, Budget& budget) {
  std::vector<std::vector<std::size_t>> closes(g.edge_count());
  for (auto v : g.inner_vertices()) {
    std::size_t last = 0;
    for (const HalfEdge& h : g.incidence(v)) last = std::max(last, h.edge);
    if (g.degree(v) > 0) closes[last].push_back(v);
  }
  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == g.edge_count()) {
      emit();
      return;
    }
    for (std::size_t o = 0; o < options; ++o) {
      budget.charge();
      assign(e, o);
      bool ok = true;
      for (auto v : closes[e]) {
        if (!check(v)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, e + 1);
    }
  };
  rec(rec, 0);
}

class StarCache {
 public:
  StarCache(const detail::MarginalCodec& codec, int d, Budget& budget)
      : codec_(codec), d_(d), budget_(budget) {}

  const detail::StarSemigroup& get(std::size_t k) {
    auto it = cache_.find(k);
    if (it == cache_.end()) {
      it = cache_.emplace(k, std::make_unique<detail::StarSemigroup>(codec_, k, d_, budget_))
               .first;
    }
    return *it->second;
  }

 private:
  const detail::MarginalCodec& codec_;
  int d_;
  Budget& budget_;
  std::map<std::size_t, std::unique_ptr<detail::StarSemigroup>> cache_;
};

// Marginal id of half-edge h given the edge's primary-end marginal id.
std::size_t seen_from(const Graph& g, const detail::MarginalCodec& codec, HalfEdge h,
                      std::size_t primary_id) {
  return g.sign(h) > 0 ? primary_id : codec.reversed(primary_id);
}

std::vector<std::size_t> local_ids(const Graph& g, const detail::MarginalCodec& codec,
                                   std::size_t v, const std::vector<std::size_t>& edge_ids) {
  std::vector<std::size_t> out;
  for (const HalfEdge& h : g.incidence(v)) out.push_back(seen_from(g, codec, h, edge_ids[h.edge]));
  return out;
}

}  // namespace

std::vector<EdgeLabelling> degree_one_elements(const Graph& g, int m) {
  check_modulus(m);
  require_connected(g);
  Budget budget(std::numeric_limits<std::uint64_t>::max());
  std::vector<EdgeLabelling> out;
  EdgeLabelling cur{m, std::vector<int>(g.edge_count(), 0)};
  edge_backtrack(
      g, static_cast<std::size_t>(m),
      [&](std::size_t e, std::size_t o) { cur.labels[e] = static_cast<int>(o); },
      [&](std::size_t v) {
        long long sum = 0;
        for (const HalfEdge& h : g.incidence(v)) sum += g.sign(h) * cur.labels[h.edge];
        return mod(sum, m) == 0;
      },
      [&] { out.push_back(cur); }, budget);
  return out;
}

namespace {

struct Layout {
  std::vector<std::size_t> order;            // inner vertices, parents first
  std::vector<std::optional<HalfEdge>> parent;  // per vertex: half-edge to parent
  std::vector<bool> tree_edge;
  std::vector<std::size_t> cut_edges;        // internal edges outside the tree
};

Layout spanning_layout(const Graph& g) {
  Layout L;
  L.parent.assign(g.vertex_count(), std::nullopt);
  L.tree_edge.assign(g.edge_count(), false);
  const auto inner = g.inner_vertices();
  if (inner.empty()) throw ValidationError("graph has no inner vertex");
  std::vector<bool> seen(g.vertex_count(), false);
  seen[inner.front()] = true;
  L.order.push_back(inner.front());
  for (std::size_t i = 0; i < L.order.size(); ++i) {
    const auto v = L.order[i];
    for (const HalfEdge& h : g.incidence(v)) {
      const auto& e = g.edge(h.edge);
      if (e.leaf || e.is_loop()) continue;
      const auto w = e.ends[1 - h.side];
      if (seen[w]) continue;
      seen[w] = true;
      L.tree_edge[h.edge] = true;
      L.parent[w] = HalfEdge{h.edge, 1 - h.side};
      L.order.push_back(w);
    }
  }
  for (auto e : g.internal_edges()) {
    if (!L.tree_edge[e]) L.cut_edges.push_back(e);
  }
  return L;
}

}  // namespace

std::uint64_t hilbert_value(const Graph& g, int m, int d, Budget& budget) {
  check_modulus(m);
  if (d < 0) throw ValidationError("degree must be nonnegative");
  require_connected(g);
  if (d == 0) return 1;
  const detail::MarginalCodec codec(m, d);
  StarCache stars(codec, d, budget);
  const Layout L = spanning_layout(g);
  const std::size_t S = codec.size();

  std::vector<std::size_t> cut_value(g.edge_count(), 0);
  std::vector<std::vector<std::uint64_t>> table(g.vertex_count());
  std::uint64_t total = 0;

  auto run_dp = [&]() {
    std::uint64_t root_total = 0;
    for (std::size_t i = L.order.size(); i-- > 0;) {
      const auto v = L.order[i];
      const auto& halves = g.incidence(v);
      const auto& star = stars.get(halves.size());
      std::optional<std::size_t> parent_pos;
      for (std::size_t j = 0; j < halves.size(); ++j) {
        if (L.parent[v] && halves[j] == *L.parent[v]) parent_pos = j;
      }
      auto& out = table[v];
      out.assign(S, 0);
      for (auto key : star.level(d)) {
        budget.charge();
        const auto ids = star.decode(key);
        std::uint64_t w = 1;
        for (std::size_t j = 0; j < halves.size() && w != 0; ++j) {
          if (parent_pos && j == *parent_pos) continue;
          const HalfEdge h = halves[j];
          const auto& e = g.edge(h.edge);
          if (e.leaf) continue;
          if (L.tree_edge[h.edge]) {
            const auto child = e.ends[1 - h.side];
            w = checked_mul(w, table[child][codec.reversed(ids[j])]);
          } else if (ids[j] != seen_from(g, codec, h, cut_value[h.edge])) {
            w = 0;
          }
        }
        if (w == 0) continue;
        if (parent_pos) {
          auto& slot = out[ids[*parent_pos]];
          slot = checked_add(slot, w);
        } else {
          root_total = checked_add(root_total, w);
        }
      }
    }
    return root_total;
  };

  auto rec = [&](auto&& self, std::size_t c) -> void {
    if (c == L.cut_edges.size()) {
      total = checked_add(total, run_dp());
      return;
    }
    for (std::size_t id = 0; id < S; ++id) {
      cut_value[L.cut_edges[c]] = id;
      self(self, c + 1);
    }
  };
  rec(rec, 0);
  return total;
}

std::vector<PhyloElement> elements_of_degree(const Graph& g, int m, int d, Budget& budget) {
  check_modulus(m);
  if (d < 0) throw ValidationError("degree must be nonnegative");
  require_connected(g);
  const detail::MarginalCodec codec(m, d);
  StarCache stars(codec, d, budget);
  std::vector<std::size_t> ids(g.edge_count(), 0);
  std::vector<PhyloElement> out;
  edge_backtrack(
      g, codec.size(), [&](std::size_t e, std::size_t o) { ids[e] = o; },
      [&](std::size_t v) {
        return stars.get(g.degree(v)).contains(local_ids(g, codec, v, ids), d);
      },
      [&] {
        PhyloElement x = PhyloElement::zero(g, m, d);
        for (std::size_t e = 0; e < g.edge_count(); ++e) x.coords[e] = codec.vec(ids[e]);
        out.push_back(std::move(x));
      },
      budget);
  return out;
}

namespace {

// Glues per-vertex local labellings into global ones along a spanning tree.
std::optional<std::vector<EdgeLabelling>> assemble(
    const Graph& g, int m, int d, const std::vector<std::size_t>& inner,
    const std::vector<std::vector<std::vector<int>>>& local) {
  std::vector<std::size_t> pos(g.vertex_count(), 0);
  for (std::size_t i = 0; i < inner.size(); ++i) pos[inner[i]] = i;
  const Layout L = spanning_layout(g);
  constexpr int unset = -1;
  std::vector<EdgeLabelling> out(static_cast<std::size_t>(d),
                                 EdgeLabelling{m, std::vector<int>(g.edge_count(), unset)});

  // Writes local labelling `s` of vertex v into global labelling t.
  auto write = [&](std::size_t v, const std::vector<int>& s, EdgeLabelling& t) {
    const auto& halves = g.incidence(v);
    for (std::size_t j = 0; j < halves.size(); ++j) {
      const int value = mod(g.sign(halves[j]) * s[j], m);
      int& slot = t.labels[halves[j].edge];
      if (slot == unset) {
        slot = value;
      } else if (slot != value) {
        return false;
      }
    }
    return true;
  };

  for (auto v : L.order) {
    const auto& mine = local[pos[v]];
    if (!L.parent[v]) {
      for (std::size_t t = 0; t < out.size(); ++t) {
        if (!write(v, mine[t], out[t])) return std::nullopt;
      }
      continue;
    }
    const HalfEdge up = *L.parent[v];
    const auto& halves = g.incidence(v);
    std::size_t up_pos = 0;
    while (!(halves[up_pos] == up)) ++up_pos;
    std::vector<bool> used(mine.size(), false);
    for (auto& t : out) {
      const int want = t.labels[up.edge];
      bool placed = false;
      for (std::size_t s = 0; s < mine.size() && !placed; ++s) {
        if (used[s] || mod(g.sign(up) * mine[s][up_pos], m) != want) continue;
        used[s] = true;
        placed = true;
        if (!write(v, mine[s], t)) return std::nullopt;
      }
      if (!placed) return std::nullopt;
    }
  }
  for (const auto& t : out) {
    if (!satisfies_vertex_sums(g, t)) return std::nullopt;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

MembershipResult is_member(const Graph& g, int m, const PhyloElement& x, Budget& budget) {
  if (x.m != m) throw ValidationError("element modulus mismatch");
  validate_element(g, x);
  require_connected(g);
  const int d = x.degree;
  const detail::MarginalCodec codec(m, d);
  StarCache stars(codec, d, budget);
  std::vector<std::size_t> ids(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) ids[e] = codec.id(x.coords[e]);

  MembershipResult result;
  const auto inner = g.inner_vertices();
  for (auto v : inner) {
    const auto& star = stars.get(g.degree(v));
    const auto local = local_ids(g, codec, v, ids);
    auto parts = star.decompose(local, d);
    if (!parts) {
      result.local_witness.clear();
      return result;
    }
    std::vector<std::vector<int>> labellings;
    for (auto gi : *parts) labellings.push_back(star.generators()[gi]);
    // Zero labellings pad the decomposition to exactly d parts.
    while (static_cast<int>(labellings.size()) < d) {
      labellings.push_back(std::vector<int>(g.degree(v), 0));
    }
    result.local_witness.push_back(std::move(labellings));
  }
  result.member = true;
  if (d > 0) {
    result.labellings = assemble(g, m, d, inner, result.local_witness);
  } else {
    result.labellings = std::vector<EdgeLabelling>{};
  }
  return result;
}

std::vector<PhyloElement> saturation_gap(const Graph& g, int m, int d, Budget& budget) {
  check_modulus(m);
  if (d < 0) throw ValidationError("degree must be nonnegative");
  require_connected(g);
  if (d <= 1) return {};  // degree <= 1 cone points are generators
  const detail::MarginalCodec codec(m, d);
  StarCache stars(codec, d, budget);
  const detail::MarginalCodec unit_codec(m, 1);
  const Layout L = spanning_layout(g);
  const std::size_t dims = static_cast<std::size_t>(m - 1);

  // Coordinates of the cut tree: one block per edge, a second block for the
  // far half of every cycle-closing edge, then the degree.
  std::vector<std::optional<std::size_t>> far_block(g.edge_count());
  std::size_t blocks = g.edge_count();
  for (auto e : L.cut_edges) far_block[e] = blocks++;
  const std::size_t dim = blocks * dims + 1;

  // Lattice generated by the cut tree's labellings (cut halves independent).
  detail::IntegerLattice lattice(dim);
  {
    struct Slot {
      std::size_t edge;
      bool far;
    };
    std::vector<int> near(g.edge_count(), 0), far(g.edge_count(), 0);
    auto label_at = [&](HalfEdge h) {
      const auto& e = g.edge(h.edge);
      if (far_block[h.edge] && h.side != e.primary_side) return far[h.edge];
      return mod(g.sign(h) * near[h.edge], m);
    };
    std::vector<Slot> slots;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      slots.push_back({e, false});
      if (far_block[e]) slots.push_back({e, true});
    }
    // Vertex check once its last slot is placed.
    std::vector<std::vector<std::size_t>> closes(slots.size());
    for (auto v : g.inner_vertices()) {
      std::size_t last = 0;
      for (const HalfEdge& h : g.incidence(v)) {
        const auto& e = g.edge(h.edge);
        const bool is_far = far_block[h.edge] && h.side != e.primary_side;
        for (std::size_t s = 0; s < slots.size(); ++s) {
          if (slots[s].edge == h.edge && slots[s].far == is_far) last = std::max(last, s);
        }
      }
      if (g.degree(v) > 0) closes[last].push_back(v);
    }
    auto rec = [&](auto&& self, std::size_t s) -> void {
      if (s == slots.size()) {
        std::vector<long long> row(dim, 0);
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
          if (near[e] != 0) row[e * dims + static_cast<std::size_t>(near[e] - 1)] = 1;
          if (far_block[e] && far[e] != 0) {
            row[*far_block[e] * dims + static_cast<std::size_t>(far[e] - 1)] = 1;
          }
        }
        row[dim - 1] = 1;
        lattice.add(std::move(row));
        return;
      }
      for (int a = 0; a < m; ++a) {
        budget.charge();
        (slots[s].far ? far : near)[slots[s].edge] = a;
        bool ok = true;
        for (auto v : closes[s]) {
          long long sum = 0;
          for (const HalfEdge& h : g.incidence(v)) sum += label_at(h);
          if (mod(sum, m) != 0) {
            ok = false;
            break;
          }
        }
        if (ok) self(self, s + 1);
      }
    };
    rec(rec, 0);
  }

  // Cone generators per star arity: flattened local marginals plus degree.
  std::map<std::size_t, std::vector<std::vector<long long>>> cone_gens;
  auto local_cone = [&](std::size_t k) -> const std::vector<std::vector<long long>>& {
    auto it = cone_gens.find(k);
    if (it != cone_gens.end()) return it->second;
    std::vector<std::vector<long long>> gens;
    for (const auto& lab : stars.get(k).generators()) {
      std::vector<long long> col(k * dims + 1, 0);
      for (std::size_t j = 0; j < k; ++j) {
        if (lab[j] != 0) col[j * dims + static_cast<std::size_t>(lab[j] - 1)] = 1;
      }
      col.back() = 1;
      gens.push_back(std::move(col));
    }
    return cone_gens.emplace(k, std::move(gens)).first->second;
  };

  std::vector<PhyloElement> gap;
  std::vector<std::size_t> ids(g.edge_count(), 0);
  auto rec = [&](auto&& self, std::size_t e) -> void {
    if (e == g.edge_count()) {
      bool member = true;
      for (auto v : g.inner_vertices()) {
        if (!stars.get(g.degree(v)).contains(local_ids(g, codec, v, ids), d)) {
          member = false;
          break;
        }
      }
      if (member) return;
      for (auto v : g.inner_vertices()) {
        const auto local = local_ids(g, codec, v, ids);
        std::vector<long long> target(local.size() * dims + 1, 0);
        for (std::size_t j = 0; j < local.size(); ++j) {
          const auto& vec = codec.vec(local[j]);
          for (std::size_t a = 0; a < dims; ++a) target[j * dims + a] = vec[a];
        }
        target.back() = d;
        if (!detail::in_cone(local_cone(local.size()), target)) return;
      }
      std::vector<long long> point(dim, 0);
      for (std::size_t edge = 0; edge < g.edge_count(); ++edge) {
        const auto& vec = codec.vec(ids[edge]);
        for (std::size_t a = 0; a < dims; ++a) point[edge * dims + a] = vec[a];
        if (far_block[edge]) {
          const auto& rv = codec.vec(codec.reversed(ids[edge]));
          for (std::size_t a = 0; a < dims; ++a) point[*far_block[edge] * dims + a] = rv[a];
        }
      }
      point[dim - 1] = d;
      if (!lattice.contains(point)) return;
      PhyloElement x = PhyloElement::zero(g, m, d);
      for (std::size_t edge = 0; edge < g.edge_count(); ++edge) x.coords[edge] = codec.vec(ids[edge]);
      gap.push_back(std::move(x));
      return;
    }
    for (std::size_t id = 0; id < codec.size(); ++id) {
      budget.charge();
      ids[e] = id;
      self(self, e + 1);
    }
  };
  rec(rec, 0);
  (void)unit_codec;
  return gap;
}

}  // namespace bzphylo::cyclic
