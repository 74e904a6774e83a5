#include <algorithm>
#include <map>

#include "bzphylo/bz.hpp"

namespace bzphylo::bz {

using graphs::Graph;
using graphs::HalfEdge;
using weights::DominantWeight;

namespace {

void require_trivalent(const Graph& g) {
  if (!g.trivalent()) throw ValidationError("graph must be trivalent");
}

std::vector<std::size_t> inner_positions(const Graph& g) {
  std::vector<std::size_t> pos(g.vertex_count(), static_cast<std::size_t>(-1));
  const auto inner = g.inner_vertices();
  for (std::size_t i = 0; i < inner.size(); ++i) pos[inner[i]] = i;
  return pos;
}

}  // namespace

Side side_of(const Graph& g, HalfEdge h) {
  const auto& halves = g.incidence(g.vertex_at(h));
  for (std::size_t i = 0; i < halves.size() && i < 3; ++i) {
    if (halves[i] == h) return static_cast<Side>(i);
  }
  throw ValidationError("half-edge is not at a trivalent vertex");
}

DominantWeight half_edge_weight(const Graph& g, const GluedBzElement& e, HalfEdge h) {
  const auto pos = inner_positions(g)[g.vertex_at(h)];
  if (pos >= e.triangles.size()) throw ValidationError("missing triangle for vertex");
  return pr_edge(e.triangles[pos], side_of(g, h), false);
}

bool validate_glued(const Graph& g, const GluedBzElement& e) {
  require_trivalent(g);
  if (e.triangles.size() != g.inner_vertices().size()) {
    throw ValidationError("glued element needs one triangle per inner vertex");
  }
  for (const auto& t : e.triangles) {
    if (t.m != e.m || !is_valid(t)) return false;
  }
  for (auto id : g.internal_edges()) {
    const auto w0 = half_edge_weight(g, e, {id, 0});
    const auto w1 = half_edge_weight(g, e, {id, 1});
    if (w0 != weights::dual(w1)) return false;
  }
  return true;
}

std::vector<GluedBzElement> enumerate_glued(const Graph& g, int m,
                                            const std::map<std::string, DominantWeight>& leaves,
                                            int bound, Budget& budget) {
  require_trivalent(g);
  if (!g.connected()) throw ValidationError("graph must be connected");
  if (bound < 0) throw ValidationError("bound must be nonnegative");
  std::vector<std::optional<DominantWeight>> primary(g.edge_count());
  for (auto e : g.leaf_edges()) {
    auto it = leaves.find(g.edge(e).id);
    if (it == leaves.end()) throw ValidationError("leaf edge " + g.edge(e).id + " has no weight");
    if (it->second.m != m) throw ValidationError("leaf weight rank does not match m");
    primary[e] = it->second;
  }
  const auto inner = g.inner_vertices();
  const auto internal = g.internal_edges();
  std::map<weights::WeightTriple, std::vector<BzTriangle>> fibers;
  std::vector<GluedBzElement> out;

  auto weight_at = [&](HalfEdge h) {
    const auto& w = *primary[h.edge];
    return g.sign(h) > 0 ? w : weights::dual(w);
  };

  auto emit_products = [&] {
    std::vector<const std::vector<BzTriangle>*> choices;
    for (auto v : inner) {
      weights::WeightTriple t;
      const auto& halves = g.incidence(v);
      for (std::size_t s = 0; s < 3; ++s) t[s] = weight_at(halves[s]);
      auto it = fibers.find(t);
      if (it == fibers.end()) {
        it = fibers.emplace(t, enumerate_fiber(m, t[0], t[1], t[2], budget)).first;
      }
      if (it->second.empty()) return;
      choices.push_back(&it->second);
    }
    GluedBzElement cur{m, std::vector<BzTriangle>(inner.size())};
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == inner.size()) {
        out.push_back(cur);
        return;
      }
      for (const auto& t : *choices[i]) {
        budget.charge();
        cur.triangles[i] = t;
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  };

  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == internal.size()) {
      emit_products();
      return;
    }
    std::vector<int> coords(static_cast<std::size_t>(m - 1));
    auto inner_rec = [&](auto&& again, std::size_t i) -> void {
      if (i == coords.size()) {
        primary[internal[k]] = DominantWeight(m, coords);
        self(self, k + 1);
        return;
      }
      for (int v = 0; v <= bound; ++v) {
        budget.charge();
        coords[i] = v;
        again(again, i + 1);
      }
    };
    inner_rec(inner_rec, 0);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bzphylo::bz
