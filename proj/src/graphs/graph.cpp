#include "bzphylo/graph.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace bzphylo::graphs {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  /// Returns false when a and b were already joined.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Graph Graph::build(std::vector<std::string> vertex_ids,
                   std::vector<EdgeSpec> edges,
                   const std::vector<std::string>& leaf_edge_ids) {
  Graph g;
  std::unordered_map<std::string, std::size_t> vindex;
  for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
    if (!vindex.emplace(vertex_ids[i], i).second) {
      throw ValidationError("duplicate vertex id '" + vertex_ids[i] + "'");
    }
  }
  g.vertex_ids_ = std::move(vertex_ids);
  g.incidence_.resize(g.vertex_ids_.size());

  std::unordered_map<std::string, std::size_t> eindex;
  for (auto& spec : edges) {
    auto a = vindex.find(spec.from);
    auto b = vindex.find(spec.to);
    if (a == vindex.end() || b == vindex.end()) {
      throw ValidationError("edge '" + spec.id + "' references unknown vertex");
    }
    if (!eindex.emplace(spec.id, g.edges_.size()).second) {
      throw ValidationError("duplicate edge id '" + spec.id + "'");
    }
    Edge e;
    e.id = std::move(spec.id);
    e.ends[0] = a->second;
    e.ends[1] = b->second;
    const std::size_t idx = g.edges_.size();
    g.incidence_[e.ends[0]].push_back({idx, 0});
    g.incidence_[e.ends[1]].push_back({idx, 1});
    g.edges_.push_back(std::move(e));
  }

  g.leaf_vertex_.assign(g.vertex_ids_.size(), false);
  std::unordered_set<std::string> seen_leaf;
  for (const auto& id : leaf_edge_ids) {
    auto it = eindex.find(id);
    if (it == eindex.end()) {
      throw ValidationError("leaf edge '" + id + "' is not an edge");
    }
    if (!seen_leaf.insert(id).second) {
      throw ValidationError("leaf edge '" + id + "' listed twice");
    }
    Edge& e = g.edges_[it->second];
    const bool d0 = g.incidence_[e.ends[0]].size() == 1;
    const bool d1 = g.incidence_[e.ends[1]].size() == 1;
    if (e.is_loop() || d0 == d1) {
      throw ValidationError("leaf edge '" + id +
                            "' must have exactly one endpoint of degree 1");
    }
    e.leaf = true;
    e.primary_side = d0 ? 1 : 0;
    g.leaf_vertex_[e.ends[d0 ? 0 : 1]] = true;
  }
  return g;
}

std::optional<std::size_t> Graph::find_vertex(std::string_view id) const {
  for (std::size_t i = 0; i < vertex_ids_.size(); ++i) {
    if (vertex_ids_[i] == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Graph::find_edge(std::string_view id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> Graph::inner_vertices() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < vertex_ids_.size(); ++v) {
    if (!leaf_vertex_[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::size_t> Graph::leaf_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].leaf) out.push_back(e);
  }
  return out;
}

std::vector<std::size_t> Graph::internal_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edges_[e].leaf) out.push_back(e);
  }
  return out;
}

std::size_t Graph::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(),
                    [](const Edge& e) { return e.leaf; }));
}

std::size_t Graph::component_count() const {
  UnionFind uf(vertex_ids_.size());
  std::size_t count = vertex_ids_.size();
  for (const auto& e : edges_) {
    if (uf.unite(e.ends[0], e.ends[1])) --count;
  }
  return count;
}

bool Graph::trivalent() const {
  for (std::size_t v = 0; v < vertex_ids_.size(); ++v) {
    if (!leaf_vertex_[v] && incidence_[v].size() != 3) return false;
  }
  return true;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.vertex_ids_ != b.vertex_ids_) return false;
  if (a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.id != y.id || x.ends[0] != y.ends[0] || x.ends[1] != y.ends[1] ||
        x.leaf != y.leaf) {
      return false;
    }
  }
  return true;
}

int betti(const Graph& g) {
  return static_cast<int>(g.edge_count()) - static_cast<int>(g.vertex_count()) +
         static_cast<int>(g.component_count());
}

namespace {

std::vector<std::string> leaf_ids(const Graph& g) {
  std::vector<std::string> out;
  for (auto e : g.leaf_edges()) out.push_back(g.edge(e).id);
  return out;
}

}  // namespace

CoveringForest covering_forest(const Graph& g) {
  std::vector<std::string> vertices = g.vertex_ids();
  std::vector<EdgeSpec> edges;
  std::vector<std::string> leaves;
  CoveringForest cf;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (edge.leaf) {
      edges.push_back({edge.id, g.vertex_id(edge.ends[0]),
                       g.vertex_id(edge.ends[1])});
      leaves.push_back(edge.id);
      cf.origin.push_back(e);
      continue;
    }
    const std::size_t first = edges.size();
    for (int side = 0; side < 2; ++side) {
      const std::string half = edge.id + "#" + std::to_string(side);
      vertices.push_back(half);
      edges.push_back({half, g.vertex_id(edge.ends[side]), half});
      leaves.push_back(half);
      cf.origin.push_back(e);
    }
    cf.pairing.emplace_back(first, first + 1);
  }
  cf.forest = Graph::build(std::move(vertices), std::move(edges), leaves);
  return cf;
}

Graph glue(const CoveringForest& cf) {
  const Graph& f = cf.forest;
  std::vector<bool> drop(f.vertex_count(), false);
  std::vector<bool> paired(f.edge_count(), false);
  for (auto [a, b] : cf.pairing) {
    paired[a] = paired[b] = true;
    drop[f.edge(a).ends[1]] = true;
    drop[f.edge(b).ends[1]] = true;
  }
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < f.vertex_count(); ++v) {
    if (!drop[v]) vertices.push_back(f.vertex_id(v));
  }
  // Rebuild edges in origin order.
  std::size_t source_edges = 0;
  for (auto o : cf.origin) source_edges = std::max(source_edges, o + 1);
  std::vector<std::optional<EdgeSpec>> slots(source_edges);
  std::vector<bool> slot_leaf(source_edges, false);
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    if (paired[e]) continue;
    const Edge& edge = f.edge(e);
    slots[cf.origin[e]] =
        EdgeSpec{edge.id, f.vertex_id(edge.ends[0]), f.vertex_id(edge.ends[1])};
    slot_leaf[cf.origin[e]] = true;
  }
  for (auto [a, b] : cf.pairing) {
    const std::string& id = f.edge(a).id;
    slots[cf.origin[a]] = EdgeSpec{id.substr(0, id.rfind('#')),
                                   f.vertex_id(f.edge(a).ends[0]),
                                   f.vertex_id(f.edge(b).ends[0])};
  }
  std::vector<EdgeSpec> edges;
  std::vector<std::string> leaves;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw ValidationError("covering forest origin map has gaps");
    if (slot_leaf[i]) leaves.push_back(slots[i]->id);
    edges.push_back(std::move(*slots[i]));
  }
  return Graph::build(std::move(vertices), std::move(edges), leaves);
}

Graph collapse(const Graph& g, const std::vector<std::string>& edge_ids) {
  UnionFind uf(g.vertex_count());
  std::vector<bool> contracted(g.edge_count(), false);
  for (const auto& id : edge_ids) {
    auto e = g.find_edge(id);
    if (!e) throw ValidationError("unknown edge '" + id + "'");
    const Edge& edge = g.edge(*e);
    if (edge.leaf) throw ValidationError("cannot collapse leaf edge '" + id + "'");
    if (edge.is_loop()) throw ValidationError("cannot collapse loop '" + id + "'");
    if (contracted[*e]) continue;
    if (!uf.unite(edge.ends[0], edge.ends[1])) {
      throw ValidationError("collapsing '" + id + "' would contract a cycle");
    }
    contracted[*e] = true;
  }
  std::vector<std::string> vertices;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (uf.find(v) == v) vertices.push_back(g.vertex_id(v));
  }
  std::vector<EdgeSpec> edges;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (contracted[e]) continue;
    const Edge& edge = g.edge(e);
    edges.push_back({edge.id, g.vertex_id(uf.find(edge.ends[0])),
                     g.vertex_id(uf.find(edge.ends[1]))});
  }
  return Graph::build(std::move(vertices), std::move(edges), leaf_ids(g));
}

namespace {

void check_gamma_type(int g, int n) {
  if (g < 0 || n < 0) throw ValidationError("g and n must be nonnegative");
  if (g == 0 && n < 3) {
    throw ValidationError("no trivalent tree with fewer than 3 leaves");
  }
  if (g == 1 && n == 0) {
    throw ValidationError("no trivalent graph of type (1, 0)");
  }
}

// Spine vertex (1-based) carrying pendant p (0-based) on a spine of k
// vertices.
int pendant_hub(int p, int k) {
  if (p <= 1) return 1;
  if (p >= k) return k;
  return p;
}

}  // namespace

Graph make_gamma_gn(int g, int n) {
  check_gamma_type(g, n);
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<std::string> leaves;
  const int pendants = g + n;

  auto add_pendant = [&](int p, const std::string& hub) {
    if (p < n) {
      const std::string j = std::to_string(p + 1);
      vertices.push_back("l" + j);
      edges.push_back({"leaf" + j, hub, "l" + j});
      leaves.push_back("leaf" + j);
    } else {
      const std::string j = std::to_string(p - n + 1);
      vertices.push_back("w" + j);
      edges.push_back({"stem" + j, hub, "w" + j});
      edges.push_back({"loop" + j, "w" + j, "w" + j});
    }
  };

  if (pendants == 2) {
    // (1,1): one vertex with a loop and a leaf; (2,0): two loop vertices
    // joined by a stem.
    if (n == 1) {
      vertices = {"w1", "l1"};
      edges = {{"leaf1", "w1", "l1"}, {"loop1", "w1", "w1"}};
      leaves = {"leaf1"};
    } else {
      vertices = {"w1", "w2"};
      edges = {{"stem1", "w1", "w2"},
               {"loop1", "w1", "w1"},
               {"loop2", "w2", "w2"}};
    }
    return Graph::build(std::move(vertices), std::move(edges), leaves);
  }

  const int k = pendants - 2;
  for (int i = 1; i <= k; ++i) vertices.push_back("s" + std::to_string(i));
  for (int i = 1; i < k; ++i) {
    edges.push_back({"spine" + std::to_string(i), "s" + std::to_string(i),
                     "s" + std::to_string(i + 1)});
  }
  for (int p = 0; p < pendants; ++p) {
    add_pendant(p, "s" + std::to_string(pendant_hub(p, k)));
  }
  return Graph::build(std::move(vertices), std::move(edges), leaves);
}

std::optional<std::string> gamma_gn_separating_edge(int g, int n) {
  check_gamma_type(g, n);
  if (g == 0 || n == 0 || g + n == 2) return std::nullopt;
  const int k = g + n - 2;
  const int a = pendant_hub(n - 1, k);
  const int b = pendant_hub(n, k);
  if (a == b) return std::nullopt;
  return "spine" + std::to_string(a);
}

Graph tripod() {
  return Graph::build({"c", "l1", "l2", "l3"},
                      {{"e1", "c", "l1"}, {"e2", "c", "l2"}, {"e3", "c", "l3"}},
                      {"e1", "e2", "e3"});
}

Graph four_leaf_tree() {
  return Graph::build({"u", "v", "l1", "l2", "l3", "l4"},
                      {{"e1", "u", "l1"},
                       {"e2", "u", "l2"},
                       {"f", "u", "v"},
                       {"e3", "v", "l3"},
                       {"e4", "v", "l4"}},
                      {"e1", "e2", "e3", "e4"});
}

Graph caterpillar6() { return make_gamma_gn(0, 6); }

Graph snowflake6() {
  return Graph::build(
      {"c", "a", "b", "d", "l1", "l2", "l3", "l4", "l5", "l6"},
      {{"fa", "c", "a"},
       {"fb", "c", "b"},
       {"fd", "c", "d"},
       {"e1", "a", "l1"},
       {"e2", "a", "l2"},
       {"e3", "b", "l3"},
       {"e4", "b", "l4"},
       {"e5", "d", "l5"},
       {"e6", "d", "l6"}},
      {"e1", "e2", "e3", "e4", "e5", "e6"});
}

}  // namespace bzphylo::graphs
