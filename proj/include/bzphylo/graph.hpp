#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bzphylo/common.hpp"

namespace bzphylo::graphs {

/// One end of an edge: `side` 0 is ends[0], 1 is ends[1].
struct HalfEdge {
  std::size_t edge;
  int side;

  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

struct Edge {
  std::string id;
  std::size_t ends[2];
  bool leaf = false;
  /// The end a label on this edge is read from. For internal edges this is
  /// ends[0]; for leaf edges it is the non-leaf endpoint.
  int primary_side = 0;

  bool is_loop() const { return ends[0] == ends[1]; }
};

struct EdgeSpec {
  std::string id;
  std::string from;
  std::string to;
};

/// Undirected multigraph with distinguished leaf edges. Loops and parallel
/// edges are allowed. Immutable after construction.
///
/// Labels on edges are oriented: an internal edge labelled `a` reads `a` at
/// ends[0] and `-a` at ends[1]. A leaf edge is read at its inner endpoint.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws ValidationError on duplicate ids, dangling
  /// endpoints, or a leaf edge without exactly one degree-1 endpoint.
  static Graph build(std::vector<std::string> vertex_ids,
                     std::vector<EdgeSpec> edges,
                     const std::vector<std::string>& leaf_edge_ids);

  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_id(std::size_t v) const { return vertex_ids_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }

  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;

  /// Half-edges at v in edge order; a loop contributes both of its sides.
  const std::vector<HalfEdge>& incidence(std::size_t v) const {
    return incidence_[v];
  }
  std::size_t degree(std::size_t v) const { return incidence_[v].size(); }

  /// True for the degree-1 endpoint of a leaf edge.
  bool is_leaf_vertex(std::size_t v) const { return leaf_vertex_[v]; }
  std::vector<std::size_t> inner_vertices() const;
  std::vector<std::size_t> leaf_edges() const;
  std::vector<std::size_t> internal_edges() const;
  std::size_t leaf_count() const;

  /// +1 when the half-edge reads the edge label directly, -1 when negated.
  int sign(HalfEdge h) const {
    return h.side == edges_[h.edge].primary_side ? 1 : -1;
  }
  std::size_t vertex_at(HalfEdge h) const { return edges_[h.edge].ends[h.side]; }
  /// The inner endpoint of a leaf edge.
  std::size_t inner_end(std::size_t leaf_edge) const {
    const Edge& e = edges_[leaf_edge];
    return e.ends[e.primary_side];
  }

  std::size_t component_count() const;
  bool connected() const { return component_count() <= 1; }
  /// Every inner vertex has degree 3.
  bool trivalent() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<HalfEdge>> incidence_;
  std::vector<bool> leaf_vertex_;
};

/// First Betti number |E| - |V| + #components.
int betti(const Graph& g);

/// Forest obtained by splitting every non-leaf edge into a pair of leaf edges.
struct CoveringForest {
  Graph forest;
  /// Pairs of forest edge indices (e-bar, e-underbar) created by each split.
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
  /// Source-graph edge index of every forest edge.
  std::vector<std::size_t> origin;
};

CoveringForest covering_forest(const Graph& g);

/// Re-identifies paired leaves of a covering forest; inverse of
/// covering_forest up to edge order, which is restored from `origin`.
Graph glue(const CoveringForest& cf);

/// Contracts the given non-leaf edges. Throws ValidationError when the set
/// contains a leaf edge, a loop, or would contract a cycle.
Graph collapse(const Graph& g, const std::vector<std::string>& edge_ids);

/// Canonical trivalent graph with Betti number g and n leaves: a caterpillar
/// spine whose pendants are n leaf edges followed by g stems ending in a
/// loop-bearing vertex.
Graph make_gamma_gn(int g, int n);

/// Id of the spine edge separating the leaf block from the loop block of
/// make_gamma_gn(g, n), when there is one.
std::optional<std::string> gamma_gn_separating_edge(int g, int n);

/// Connected trivalent graphs of type (g, n), pairwise non-isomorphic, with at
/// most `max_edges` edges (a trivalent (g, n) graph has 2n + 3g - 3 edges).
std::vector<Graph> enumerate_trivalent_graphs(int g, int n, int max_edges,
                                              Budget& budget);

/// Isomorphism of graphs with unlabelled leaves.
bool isomorphic(const Graph& a, const Graph& b);

/// Named reference graphs used throughout the tests and CLI.
Graph tripod();
Graph four_leaf_tree();
/// The two 6-leaf trivalent trees.
Graph caterpillar6();
Graph snowflake6();

}  // namespace bzphylo::graphs
