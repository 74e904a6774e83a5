#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bzphylo/common.hpp"
#include "bzphylo/graph.hpp"
#include "bzphylo/weights.hpp"

// Berenstein-Zelevinsky triangles for SL_m.
//
// The grid T_m is the set of (a, b, c) >= 0 with a + b + c = 2m - 3, drawn
// with (2m-3,0,0) lower left, (0,2m-3,0) on top and (0,0,2m-3) lower right.
// Sides are traversed clockwise: NW from the lower-left corner to the top,
// NE from the top to the lower right, S from the lower right back.
namespace bzphylo::bz {

struct Point {
  int a = 0, b = 0, c = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

enum class Side { NW = 0, NE = 1, S = 2 };

class TriangleGrid {
 public:
  explicit TriangleGrid(int m);

  int m() const { return m_; }
  int span() const { return 2 * m_ - 3; }
  /// All of T_m.
  const std::vector<Point>& points() const { return points_; }
  /// G_m in row-major order (top row first, left to right).
  const std::vector<Point>& g_points() const { return g_; }
  /// H_m (hexagon centres) in row-major order.
  const std::vector<Point>& h_points() const { return h_; }
  /// For each hexagon, the G-indices of h + (1,-1,0), (1,0,-1), (0,1,-1),
  /// (-1,1,0), (-1,0,1), (0,-1,1).
  const std::vector<std::array<std::size_t, 6>>& hexagons() const { return hexagons_; }
  std::optional<std::size_t> g_index(Point p) const;
  /// G-indices of the two points summed for coordinate i (0-based) of `side`.
  std::array<std::size_t, 2> side_pair(Side side, int i) const;

 private:
  int m_;
  std::vector<Point> points_, g_, h_;
  std::vector<std::array<std::size_t, 6>> hexagons_;
  std::vector<std::size_t> dense_;  // a * (span+1) + b -> G-index or npos
};

/// Shared immutable grid for SL_m.
const TriangleGrid& build_grid(int m);

/// Values on G_m, indexed like TriangleGrid::g_points().
struct BzTriangle {
  int m = 2;
  std::vector<long long> values;

  static BzTriangle zero(int m);
  long long at(Point p) const;
  void set(Point p, long long v);
  const TriangleGrid& grid() const { return build_grid(m); }
  friend bool operator==(const BzTriangle&, const BzTriangle&) = default;
  friend auto operator<=>(const BzTriangle&, const BzTriangle&) = default;
};

/// Nonnegativity and all hexagon opposite-edge equalities.
bool is_valid(const BzTriangle& x);
/// Throws ValidationError unless is_valid.
void validate(const BzTriangle& x);

weights::WeightTriple pr(const BzTriangle& x);
weights::DominantWeight pr_edge(const BzTriangle& x, Side side, bool dualize);
/// |lambda| + |mu| + |nu|.
int boundary_size(const BzTriangle& x);

BzTriangle add(const BzTriangle& x, const BzTriangle& y);
/// Rotation (a, b, c) -> (c, a, b); pr of the result is (nu; lambda; mu).
BzTriangle rotate(const BzTriangle& x);

/// All BZ triangles with pr = (lambda; mu; nu), in canonical order.
std::vector<BzTriangle> enumerate_fiber(int m, const weights::DominantWeight& lambda,
                                        const weights::DominantWeight& mu,
                                        const weights::DominantWeight& nu, Budget& budget);

/// All weight triples of rank m with boundary size <= bound, in lexicographic
/// order of (lambda, mu, nu).
std::vector<weights::WeightTriple> weight_triples(int m, int bound);

/// Nonzero triangles with boundary size <= bound that are not sums of two
/// nonzero triangles; canonical order.
std::vector<BzTriangle> minimal_generators(int m, int boundary_bound, Budget& budget);

/// One triangle per inner vertex of a trivalent graph, in
/// Graph::inner_vertices() order. A vertex's incident half-edges, in incidence
/// order, sit on its NW, NE and S sides.
struct GluedBzElement {
  int m = 2;
  std::vector<BzTriangle> triangles;
  friend bool operator==(const GluedBzElement&, const GluedBzElement&) = default;
  friend auto operator<=>(const GluedBzElement&, const GluedBzElement&) = default;
};

/// Side of the half-edge's position at its vertex.
Side side_of(const graphs::Graph& g, graphs::HalfEdge h);
/// Weight read on half-edge h from the triangle at its vertex.
weights::DominantWeight half_edge_weight(const graphs::Graph& g, const GluedBzElement& e,
                                         graphs::HalfEdge h);

/// Every triangle valid and every internal edge reads dual weights at its ends.
/// Throws ValidationError on a non-trivalent graph or a missing triangle.
bool validate_glued(const graphs::Graph& g, const GluedBzElement& e);

/// Glued elements with the given leaf weights (read at the inner end) and
/// internal-edge weight coordinates <= bound.
std::vector<GluedBzElement> enumerate_glued(
    const graphs::Graph& g, int m, const std::map<std::string, weights::DominantWeight>& leaves,
    int bound, Budget& budget);

/// The eight minimal generators of BZ(SL_3).
const std::vector<BzTriangle>& sl3_generators();

struct GradedDecomposition {
  bool ok = false;
  /// Exactly L parts: generators (by index into sl3_generators()) followed by
  /// lifted zeros, encoded as -1.
  std::vector<int> parts;
};

/// Is x a sum of exactly L elements of {8 generators, zero}?
GradedDecomposition decompose_graded_sl3(const BzTriangle& x, int L);

}  // namespace bzphylo::bz
