#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bzphylo/common.hpp"
#include "bzphylo/graph.hpp"

// Group-based model semigroups R_Gamma(Z/mZ).
//
// Coordinates: an element stores, for each edge e and each nonzero residue a,
// the count x^e_a read from the edge's primary end (see graphs::Edge). The
// 0-coordinate is implicit: degree - sum_a x^e_a. Reading an internal edge
// from its other end reverses the vector (a -> m - a).
namespace bzphylo::cyclic {

class Residue {
 public:
  Residue(int value, int m) : value_(mod(value, m)), m_(m) {
    if (m < 2) throw ValidationError("modulus must be at least 2");
  }
  int value() const { return value_; }
  int modulus() const { return m_; }
  Residue operator-() const { return {m_ - value_, m_}; }
  Residue operator+(Residue o) const { return {value_ + o.value_, m_}; }
  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  int value_;
  int m_;
};

void check_modulus(int m);

/// One label per edge, read from the edge's primary end.
struct EdgeLabelling {
  int m = 2;
  std::vector<int> labels;

  Residue label(std::size_t e) const { return {labels[e], m}; }
  friend bool operator==(const EdgeLabelling&, const EdgeLabelling&) = default;
  friend auto operator<=>(const EdgeLabelling&, const EdgeLabelling&) = default;
};

/// Graded lattice vector of R_Gamma: coords[e][a-1] = x^e_a.
struct PhyloElement {
  int m = 2;
  int degree = 0;
  std::vector<std::vector<int>> coords;

  static PhyloElement zero(const graphs::Graph& g, int m, int degree);
  friend bool operator==(const PhyloElement&, const PhyloElement&) = default;
  friend auto operator<=>(const PhyloElement&, const PhyloElement&) = default;
};

/// Degree-1 element of a labelling.
PhyloElement to_element(const graphs::Graph& g, const EdgeLabelling& x);
PhyloElement add(const PhyloElement& a, const PhyloElement& b);

/// Shape check: sizes match the graph, entries nonnegative, and every edge's
/// coordinate sum is at most the degree.
void validate_element(const graphs::Graph& g, const PhyloElement& x);

/// Vertex sums vanish at every inner vertex (loops contribute a - a = 0).
bool satisfies_vertex_sums(const graphs::Graph& g, const EdgeLabelling& x);

EdgeLabelling negate(const EdgeLabelling& x);

/// The m^2 vertices of the tripod polytope, as degree-1 elements on
/// graphs::tripod(): zero, the three pair families, then the triples.
std::vector<PhyloElement> tripod_vertices(int m);

/// All zero-vertex-sum labellings of a connected graph, in lexicographic
/// order of edge labels.
std::vector<EdgeLabelling> degree_one_elements(const graphs::Graph& g, int m);

/// Number of distinct degree-d elements of R_Gamma(Z/mZ), by a tree dynamic
/// program over per-edge marginals with cycle-closing edges enumerated.
std::uint64_t hilbert_value(const graphs::Graph& g, int m, int d, Budget& budget);

/// All degree-d elements of R_Gamma(Z/mZ) in lexicographic order.
std::vector<PhyloElement> elements_of_degree(const graphs::Graph& g, int m,
                                             int d, Budget& budget);

struct MembershipResult {
  bool member = false;
  /// For every inner vertex (in Graph::inner_vertices order): `degree` local
  /// labellings of its star, one label per incident half-edge read from that
  /// vertex, summing to the element's local marginals.
  std::vector<std::vector<std::vector<int>>> local_witness;
  /// The same decomposition assembled into global labellings. Always present
  /// for trees; for graphs with cycles only when the greedy assembly closes.
  std::optional<std::vector<EdgeLabelling>> labellings;
};

MembershipResult is_member(const graphs::Graph& g, int m, const PhyloElement& x,
                           Budget& budget);

/// Degree-d lattice points of cone(R_Gamma) cap L_Gamma^gr missing from
/// R_Gamma. Empty means R_Gamma is saturated in degree d.
std::vector<PhyloElement> saturation_gap(const graphs::Graph& g, int m, int d,
                                         Budget& budget);

}  // namespace bzphylo::cyclic
