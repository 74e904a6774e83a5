#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bzphylo/bz.hpp"
#include "bzphylo/cyclic.hpp"
#include "bzphylo/graph.hpp"
#include "bzphylo/weights.hpp"

namespace bzphylo::bridge {

/// Weight triple of a tripod element: coordinate a of edge e_k is the
/// multiplicity of omega_a in slot k.
weights::WeightTriple weight_triple(const cyclic::PhyloElement& x);
/// Inverse of weight_triple at the given degree.
cyclic::PhyloElement tripod_element(const weights::WeightTriple& t, int degree);

/// Geometric construction of a BZ triangle for a tripod vertex; nullopt when
/// the recipe does not apply or fails its checks.
std::optional<bz::BzTriangle> vertex_recipe(int m, const cyclic::PhyloElement& v);
/// vertex_recipe with a fiber-search fallback. Throws ValidationError when v
/// is not one of the m^2 tripod vertices.
bz::BzTriangle vertex_to_bz(int m, const cyclic::PhyloElement& v);

struct InclusionReport {
  int m = 0;
  int degree_bound = 0;
  int boundary_bound = 0;  // reverse direction: boundary size <= 2 * degree_bound
  std::uint64_t forward_checked = 0;
  std::vector<cyclic::PhyloElement> forward_violations;
  std::uint64_t reverse_checked = 0;  // triples with a nonempty fiber
  std::vector<weights::WeightTriple> reverse_violations;  // in pr(BZ) but not R^pr

  bool inclusion_holds() const { return forward_violations.empty(); }
  bool equality_holds() const { return inclusion_holds() && reverse_violations.empty(); }
};

/// Membership of a weight triple in the projection of R_{0,3}(Z/mZ).
bool in_tripod_projection(const weights::WeightTriple& t, Budget& budget);

InclusionReport check_inclusion(int m, int degree_bound, Budget& budget);

struct Counterexample {
  bz::BzTriangle triangle;
  weights::WeightTriple projection;
  bool member = true;  // of the projection in R^pr at degree 2
};

/// The triangle with ones at (2m-5,0,2), (2m-4,1,0), (a,2m-4-a,1) for even
/// 2 <= a <= 2m-6, (1,2m-4,0), (0,2m-5,2). All checks are run; a failure
/// throws std::logic_error.
Counterexample counterexample_m_ge_4(int m, Budget& budget);

/// phi: boundary projection of a glued element to R_Gamma(Z/mZ) at degree L.
cyclic::PhyloElement phi(const graphs::Graph& g, const bz::GluedBzElement& e, int degree);

struct PhiItem {
  cyclic::PhyloElement element;
  std::optional<bz::GluedBzElement> preimage;
};

struct PhiReport {
  int bound = 0;
  std::vector<std::uint64_t> checked_per_degree;  // index L - 1
  std::vector<PhiItem> items;
  std::vector<cyclic::PhyloElement> uncovered;

  bool surjective() const { return uncovered.empty(); }
};

/// For every element of R_Gamma(Z/3Z) of degree 1..bound, a glued element of
/// degree-L graded SL_3 triangles mapping onto it. Items are kept only when
/// keep_items is set.
PhiReport phi_gamma_check(const graphs::Graph& g, int m, int bound, Budget& budget,
                          bool keep_items = false);

struct DegreeOneReport {
  std::uint64_t elements = 0;
  std::uint64_t admissible = 0;
  bool all_admissible() const { return elements == admissible; }
};

/// Every zero-sum labelling, read as level-1 weights [a] -> omega_a on the
/// covering forest, satisfies the vertex and dual-pairing conditions.
DegreeOneReport theorem_main_degree1_check(const graphs::Graph& g, int m);

struct HilbertTable {
  int m = 0, g = 0, n = 0, d_max = 0;
  std::vector<graphs::Graph> graphs;
  std::vector<std::vector<std::uint64_t>> values;  // [graph][d - 1]
  bool all_agree = true;
  struct Witness {
    std::size_t first = 0, second = 0;
    int degree = 0;
    std::uint64_t first_count = 0, second_count = 0;
    bool verified = false;  // recounted by explicit enumeration
  };
  std::optional<Witness> witness;
};

/// hilbert_value for d = 1..d_max over all trivalent graphs of type (g, n).
/// A disagreement is recounted by explicit element enumeration.
HilbertTable hilbert_independence_experiment(int m, int g, int n, int d_max, Budget& budget,
                                             int threads = 1);

/// The two multisets of tripod vertices have equal sums.
bool verify_relation(int m, const std::vector<cyclic::PhyloElement>& lhs,
                     const std::vector<cyclic::PhyloElement>& rhs);

struct RelationCount {
  int degree = 0;
  std::uint64_t pairs = 0;      // unordered pairs of distinct multisets with equal sums
  std::uint64_t primitive = 0;  // of which with disjoint supports
  /// The primitive pairs, as generator indices into bz::sl3_generators().
  std::vector<std::pair<std::vector<int>, std::vector<int>>> relations;
};

/// Binomial relations among the 8 BZ(SL_3) generators: pairs of multisets of
/// at most max_degree generators with equal sums.
RelationCount bz_relation_count(int max_degree);

}  // namespace bzphylo::bridge
