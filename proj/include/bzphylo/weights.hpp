#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bzphylo/cyclic.hpp"
#include "bzphylo/graph.hpp"

namespace bzphylo::weights {

/// Dominant weight of SL_m in fundamental-weight coordinates.
struct DominantWeight {
  int m = 2;
  std::vector<int> coords;  // m - 1 entries, all >= 0

  DominantWeight() = default;
  DominantWeight(int m, std::vector<int> coords);

  static DominantWeight zero(int m);
  /// omega_i for 1 <= i < m; i = 0 (or m) gives the zero weight.
  static DominantWeight fundamental(int m, int i);

  int size() const;  // sum of coordinates
  bool is_zero() const { return size() == 0; }
  friend bool operator==(const DominantWeight&, const DominantWeight&) = default;
  friend auto operator<=>(const DominantWeight&, const DominantWeight&) = default;
};

using WeightTriple = std::array<DominantWeight, 3>;

/// Class in W_m / R_m = Z/mZ: sum of i * w_i.
cyclic::Residue class_of(const DominantWeight& w);
DominantWeight dual(const DominantWeight& w);
DominantWeight operator+(const DominantWeight& a, const DominantWeight& b);

/// Partition with m parts (last part 0): p_j = sum_{i >= j} coords_i.
std::vector<int> to_partition(const DominantWeight& w);
/// Inverse of to_partition; a trailing column of height m is dropped.
DominantWeight from_partition(int m, const std::vector<int>& p);

/// dim (V_lambda (x) V_mu (x) V_nu)^SL_m by Littlewood-Richardson tableaux.
std::uint64_t lr_coefficient(const DominantWeight& lambda, const DominantWeight& mu,
                             const DominantWeight& nu);

/// 1 iff i + j + k = 0 mod m.
int fundamental_triple_invariant(int i, int j, int k, int m);

/// A level-1 weight: 0 or omega_index.
struct LevelOneWeight {
  int index = 0;
  DominantWeight weight(int m) const { return DominantWeight::fundamental(m, index); }
};

/// Admissible level-1 labellings of the covering forest: every forest vertex
/// sums to 0 mod m, paired leaves carry dual weights, original leaves carry
/// the given weights.
std::uint64_t count_level_one_labellings(const graphs::Graph& g,
                                         const std::map<std::string, LevelOneWeight>& leaves,
                                         int m);

/// m^g when the leaf indices sum to 0 mod m, else 0. Cross-checked against
/// count_level_one_labellings; a disagreement throws std::logic_error.
std::uint64_t level_one_block_dim(const graphs::Graph& g,
                                  const std::map<std::string, LevelOneWeight>& leaves,
                                  int m);

}  // namespace bzphylo::weights
