#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "bzphylo/common.hpp"

namespace bzphylo::cyclic::detail {

// Dense index of all vectors in Z^{m-1}_{>=0} with coordinate sum <= d, in
// lexicographic order.
class MarginalCodec {
 public:
  MarginalCodec(int m, int d);

  int modulus() const { return m_; }
  int max_sum() const { return d_; }
  std::size_t size() const { return vecs_.size(); }
  const std::vector<int>& vec(std::size_t id) const { return vecs_[id]; }
  /// Throws ValidationError when v is out of range.
  std::size_t id(std::span<const int> v) const;
  /// Index of v read from the other end of its edge.
  std::size_t reversed(std::size_t id) const { return reversed_[id]; }
  /// Marginal of a single label: the unit vector e_a, or zero for a = 0.
  std::size_t unit(int a) const { return unit_[static_cast<std::size_t>(a)]; }
  std::size_t zero() const { return unit_[0]; }
  /// Componentwise sum, or nullopt when it leaves the range.
  std::optional<std::size_t> add(std::size_t a, std::size_t b) const;

 private:
  std::size_t radix_key(std::span<const int> v) const;

  int m_;
  int d_;
  std::vector<std::vector<int>> vecs_;
  std::vector<std::size_t> dense_;  // radix key -> id (or npos)
  std::vector<std::size_t> reversed_;
  std::vector<std::size_t> unit_;
};

// Degree-graded semigroup of a star with k half-edges: sums of local
// labellings (a_1..a_k) with a_1 + ... + a_k = 0 mod m, recorded as tuples
// of per-half-edge marginals. Levels 0..d are materialised.
class StarSemigroup {
 public:
  StarSemigroup(const MarginalCodec& codec, std::size_t k, int d, Budget& budget);

  std::size_t arity() const { return k_; }
  /// Local labellings in lexicographic order.
  const std::vector<std::vector<int>>& generators() const { return generators_; }

  std::uint64_t key(std::span<const std::size_t> ids) const;
  std::vector<std::size_t> decode(std::uint64_t key) const;

  bool contains(std::span<const std::size_t> ids, int degree) const;
  /// Keys of all degree-`degree` tuples.
  const std::vector<std::uint64_t>& level(int degree) const {
    return levels_[static_cast<std::size_t>(degree)];
  }
  /// Generator indices (nondecreasing) summing to the tuple, or nullopt.
  std::optional<std::vector<std::size_t>> decompose(std::span<const std::size_t> ids,
                                                    int degree) const;

 private:
  const MarginalCodec& codec_;
  std::size_t k_;
  std::vector<std::vector<int>> generators_;
  std::vector<std::vector<std::size_t>> generator_ids_;
  std::vector<std::vector<std::uint64_t>> levels_;
  std::vector<std::unordered_set<std::uint64_t>> level_sets_;
};

// Integer lattice in Hermite form, built incrementally from generators.
class IntegerLattice {
 public:
  explicit IntegerLattice(std::size_t dim) : rows_(dim) {}
  void add(std::vector<long long> v);
  bool contains(std::vector<long long> v) const;
  std::size_t rank() const;

 private:
  // rows_[c] holds the row whose leading entry (positive) is column c.
  std::vector<std::vector<long long>> rows_;
};

/// Exact test for target = sum_i lambda_i * generators[i] with lambda >= 0.
bool in_cone(const std::vector<std::vector<long long>>& generators,
             const std::vector<long long>& target);

}  // namespace bzphylo::cyclic::detail
