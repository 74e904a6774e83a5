#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bzphylo {

/// Input violates a documented precondition (bad graph, wrong modulus, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or count exceeded its configured resource bound.
class ResourceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultMaxNodes = 10'000'000;

/// Counts search nodes and throws ResourceExceeded past the limit.
/// Not thread-safe; give each worker its own budget.
class Budget {
 public:
  explicit Budget(std::uint64_t max_nodes = kDefaultMaxNodes)
      : max_nodes_(max_nodes) {}

  void charge(std::uint64_t nodes = 1) {
    used_ += nodes;
    if (used_ > max_nodes_) {
      throw ResourceExceeded("search exceeded " + std::to_string(max_nodes_) +
                             " nodes");
    }
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return max_nodes_; }

 private:
  std::uint64_t max_nodes_;
  std::uint64_t used_ = 0;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceExceeded("count overflow");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceExceeded("count overflow");
  return r;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r = checked_mul(r, base);
  return r;
}

inline int mod(long long a, int m) {
  long long r = a % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace bzphylo
