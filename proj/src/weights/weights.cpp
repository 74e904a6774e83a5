#include "bzphylo/weights.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace bzphylo::weights {

DominantWeight::DominantWeight(int m_, std::vector<int> coords_)
    : m(m_), coords(std::move(coords_)) {
  cyclic::check_modulus(m);
  if (coords.size() != static_cast<std::size_t>(m - 1)) {
    throw ValidationError("SL_" + std::to_string(m) + " weight needs " +
                          std::to_string(m - 1) + " coordinates");
  }
  for (int c : coords) {
    if (c < 0) throw ValidationError("weight coordinates must be nonnegative");
  }
}

DominantWeight DominantWeight::zero(int m) {
  return {m, std::vector<int>(static_cast<std::size_t>(std::max(m - 1, 0)), 0)};
}

DominantWeight DominantWeight::fundamental(int m, int i) {
  DominantWeight w = zero(m);
  const int r = mod(i, m);
  if (r != 0) w.coords[static_cast<std::size_t>(r - 1)] = 1;
  return w;
}

int DominantWeight::size() const { return std::accumulate(coords.begin(), coords.end(), 0); }

cyclic::Residue class_of(const DominantWeight& w) {
  long long s = 0;
  for (std::size_t i = 0; i < w.coords.size(); ++i) {
    s += static_cast<long long>(i + 1) * w.coords[i];
  }
  return {mod(s, w.m), w.m};
}

DominantWeight dual(const DominantWeight& w) {
  DominantWeight out = w;
  std::reverse(out.coords.begin(), out.coords.end());
  return out;
}

DominantWeight operator+(const DominantWeight& a, const DominantWeight& b) {
  if (a.m != b.m) throw ValidationError("weights for different groups");
  DominantWeight out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

std::vector<int> to_partition(const DominantWeight& w) {
  std::vector<int> p(static_cast<std::size_t>(w.m), 0);
  for (int j = w.m - 2; j >= 0; --j) {
    p[static_cast<std::size_t>(j)] = p[static_cast<std::size_t>(j + 1)] +
                                     w.coords[static_cast<std::size_t>(j)];
  }
  return p;
}

DominantWeight from_partition(int m, const std::vector<int>& p) {
  if (p.size() != static_cast<std::size_t>(m)) throw ValidationError("partition length");
  std::vector<int> c(static_cast<std::size_t>(m - 1));
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    c[j] = p[j] - p[j + 1];
    if (c[j] < 0) throw ValidationError("not a partition");
  }
  return {m, c};
}

namespace {

// Counts LR fillings of kappa / lambda with content mu. a[i][j] is the
// number of entries j in row i (0-based, j <= i).
class LrCounter {
 public:
  LrCounter(std::vector<int> kappa, std::vector<int> lambda, std::vector<int> mu)
      : kappa_(std::move(kappa)), lambda_(std::move(lambda)), mu_(std::move(mu)),
        rows_(kappa_.size()),
        a_(rows_, std::vector<int>(rows_, 0)),
        used_(rows_, 0) {}

  std::uint64_t count() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (kappa_[i] < lambda_[i]) return 0;
    }
    total_ = 0;
    row(0);
    return total_;
  }

 private:
  void row(std::size_t i) {
    if (i == rows_) {
      for (std::size_t j = 0; j < rows_; ++j) {
        if (used_[j] != mu_[j]) return;
      }
      ++total_;
      return;
    }
    cell(i, 0, kappa_[i] - lambda_[i]);
  }

  // Chooses a[i][j] given `left` boxes of row i still to fill.
  void cell(std::size_t i, std::size_t j, int left) {
    if (j > i || j == rows_) {
      if (left == 0) row(i + 1);
      return;
    }
    int hi = std::min(left, mu_[j] - used_[j]);
    if (i > 0) {
      // Column strictness against the row above.
      int before = 0, above = 0;
      for (std::size_t t = 0; t < j; ++t) before += a_[i][t];
      for (std::size_t t = 0; t < j; ++t) above += a_[i - 1][t];
      hi = std::min(hi, lambda_[i - 1] + above - lambda_[i] - before);
    }
    if (j > 0) {
      // Lattice word: j's so far (rows <= i) never exceed (j-1)'s in rows < i.
      int prev = 0;
      for (std::size_t t = 0; t < i; ++t) prev += a_[t][j - 1];
      hi = std::min(hi, prev - used_[j]);
    }
    const bool last = j == i || j + 1 == rows_;
    for (int v = last ? left : 0; v <= hi; ++v) {
      a_[i][j] = v;
      used_[j] += v;
      cell(i, j + 1, left - v);
      used_[j] -= v;
    }
    a_[i][j] = 0;
  }

  std::vector<int> kappa_, lambda_, mu_;
  std::size_t rows_;
  std::vector<std::vector<int>> a_;
  std::vector<int> used_;
  std::uint64_t total_ = 0;
};

}  // namespace

std::uint64_t lr_coefficient(const DominantWeight& lambda, const DominantWeight& mu,
                             const DominantWeight& nu) {
  if (lambda.m != mu.m || mu.m != nu.m) throw ValidationError("weights for different groups");
  const int m = lambda.m;
  auto pl = to_partition(lambda);
  auto pm = to_partition(mu);
  auto pk = to_partition(dual(nu));
  const int sl = std::accumulate(pl.begin(), pl.end(), 0);
  const int sm = std::accumulate(pm.begin(), pm.end(), 0);
  const int sk = std::accumulate(pk.begin(), pk.end(), 0);
  const int excess = sl + sm - sk;
  if (excess < 0 || excess % m != 0) return 0;
  for (auto& p : pk) p += excess / m;
  return LrCounter(pk, pl, pm).count();
}

int fundamental_triple_invariant(int i, int j, int k, int m) {
  cyclic::check_modulus(m);
  return mod(i + j + k, m) == 0 ? 1 : 0;
}

namespace {

std::vector<int> leaf_indices(const graphs::Graph& g,
                              const std::map<std::string, LevelOneWeight>& leaves, int m) {
  std::vector<int> idx(g.edge_count(), 0);
  for (auto e : g.leaf_edges()) {
    auto it = leaves.find(g.edge(e).id);
    if (it == leaves.end()) throw ValidationError("leaf edge " + g.edge(e).id + " has no weight");
    if (it->second.index < 0 || it->second.index >= m) {
      throw ValidationError("level-1 index must lie in 0..m-1");
    }
    idx[e] = it->second.index;
  }
  for (const auto& [id, w] : leaves) {
    auto e = g.find_edge(id);
    if (!e || !g.edge(*e).leaf) throw ValidationError("unknown leaf edge " + id);
  }
  return idx;
}

}  // namespace

std::uint64_t count_level_one_labellings(const graphs::Graph& g,
                                         const std::map<std::string, LevelOneWeight>& leaves,
                                         int m) {
  cyclic::check_modulus(m);
  const auto fixed = leaf_indices(g, leaves, m);
  const auto cf = graphs::covering_forest(g);
  const auto& f = cf.forest;

  // Forest edges are all leaf edges; each is read at its inner end.
  std::vector<int> value(f.edge_count(), 0);
  std::vector<int> partner(f.edge_count(), -1);
  for (auto [x, y] : cf.pairing) {
    partner[x] = static_cast<int>(y);
    partner[y] = static_cast<int>(x);
  }
  std::vector<std::size_t> free;
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    if (partner[e] < 0) {
      value[e] = fixed[cf.origin[e]];
    } else if (static_cast<int>(e) < partner[e]) {
      free.push_back(e);
    }
  }
  const auto centres = f.inner_vertices();
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == free.size()) {
      for (auto v : centres) {
        int s = 0;
        for (const auto& h : f.incidence(v)) s += value[h.edge];
        if (mod(s, m) != 0) return;
      }
      ++count;
      return;
    }
    for (int a = 0; a < m; ++a) {
      value[free[i]] = a;
      value[static_cast<std::size_t>(partner[free[i]])] = mod(-a, m);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

std::uint64_t level_one_block_dim(const graphs::Graph& g,
                                  const std::map<std::string, LevelOneWeight>& leaves,
                                  int m) {
  cyclic::check_modulus(m);
  if (!g.connected()) throw ValidationError("graph must be connected");
  const auto idx = leaf_indices(g, leaves, m);
  int total = 0;
  for (auto e : g.leaf_edges()) total += idx[e];
  const std::uint64_t closed =
      mod(total, m) == 0 ? ipow(static_cast<std::uint64_t>(m), static_cast<unsigned>(graphs::betti(g)))
                         : 0;
  const std::uint64_t counted = count_level_one_labellings(g, leaves, m);
  if (closed != counted) {
    throw std::logic_error("level-1 dimension " + std::to_string(closed) +
                           " disagrees with labelling count " + std::to_string(counted));
  }
  return closed;
}

}  // namespace bzphylo::weights
