#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "bzphylo/graph.hpp"

namespace bzphylo::graphs {

namespace {

// Leaves are unlabelled, so a graph is determined up to isomorphism by the
// multigraph on its inner vertices plus the number of leaves at each.
struct InnerForm {
  std::vector<int> leaves;
  std::vector<std::vector<int>> mult;  // symmetric; diagonal counts loops

  std::size_t size() const { return leaves.size(); }
};

InnerForm inner_form(const Graph& g) {
  const auto inner = g.inner_vertices();
  std::vector<std::size_t> pos(g.vertex_count(), 0);
  for (std::size_t i = 0; i < inner.size(); ++i) pos[inner[i]] = i;
  InnerForm f;
  f.leaves.assign(inner.size(), 0);
  f.mult.assign(inner.size(), std::vector<int>(inner.size(), 0));
  for (const auto& e : g.edges()) {
    if (e.leaf) {
      ++f.leaves[pos[e.ends[e.primary_side]]];
      continue;
    }
    const auto a = pos[e.ends[0]];
    const auto b = pos[e.ends[1]];
    if (a == b) {
      ++f.mult[a][a];
    } else {
      ++f.mult[a][b];
      ++f.mult[b][a];
    }
  }
  return f;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h * 0xff51afd7ed558ccdULL;
}

// Colour refinement; colours are hashes so they are comparable across graphs.
std::vector<std::uint64_t> refined_colours(const InnerForm& f) {
  const std::size_t n = f.size();
  std::vector<std::uint64_t> colour(n);
  for (std::size_t i = 0; i < n; ++i) {
    colour[i] = mix(mix(1, static_cast<std::uint64_t>(f.leaves[i])),
                    static_cast<std::uint64_t>(f.mult[i][i]));
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint64_t> nb;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && f.mult[i][j] > 0) {
          nb.push_back(mix(colour[j], static_cast<std::uint64_t>(f.mult[i][j])));
        }
      }
      std::sort(nb.begin(), nb.end());
      std::uint64_t h = colour[i];
      for (auto c : nb) h = mix(h, c);
      next[i] = h;
    }
    colour = std::move(next);
  }
  return colour;
}

std::uint64_t certificate_hash(const std::vector<std::uint64_t>& colours) {
  auto sorted = colours;
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = sorted.size();
  for (auto c : sorted) h = mix(h, c);
  return h;
}

bool isomorphic_forms(const InnerForm& a, const std::vector<std::uint64_t>& ca,
                      const InnerForm& b, const std::vector<std::uint64_t>& cb) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> extend = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || ca[i] != cb[j] || a.leaves[i] != b.leaves[j] ||
          a.mult[i][i] != b.mult[j][j]) {
        continue;
      }
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = a.mult[i][k] == b.mult[j][static_cast<std::size_t>(map[k])];
      }
      if (!ok) continue;
      map[i] = static_cast<int>(j);
      used[j] = true;
      if (extend(i + 1)) return true;
      used[j] = false;
    }
    map[i] = -1;
    return false;
  };
  return extend(0);
}

Graph to_graph(const InnerForm& f) {
  const std::size_t n = f.size();
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i + 1));
  std::vector<EdgeSpec> edges;
  std::vector<std::string> leaves;
  int internal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (int k = 0; k < f.mult[i][j]; ++k) {
        edges.push_back({"e" + std::to_string(++internal), vertices[i], vertices[j]});
      }
    }
  }
  int leaf = 0;
  std::vector<std::string> leaf_vertices;
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < f.leaves[i]; ++k) {
      const std::string j = std::to_string(++leaf);
      leaf_vertices.push_back("l" + j);
      edges.push_back({"leaf" + j, vertices[i], "l" + j});
      leaves.push_back("leaf" + j);
    }
  }
  vertices.insert(vertices.end(), leaf_vertices.begin(), leaf_vertices.end());
  return Graph::build(std::move(vertices), std::move(edges), leaves);
}

bool connected_form(const InnerForm& f) {
  const std::size_t n = f.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j) {
      if (!seen[j] && f.mult[i][j] > 0) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
    }
  }
  return count == n;
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.leaf_count() != b.leaf_count()) return false;
  const InnerForm fa = inner_form(a);
  const InnerForm fb = inner_form(b);
  if (fa.size() != fb.size()) return false;
  const auto ca = refined_colours(fa);
  const auto cb = refined_colours(fb);
  if (certificate_hash(ca) != certificate_hash(cb)) return false;
  return isomorphic_forms(fa, ca, fb, cb);
}

std::vector<Graph> enumerate_trivalent_graphs(int g, int n, int max_edges,
                                              Budget& budget) {
  if (g < 0 || n < 0) throw ValidationError("g and n must be nonnegative");
  const int inner = n + 2 * g - 2;
  if (inner < 1 || (g == 0 && n < 3)) {
    throw ValidationError("no trivalent graph of type (" + std::to_string(g) +
                          ", " + std::to_string(n) + ")");
  }
  const int edge_total = 2 * n + 3 * g - 3;
  if (edge_total > max_edges) return {};
  const auto N = static_cast<std::size_t>(inner);

  struct Found {
    InnerForm form;
    std::vector<std::uint64_t> colours;
  };
  std::map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::vector<Found> found;

  auto consider = [&](const InnerForm& f) {
    if (!connected_form(f)) return;
    auto colours = refined_colours(f);
    auto& bucket = buckets[certificate_hash(colours)];
    for (auto idx : bucket) {
      if (isomorphic_forms(found[idx].form, found[idx].colours, f, colours)) return;
    }
    bucket.push_back(found.size());
    found.push_back({f, std::move(colours)});
  };

  // Nonincreasing leaf distributions, then all perfect matchings of the
  // remaining half-edge stubs.
  std::vector<int> leaves(N, 0);
  std::function<void(std::size_t, int, int)> distribute =
      [&](std::size_t i, int remaining, int cap) {
        if (i == N) {
          if (remaining != 0) return;
          std::vector<std::size_t> stubs;
          for (std::size_t v = 0; v < N; ++v) {
            for (int k = leaves[v]; k < 3; ++k) stubs.push_back(v);
          }
          InnerForm f{leaves, std::vector<std::vector<int>>(N, std::vector<int>(N, 0))};
          std::vector<bool> used(stubs.size(), false);
          std::function<void()> match = [&]() {
            budget.charge();
            std::size_t first = 0;
            while (first < stubs.size() && used[first]) ++first;
            if (first == stubs.size()) {
              consider(f);
              return;
            }
            used[first] = true;
            for (std::size_t j = first + 1; j < stubs.size(); ++j) {
              if (used[j]) continue;
              // Stubs at the same vertex are interchangeable: only pair with
              // the first free stub of each (vertex) run.
              if (j > first + 1 && stubs[j] == stubs[j - 1] && !used[j - 1]) continue;
              used[j] = true;
              const auto a = stubs[first];
              const auto b = stubs[j];
              if (a == b) {
                ++f.mult[a][a];
              } else {
                ++f.mult[a][b];
                ++f.mult[b][a];
              }
              match();
              if (a == b) {
                --f.mult[a][a];
              } else {
                --f.mult[a][b];
                --f.mult[b][a];
              }
              used[j] = false;
            }
            used[first] = false;
          };
          match();
          return;
        }
        for (int k = std::min(cap, remaining); k >= 0; --k) {
          leaves[i] = k;
          distribute(i + 1, remaining - k, k);
        }
      };
  distribute(0, n, 3);

  std::vector<Graph> out;
  out.reserve(found.size());
  for (const auto& f : found) out.push_back(to_graph(f.form));
  return out;
}

}  // namespace bzphylo::graphs
