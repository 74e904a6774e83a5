#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "bzphylo/bz.hpp"

namespace bzphylo::bz {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

constexpr std::array<std::array<int, 3>, 6> kHexOffsets{{
    {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}};

int odd_count(const Point& p) { return (p.a & 1) + (p.b & 1) + (p.c & 1); }

bool row_major_less(const Point& x, const Point& y) {
  if (x.b != y.b) return x.b > y.b;
  return x.c < y.c;
}

}  // namespace

TriangleGrid::TriangleGrid(int m) : m_(m) {
  cyclic::check_modulus(m);
  const int n = span();
  for (int b = n; b >= 0; --b) {
    for (int c = 0; b + c <= n; ++c) points_.push_back({n - b - c, b, c});
  }
  std::sort(points_.begin(), points_.end(), row_major_less);
  for (const auto& p : points_) {
    const int odd = odd_count(p);
    if (odd == 1) g_.push_back(p);
    if (odd == 3) h_.push_back(p);
  }
  dense_.assign(static_cast<std::size_t>((n + 1) * (n + 1)), npos);
  for (std::size_t i = 0; i < g_.size(); ++i) {
    dense_[static_cast<std::size_t>(g_[i].a * (n + 1) + g_[i].b)] = i;
  }
  for (const auto& h : h_) {
    std::array<std::size_t, 6> hex{};
    for (std::size_t k = 0; k < 6; ++k) {
      const Point q{h.a + kHexOffsets[k][0], h.b + kHexOffsets[k][1], h.c + kHexOffsets[k][2]};
      hex[k] = *g_index(q);
    }
    hexagons_.push_back(hex);
  }
}

std::optional<std::size_t> TriangleGrid::g_index(Point p) const {
  const int n = span();
  if (p.a < 0 || p.b < 0 || p.c < 0 || p.a + p.b + p.c != n) return std::nullopt;
  const auto i = dense_[static_cast<std::size_t>(p.a * (n + 1) + p.b)];
  if (i == npos) return std::nullopt;
  return i;
}

std::array<std::size_t, 2> TriangleGrid::side_pair(Side side, int i) const {
  if (i < 0 || i >= m_ - 1) throw ValidationError("side coordinate out of range");
  const int k = i + 1;
  const int far = 2 * (m_ - k);
  std::array<Point, 2> p;
  switch (side) {
    case Side::NW:
      p = {Point{far - 1, 2 * (k - 1), 0}, Point{far - 2, 2 * k - 1, 0}};
      break;
    case Side::NE:
      p = {Point{0, far - 1, 2 * (k - 1)}, Point{0, far - 2, 2 * k - 1}};
      break;
    case Side::S:
      p = {Point{2 * (k - 1), 0, far - 1}, Point{2 * k - 1, 0, far - 2}};
      break;
  }
  return {*g_index(p[0]), *g_index(p[1])};
}

const TriangleGrid& build_grid(int m) {
  cyclic::check_modulus(m);
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<TriangleGrid>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<TriangleGrid>(m);
  return *slot;
}

BzTriangle BzTriangle::zero(int m) {
  return {m, std::vector<long long>(build_grid(m).g_points().size(), 0)};
}

long long BzTriangle::at(Point p) const {
  auto i = grid().g_index(p);
  if (!i) throw ValidationError("point is not in G_m");
  return values[*i];
}

void BzTriangle::set(Point p, long long v) {
  auto i = grid().g_index(p);
  if (!i) throw ValidationError("point is not in G_m");
  values[*i] = v;
}

bool is_valid(const BzTriangle& x) {
  const auto& grid = build_grid(x.m);
  if (x.values.size() != grid.g_points().size()) return false;
  for (auto v : x.values) {
    if (v < 0) return false;
  }
  for (const auto& hex : grid.hexagons()) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (x.values[hex[k]] + x.values[hex[k + 1]] !=
          x.values[hex[k + 3]] + x.values[hex[(k + 4) % 6]]) {
        return false;
      }
    }
  }
  return true;
}

void validate(const BzTriangle& x) {
  if (!is_valid(x)) throw ValidationError("not a BZ triangle");
}

weights::DominantWeight pr_edge(const BzTriangle& x, Side side, bool dualize) {
  const auto& grid = build_grid(x.m);
  std::vector<int> c(static_cast<std::size_t>(x.m - 1));
  for (int i = 0; i < x.m - 1; ++i) {
    const auto [p, q] = grid.side_pair(side, i);
    c[static_cast<std::size_t>(i)] = static_cast<int>(x.values[p] + x.values[q]);
  }
  weights::DominantWeight w(x.m, std::move(c));
  return dualize ? weights::dual(w) : w;
}

weights::WeightTriple pr(const BzTriangle& x) {
  return {pr_edge(x, Side::NW, false), pr_edge(x, Side::NE, false),
          pr_edge(x, Side::S, false)};
}

int boundary_size(const BzTriangle& x) {
  int s = 0;
  for (const auto& w : pr(x)) s += w.size();
  return s;
}

BzTriangle add(const BzTriangle& x, const BzTriangle& y) {
  if (x.m != y.m || x.values.size() != y.values.size()) {
    throw ValidationError("triangles on different grids");
  }
  BzTriangle out = x;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += y.values[i];
  return out;
}

BzTriangle rotate(const BzTriangle& x) {
  const auto& grid = build_grid(x.m);
  BzTriangle out = BzTriangle::zero(x.m);
  for (std::size_t i = 0; i < grid.g_points().size(); ++i) {
    const Point p = grid.g_points()[i];
    out.set({p.c, p.a, p.b}, x.values[i]);
  }
  return out;
}

}  // namespace bzphylo::bz
