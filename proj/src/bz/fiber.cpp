#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include <boost/rational.hpp>

#include "bzphylo/bz.hpp"

namespace bzphylo::bz {

namespace {

using Q = boost::rational<long long>;

// Linear system of a fiber: hexagon equalities (right-hand side 0) followed
// by the 3(m-1) projection equalities. Kept in reduced row echelon form
// together with the row operations, so a right-hand side reduces by one
// matrix-vector product.
struct FiberSystem {
  std::size_t vars = 0;
  std::size_t eqs = 0;
  std::vector<std::vector<Q>> reduced;   // rank rows of width vars
  std::vector<std::vector<Q>> ops;       // eqs rows of width eqs
  std::vector<std::size_t> pivot_col;    // per reduced row
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<std::size_t>> rows_closed_by;  // per free position

  explicit FiberSystem(int m) {
    const auto& grid = build_grid(m);
    vars = grid.g_points().size();
    std::vector<std::vector<Q>> a;
    for (const auto& hex : grid.hexagons()) {
      for (std::size_t k = 0; k < 3; ++k) {
        std::vector<Q> row(vars, Q(0));
        row[hex[k]] += 1;
        row[hex[k + 1]] += 1;
        row[hex[k + 3]] -= 1;
        row[hex[(k + 4) % 6]] -= 1;
        a.push_back(std::move(row));
      }
    }
    for (Side s : {Side::NW, Side::NE, Side::S}) {
      for (int i = 0; i < m - 1; ++i) {
        std::vector<Q> row(vars, Q(0));
        for (auto p : grid.side_pair(s, i)) row[p] += 1;
        a.push_back(std::move(row));
      }
    }
    eqs = a.size();
    ops.assign(eqs, std::vector<Q>(eqs, Q(0)));
    for (std::size_t i = 0; i < eqs; ++i) ops[i][i] = 1;

    std::size_t r = 0;
    std::vector<bool> is_pivot(vars, false);
    for (std::size_t c = 0; c < vars && r < eqs; ++c) {
      std::size_t p = r;
      while (p < eqs && a[p][c].numerator() == 0) ++p;
      if (p == eqs) continue;
      std::swap(a[p], a[r]);
      std::swap(ops[p], ops[r]);
      const Q inv = Q(1) / a[r][c];
      for (auto& v : a[r]) v *= inv;
      for (auto& v : ops[r]) v *= inv;
      for (std::size_t i = 0; i < eqs; ++i) {
        if (i == r || a[i][c].numerator() == 0) continue;
        const Q f = a[i][c];
        for (std::size_t j = 0; j < vars; ++j) a[i][j] -= f * a[r][j];
        for (std::size_t j = 0; j < eqs; ++j) ops[i][j] -= f * ops[r][j];
      }
      pivot_col.push_back(c);
      is_pivot[c] = true;
      ++r;
    }
    reduced.assign(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(r));
    for (std::size_t c = 0; c < vars; ++c) {
      if (!is_pivot[c]) free_cols.push_back(c);
    }
    rows_closed_by.assign(free_cols.size() + 1, {});
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t last = 0;  // 0 means "no free variable": checked up front
      for (std::size_t f = 0; f < free_cols.size(); ++f) {
        if (reduced[i][free_cols[f]].numerator() != 0) last = f + 1;
      }
      rows_closed_by[last].push_back(i);
    }
  }
};

const FiberSystem& system_for(int m) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<FiberSystem>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot = std::make_unique<FiberSystem>(m);
  return *slot;
}

}  // namespace

std::vector<BzTriangle> enumerate_fiber(int m, const weights::DominantWeight& lambda,
                                        const weights::DominantWeight& mu,
                                        const weights::DominantWeight& nu, Budget& budget) {
  cyclic::check_modulus(m);
  for (const auto* w : {&lambda, &mu, &nu}) {
    if (w->m != m) throw ValidationError("weight rank does not match m");
  }
  const auto& grid = build_grid(m);
  const auto& sys = system_for(m);

  std::vector<Q> rhs(sys.eqs, Q(0));
  std::size_t off = sys.eqs - static_cast<std::size_t>(3 * (m - 1));
  long long total = 0;
  for (const auto* w : {&lambda, &mu, &nu}) {
    for (int c : w->coords) {
      rhs[off++] = c;
      total += c;
    }
  }
  std::vector<Q> red(sys.eqs, Q(0));
  for (std::size_t i = 0; i < sys.eqs; ++i) {
    for (std::size_t j = 0; j < sys.eqs; ++j) {
      if (sys.ops[i][j].numerator() != 0 && rhs[j].numerator() != 0) red[i] += sys.ops[i][j] * rhs[j];
    }
  }
  for (std::size_t i = sys.reduced.size(); i < sys.eqs; ++i) {
    if (red[i].numerator() != 0) return {};  // inconsistent
  }

  // Upper bounds: a boundary value is at most the coordinate it feeds.
  std::vector<long long> ub(sys.vars, total);
  const std::array<const weights::DominantWeight*, 3> ws{&lambda, &mu, &nu};
  for (int s = 0; s < 3; ++s) {
    for (int i = 0; i < m - 1; ++i) {
      for (auto p : grid.side_pair(static_cast<Side>(s), i)) {
        ub[p] = std::min<long long>(ub[p], ws[static_cast<std::size_t>(s)]->coords[static_cast<std::size_t>(i)]);
      }
    }
  }

  std::vector<long long> x(sys.vars, 0);
  auto settle = [&](std::size_t row) {
    Q v = red[row];
    for (std::size_t f = 0; f < sys.free_cols.size(); ++f) {
      const auto c = sys.free_cols[f];
      if (sys.reduced[row][c].numerator() != 0) v -= sys.reduced[row][c] * x[c];
    }
    if (v.denominator() != 1 || v.numerator() < 0 || v.numerator() > ub[sys.pivot_col[row]]) {
      return false;
    }
    x[sys.pivot_col[row]] = v.numerator();
    return true;
  };
  for (auto row : sys.rows_closed_by[0]) {
    if (!settle(row)) return {};
  }

  std::vector<BzTriangle> out;
  auto rec = [&](auto&& self, std::size_t f) -> void {
    if (f == sys.free_cols.size()) {
      BzTriangle t{m, x};
      if (!is_valid(t)) throw std::logic_error("fiber solver produced an invalid triangle");
      out.push_back(std::move(t));
      return;
    }
    const auto c = sys.free_cols[f];
    for (long long v = 0; v <= ub[c]; ++v) {
      budget.charge();
      x[c] = v;
      bool ok = true;
      for (auto row : sys.rows_closed_by[f + 1]) {
        if (!settle(row)) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, f + 1);
    }
    x[c] = 0;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<weights::WeightTriple> weight_triples(int m, int bound) {
  cyclic::check_modulus(m);
  if (bound < 0) throw ValidationError("bound must be nonnegative");
  const std::size_t n = static_cast<std::size_t>(3 * (m - 1));
  std::vector<int> c(n, 0);
  std::vector<weights::WeightTriple> out;
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      const auto k = static_cast<std::ptrdiff_t>(m - 1);
      out.push_back({weights::DominantWeight(m, {c.begin(), c.begin() + k}),
                     weights::DominantWeight(m, {c.begin() + k, c.begin() + 2 * k}),
                     weights::DominantWeight(m, {c.begin() + 2 * k, c.end()})});
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[i] = v;
      self(self, i + 1, left - v);
    }
    c[i] = 0;
  };
  rec(rec, 0, bound);
  return out;
}

std::vector<BzTriangle> minimal_generators(int m, int boundary_bound, Budget& budget) {
  std::vector<BzTriangle> all;
  for (const auto& [l, u, v] : weight_triples(m, boundary_bound)) {
    if (l.is_zero() && u.is_zero() && v.is_zero()) continue;
    for (auto& t : enumerate_fiber(m, l, u, v, budget)) all.push_back(std::move(t));
  }
  auto below = [](const BzTriangle& y, const BzTriangle& x) {
    for (std::size_t i = 0; i < x.values.size(); ++i) {
      if (y.values[i] > x.values[i]) return false;
    }
    return true;
  };
  std::vector<BzTriangle> out;
  for (const auto& x : all) {
    bool reducible = false;
    for (const auto& y : all) {
      budget.charge();
      if (y != x && below(y, x)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<BzTriangle>& sl3_generators() {
  static const std::vector<BzTriangle> gens = [] {
    Budget budget;
    auto g = minimal_generators(3, 3, budget);
    if (g.size() != 8) throw std::logic_error("BZ(SL_3) should have 8 minimal generators");
    return g;
  }();
  return gens;
}

GradedDecomposition decompose_graded_sl3(const BzTriangle& x, int L) {
  if (x.m != 3) throw ValidationError("graded decomposition is defined for m = 3");
  if (L < 0) throw ValidationError("L must be nonnegative");
  validate(x);
  const auto& gens = sl3_generators();
  GradedDecomposition result;
  std::vector<int> parts;
  BzTriangle rest = x;
  auto rec = [&](auto&& self, std::size_t start) -> bool {
    if (std::all_of(rest.values.begin(), rest.values.end(), [](long long v) { return v == 0; })) {
      return true;
    }
    const int slots = L - static_cast<int>(parts.size());
    if (slots == 0 || boundary_size(rest) > 3 * slots) return false;
    for (std::size_t gi = start; gi < gens.size(); ++gi) {
      const auto& g = gens[gi];
      bool fits = true;
      for (std::size_t i = 0; i < g.values.size() && fits; ++i) fits = g.values[i] <= rest.values[i];
      if (!fits) continue;
      for (std::size_t i = 0; i < g.values.size(); ++i) rest.values[i] -= g.values[i];
      parts.push_back(static_cast<int>(gi));
      if (self(self, gi)) return true;
      parts.pop_back();
      for (std::size_t i = 0; i < g.values.size(); ++i) rest.values[i] += g.values[i];
    }
    return false;
  };
  if (rec(rec, 0)) {
    result.ok = true;
    result.parts = parts;
    result.parts.resize(static_cast<std::size_t>(L), -1);
  }
  return result;
}

}  // namespace bzphylo::bz
