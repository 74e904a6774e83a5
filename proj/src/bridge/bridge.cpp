#include "bzphylo/bridge.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <map>
#include <stdexcept>

namespace bzphylo::bridge {

using bz::BzTriangle;
using bz::Point;
using cyclic::PhyloElement;
using weights::DominantWeight;
using weights::WeightTriple;

namespace {

const graphs::Graph& tripod_graph() {
  static const graphs::Graph t = graphs::tripod();
  return t;
}

// Labels (i, j, k) of a tripod vertex, or nullopt.
std::optional<std::array<int, 3>> vertex_labels(int m, const PhyloElement& v) {
  if (v.m != m || v.degree != 1 || v.coords.size() != 3) return std::nullopt;
  std::array<int, 3> labels{};
  for (std::size_t e = 0; e < 3; ++e) {
    if (v.coords[e].size() != static_cast<std::size_t>(m - 1)) return std::nullopt;
    int seen = 0;
    for (std::size_t a = 0; a < v.coords[e].size(); ++a) {
      const int c = v.coords[e][a];
      if (c < 0 || c > 1) return std::nullopt;
      if (c == 1) {
        labels[e] = static_cast<int>(a) + 1;
        ++seen;
      }
    }
    if (seen > 1) return std::nullopt;
  }
  if (mod(labels[0] + labels[1] + labels[2], m) != 0) return std::nullopt;
  return labels;
}

PhyloElement vertex_from_labels(int m, const std::vector<int>& labels) {
  return cyclic::to_element(tripod_graph(), cyclic::EdgeLabelling{m, labels});
}

BzTriangle ones_at(int m, const std::vector<Point>& pts) {
  BzTriangle x = BzTriangle::zero(m);
  const auto& grid = bz::build_grid(m);
  for (const auto& p : pts) {
    if (!grid.g_index(p)) return BzTriangle{};  // off the grid: recipe failed
    x.set(p, x.at(p) + 1);
  }
  return x;
}

// Points h + t * dir for odd t, until the grid ends.
void ray(std::vector<Point>& out, Point h, std::array<int, 3> dir) {
  for (int t = 1;; t += 2) {
    const Point p{h.a + t * dir[0], h.b + t * dir[1], h.c + t * dir[2]};
    if (p.a < 0 || p.b < 0 || p.c < 0) return;
    out.push_back(p);
  }
}

bool checks_out(const BzTriangle& x, const WeightTriple& want) {
  return !x.values.empty() && bz::is_valid(x) && bz::pr(x) == want;
}

}  // namespace

WeightTriple weight_triple(const PhyloElement& x) {
  if (x.coords.size() != 3) throw ValidationError("not a tripod element");
  return {DominantWeight(x.m, x.coords[0]), DominantWeight(x.m, x.coords[1]),
          DominantWeight(x.m, x.coords[2])};
}

PhyloElement tripod_element(const WeightTriple& t, int degree) {
  const int m = t[0].m;
  PhyloElement x = PhyloElement::zero(tripod_graph(), m, degree);
  for (std::size_t k = 0; k < 3; ++k) {
    if (t[k].m != m) throw ValidationError("weights for different groups");
    x.coords[k] = t[k].coords;
  }
  return x;
}

std::optional<BzTriangle> vertex_recipe(int m, const PhyloElement& v) {
  const auto labels = vertex_labels(m, v);
  if (!labels) return std::nullopt;
  const auto [i, j, k] = *labels;
  const WeightTriple want = weight_triple(v);
  const int nonzero = (i != 0) + (j != 0) + (k != 0);

  if (nonzero == 0) return BzTriangle::zero(m);

  if (nonzero == 2) {
    // Segment parallel to the NW side realises (0; omega_p; omega_{m-p});
    // rotations give the other two pair families.
    for (int p = 1; p < m; ++p) {
      std::vector<Point> pts;
      for (int a = 0; a <= 2 * (m - p - 1); a += 2) pts.push_back({a, 2 * m - 2 - 2 * p - a, 2 * p - 1});
      BzTriangle x = ones_at(m, pts);
      for (int r = 0; r < 3 && !x.values.empty(); ++r) {
        if (checks_out(x, want)) return x;
        x = bz::rotate(x);
      }
    }
    return std::nullopt;
  }

  std::vector<Point> pts;
  if (i + j + k == m) {
    const Point h{2 * k - 1, 2 * i - 1, 2 * j - 1};
    ray(pts, h, {1, 0, -1});
    ray(pts, h, {-1, 1, 0});
    ray(pts, h, {0, -1, 1});
  } else {
    const Point h{2 * (m - i) - 1, 2 * (m - j) - 1, 2 * (m - k) - 1};
    ray(pts, h, {-1, 0, 1});
    ray(pts, h, {1, -1, 0});
    ray(pts, h, {0, 1, -1});
  }
  BzTriangle x = ones_at(m, pts);
  if (checks_out(x, want)) return x;
  return std::nullopt;
}

BzTriangle vertex_to_bz(int m, const PhyloElement& v) {
  if (!vertex_labels(m, v)) throw ValidationError("not a vertex of the tripod polytope");
  if (auto x = vertex_recipe(m, v)) return *x;
  const auto t = weight_triple(v);
  Budget budget;
  auto fiber = bz::enumerate_fiber(m, t[0], t[1], t[2], budget);
  if (fiber.empty()) throw std::logic_error("tripod vertex with empty BZ fiber");
  return fiber.front();
}

bool in_tripod_projection(const WeightTriple& t, Budget& budget) {
  int size = 0, widest = 0;
  for (const auto& w : t) {
    size += w.size();
    widest = std::max(widest, w.size());
  }
  // A nonzero tripod vertex has boundary size >= 2, so any decomposition has
  // at most size / 2 nonzero parts.
  const int degree = std::max(widest, size / 2);
  return cyclic::is_member(tripod_graph(), t[0].m, tripod_element(t, degree), budget).member;
}

InclusionReport check_inclusion(int m, int degree_bound, Budget& budget) {
  cyclic::check_modulus(m);
  if (degree_bound < 0) throw ValidationError("bound must be nonnegative");
  InclusionReport report;
  report.m = m;
  report.degree_bound = degree_bound;
  report.boundary_bound = 2 * degree_bound;
  const auto& t = tripod_graph();

  std::map<std::vector<int>, BzTriangle> images;
  auto image = [&](const std::vector<int>& labels) -> const BzTriangle& {
    auto it = images.find(labels);
    if (it == images.end()) {
      it = images.emplace(labels, vertex_to_bz(m, vertex_from_labels(m, labels))).first;
    }
    return it->second;
  };

  for (int d = 1; d <= degree_bound; ++d) {
    for (const auto& x : cyclic::elements_of_degree(t, m, d, budget)) {
      ++report.forward_checked;
      const auto r = cyclic::is_member(t, m, x, budget);
      bool ok = r.member;
      if (ok) {
        BzTriangle sum = BzTriangle::zero(m);
        for (const auto& labels : r.local_witness.front()) sum = bz::add(sum, image(labels));
        ok = bz::is_valid(sum) && bz::pr(sum) == weight_triple(x);
      }
      if (!ok) report.forward_violations.push_back(x);
    }
  }

  for (const auto& tr : bz::weight_triples(m, report.boundary_bound)) {
    if (bz::enumerate_fiber(m, tr[0], tr[1], tr[2], budget).empty()) continue;
    ++report.reverse_checked;
    if (!in_tripod_projection(tr, budget)) report.reverse_violations.push_back(tr);
  }
  return report;
}

Counterexample counterexample_m_ge_4(int m, Budget& budget) {
  if (m < 4) throw ValidationError("the counterexample needs m >= 4");
  std::vector<Point> pts{{2 * m - 5, 0, 2}, {2 * m - 4, 1, 0}};
  for (int a = 2; a <= 2 * m - 6; a += 2) pts.push_back({a, 2 * m - 4 - a, 1});
  pts.push_back({1, 2 * m - 4, 0});
  pts.push_back({0, 2 * m - 5, 2});
  Counterexample out;
  out.triangle = ones_at(m, pts);
  if (out.triangle.values.empty() || !bz::is_valid(out.triangle)) {
    throw std::logic_error("counterexample is not a BZ triangle");
  }
  out.projection = bz::pr(out.triangle);
  WeightTriple want{DominantWeight::zero(m), DominantWeight::zero(m), DominantWeight::zero(m)};
  want[0].coords.front() = want[0].coords.back() = 1;
  want[1].coords[1] = 1;
  want[2].coords[static_cast<std::size_t>(m - 3)] = 1;
  if (out.projection != want) throw std::logic_error("counterexample has the wrong projection");
  out.member = cyclic::is_member(tripod_graph(), m, tripod_element(out.projection, 2), budget).member;
  return out;
}

PhyloElement phi(const graphs::Graph& g, const bz::GluedBzElement& e, int degree) {
  PhyloElement x = PhyloElement::zero(g, e.m, degree);
  for (std::size_t id = 0; id < g.edge_count(); ++id) {
    const graphs::HalfEdge h{id, g.edge(id).primary_side};
    x.coords[id] = bz::half_edge_weight(g, e, h).coords;
  }
  return x;
}

PhiReport phi_gamma_check(const graphs::Graph& g, int m, int bound, Budget& budget,
                          bool keep_items) {
  if (m != 3) throw ValidationError("phi is defined for m = 3");
  if (!g.trivalent()) throw ValidationError("graph must be trivalent");
  PhiReport report;
  report.bound = bound;
  std::map<std::vector<int>, BzTriangle> images;
  for (int L = 1; L <= bound; ++L) {
    std::uint64_t checked = 0;
    for (const auto& x : cyclic::elements_of_degree(g, m, L, budget)) {
      ++checked;
      const auto r = cyclic::is_member(g, m, x, budget);
      std::optional<bz::GluedBzElement> pre;
      if (r.member) {
        bz::GluedBzElement e{m, {}};
        bool graded = true;
        for (const auto& local : r.local_witness) {
          BzTriangle sum = BzTriangle::zero(m);
          for (const auto& labels : local) {
            auto it = images.find(labels);
            if (it == images.end()) {
              it = images.emplace(labels, vertex_to_bz(m, vertex_from_labels(m, labels))).first;
            }
            sum = bz::add(sum, it->second);
          }
          graded = graded && bz::decompose_graded_sl3(sum, L).ok;
          e.triangles.push_back(std::move(sum));
        }
        if (graded && bz::validate_glued(g, e) && phi(g, e, L) == x) pre = std::move(e);
      }
      if (!pre) report.uncovered.push_back(x);
      if (keep_items) report.items.push_back({x, std::move(pre)});
    }
    report.checked_per_degree.push_back(checked);
  }
  return report;
}

DegreeOneReport theorem_main_degree1_check(const graphs::Graph& g, int m) {
  const auto cf = graphs::covering_forest(g);
  const auto& f = cf.forest;
  // Side of the source edge each forest edge came from.
  std::vector<int> side(f.edge_count(), 0);
  for (auto [x, y] : cf.pairing) side[y] = 1;
  for (std::size_t fe = 0; fe < f.edge_count(); ++fe) {
    if (g.edge(cf.origin[fe]).leaf) side[fe] = g.edge(cf.origin[fe]).primary_side;
  }
  DegreeOneReport report;
  for (const auto& lab : cyclic::degree_one_elements(g, m)) {
    ++report.elements;
    std::vector<int> index(f.edge_count());
    for (std::size_t fe = 0; fe < f.edge_count(); ++fe) {
      const auto e = cf.origin[fe];
      index[fe] = mod(g.sign({e, side[fe]}) * lab.labels[e], m);
    }
    bool ok = true;
    for (auto v : f.inner_vertices()) {
      std::vector<int> idx;
      for (const auto& h : f.incidence(v)) idx.push_back(index[h.edge]);
      if (idx.size() == 3) {
        ok = ok && weights::fundamental_triple_invariant(idx[0], idx[1], idx[2], m) == 1;
      } else {
        int s = 0;
        for (int a : idx) s += a;
        ok = ok && mod(s, m) == 0;
      }
    }
    for (auto [x, y] : cf.pairing) {
      ok = ok && DominantWeight::fundamental(m, index[x]) ==
                     weights::dual(DominantWeight::fundamental(m, index[y]));
    }
    if (ok) ++report.admissible;
  }
  return report;
}

HilbertTable hilbert_independence_experiment(int m, int g, int n, int d_max, Budget& budget,
                                             int threads) {
  HilbertTable table;
  table.m = m;
  table.g = g;
  table.n = n;
  table.d_max = d_max;
  table.graphs = graphs::enumerate_trivalent_graphs(g, n, std::numeric_limits<int>::max(), budget);
  table.values.assign(table.graphs.size(), {});

  auto column = [&](std::size_t gi) {
    Budget own(budget.limit());
    std::vector<std::uint64_t> col;
    for (int d = 1; d <= d_max; ++d) col.push_back(cyclic::hilbert_value(table.graphs[gi], m, d, own));
    return col;
  };
  const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
  for (std::size_t start = 0; start < table.graphs.size(); start += workers) {
    std::vector<std::future<std::vector<std::uint64_t>>> jobs;
    for (std::size_t gi = start; gi < std::min(table.graphs.size(), start + workers); ++gi) {
      jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, column, gi));
    }
    for (std::size_t k = 0; k < jobs.size(); ++k) table.values[start + k] = jobs[k].get();
  }

  for (int d = 1; d <= d_max && !table.witness; ++d) {
    const auto di = static_cast<std::size_t>(d - 1);
    for (std::size_t gi = 1; gi < table.graphs.size(); ++gi) {
      if (table.values[gi][di] == table.values[0][di]) continue;
      table.all_agree = false;
      HilbertTable::Witness w{0, gi, d, table.values[0][di], table.values[gi][di], false};
      const auto a = cyclic::elements_of_degree(table.graphs[0], m, d, budget).size();
      const auto b = cyclic::elements_of_degree(table.graphs[gi], m, d, budget).size();
      w.verified = a == w.first_count && b == w.second_count && a != b;
      table.witness = w;
      break;
    }
  }
  return table;
}

bool verify_relation(int m, const std::vector<PhyloElement>& lhs,
                     const std::vector<PhyloElement>& rhs) {
  auto total = [&](const std::vector<PhyloElement>& side) {
    PhyloElement s = PhyloElement::zero(tripod_graph(), m, 0);
    for (const auto& v : side) {
      if (!vertex_labels(m, v)) throw ValidationError("relation entries must be tripod vertices");
      s = cyclic::add(s, v);
    }
    return s;
  };
  return total(lhs) == total(rhs);
}

RelationCount bz_relation_count(int max_degree) {
  if (max_degree < 1) throw ValidationError("degree must be positive");
  const auto& gens = bz::sl3_generators();
  std::map<std::vector<long long>, std::vector<std::vector<int>>> by_sum;
  std::vector<int> pick;
  BzTriangle sum = BzTriangle::zero(3);
  auto rec = [&](auto&& self, int start) -> void {
    if (!pick.empty()) by_sum[sum.values].push_back(pick);
    if (static_cast<int>(pick.size()) == max_degree) return;
    for (int gi = start; gi < static_cast<int>(gens.size()); ++gi) {
      const auto& g = gens[static_cast<std::size_t>(gi)];
      pick.push_back(gi);
      for (std::size_t i = 0; i < g.values.size(); ++i) sum.values[i] += g.values[i];
      self(self, gi);
      for (std::size_t i = 0; i < g.values.size(); ++i) sum.values[i] -= g.values[i];
      pick.pop_back();
    }
  };
  rec(rec, 0);
  RelationCount out;
  out.degree = max_degree;
  for (const auto& [key, sets] : by_sum) {
    for (std::size_t x = 0; x < sets.size(); ++x) {
      for (std::size_t y = x + 1; y < sets.size(); ++y) {
        ++out.pairs;
        bool disjoint = true;
        for (int a : sets[x]) {
          if (std::find(sets[y].begin(), sets[y].end(), a) != sets[y].end()) disjoint = false;
        }
        if (disjoint) {
          ++out.primitive;
          out.relations.push_back({sets[x], sets[y]});
        }
      }
    }
  }
  return out;
}

}  // namespace bzphylo::bridge
