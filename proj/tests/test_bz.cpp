#include "doctest.h"

#include <set>

#include "bzphylo/bz.hpp"
#include "oracles.hpp"

using namespace bzphylo;
using namespace bzphylo::bz;
using weights::DominantWeight;
using weights::WeightTriple;

namespace {

std::set<WeightTriple> projections(const std::vector<BzTriangle>& xs) {
  std::set<WeightTriple> out;
  for (const auto& x : xs) out.insert(pr(x));
  return out;
}

WeightTriple triple(int m, std::vector<int> l, std::vector<int> u, std::vector<int> v) {
  return {DominantWeight(m, std::move(l)), DominantWeight(m, std::move(u)), DominantWeight(m, std::move(v))};
}

}  // namespace

TEST_SUITE("bz") {

TEST_CASE("grid sizes") {
  CHECK(build_grid(2).g_points().size() == 3);
  CHECK(build_grid(2).h_points().empty());
  const auto& g3 = build_grid(3);
  CHECK(g3.g_points().size() == 9);
  REQUIRE(g3.h_points().size() == 1);
  CHECK(g3.h_points()[0] == Point{1, 1, 1});
  const auto& g4 = build_grid(4);
  std::set<Point> h(g4.h_points().begin(), g4.h_points().end());
  CHECK(h == std::set<Point>{{1, 1, 3}, {1, 3, 1}, {3, 1, 1}});
  for (int m = 2; m <= 7; ++m) {
    const auto& g = build_grid(m);
    CHECK(g.points().size() == static_cast<std::size_t>((2 * m - 2) * (2 * m - 1) / 2));
    CHECK(g.g_points().size() == static_cast<std::size_t>(3 * m * (m - 1) / 2));
    CHECK(g.h_points().size() == static_cast<std::size_t>((m - 1) * (m - 2) / 2));
    CHECK(g.hexagons().size() == g.h_points().size());
  }
}

TEST_CASE("g_index inverts g_points") {
  const auto& g = build_grid(5);
  for (std::size_t i = 0; i < g.g_points().size(); ++i) CHECK(g.g_index(g.g_points()[i]) == i);
  CHECK_FALSE(g.g_index(Point{1, 1, 5}));
}

TEST_CASE("m = 2 corners") {
  auto x = BzTriangle::zero(2);
  x.set({0, 1, 0}, 1);
  CHECK(is_valid(x));
  CHECK(pr(x) == triple(2, {1}, {1}, {0}));
  x.set({1, 0, 0}, 1);
  CHECK(pr(x) == triple(2, {2}, {1}, {1}));
}

TEST_CASE("validity") {
  auto x = BzTriangle::zero(3);
  x.set({1, 0, 2}, -1);
  CHECK_FALSE(is_valid(x));
  CHECK_THROWS_AS(validate(x), ValidationError);
  auto y = BzTriangle::zero(3);
  y.set({2, 1, 0}, 1);  // one hexagon edge only
  CHECK_FALSE(is_valid(y));
}

TEST_CASE("pr_edge and dualization") {
  Budget b;
  const auto fiber = enumerate_fiber(3, DominantWeight(3, {1, 0}), DominantWeight(3, {0, 1}), DominantWeight(3, {0, 0}), b);
  REQUIRE(fiber.size() == 1);
  CHECK(pr_edge(fiber[0], Side::NW, false).coords == std::vector<int>{1, 0});
  CHECK(pr_edge(fiber[0], Side::NW, true).coords == std::vector<int>{0, 1});
}

TEST_CASE("fiber examples") {
  Budget b;
  const auto w10 = DominantWeight(3, {1, 0});
  CHECK(enumerate_fiber(3, w10, w10, w10, b).size() == 1);
  const auto w11 = DominantWeight(3, {1, 1});
  const auto f = enumerate_fiber(3, w11, w11, w11, b);
  CHECK(f.size() == 2);
  for (const auto& x : f) {
    CHECK(is_valid(x));
    CHECK(pr(x) == WeightTriple{w11, w11, w11});
  }
  CHECK(std::is_sorted(f.begin(), f.end()));
}

TEST_CASE("fiber sizes agree with the Kostka oracle") {
  Budget b;
  for (int m = 2; m <= 4; ++m) {
    for (const auto& t : weight_triples(m, m == 4 ? 4 : 6)) {
      const auto n = enumerate_fiber(m, t[0], t[1], t[2], b).size();
      CHECK(static_cast<long long>(n) == oracle::invariant_dim(t[0], t[1], t[2]));
    }
  }
}

TEST_CASE("rotation permutes the projection") {
  Budget b;
  for (const auto& t : weight_triples(4, 4)) {
    for (const auto& x : enumerate_fiber(4, t[0], t[1], t[2], b)) {
      const auto r = rotate(x);
      CHECK(is_valid(r));
      CHECK(pr(r) == WeightTriple{t[2], t[0], t[1]});
      CHECK(rotate(rotate(r)) == x);
    }
  }
}

TEST_CASE("addition is compatible with pr") {
  Budget b;
  const auto& gens = sl3_generators();
  for (const auto& x : gens) {
    for (const auto& y : gens) {
      const auto s = add(x, y);
      CHECK(is_valid(s));
      const auto px = pr(x), py = pr(y), ps = pr(s);
      for (int k = 0; k < 3; ++k) CHECK(ps[static_cast<std::size_t>(k)] == px[static_cast<std::size_t>(k)] + py[static_cast<std::size_t>(k)]);
      CHECK(boundary_size(s) == boundary_size(x) + boundary_size(y));
    }
  }
}

TEST_CASE("minimal generators for m = 2 and 3") {
  Budget b;
  const auto g2 = minimal_generators(2, 6, b);
  CHECK(g2.size() == 3);
  CHECK(projections(g2) == std::set<WeightTriple>{triple(2, {1}, {0}, {1}), triple(2, {1}, {1}, {0}), triple(2, {0}, {1}, {1})});

  const auto g3 = minimal_generators(3, 6, b);
  CHECK(g3.size() == 8);
  const std::set<WeightTriple> want = {
      triple(3, {1, 0}, {1, 0}, {1, 0}), triple(3, {0, 1}, {0, 1}, {0, 1}), triple(3, {1, 0}, {0, 0}, {0, 1}),
      triple(3, {0, 1}, {1, 0}, {0, 0}), triple(3, {0, 0}, {0, 1}, {1, 0}), triple(3, {1, 0}, {0, 1}, {0, 0}),
      triple(3, {0, 0}, {1, 0}, {0, 1}), triple(3, {0, 1}, {0, 0}, {1, 0})};
  CHECK(projections(g3) == want);
  CHECK(std::set<BzTriangle>(g3.begin(), g3.end()) == std::set<BzTriangle>(sl3_generators().begin(), sl3_generators().end()));
}

TEST_CASE("weight_triples order and size") {
  const auto ts = weight_triples(3, 2);
  CHECK(std::is_sorted(ts.begin(), ts.end()));
  // compositions of size <= 2 into 6 parts
  CHECK(ts.size() == 28);
}

const BzTriangle& generator_with(const WeightTriple& t) {
  const auto& gens = sl3_generators();
  const auto it = std::find_if(gens.begin(), gens.end(), [&](const BzTriangle& x) { return pr(x) == t; });
  if (it == gens.end()) throw std::logic_error("no generator with that projection");
  return *it;
}

TEST_CASE("glued element on the four-leaf tree") {
  const auto g = graphs::four_leaf_tree();
  const auto& x = generator_with(triple(3, {1, 0}, {1, 0}, {1, 0}));
  const auto& y = generator_with(triple(3, {0, 1}, {0, 1}, {0, 1}));
  const GluedBzElement e{3, {x, y}};
  CHECK(validate_glued(g, e));
  const auto f = g.find_edge("f");
  REQUIRE(f);
  const auto w0 = half_edge_weight(g, e, {*f, 0});
  const auto w1 = half_edge_weight(g, e, {*f, 1});
  CHECK(w0.coords == std::vector<int>{1, 0});
  CHECK(w1.coords == std::vector<int>{0, 1});
  CHECK(w0 == weights::dual(w1));

  // the same triangle on both sides reads omega_1 twice, which is not dual
  CHECK_FALSE(validate_glued(g, GluedBzElement{3, {x, x}}));
  CHECK_FALSE(validate_glued(g, GluedBzElement{3, {x, BzTriangle::zero(3)}}));
  CHECK_THROWS_AS(validate_glued(g, GluedBzElement{3, {x}}), ValidationError);
}

TEST_CASE("glued counts factor through internal weights") {
  Budget b;
  const auto g = graphs::four_leaf_tree();
  const auto w1 = DominantWeight::fundamental(3, 1), z = DominantWeight::zero(3);
  const std::map<std::string, DominantWeight> leaves = {{"e1", w1}, {"e2", w1}, {"e3", w1}, {"e4", z}};
  const int bound = 3;
  std::uint64_t expected = 0;
  for (int a = 0; a <= bound; ++a) {
    for (int c = 0; c <= bound; ++c) {
      const DominantWeight eta(3, {a, c});
      expected += static_cast<std::uint64_t>(oracle::invariant_dim(w1, w1, eta) * oracle::invariant_dim(weights::dual(eta), w1, z));
    }
  }
  const auto glued = enumerate_glued(g, 3, leaves, bound, b);
  CHECK(glued.size() == expected);
  for (const auto& e : glued) CHECK(validate_glued(g, e));

  const auto u1 = DominantWeight::fundamental(2, 1);
  CHECK(enumerate_glued(g, 2, {{"e1", u1}, {"e2", u1}, {"e3", u1}, {"e4", u1}}, 2, b).size() == 2);
}

TEST_CASE("graded decomposition") {
  const auto& gens = sl3_generators();
  std::vector<std::size_t> triples;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto p = pr(gens[i]);
    if (p[0] == p[1] && p[1] == p[2]) triples.push_back(i);
  }
  REQUIRE(triples.size() == 2);
  const auto s = add(gens[triples[0]], gens[triples[1]]);
  CHECK(decompose_graded_sl3(s, 2).ok);
  CHECK_FALSE(decompose_graded_sl3(s, 1).ok);
  const auto d3 = decompose_graded_sl3(s, 3);
  REQUIRE(d3.ok);
  REQUIRE(d3.parts.size() == 3);
  auto total = BzTriangle::zero(3);
  for (int p : d3.parts) {
    if (p >= 0) total = add(total, gens[static_cast<std::size_t>(p)]);
  }
  CHECK(total == s);
  CHECK(decompose_graded_sl3(BzTriangle::zero(3), 2).ok);
}

}
