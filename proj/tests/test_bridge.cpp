#include "doctest.h"

#include <set>

#include "bzphylo/bridge.hpp"
#include "oracles.hpp"

using namespace bzphylo;
using namespace bzphylo::bridge;
using weights::DominantWeight;
using weights::WeightTriple;

TEST_SUITE("bridge") {

TEST_CASE("weight triples of tripod elements") {
  for (int m = 2; m <= 5; ++m) {
    for (const auto& v : cyclic::tripod_vertices(m)) {
      const auto t = weight_triple(v);
      CHECK(tripod_element(t, 1) == v);
      int cls = 0;
      for (const auto& w : t) cls += weights::class_of(w).value();
      CHECK(cls % m == 0);
    }
  }
}

TEST_CASE("every tripod vertex has a BZ triangle") {
  for (int m = 2; m <= 6; ++m) {
    for (const auto& v : cyclic::tripod_vertices(m)) {
      const auto r = vertex_recipe(m, v);
      REQUIRE(r);
      CHECK(bz::is_valid(*r));
      CHECK(bz::pr(*r) == weight_triple(v));
    }
  }
  const auto not_vertex = cyclic::PhyloElement{3, 1, {{1, 0}, {0, 0}, {0, 0}}};
  CHECK_THROWS_AS(vertex_to_bz(3, not_vertex), ValidationError);
}

TEST_CASE("vertex examples") {
  const auto w = [](int m, int i) { return DominantWeight::fundamental(m, i); };
  const auto x = vertex_to_bz(3, tripod_element({w(3, 1), w(3, 1), w(3, 1)}, 1));
  CHECK(bz::pr(x) == WeightTriple{w(3, 1), w(3, 1), w(3, 1)});
  const auto y = vertex_to_bz(4, tripod_element({w(4, 1), w(4, 0), w(4, 3)}, 1));
  CHECK(bz::pr(y) == WeightTriple{w(4, 1), w(4, 0), w(4, 3)});
  // the ones of a pair vertex lie on one segment parallel to a side
  for (const auto& [i, k] : {std::pair{1, 3}, {2, 2}, {3, 1}}) {
    const auto z = vertex_to_bz(4, tripod_element({w(4, i), w(4, 0), w(4, k)}, 1));
    std::vector<bz::Point> ones;
    for (std::size_t j = 0; j < z.values.size(); ++j) {
      CHECK(z.values[j] <= 1);
      if (z.values[j] == 1) ones.push_back(z.grid().g_points()[j]);
    }
    REQUIRE_FALSE(ones.empty());
    auto same = [&](auto field) {
      return std::all_of(ones.begin(), ones.end(), [&](const bz::Point& p) { return field(p) == field(ones[0]); });
    };
    CHECK((same([](const bz::Point& p) { return p.a; }) || same([](const bz::Point& p) { return p.b; }) ||
           same([](const bz::Point& p) { return p.c; })));
    if (i == 2) CHECK(ones.size() >= 2);
  }
}

TEST_CASE("inclusion and equality for small m") {
  Budget b;
  for (int m = 2; m <= 3; ++m) {
    const auto r = check_inclusion(m, 2, b);
    CHECK(r.inclusion_holds());
    CHECK(r.equality_holds());
    CHECK(r.forward_checked > 0);
    CHECK(r.reverse_checked > 0);
  }
}

TEST_CASE("projection membership") {
  Budget b;
  const auto w = [](int m, int i) { return DominantWeight::fundamental(m, i); };
  CHECK(in_tripod_projection({w(3, 1), w(3, 1), w(3, 1)}, b));
  CHECK_FALSE(in_tripod_projection({w(3, 1), w(3, 1), w(3, 0)}, b));
  CHECK_FALSE(in_tripod_projection({DominantWeight(4, {1, 0, 1}), w(4, 2), w(4, 2)}, b));
}

TEST_CASE("counterexample for m >= 4") {
  Budget b;
  const auto c = counterexample_m_ge_4(4, b);
  CHECK(bz::is_valid(c.triangle));
  CHECK(c.projection == WeightTriple{DominantWeight(4, {1, 0, 1}), DominantWeight(4, {0, 1, 0}), DominantWeight(4, {0, 1, 0})});
  CHECK_FALSE(c.member);
  std::set<bz::Point> ones;
  for (std::size_t i = 0; i < c.triangle.values.size(); ++i) {
    if (c.triangle.values[i] != 0) {
      CHECK(c.triangle.values[i] == 1);
      ones.insert(c.triangle.grid().g_points()[i]);
    }
  }
  CHECK(ones == std::set<bz::Point>{{3, 0, 2}, {4, 1, 0}, {2, 2, 1}, {1, 4, 0}, {0, 3, 2}});
  for (int m = 5; m <= 6; ++m) {
    const auto cm = counterexample_m_ge_4(m, b);
    CHECK(bz::is_valid(cm.triangle));
    CHECK_FALSE(cm.member);
  }
  CHECK_THROWS_AS(counterexample_m_ge_4(3, b), ValidationError);
}

TEST_CASE("phi on the tripod and the four-leaf tree") {
  Budget b;
  const auto t = phi_gamma_check(graphs::tripod(), 3, 2, b, true);
  CHECK(t.surjective());
  CHECK(t.checked_per_degree == std::vector<std::uint64_t>{9, 45});
  for (const auto& item : t.items) {
    REQUIRE(item.preimage);
    CHECK(phi(graphs::tripod(), *item.preimage, item.element.degree) == item.element);
  }
  const auto f = phi_gamma_check(graphs::four_leaf_tree(), 3, 1, b);
  CHECK(f.surjective());
  CHECK(f.checked_per_degree == std::vector<std::uint64_t>{27});
}

TEST_CASE("degree-one admissibility") {
  const auto r = theorem_main_degree1_check(graphs::tripod(), 3);
  CHECK(r.elements == 9);
  CHECK(r.all_admissible());
  const auto s = theorem_main_degree1_check(graphs::make_gamma_gn(1, 2), 2);
  CHECK(s.elements == 4);
  CHECK(s.all_admissible());
}

TEST_CASE("hilbert independence for m = 2") {
  Budget b;
  const auto t = hilbert_independence_experiment(2, 0, 6, 3, b, 2);
  CHECK(t.graphs.size() == 2);
  CHECK(t.all_agree);
  CHECK(t.values[0] == std::vector<std::uint64_t>{32, 396, 2848});
  const auto u = hilbert_independence_experiment(2, 1, 3, 3, b, 2);
  CHECK(u.graphs.size() == 3);
  CHECK(u.all_agree);
  CHECK(u.values[0] == std::vector<std::uint64_t>{8, 40, 144});
}

TEST_CASE("hilbert dependence for m = 3") {
  Budget b;
  const auto t = hilbert_independence_experiment(3, 1, 3, 3, b, 2);
  CHECK_FALSE(t.all_agree);
  REQUIRE(t.witness);
  CHECK(t.witness->verified);
  CHECK(t.witness->degree == 3);
  CHECK(t.witness->first_count != t.witness->second_count);
  // degree one and two still agree
  for (const auto& row : t.values) {
    CHECK(row[0] == t.values[0][0]);
    CHECK(row[1] == t.values[0][1]);
  }
}

TEST_CASE("relations") {
  const auto g = graphs::tripod();
  auto v = [&](int a, int b, int c) { return cyclic::to_element(g, cyclic::EdgeLabelling{3, {a, b, c}}); };
  CHECK(verify_relation(3, {v(1, 1, 1), v(2, 2, 2), v(0, 0, 0)}, {v(1, 2, 0), v(0, 1, 2), v(2, 0, 1)}));
  CHECK(verify_relation(3, {v(1, 1, 1), v(2, 2, 2), v(0, 0, 0)}, {v(2, 1, 0), v(0, 2, 1), v(1, 0, 2)}));
  CHECK_FALSE(verify_relation(3, {v(1, 1, 1), v(2, 2, 2)}, {v(1, 2, 0), v(0, 1, 2)}));

  CHECK(bz_relation_count(2).primitive == 0);
  const auto r = bz_relation_count(3);
  CHECK(r.primitive == 1);
  REQUIRE(r.relations.size() == 1);
  const auto& [lhs, rhs] = r.relations[0];
  CHECK(lhs.size() + rhs.size() == 5);
}

}
