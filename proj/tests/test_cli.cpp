#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bzphylo/cli.hpp"
#include "bzphylo/io.hpp"

using namespace bzphylo;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "bzphylo_test_" + name + ".json";
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("lr and bz count") {
  auto r = run({"lr", "--m", "3", "--weights", "1,0;1,0;1,0"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  r = run({"bz", "count", "--m", "3", "--weights", "1,1;1,1;1,1"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
}

TEST_CASE("lr and bz count agree") {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"3", "2,1;1,2;1,1"}, {"3", "0,0;0,0;0,0"}, {"3", "3,0;0,3;0,0"}, {"4", "2,0,1;0,1,1;1,1,0"}};
  for (const auto& [m, w] : cases) {
    CHECK(run({"lr", "--m", m, "--weights", w}).out == run({"bz", "count", "--m", m, "--weights", w}).out);
  }
}

TEST_CASE("counterexample") {
  const auto r = run({"bridge", "counterexample", "--m", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("NOT in R^pr: true") != std::string::npos);
  const auto first = r.out.substr(0, r.out.find('\n'));
  const auto j = cli::Json::parse(first);
  CHECK(j["m"] == 4);
  CHECK(j["values"].size() == 5);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"lr", "--m", "3", "--weights", "1,0;1,0;1,0", "--bogus"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"lr", "--m", "3", "--weights", "1,0;1,0"}).code == 2);
  CHECK(run({"lr", "--m", "1", "--weights", ";;"}).code == 2);
  CHECK(run({"deg1", "--graph", "no_such_file.json", "--m", "2"}).code == 2);
  CHECK(run({"bz", "count", "--m", "5", "--weights", "9,9,9,9;9,9,9,9;9,9,9,9", "--max-nodes", "50"}).code == 3);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("bridge") != std::string::npos);
}

TEST_CASE("graph commands read JSON files") {
  const auto g = temp_file("tripod", cli::graph_to_json(graphs::tripod()).dump());
  auto r = run({"deg1", "--graph", g, "--m", "3", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = cli::Json::parse(r.out);
  CHECK(j["count"] == 9);

  r = run({"hilbert", "--graph", g, "--m", "2", "--dmax", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  CHECK(cli::Json::parse(r.out)["values"] == cli::Json::array({1, 4, 10}));

  const auto e = temp_file("element", R"({"degree": 2, "coords": {"e1": [1,0,1], "e2": [0,1,0], "e3": [0,1,0]}})");
  r = run({"member", "--graph", g, "--m", "4", "--element", e});
  CHECK(r.code == 0);
  CHECK(r.out == "member: false\n");

  const auto leaves = temp_file("leaves", R"({"e1": 1, "e2": 1, "e3": 1})");
  r = run({"blockdim", "--graph", g, "--m", "3", "--leaves", leaves});
  CHECK(r.out == "1\n");

  r = run({"saturation", "--graph", g, "--m", "2", "--dmax", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  for (const auto& row : cli::Json::parse(r.out)["degrees"]) CHECK(row["gap"].empty());

  const auto bad = temp_file("bad", R"({"vertices": ["a"], "edges": [{"id": "e", "ends": ["a"]}]})");
  CHECK(run({"deg1", "--graph", bad, "--m", "2"}).code == 2);
  for (const auto& p : {g, e, leaves, bad}) std::remove(p.c_str());
}

TEST_CASE("render from JSON") {
  const auto r = run({"bridge", "counterexample", "--m", "4"});
  const auto t = temp_file("triangle", r.out.substr(0, r.out.find('\n')));
  const auto svg = run({"render", "svg", "--input", t});
  CHECK(svg.code == 0);
  CHECK(svg.out.find("<svg") != std::string::npos);
  const auto text = run({"render", "text", "--input", t});
  CHECK(text.code == 0);
  CHECK(std::count(text.out.begin(), text.out.end(), '*') == 3);
  std::remove(t.c_str());
}

TEST_CASE("json round trips") {
  const auto g = graphs::make_gamma_gn(1, 2);
  CHECK(cli::graph_from_json(cli::graph_to_json(g)) == g);
  for (const auto& x : bz::sl3_generators()) CHECK(cli::triangle_from_json(cli::triangle_to_json(x)) == x);
  const auto t = cli::parse_weight_triple("1,2;0,0;3,1", 3);
  CHECK(cli::format_weight_triple(t) == "1,2;0,0;3,1");
  CHECK_THROWS_AS(cli::parse_weight_triple("1,x;0,0;0,0", 3), ValidationError);
  CHECK_THROWS_AS(cli::parse_weight_triple("1,-1;0,0;0,0", 3), ValidationError);
}

TEST_CASE("output is reproducible") {
  const std::vector<std::string> args = {"bz", "generators", "--m", "3", "--bound", "4", "--format", "json"};
  CHECK(run(args).out == run(args).out);
}

}
