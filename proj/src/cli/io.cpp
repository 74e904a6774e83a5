#include "bzphylo/io.hpp"

#include <fstream>
#include <sstream>

namespace bzphylo::cli {

namespace {

// Runs a JSON accessor, turning library type errors into ValidationError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed ") + what + ": " + e.what());
  }
}

std::size_t edge_index(const graphs::Graph& g, const std::string& id) {
  auto e = g.find_edge(id);
  if (!e) throw ValidationError("unknown edge '" + id + "'");
  return *e;
}

}  // namespace

graphs::Graph graph_from_json(const Json& j) {
  return guarded("graph", [&] {
    std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
    std::vector<graphs::EdgeSpec> edges;
    for (const auto& e : j.at("edges")) {
      const auto& ends = e.at("ends");
      if (!ends.is_array() || ends.size() != 2) throw ValidationError("edge needs two ends");
      edges.push_back({e.at("id").get<std::string>(), ends[0].get<std::string>(),
                       ends[1].get<std::string>()});
    }
    std::vector<std::string> leaves;
    if (j.contains("leaf_edges")) leaves = j.at("leaf_edges").get<std::vector<std::string>>();
    return graphs::Graph::build(std::move(vertices), std::move(edges), leaves);
  });
}

Json graph_to_json(const graphs::Graph& g) {
  Json edges = Json::array();
  Json leaves = Json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"id", e.id}, {"ends", {g.vertex_id(e.ends[0]), g.vertex_id(e.ends[1])}}});
    if (e.leaf) leaves.push_back(e.id);
  }
  return {{"vertices", g.vertex_ids()}, {"edges", edges}, {"leaf_edges", leaves}};
}

cyclic::PhyloElement element_from_json(const graphs::Graph& g, int m, const Json& j) {
  return guarded("element", [&] {
    const int degree = j.at("degree").get<int>();
    auto x = cyclic::PhyloElement::zero(g, m, degree);
    if (j.contains("coords")) {
      for (const auto& [id, c] : j.at("coords").items()) {
        x.coords[edge_index(g, id)] = c.get<std::vector<int>>();
      }
    }
    cyclic::validate_element(g, x);
    return x;
  });
}

Json element_to_json(const graphs::Graph& g, const cyclic::PhyloElement& x) {
  Json coords = Json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) coords[g.edge(e).id] = x.coords[e];
  return {{"degree", x.degree}, {"coords", coords}};
}

cyclic::EdgeLabelling labelling_from_json(const graphs::Graph& g, int m, const Json& j) {
  return guarded("labelling", [&] {
    cyclic::EdgeLabelling x{m, std::vector<int>(g.edge_count(), 0)};
    std::vector<bool> seen(g.edge_count(), false);
    for (const auto& [id, a] : j.at("labels").items()) {
      const auto e = edge_index(g, id);
      x.labels[e] = mod(a.get<int>(), m);
      seen[e] = true;
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (!seen[e]) throw ValidationError("labelling misses edge " + g.edge(e).id);
    }
    return x;
  });
}

Json labelling_to_json(const graphs::Graph& g, const cyclic::EdgeLabelling& x) {
  Json labels = Json::object();
  for (std::size_t e = 0; e < g.edge_count(); ++e) labels[g.edge(e).id] = x.labels[e];
  return {{"labels", labels}};
}

Json weight_to_json(const weights::DominantWeight& w) {
  return {{"m", w.m}, {"coords", w.coords}};
}

weights::DominantWeight weight_from_json(const Json& j) {
  return guarded("weight", [&] {
    return weights::DominantWeight(j.at("m").get<int>(), j.at("coords").get<std::vector<int>>());
  });
}

Json triple_to_json(const weights::WeightTriple& t) {
  return {{"m", t[0].m}, {"lambda", t[0].coords}, {"mu", t[1].coords}, {"nu", t[2].coords}};
}

weights::WeightTriple parse_weight_triple(const std::string& text, int m) {
  cyclic::check_modulus(m);
  std::vector<std::vector<int>> parts(1);
  std::string token;
  auto flush = [&] {
    if (token.empty()) throw ValidationError("bad weight triple '" + text + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || v < 0) throw ValidationError("bad weight coordinate '" + token + "'");
    parts.back().push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ' ') continue;
    if (ch == ',') {
      flush();
    } else if (ch == ';') {
      flush();
      parts.emplace_back();
    } else {
      token += ch;
    }
  }
  flush();
  if (parts.size() != 3) throw ValidationError("a weight triple has three ';'-separated parts");
  return {weights::DominantWeight(m, parts[0]), weights::DominantWeight(m, parts[1]),
          weights::DominantWeight(m, parts[2])};
}

std::string format_weight_triple(const weights::WeightTriple& t) {
  std::string out;
  for (std::size_t k = 0; k < 3; ++k) {
    if (k) out += ';';
    for (std::size_t i = 0; i < t[k].coords.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(t[k].coords[i]);
    }
  }
  return out;
}

std::map<std::string, weights::LevelOneWeight> level_one_from_json(const Json& j) {
  return guarded("leaf weights", [&] {
    const Json& src = j.contains("leaves") ? j.at("leaves") : j;
    std::map<std::string, weights::LevelOneWeight> out;
    for (const auto& [id, v] : src.items()) out[id] = {v.get<int>()};
    return out;
  });
}

Json triangle_to_json(const bz::BzTriangle& x) {
  const auto& grid = x.grid();
  Json values = Json::object();
  for (std::size_t i = 0; i < x.values.size(); ++i) {
    if (x.values[i] == 0) continue;
    const auto& p = grid.g_points()[i];
    values[std::to_string(p.a) + "," + std::to_string(p.b) + "," + std::to_string(p.c)] = x.values[i];
  }
  return {{"m", x.m}, {"values", values}};
}

bz::BzTriangle triangle_from_json(const Json& j) {
  return guarded("triangle", [&] {
    const int m = j.at("m").get<int>();
    auto x = bz::BzTriangle::zero(m);
    for (const auto& [key, v] : j.at("values").items()) {
      bz::Point p;
      char c1 = 0, c2 = 0;
      std::istringstream in(key);
      if (!(in >> p.a >> c1 >> p.b >> c2 >> p.c) || c1 != ',' || c2 != ',' || !in.eof()) {
        throw ValidationError("bad grid point '" + key + "'");
      }
      x.set(p, v.get<long long>());
    }
    bz::validate(x);
    return x;
  });
}

Json glued_to_json(const graphs::Graph& g, const bz::GluedBzElement& e) {
  Json tris = Json::object();
  const auto inner = g.inner_vertices();
  for (std::size_t i = 0; i < inner.size(); ++i) tris[g.vertex_id(inner[i])] = triangle_to_json(e.triangles[i]);
  return {{"m", e.m}, {"triangles", tris}};
}

bz::GluedBzElement glued_from_json(const graphs::Graph& g, const Json& j) {
  return guarded("glued element", [&] {
    bz::GluedBzElement e{j.at("m").get<int>(), {}};
    for (auto v : g.inner_vertices()) {
      const auto& id = g.vertex_id(v);
      if (!j.at("triangles").contains(id)) throw ValidationError("no triangle for vertex " + id);
      e.triangles.push_back(triangle_from_json(j.at("triangles").at(id)));
      if (e.triangles.back().m != e.m) throw ValidationError("triangle rank mismatch");
    }
    return e;
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace bzphylo::cli
