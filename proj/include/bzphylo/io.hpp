#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "bzphylo/bz.hpp"
#include "bzphylo/cyclic.hpp"
#include "bzphylo/graph.hpp"
#include "bzphylo/weights.hpp"

// JSON forms of the data types. Every reader throws ValidationError on
// malformed input.
namespace bzphylo::cli {

using Json = nlohmann::json;

/// {"vertices": [...], "edges": [{"id", "ends": [u, v]}...], "leaf_edges": [...]}
graphs::Graph graph_from_json(const Json& j);
Json graph_to_json(const graphs::Graph& g);

/// {"degree": d, "coords": {"edgeId": [c_1, ..., c_{m-1}]}}; omitted edges are zero.
cyclic::PhyloElement element_from_json(const graphs::Graph& g, int m, const Json& j);
Json element_to_json(const graphs::Graph& g, const cyclic::PhyloElement& x);

/// {"labels": {"edgeId": a}}
cyclic::EdgeLabelling labelling_from_json(const graphs::Graph& g, int m, const Json& j);
Json labelling_to_json(const graphs::Graph& g, const cyclic::EdgeLabelling& x);

/// {"m": m, "coords": [...]}
Json weight_to_json(const weights::DominantWeight& w);
weights::DominantWeight weight_from_json(const Json& j);
/// {"m": m, "lambda": [...], "mu": [...], "nu": [...]}
Json triple_to_json(const weights::WeightTriple& t);
/// "a,b;c,d;e,f" with m - 1 integers per weight.
weights::WeightTriple parse_weight_triple(const std::string& text, int m);
std::string format_weight_triple(const weights::WeightTriple& t);

/// {"leafId": index, ...} or {"leaves": {...}}
std::map<std::string, weights::LevelOneWeight> level_one_from_json(const Json& j);

/// {"m": m, "values": {"a,b,c": v}} with zeros omitted.
Json triangle_to_json(const bz::BzTriangle& x);
bz::BzTriangle triangle_from_json(const Json& j);

/// {"m": m, "triangles": {"vertexId": triangle}}
Json glued_to_json(const graphs::Graph& g, const bz::GluedBzElement& e);
bz::GluedBzElement glued_from_json(const graphs::Graph& g, const Json& j);

Json read_json_file(const std::string& path);

}  // namespace bzphylo::cli
