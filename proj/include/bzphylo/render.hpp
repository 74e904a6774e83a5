#pragma once

#include <string>

#include "bzphylo/bz.hpp"
#include "bzphylo/graph.hpp"

// Honeycomb pictures of BZ triangles. The corners sit at (2m-3,0,0) lower
// left, (0,2m-3,0) top and (0,0,2m-3) lower right, matching the NW / NE / S
// side names used by bz::pr.
namespace bzphylo::render {

struct SvgOptions {
  double unit = 40.0;      // distance between neighbouring grid sites
  bool show_zero = false;  // draw zero-weight segments dashed
  bool scaffold = true;    // grid sites and outline
};

/// Each nonzero G-value becomes one segment (through the one or two hexagon
/// centres next to it) or, at a corner, one node, labelled with its weight.
std::string honeycomb_svg(const bz::BzTriangle& x, const SvgOptions& options = {});

/// Rows from the top corner down; G-sites print their value, hexagon centres
/// print '*'. Throws ValidationError for m > 6.
std::string honeycomb_text(const bz::BzTriangle& x);
/// Inverse of honeycomb_text.
bz::BzTriangle parse_honeycomb_text(const std::string& text);

/// Triangles unfolded along the tree so that glued sides abut; falls back to
/// separate panels with edge-pairing labels for graphs with cycles or when
/// the unfolding overlaps.
std::string glued_honeycomb_svg(const graphs::Graph& g, const bz::GluedBzElement& e,
                                const SvgOptions& options = {});

}  // namespace bzphylo::render
