#include "bzphylo/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bzphylo::render {

using bz::BzTriangle;
using bz::Point;

namespace {

struct Vec {
  double x = 0, y = 0;
};

Vec operator+(Vec p, Vec q) { return {p.x + q.x, p.y + q.y}; }
Vec operator-(Vec p, Vec q) { return {p.x - q.x, p.y - q.y}; }
Vec operator*(double s, Vec p) { return {s * p.x, s * p.y}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

constexpr std::array<std::array<int, 3>, 6> kHexOffsets{{
    {1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}};

// Corners A (lower left), B (top), C (lower right) of one placed triangle.
using Corners = std::array<Vec, 3>;

Vec place(const Corners& k, Point p, int span) {
  return (1.0 / span) * (p.a * k[0] + p.b * k[1] + p.c * k[2]);
}

std::vector<Point> hex_neighbours(const bz::TriangleGrid& grid, Point p) {
  std::vector<Point> out;
  for (const auto& off : kHexOffsets) {
    const Point h{p.a - off[0], p.b - off[1], p.c - off[2]};
    if (std::binary_search(grid.h_points().begin(), grid.h_points().end(), h,
                           [](const Point& x, const Point& y) {
                             if (x.b != y.b) return x.b > y.b;
                             return x.c < y.c;
                           })) {
      out.push_back(h);
    }
  }
  return out;
}

std::string site(Point p) {
  return std::to_string(p.a) + "," + std::to_string(p.b) + "," + std::to_string(p.c);
}

void draw_triangle(std::ostringstream& out, const BzTriangle& x, const Corners& k,
                   const SvgOptions& opt) {
  const auto& grid = x.grid();
  const int n = grid.span();
  if (opt.scaffold) {
    out << "<polygon class=\"outline\" points=\"";
    for (std::size_t i = 0; i < 3; ++i) out << (i ? " " : "") << num(k[i].x) << "," << num(k[i].y);
    out << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    for (const auto& p : grid.g_points()) {
      const Vec v = place(k, p, n);
      out << "<circle class=\"site\" cx=\"" << num(v.x) << "\" cy=\"" << num(v.y)
          << "\" r=\"2\" fill=\"#bbb\"/>\n";
    }
    for (const auto& h : grid.h_points()) {
      const Vec v = place(k, h, n);
      out << "<circle class=\"centre\" cx=\"" << num(v.x) << "\" cy=\"" << num(v.y)
          << "\" r=\"2\" fill=\"none\" stroke=\"#bbb\"/>\n";
    }
  }
  for (std::size_t i = 0; i < grid.g_points().size(); ++i) {
    const long long w = x.values[i];
    if (w == 0 && !opt.show_zero) continue;
    const Point p = grid.g_points()[i];
    const auto hs = hex_neighbours(grid, p);
    const Vec at = place(k, p, n);
    const std::string attrs = " data-site=\"" + site(p) + "\" data-weight=\"" + std::to_string(w) + "\"";
    Vec label = at;
    if (hs.empty()) {
      out << "<circle class=\"node\"" << attrs << " cx=\"" << num(at.x) << "\" cy=\"" << num(at.y)
          << "\" r=\"" << num(4.0 + std::min<long long>(w, 6)) << "\" fill=\"#1f4e79\"/>\n";
    } else {
      const Vec from = place(k, hs[0], n);
      const Vec to = hs.size() > 1 ? place(k, hs[1], n) : at;
      label = 0.5 * (from + to);
      out << "<line class=\"edge\"" << attrs << " x1=\"" << num(from.x) << "\" y1=\"" << num(from.y)
          << "\" x2=\"" << num(to.x) << "\" y2=\"" << num(to.y) << "\" stroke=\"#1f4e79\" stroke-width=\""
          << num(1.5 + std::min<long long>(w, 6)) << "\"" << (w == 0 ? " stroke-dasharray=\"4 3\"" : "")
          << "/>\n";
    }
    out << "<text class=\"weight\" x=\"" << num(label.x + 4) << "\" y=\"" << num(label.y - 4)
        << "\" font-size=\"11\" font-family=\"monospace\">" << w << "</text>\n";
  }
}

Corners standard_corners(double side, Vec origin) {
  const double h = side * std::sqrt(3.0) / 2.0;
  return {origin + Vec{0, h}, origin + Vec{side / 2, 0}, origin + Vec{side, h}};
}

// Corner indices of a side in clockwise order, then the opposite corner.
std::array<std::size_t, 3> side_corners(bz::Side s) {
  switch (s) {
    case bz::Side::NW: return {0, 1, 2};
    case bz::Side::NE: return {1, 2, 0};
    case bz::Side::S: return {2, 0, 1};
  }
  return {0, 1, 2};
}

Vec reflect(Vec p, Vec a, Vec b) {
  const Vec d = b - a;
  const double t = ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / (d.x * d.x + d.y * d.y);
  const Vec foot = a + t * d;
  return foot + (foot - p);
}

std::string header(double w, double h) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w)
      << "\" height=\"" << num(h) << "\" viewBox=\"0 0 " << num(w) << " " << num(h) << "\">\n";
  return out.str();
}

const char* side_name(bz::Side s) {
  switch (s) {
    case bz::Side::NW: return "NW";
    case bz::Side::NE: return "NE";
    case bz::Side::S: return "S";
  }
  return "?";
}

}  // namespace

std::string honeycomb_svg(const BzTriangle& x, const SvgOptions& options) {
  bz::validate(x);
  const double side = options.unit * x.grid().span();
  const double margin = options.unit;
  const Corners k = standard_corners(side, {margin, margin});
  std::ostringstream body;
  draw_triangle(body, x, k, options);
  return header(side + 2 * margin, side * std::sqrt(3.0) / 2 + 2 * margin) + body.str() + "</svg>\n";
}

std::string honeycomb_text(const BzTriangle& x) {
  if (x.m > 6) throw ValidationError("text layout supports m <= 6");
  bz::validate(x);
  const auto& grid = x.grid();
  const int n = grid.span();
  std::size_t digits = 1;
  for (auto v : x.values) digits = std::max(digits, std::to_string(v).size());
  const std::size_t width = 2 * ((digits + 2) / 2);
  std::string out;
  for (int b = n; b >= 0; --b) {
    std::string line(static_cast<std::size_t>(b) * width / 2, ' ');
    for (int c = 0; b + c <= n; ++c) {
      const Point p{n - b - c, b, c};
      const auto i = grid.g_index(p);
      const std::string cell = i ? std::to_string(x.values[*i]) : "*";
      line += std::string(width - cell.size(), ' ') + cell;
    }
    out += line + "\n";
  }
  return out;
}

BzTriangle parse_honeycomb_text(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::vector<std::string> cells;
    for (std::string tok; ls >> tok;) cells.push_back(tok);
    if (!cells.empty()) rows.push_back(std::move(cells));
  }
  const int n = static_cast<int>(rows.size()) - 1;
  if (n < 1 || n % 2 == 0) throw ValidationError("honeycomb text has a wrong number of rows");
  const int m = (n + 3) / 2;
  if (m > 6) throw ValidationError("text layout supports m <= 6");
  BzTriangle x = BzTriangle::zero(m);
  const auto& grid = x.grid();
  for (int r = 0; r <= n; ++r) {
    const int b = n - r;
    const auto& cells = rows[static_cast<std::size_t>(r)];
    if (static_cast<int>(cells.size()) != n - b + 1) throw ValidationError("honeycomb row has wrong length");
    for (int c = 0; b + c <= n; ++c) {
      const Point p{n - b - c, b, c};
      const auto& cell = cells[static_cast<std::size_t>(c)];
      const auto i = grid.g_index(p);
      if (!i) {
        if (cell != "*") throw ValidationError("expected '*' at a hexagon centre");
        continue;
      }
      try {
        std::size_t used = 0;
        x.values[*i] = std::stoll(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ValidationError("bad honeycomb value '" + cell + "'");
      }
    }
  }
  bz::validate(x);
  return x;
}

std::string glued_honeycomb_svg(const graphs::Graph& g, const bz::GluedBzElement& e,
                                const SvgOptions& options) {
  if (!bz::validate_glued(g, e)) throw ValidationError("glued element does not validate");
  const auto inner = g.inner_vertices();
  const double side = options.unit * bz::build_grid(e.m).span();
  std::vector<std::size_t> pos(g.vertex_count(), 0);
  for (std::size_t i = 0; i < inner.size(); ++i) pos[inner[i]] = i;

  // Unfold along a spanning tree when the graph is a tree.
  std::vector<std::optional<Corners>> placed(inner.size());
  bool unfolded = graphs::betti(g) == 0;
  if (unfolded) {
    placed[0] = standard_corners(side, {0, 0});
    std::vector<std::size_t> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const auto vi = queue[q];
      const auto v = inner[vi];
      for (const auto& h : g.incidence(v)) {
        const auto& edge = g.edge(h.edge);
        if (edge.leaf) continue;
        const graphs::HalfEdge other{h.edge, 1 - h.side};
        const auto wi = pos[g.vertex_at(other)];
        if (placed[wi]) continue;
        const auto& pk = *placed[vi];
        const auto ps = side_corners(bz::side_of(g, h));
        const auto cs = side_corners(bz::side_of(g, other));
        Corners ck;
        ck[cs[0]] = pk[ps[1]];
        ck[cs[1]] = pk[ps[0]];
        ck[cs[2]] = reflect(pk[ps[2]], pk[ps[0]], pk[ps[1]]);
        placed[wi] = ck;
        queue.push_back(wi);
      }
    }
    for (std::size_t i = 0; i < inner.size() && unfolded; ++i) {
      for (std::size_t j = i + 1; j < inner.size(); ++j) {
        const Vec ci = (1.0 / 3) * ((*placed[i])[0] + (*placed[i])[1] + (*placed[i])[2]);
        const Vec cj = (1.0 / 3) * ((*placed[j])[0] + (*placed[j])[1] + (*placed[j])[2]);
        if (std::hypot(ci.x - cj.x, ci.y - cj.y) < side * 0.5) {
          unfolded = false;
          break;
        }
      }
    }
  }
  if (!unfolded) {
    const double gap = options.unit * 2;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      placed[i] = standard_corners(side, {static_cast<double>(i) * (side + gap), 0});
    }
  }

  double min_x = 1e300, min_y = 1e300, max_x = -1e300, max_y = -1e300;
  for (const auto& k : placed) {
    for (const auto& c : *k) {
      min_x = std::min(min_x, c.x);
      min_y = std::min(min_y, c.y);
      max_x = std::max(max_x, c.x);
      max_y = std::max(max_y, c.y);
    }
  }
  const double margin = options.unit * 1.5;
  const Vec shift{margin - min_x, margin - min_y};
  for (auto& k : placed) {
    for (auto& c : *k) c = c + shift;
  }

  std::ostringstream body;
  body << "<g class=\"layout\" data-mode=\"" << (unfolded ? "unfolded" : "panels") << "\">\n";
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const auto& k = *placed[i];
    body << "<g class=\"vertex\" data-vertex=\"" << g.vertex_id(inner[i]) << "\">\n";
    draw_triangle(body, e.triangles[i], k, options);
    const Vec centre = (1.0 / 3) * (k[0] + k[1] + k[2]);
    body << "<text class=\"vertex-label\" x=\"" << num(centre.x) << "\" y=\"" << num(centre.y + 14)
         << "\" font-size=\"10\" fill=\"#777\" text-anchor=\"middle\">" << g.vertex_id(inner[i])
         << "</text>\n";
    for (const auto& h : g.incidence(inner[i])) {
      const auto s = bz::side_of(g, h);
      const auto sc = side_corners(s);
      const Vec mid = 0.5 * (k[sc[0]] + k[sc[1]]);
      const Vec out_dir = mid - centre;
      const double len = std::hypot(out_dir.x, out_dir.y);
      const Vec at = mid + (12.0 / len) * out_dir;
      const auto& edge = g.edge(h.edge);
      std::string label = edge.id;
      if (!unfolded && !edge.leaf) label += " (" + std::string(side_name(s)) + ")";
      body << "<text class=\"side-label\" data-edge=\"" << edge.id << "\" x=\"" << num(at.x)
           << "\" y=\"" << num(at.y) << "\" font-size=\"10\" fill=\"#a33\" text-anchor=\"middle\">"
           << label << "</text>\n";
      if (unfolded && !edge.leaf && h.side == 0) {
        body << "<line class=\"shared\" data-edge=\"" << edge.id << "\" x1=\"" << num(k[sc[0]].x)
             << "\" y1=\"" << num(k[sc[0]].y) << "\" x2=\"" << num(k[sc[1]].x) << "\" y2=\""
             << num(k[sc[1]].y) << "\" stroke=\"#a33\" stroke-width=\"1\" stroke-dasharray=\"6 3\"/>\n";
      }
    }
    body << "</g>\n";
  }
  double height = max_y - min_y + 2 * margin;
  if (!unfolded) {
    double y = max_y - min_y + 2 * margin;
    for (auto id : g.internal_edges()) {
      const auto& edge = g.edge(id);
      const graphs::HalfEdge h0{id, 0}, h1{id, 1};
      body << "<text class=\"pairing\" data-edge=\"" << edge.id << "\" x=\"" << num(margin) << "\" y=\""
           << num(y) << "\" font-size=\"11\" font-family=\"monospace\">" << edge.id << ": "
           << g.vertex_id(g.vertex_at(h0)) << "." << side_name(bz::side_of(g, h0)) << " ~ "
           << g.vertex_id(g.vertex_at(h1)) << "." << side_name(bz::side_of(g, h1)) << "</text>\n";
      y += 16;
    }
    height = y + margin / 2;
  }
  body << "</g>\n";
  return header(max_x - min_x + 2 * margin, height) + body.str() + "</svg>\n";
}

}  // namespace bzphylo::render
