#include "bzphylo/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "bzphylo/bridge.hpp"
#include "bzphylo/io.hpp"
#include "bzphylo/render.hpp"

namespace bzphylo::cli {

namespace {

struct Settings {
  std::string format = "table";
  std::uint64_t max_nodes = kDefaultMaxNodes;
};

struct Context {
  Settings settings;
  std::ostream& out;
  std::function<void()> action;

  bool json() const { return settings.format == "json"; }
  Budget budget() const { return Budget(settings.max_nodes); }
  void emit(const Json& j) const { out << j.dump(2) << "\n"; }
};

std::string weights_text(const weights::WeightTriple& t) { return format_weight_triple(t); }

std::string labels_text(const graphs::Graph& g, const cyclic::EdgeLabelling& x) {
  std::string s;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (e) s += ' ';
    s += g.edge(e).id + "=" + std::to_string(x.labels[e]);
  }
  return s;
}

std::string coords_text(const graphs::Graph& g, const cyclic::PhyloElement& x) {
  std::string s;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (e) s += ' ';
    s += g.edge(e).id + "=(";
    for (std::size_t a = 0; a < x.coords[e].size(); ++a) {
      if (a) s += ',';
      s += std::to_string(x.coords[e][a]);
    }
    s += ')';
  }
  return s;
}

void add_format(CLI::App* app, Settings& s) {
  app->add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app->add_option("--max-nodes", s.max_nodes, "Search node budget")->capture_default_str();
}

// --- cyclic -----------------------------------------------------------------

void setup_cyclic(CLI::App& app, Context& ctx) {
  static int m = 2, dmax = 2;
  static std::string graph_file, element_file, leaves_file;

  auto* vertices = app.add_subcommand("vertices", "Vertices of the tripod polytope");
  vertices->add_option("--m", m, "Modulus")->required();
  add_format(vertices, ctx.settings);
  vertices->callback([&] {
    ctx.action = [&] {
      const auto vs = cyclic::tripod_vertices(m);
      if (ctx.json()) {
        Json arr = Json::array();
        for (const auto& v : vs) arr.push_back(triple_to_json(bridge::weight_triple(v)));
        ctx.emit({{"m", m}, {"count", vs.size()}, {"vertices", arr}});
        return;
      }
      ctx.out << "tripod vertices for m = " << m << ": " << vs.size() << "\n";
      for (const auto& v : vs) ctx.out << "  " << weights_text(bridge::weight_triple(v)) << "\n";
    };
  });

  auto* deg1 = app.add_subcommand("deg1", "Degree-one elements of R_Gamma(Z/mZ)");
  deg1->add_option("--graph", graph_file, "Graph JSON file")->required();
  deg1->add_option("--m", m, "Modulus")->required();
  add_format(deg1, ctx.settings);
  deg1->callback([&] {
    ctx.action = [&] {
      const auto g = graph_from_json(read_json_file(graph_file));
      const auto els = cyclic::degree_one_elements(g, m);
      const int exponent = graphs::betti(g) + static_cast<int>(g.leaf_count()) - 1;
      if (ctx.json()) {
        Json arr = Json::array();
        for (const auto& x : els) arr.push_back(labelling_to_json(g, x));
        ctx.emit({{"m", m}, {"count", els.size()}, {"exponent", exponent}, {"labellings", arr}});
        return;
      }
      ctx.out << "count " << els.size() << " (m^(g+n-1) with g+n-1 = " << exponent << ")\n";
      for (const auto& x : els) ctx.out << "  " << labels_text(g, x) << "\n";
    };
  });

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of R_Gamma(Z/mZ)");
  hilbert->add_option("--graph", graph_file, "Graph JSON file")->required();
  hilbert->add_option("--m", m, "Modulus")->required();
  hilbert->add_option("--dmax", dmax, "Largest degree")->required();
  add_format(hilbert, ctx.settings);
  hilbert->callback([&] {
    ctx.action = [&] {
      const auto g = graph_from_json(read_json_file(graph_file));
      auto budget = ctx.budget();
      std::vector<std::uint64_t> vals;
      for (int d = 0; d <= dmax; ++d) vals.push_back(cyclic::hilbert_value(g, m, d, budget));
      if (ctx.json()) {
        ctx.emit({{"m", m}, {"dmax", dmax}, {"values", vals}});
        return;
      }
      ctx.out << std::setw(4) << "d" << "  value\n";
      for (std::size_t d = 0; d < vals.size(); ++d) ctx.out << std::setw(4) << d << "  " << vals[d] << "\n";
    };
  });

  auto* member = app.add_subcommand("member", "Membership in R_Gamma(Z/mZ)");
  member->add_option("--graph", graph_file, "Graph JSON file")->required();
  member->add_option("--m", m, "Modulus")->required();
  member->add_option("--element", element_file, "Element JSON file")->required();
  add_format(member, ctx.settings);
  member->callback([&] {
    ctx.action = [&] {
      const auto g = graph_from_json(read_json_file(graph_file));
      const auto x = element_from_json(g, m, read_json_file(element_file));
      auto budget = ctx.budget();
      const auto r = cyclic::is_member(g, m, x, budget);
      const auto inner = g.inner_vertices();
      if (ctx.json()) {
        Json j{{"member", r.member}, {"degree", x.degree}};
        if (r.member) {
          Json local = Json::object();
          for (std::size_t i = 0; i < inner.size(); ++i) local[g.vertex_id(inner[i])] = r.local_witness[i];
          j["local_witness"] = local;
          if (r.labellings) {
            Json arr = Json::array();
            for (const auto& l : *r.labellings) arr.push_back(labelling_to_json(g, l));
            j["witness"] = arr;
          }
        }
        ctx.emit(j);
        return;
      }
      ctx.out << "member: " << (r.member ? "true" : "false") << "\n";
      if (r.member && r.labellings) {
        for (const auto& l : *r.labellings) ctx.out << "  " << labels_text(g, l) << "\n";
      } else if (r.member) {
        for (std::size_t i = 0; i < inner.size(); ++i) {
          ctx.out << "  " << g.vertex_id(inner[i]) << ":";
          for (const auto& t : r.local_witness[i]) {
            ctx.out << " (";
            for (std::size_t k = 0; k < t.size(); ++k) ctx.out << (k ? "," : "") << t[k];
            ctx.out << ")";
          }
          ctx.out << "\n";
        }
      }
    };
  });

  auto* sat = app.add_subcommand("saturation", "Saturation gap of R_Gamma(Z/mZ)");
  sat->add_option("--graph", graph_file, "Graph JSON file")->required();
  sat->add_option("--m", m, "Modulus")->required();
  sat->add_option("--dmax", dmax, "Largest degree")->required();
  add_format(sat, ctx.settings);
  sat->callback([&] {
    ctx.action = [&] {
      const auto g = graph_from_json(read_json_file(graph_file));
      auto budget = ctx.budget();
      Json rows = Json::array();
      if (!ctx.json()) ctx.out << std::setw(4) << "d" << "  gap\n";
      for (int d = 1; d <= dmax; ++d) {
        const auto gap = cyclic::saturation_gap(g, m, d, budget);
        Json els = Json::array();
        for (const auto& x : gap) els.push_back(element_to_json(g, x));
        rows.push_back({{"degree", d}, {"gap", els}});
        if (!ctx.json()) {
          ctx.out << std::setw(4) << d << "  " << gap.size() << "\n";
          for (const auto& x : gap) ctx.out << "        " << coords_text(g, x) << "\n";
        }
      }
      if (ctx.json()) ctx.emit({{"m", m}, {"dmax", dmax}, {"degrees", rows}});
    };
  });

  auto* block = app.add_subcommand("blockdim", "Level-1 conformal block dimension");
  block->add_option("--graph", graph_file, "Graph JSON file")->required();
  block->add_option("--m", m, "Rank parameter")->required();
  block->add_option("--leaves", leaves_file, "Leaf weight JSON file")->required();
  add_format(block, ctx.settings);
  block->callback([&] {
    ctx.action = [&] {
      const auto g = graph_from_json(read_json_file(graph_file));
      const auto leaves = level_one_from_json(read_json_file(leaves_file));
      const auto dim = weights::level_one_block_dim(g, leaves, m);
      if (ctx.json()) {
        ctx.emit({{"m", m}, {"dimension", dim}});
        return;
      }
      ctx.out << dim << "\n";
    };
  });
}

// --- weights / bz -------------------------------------------------------------

void setup_bz(CLI::App& app, Context& ctx) {
  static int m = 3, bound = 3;
  static std::string triple;

  auto* lr = app.add_subcommand("lr", "Littlewood-Richardson triple multiplicity");
  lr->add_option("--m", m, "Rank parameter")->required();
  lr->add_option("--weights", triple, "Weight triple \"a,b;c,d;e,f\"")->required();
  add_format(lr, ctx.settings);
  lr->callback([&] {
    ctx.action = [&] {
      const auto t = parse_weight_triple(triple, m);
      const auto c = weights::lr_coefficient(t[0], t[1], t[2]);
      if (ctx.json()) {
        ctx.emit({{"weights", triple_to_json(t)}, {"lr", c}});
        return;
      }
      ctx.out << c << "\n";
    };
  });

  auto* bzc = app.add_subcommand("bz", "BZ triangles");
  bzc->require_subcommand(1);

  auto* grid = bzc->add_subcommand("grid", "The grid T_m");
  grid->add_option("--m", m, "Rank parameter")->required();
  add_format(grid, ctx.settings);
  grid->callback([&] {
    ctx.action = [&] {
      const auto& g = bz::build_grid(m);
      auto pts = [](const std::vector<bz::Point>& v) {
        Json arr = Json::array();
        for (const auto& p : v) arr.push_back({p.a, p.b, p.c});
        return arr;
      };
      if (ctx.json()) {
        Json hex = Json::array();
        for (const auto& h : g.hexagons()) hex.push_back(h);
        ctx.emit({{"m", m}, {"T", g.points().size()}, {"G", pts(g.g_points())}, {"H", pts(g.h_points())},
                  {"hexagons", hex}});
        return;
      }
      ctx.out << "|T| = " << g.points().size() << "  |G| = " << g.g_points().size()
              << "  |H| = " << g.h_points().size() << "\n";
      for (const auto& h : g.h_points()) ctx.out << "  hexagon at (" << h.a << "," << h.b << "," << h.c << ")\n";
    };
  });

  auto* enumerate = bzc->add_subcommand("enumerate", "All triangles in a fiber");
  enumerate->add_option("--m", m, "Rank parameter")->required();
  enumerate->add_option("--weights", triple, "Weight triple")->required();
  add_format(enumerate, ctx.settings);
  enumerate->callback([&] {
    ctx.action = [&] {
      const auto t = parse_weight_triple(triple, m);
      auto budget = ctx.budget();
      const auto fiber = bz::enumerate_fiber(m, t[0], t[1], t[2], budget);
      if (ctx.json()) {
        Json arr = Json::array();
        for (const auto& x : fiber) arr.push_back(triangle_to_json(x));
        ctx.emit({{"weights", triple_to_json(t)}, {"count", fiber.size()}, {"triangles", arr}});
        return;
      }
      ctx.out << "count " << fiber.size() << "\n";
      for (const auto& x : fiber) {
        ctx.out << "\n" << (m <= 6 ? render::honeycomb_text(x) : triangle_to_json(x).dump() + "\n");
      }
    };
  });

  auto* count = bzc->add_subcommand("count", "Size of a fiber");
  count->add_option("--m", m, "Rank parameter")->required();
  count->add_option("--weights", triple, "Weight triple")->required();
  add_format(count, ctx.settings);
  count->callback([&] {
    ctx.action = [&] {
      const auto t = parse_weight_triple(triple, m);
      auto budget = ctx.budget();
      const auto n = bz::enumerate_fiber(m, t[0], t[1], t[2], budget).size();
      if (ctx.json()) {
        ctx.emit({{"weights", triple_to_json(t)}, {"count", n}});
        return;
      }
      ctx.out << n << "\n";
    };
  });

  auto* gens = bzc->add_subcommand("generators", "Minimal generators up to a boundary size");
  gens->add_option("--m", m, "Rank parameter")->required();
  gens->add_option("--bound", bound, "Largest boundary size")->capture_default_str();
  add_format(gens, ctx.settings);
  gens->callback([&] {
    ctx.action = [&] {
      auto budget = ctx.budget();
      const auto g = bz::minimal_generators(m, bound, budget);
      if (ctx.json()) {
        Json arr = Json::array();
        for (const auto& x : g) arr.push_back({{"triangle", triangle_to_json(x)}, {"pr", triple_to_json(bz::pr(x))}});
        ctx.emit({{"m", m}, {"bound", bound}, {"count", g.size()}, {"generators", arr}});
        return;
      }
      ctx.out << g.size() << " minimal generators with boundary size <= " << bound << "\n";
      for (const auto& x : g) ctx.out << "  " << weights_text(bz::pr(x)) << "\n";
    };
  });
}

// --- bridge ---------------------------------------------------------------------

void setup_bridge(CLI::App& app, Context& ctx) {
  static int m = 3, bound = 2, gg = 0, nn = 6, dmax = 3;
  static std::string graph_file;

  auto* br = app.add_subcommand("bridge", "Cross-checks between the two semigroups");
  br->require_subcommand(1);

  auto* incl = br->add_subcommand("check-inclusion", "R^pr inside pr(BZ), and equality");
  incl->add_option("--m", m, "Modulus")->required();
  incl->add_option("--bound", bound, "Degree bound")->capture_default_str();
  add_format(incl, ctx.settings);
  incl->callback([&] {
    ctx.action = [&] {
      auto budget = ctx.budget();
      const auto r = bridge::check_inclusion(m, bound, budget);
      Json viol = Json::array();
      for (const auto& t : r.reverse_violations) viol.push_back(weights_text(t));
      if (ctx.json()) {
        ctx.emit({{"m", m}, {"degree_bound", r.degree_bound}, {"boundary_bound", r.boundary_bound},
                  {"forward_checked", r.forward_checked}, {"forward_violations", r.forward_violations.size()},
                  {"reverse_checked", r.reverse_checked}, {"reverse_violations", viol},
                  {"inclusion", r.inclusion_holds()}, {"equality", r.equality_holds()}});
        return;
      }
      ctx.out << "m = " << m << ", degree <= " << r.degree_bound << ", boundary <= " << r.boundary_bound << "\n"
              << "inclusion: " << (r.inclusion_holds() ? "holds" : "FAILS") << " (" << r.forward_checked
              << " elements, " << r.forward_violations.size() << " violations)\n"
              << "equality:  " << (r.equality_holds() ? "holds" : "fails") << " (" << r.reverse_checked
              << " projected triples, " << r.reverse_violations.size() << " outside R^pr)\n";
      for (const auto& t : r.reverse_violations) ctx.out << "  " << weights_text(t) << "\n";
    };
  });

  auto* cex = br->add_subcommand("counterexample", "BZ triangle whose projection is not in R^pr");
  cex->add_option("--m", m, "Rank parameter (>= 4)")->required();
  add_format(cex, ctx.settings);
  cex->callback([&] {
    ctx.action = [&] {
      auto budget = ctx.budget();
      const auto c = bridge::counterexample_m_ge_4(m, budget);
      if (ctx.json()) {
        ctx.emit({{"triangle", triangle_to_json(c.triangle)}, {"pr", triple_to_json(c.projection)},
                  {"not_in_R_pr", !c.member}});
        return;
      }
      ctx.out << triangle_to_json(c.triangle).dump() << "\n"
              << "pr: " << weights_text(c.projection) << "\n"
              << "NOT in R^pr: " << (!c.member ? "true" : "false") << "\n";
    };
  });

  auto* phi = br->add_subcommand("phi-check", "Surjectivity of phi_Gamma onto R_Gamma(Z/3Z)");
  phi->add_option("--graph", graph_file, "Trivalent graph JSON file")->required();
  phi->add_option("--bound", bound, "Largest degree")->capture_default_str();
  add_format(phi, ctx.settings);
  phi->callback([&] {
    ctx.action = [&] {
      const auto g = graph_from_json(read_json_file(graph_file));
      auto budget = ctx.budget();
      const auto r = bridge::phi_gamma_check(g, 3, bound, budget);
      Json unc = Json::array();
      for (const auto& x : r.uncovered) unc.push_back(element_to_json(g, x));
      if (ctx.json()) {
        ctx.emit({{"bound", bound}, {"checked", r.checked_per_degree}, {"uncovered", unc},
                  {"surjective", r.surjective()}});
        return;
      }
      ctx.out << std::setw(4) << "L" << "  elements\n";
      for (std::size_t L = 0; L < r.checked_per_degree.size(); ++L) {
        ctx.out << std::setw(4) << L + 1 << "  " << r.checked_per_degree[L] << "\n";
      }
      ctx.out << "uncovered: " << r.uncovered.size() << "\n";
    };
  });

  auto* rel = br->add_subcommand("relations", "Cubic relations for m = 3");
  add_format(rel, ctx.settings);
  rel->callback([&] {
    ctx.action = [&] {
      const auto t = graphs::tripod();
      auto v = [&](int a, int b, int c) { return cyclic::to_element(t, cyclic::EdgeLabelling{3, {a, b, c}}); };
      const bool first = bridge::verify_relation(3, {v(1, 1, 1), v(2, 2, 2), v(0, 0, 0)},
                                                 {v(1, 2, 0), v(0, 1, 2), v(2, 0, 1)});
      const bool second = bridge::verify_relation(3, {v(1, 1, 1), v(2, 2, 2), v(0, 0, 0)},
                                                  {v(2, 1, 0), v(0, 2, 1), v(1, 0, 2)});
      const auto rc = bridge::bz_relation_count(3);
      Json rels = Json::array();
      for (const auto& [a, b] : rc.relations) {
        Json lhs = Json::array(), rhs = Json::array();
        for (int i : a) lhs.push_back(weights_text(bz::pr(bz::sl3_generators()[static_cast<std::size_t>(i)])));
        for (int i : b) rhs.push_back(weights_text(bz::pr(bz::sl3_generators()[static_cast<std::size_t>(i)])));
        rels.push_back({{"lhs", lhs}, {"rhs", rhs}});
      }
      if (ctx.json()) {
        ctx.emit({{"tripod_identities", {first, second}}, {"bz_relations", rc.primitive}, {"relations", rels}});
        return;
      }
      ctx.out << "R^pr(Z/3Z) identity 1: " << (first ? "holds" : "fails") << "\n"
              << "R^pr(Z/3Z) identity 2: " << (second ? "holds" : "fails") << "\n"
              << "BZ(SL_3) relations of degree <= 3: " << rc.primitive << "\n";
      for (const auto& r : rels) ctx.out << "  " << r["lhs"].dump() << " = " << r["rhs"].dump() << "\n";
    };
  });

  auto* hi = br->add_subcommand("hilbert-indep", "Hilbert functions across all trivalent (g,n) graphs");
  hi->add_option("--m", m, "Modulus")->required();
  hi->add_option("--g", gg, "First Betti number")->required();
  hi->add_option("--n", nn, "Number of leaves")->required();
  hi->add_option("--dmax", dmax, "Largest degree")->capture_default_str();
  add_format(hi, ctx.settings);
  hi->callback([&] {
    ctx.action = [&] {
      auto budget = ctx.budget();
      const auto t = bridge::hilbert_independence_experiment(m, gg, nn, dmax, budget, thread_limit());
      Json wit = nullptr;
      if (t.witness) {
        wit = {{"graphs", {t.witness->first, t.witness->second}}, {"degree", t.witness->degree},
               {"counts", {t.witness->first_count, t.witness->second_count}}, {"verified", t.witness->verified}};
      }
      if (ctx.json()) {
        Json gs = Json::array();
        for (const auto& g : t.graphs) gs.push_back(graph_to_json(g));
        ctx.emit({{"m", m}, {"g", gg}, {"n", nn}, {"dmax", dmax}, {"values", t.values},
                  {"all_agree", t.all_agree}, {"witness", wit}, {"graphs", gs}});
        return;
      }
      ctx.out << t.graphs.size() << " trivalent graphs of type (" << gg << "," << nn << "), m = " << m << "\n";
      ctx.out << std::setw(6) << "graph";
      for (int d = 1; d <= dmax; ++d) ctx.out << std::setw(14) << ("d=" + std::to_string(d));
      ctx.out << "\n";
      for (std::size_t i = 0; i < t.values.size(); ++i) {
        ctx.out << std::setw(6) << i;
        for (auto v : t.values[i]) ctx.out << std::setw(14) << v;
        ctx.out << "\n";
      }
      if (t.all_agree) {
        ctx.out << "all columns agree (no witness within d <= " << dmax << ")\n";
      } else {
        ctx.out << "disagreement: graphs " << t.witness->first << " and " << t.witness->second << " at d = "
                << t.witness->degree << " (" << (t.witness->verified ? "verified" : "NOT verified")
                << " by enumeration)\n";
      }
    };
  });
}

// --- render -----------------------------------------------------------------------

void setup_render(CLI::App& app, Context& ctx) {
  static std::string input, graph_file;
  static bool show_zero = false;
  auto* r = app.add_subcommand("render", "Honeycomb pictures");
  r->require_subcommand(1);

  auto* svg = r->add_subcommand("svg", "SVG honeycomb of a triangle or glued element");
  svg->add_option("--input", input, "Triangle or glued-element JSON file")->required();
  svg->add_option("--graph", graph_file, "Graph JSON file (glued input)");
  svg->add_flag("--show-zero", show_zero, "Draw zero-weight segments dashed");
  svg->callback([&] {
    ctx.action = [&] {
      const auto j = read_json_file(input);
      render::SvgOptions opt;
      opt.show_zero = show_zero;
      if (j.contains("triangles")) {
        if (graph_file.empty()) throw ValidationError("glued input needs --graph");
        const auto g = graph_from_json(read_json_file(graph_file));
        ctx.out << render::glued_honeycomb_svg(g, glued_from_json(g, j), opt);
      } else {
        ctx.out << render::honeycomb_svg(triangle_from_json(j), opt);
      }
    };
  });

  auto* text = r->add_subcommand("text", "Text honeycomb of a triangle");
  text->add_option("--input", input, "Triangle JSON file")->required();
  text->callback([&] {
    ctx.action = [&] { ctx.out << render::honeycomb_text(triangle_from_json(read_json_file(input))); };
  });
}

}  // namespace

int thread_limit() {
  if (const char* env = std::getenv("BZPHYLO_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bzphylo: phylogenetic semigroups and BZ triangles"};
  app.name("bzphylo");
  app.require_subcommand(1);
  Context ctx{{}, out, {}};
  setup_cyclic(app, ctx);
  setup_bz(app, ctx);
  setup_bridge(app, ctx);
  setup_render(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kValidation;
  }
  try {
    if (ctx.action) ctx.action();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ResourceExceeded& e) {
    err << "resource bound: " << e.what() << " (raise --max-nodes)\n";
    return kResource;
  }
  return kOk;
}

}  // namespace bzphylo::cli
