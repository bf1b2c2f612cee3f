// fglab: command-line front end. Every subcommand prints a JSON report (or
// DOT for `graph --dot`) to stdout or --out.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage or input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fglab/cocycle.hpp"
#include "fglab/error.hpp"
#include "fglab/io.hpp"
#include "fglab/line_geometry.hpp"
#include "fglab/pattern_transport.hpp"
#include "fglab/recurrence_probe.hpp"
#include "fglab/stabilizer_lab.hpp"
#include "fglab/verify.hpp"

using namespace fglab;

namespace {

struct Common {
  std::string action;
  std::string out;
  std::string basepoint;
  std::size_t cap = kDefaultBallCap;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("action", c.action, "built-in action name or action JSON file")->required();
  cmd->add_option("--out", c.out, "write the report to this file");
  cmd->add_option("--basepoint", c.basepoint, "override the basepoint, e.g. 0(1)");
  cmd->add_option("--cap", c.cap, "maximum number of ball vertices")->capture_default_str();
}

std::shared_ptr<const ActionSystem> load(const Common& c) {
  ActionSystem a = load_action(c.action);
  if (!c.basepoint.empty()) a = a.with_basepoint(BoundaryPoint::parse(c.basepoint));
  return std::make_shared<const ActionSystem>(std::move(a));
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

void emit(const Common& c, const Json& j) { emit(c, j.dump(2) + "\n"); }

Vertex locate(const SchreierBall& ball, const std::string& label) {
  const auto v = ball.find(BoundaryPoint::parse(label));
  if (!v) throw UsageError("point " + label + " is not in the ball");
  return *v;
}

std::vector<FullGroupElement> family(const std::shared_ptr<const ActionSystem>& action, const std::string& path) {
  if (path.empty()) return default_family(action);
  return elements_from_json(action, read_json_file(path));
}

Json chart_json(const FiniteGraph& g, const LineChart& chart) {
  const FiberReport fr = fiber_diameter_check(g, chart);
  const GeodesicSegment ell = diametral_geodesic(g, chart);
  const CoveringReport cov = m_covering_check(g, ell, chart.m, chart.margin);
  return {
      {"alpha", to_string(chart.alpha)},
      {"beta", to_string(chart.beta)},
      {"gamma", to_string(chart.gamma)},
      {"m", to_string(chart.m)},
      {"certified_pairs", chart.certified_pairs},
      {"fiber_report",
       {{"max_fiber_diameter", fr.max_fiber_diameter}, {"bound", to_string(fr.bound)}, {"pass", fr.pass}}},
      {"covering_report",
       {{"max_distance", cov.max_distance}, {"m", to_string(cov.m)}, {"pass", cov.pass}}},
      {"pass", fr.pass && cov.pass},
  };
}

std::vector<std::size_t> parse_radii(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad radius list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty radius list");
  return out;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::UnknownAction:
    case ErrorKind::ParseError:
    case ErrorKind::InvalidPoint:
    case ErrorKind::UnknownGenerator:
    case ErrorKind::InvalidAction:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale evidence for full groups acting with a line-like orbit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(FGLAB_VERSION));

  Common c;
  int status = 0;

  // action list | dump
  auto* action_cmd = app.add_subcommand("action", "list or dump action definitions");
  action_cmd->require_subcommand(1);
  action_cmd->add_subcommand("list", "built-in action names")->callback([&] {
    emit(c, Json(builtin_action_names()));
  });
  auto* dump_cmd = action_cmd->add_subcommand("dump", "print an action as JSON");
  add_common(dump_cmd, c);
  dump_cmd->callback([&] { emit(c, action_to_json(*load(c))); });

  // graph
  std::optional<std::size_t> radius;
  std::optional<std::size_t> level;
  bool dot = false;
  bool no_loops = false;
  auto* graph_cmd = app.add_subcommand("graph", "Schreier ball or level graph");
  add_common(graph_cmd, c);
  graph_cmd->add_option("--radius", radius, "ball radius around the basepoint");
  graph_cmd->add_option("--level", level, "level-n graph on binary words")->excludes("--radius");
  graph_cmd->add_flag("--dot", dot, "emit Graphviz DOT instead of JSON");
  graph_cmd->add_flag("--no-loops", no_loops, "drop loops from the DOT output");
  graph_cmd->callback([&] {
    const auto a = load(c);
    const FiniteGraph g = level ? build_level_graph(*a, *level, c.cap).graph : build_ball(*a, radius.value_or(4), c.cap).graph;
    if (dot) {
      emit(c, graph_to_dot(g, no_loops));
    } else {
      emit(c, graph_to_json(g));
    }
  });

  // qi
  auto* qi_cmd = app.add_subcommand("qi", "quasi-isometry certificate for a ball or level graph");
  add_common(qi_cmd, c);
  qi_cmd->add_option("--radius", radius, "ball radius");
  qi_cmd->add_option("--level", level, "level-n graph")->excludes("--radius");
  qi_cmd->callback([&] {
    const auto a = load(c);
    const FiniteGraph g = level ? build_level_graph(*a, *level, c.cap).graph : build_ball(*a, radius.value_or(50), c.cap).graph;
    const LineChart chart = fit_line_chart(g);
    Json j = chart_json(g, chart);
    j["vertices"] = g.size();
    j["chart_hash"] = chart.hash();
    if (!j["pass"].get<bool>()) status = 1;
    emit(c, j);
  });

  // element check | apply | compose | invert
  std::string element_path;
  std::string other_path;
  std::string point;
  auto* element_cmd = app.add_subcommand("element", "full-group element operations");
  element_cmd->require_subcommand(1);
  auto element_sub = [&](const char* name, const char* help) {
    auto* cmd = element_cmd->add_subcommand(name, help);
    add_common(cmd, c);
    cmd->add_option("--element", element_path, "element JSON file")->required();
    return cmd;
  };
  element_sub("check", "validate an element")->callback([&] {
    const auto a = load(c);
    const FullGroupElement phi = element_from_json(a, read_json_file(element_path));
    Json j = element_to_json(phi);
    j["valid"] = true;
    j["depth"] = phi.depth();
    j["d_phi"] = displacement_bound(phi);
    j["identity"] = is_identity(phi);
    emit(c, j);
  });
  auto* apply_cmd = element_sub("apply", "image of a point");
  apply_cmd->add_option("--point", point, "point as pre(period)")->required();
  apply_cmd->callback([&] {
    const auto a = load(c);
    const FullGroupElement phi = element_from_json(a, read_json_file(element_path));
    const BoundaryPoint x = BoundaryPoint::parse(point);
    emit(c, Json{{"point", x.to_string()}, {"image", phi(x).to_string()}});
  });
  auto* compose_cmd = element_sub("compose", "element o other (other acts first)");
  compose_cmd->add_option("--with", other_path, "second element JSON file")->required();
  compose_cmd->callback([&] {
    const auto a = load(c);
    const FullGroupElement phi = element_from_json(a, read_json_file(element_path));
    const FullGroupElement psi = element_from_json(a, read_json_file(other_path));
    emit(c, element_to_json(compose(phi, psi)));
  });
  element_sub("invert", "inverse element")->callback([&] {
    const auto a = load(c);
    emit(c, element_to_json(invert(element_from_json(a, read_json_file(element_path)))));
  });

  // cocycle
  std::size_t ball_radius = 200;
  auto* cocycle_cmd = app.add_subcommand("cocycle", "cocycle value Y xor phi(Y)");
  add_common(cocycle_cmd, c);
  cocycle_cmd->add_option("--element", element_path, "element JSON file")->required();
  cocycle_cmd->add_option("--radius", ball_radius, "ball radius")->capture_default_str();
  cocycle_cmd->callback([&] {
    const auto a = load(c);
    const FullGroupElement phi = element_from_json(a, read_json_file(element_path));
    const LineSetting s = LineSetting::build(*a, ball_radius, c.cap);
    const CocycleValue v = compute_cocycle(phi, s.y, s.ball);
    Json value = Json::array();
    for (const auto& p : v.points) value.push_back(p.to_string());
    const std::size_t d = displacement_bound(phi);
    emit(c, Json{{"value", value},
                 {"stabilized", v.stabilized},
                 {"containment", v.containment_ok},
                 {"kernel", v.stabilized && v.vertices.empty()},
                 {"radius", v.radius},
                 {"R", s.r_const},
                 {"d_phi", d},
                 {"N_phi", to_string(n_phi(s.chart.m, s.r_const, d))},
                 {"chart_hash", s.chart.hash()}});
    if (!v.stabilized || !v.containment_ok) status = 1;
  });

  // transport
  std::string f_path;
  std::size_t n = 10;
  std::string z_label;
  auto* transport_cmd = app.add_subcommand("transport", "transport Y to a pattern match z");
  add_common(transport_cmd, c);
  transport_cmd->add_option("--F", f_path, "element set JSON file (default: built-in family)");
  transport_cmd->add_option("--n", n, "pattern depth")->capture_default_str();
  transport_cmd->add_option("--z", z_label, "match point as pre(period)")->required();
  transport_cmd->add_option("--radius", ball_radius, "ball radius")->capture_default_str();
  transport_cmd->callback([&] {
    const auto a = load(c);
    const auto f = family(a, f_path);
    const LineSetting s = LineSetting::build(*a, ball_radius, c.cap);
    const TransportedHalfSpace t = transport_halfspace(f, locate(s.ball, z_label), n, s, false);
    Json b_plus = Json::array();
    Json b_minus = Json::array();
    for (Vertex v : t.b_plus) b_plus.push_back(s.ball.graph.label(v));
    for (Vertex v : t.b_minus) b_minus.push_back(s.ball.graph.label(v));
    emit(c, Json{{"z", s.ball.graph.label(t.z)},
                 {"n", t.n},
                 {"N_phi", to_string(max_n_phi(f, s))},
                 {"B_plus", b_plus},
                 {"B_minus", b_minus},
                 {"Y_z", t.y_is_a_plus ? "A+" : "A-"},
                 {"margin", t.margin},
                 {"partition", t.partition_ok},
                 {"boundary", t.boundary_ok},
                 {"invariance", t.invariance_ok},
                 {"ends", t.ends_ok},
                 {"boundary_in_ball", t.boundary_in_ball_ok},
                 {"witness", t.witness},
                 {"pass", t.ok()}});
    if (!t.ok()) status = 1;
  });

  // stabilizer
  std::uint64_t order_cap = kDefaultOrderCap;
  auto* stab_cmd = app.add_subcommand("stabilizer", "nested family and finite order of <F>");
  add_common(stab_cmd, c);
  stab_cmd->add_option("--F", f_path, "element set JSON file (default: built-in family)");
  stab_cmd->add_option("--n", n, "pattern depth")->capture_default_str();
  stab_cmd->add_option("--radius", ball_radius, "ball radius")->capture_default_str();
  stab_cmd->add_option("--order-cap", order_cap, "largest group order to enumerate")->capture_default_str();
  stab_cmd->callback([&] {
    const auto a = load(c);
    const auto f = family(a, f_path);
    const LineSetting s = LineSetting::build(*a, ball_radius, c.cap);
    const NestedFamily fam = nested_family(f, n, s, std::nullopt, false);
    const OrderReport order = finite_embedding_order(f, fam, s, order_cap);
    Json sizes = Json::array();
    for (const auto& b : fam.blocks) sizes.push_back(b.size());
    emit(c, Json{{"anchors", fam.anchors.size()},
                 {"r", fam.r},
                 {"spacing", fam.spacing},
                 {"U", fam.u},
                 {"blocks", sizes},
                 {"nesting", fam.nesting_ok},
                 {"bound", fam.bound_ok && fam.local_ok},
                 {"invariance", fam.invariance_ok},
                 {"disjoint", fam.disjoint_ok},
                 {"orders", {{"blocks", order.blocks}, {"brute", order.brute}}},
                 {"agree", order.agree},
                 {"witness", fam.witness}});
    if (!fam.ok() || !order.agree) status = 1;
  });

  // recurrence
  std::string radii_text = "2,4,8,16,32";
  std::size_t trials = 0;
  bool tree = false;
  auto* rec_cmd = app.add_subcommand("recurrence", "exact escape probabilities");
  add_common(rec_cmd, c);
  rec_cmd->add_option("--radii", radii_text, "comma-separated radii")->capture_default_str();
  rec_cmd->add_option("--simulate", trials, "also run this many random-walk trials per radius");
  rec_cmd->add_flag("--tree", tree, "use the 3-regular tree control instead of the action");
  rec_cmd->callback([&] {
    const auto radii = parse_radii(radii_text);
    const std::size_t top = *std::max_element(radii.begin(), radii.end());
    FiniteGraph g;
    std::string name = "tree3";
    if (tree) {
      g = regular_tree_ball(3, top);
    } else {
      const auto a = load(c);
      g = build_ball(*a, top, c.cap).graph;
      name = a->name();
    }
    std::mt19937_64 rng(lab_seed());
    Json series = Json::array();
    for (const auto& pt : escape_series(g, radii)) {
      Json entry = {{"radius", pt.radius}, {"escape", to_string(pt.probability)},
                    {"approx", pt.probability.convert_to<double>()}};
      if (trials > 0) {
        const SimulationReport sim = simulate_escape(g, pt.radius, trials, rng);
        entry["simulated"] = {{"trials", sim.trials}, {"estimate", sim.estimate}, {"standard_error", sim.standard_error}};
      }
      series.push_back(entry);
    }
    emit(c, Json{{"graph", name}, {"seed", lab_seed()}, {"series", series}});
  });

  // verify
  VerifyOptions vopt;
  auto* verify_cmd = app.add_subcommand("verify", "run every lemma check and report");
  add_common(verify_cmd, c);
  verify_cmd->add_option("--radius", vopt.radius, "ball radius")->capture_default_str();
  verify_cmd->add_option("--n", vopt.n, "pattern depth")->capture_default_str();
  verify_cmd->add_option("--F", f_path, "element set JSON file (default: built-in family)");
  verify_cmd->add_option("--order-cap", vopt.order_cap, "largest group order to enumerate")->capture_default_str();
  verify_cmd->add_flag("--timing", vopt.timing, "include per-lemma timings (breaks byte-identical reports)");
  verify_cmd->callback([&] {
    vopt.ball_cap = c.cap;
    const auto a = load(c);
    const VerificationReport r = run_verification(a, family(a, f_path), vopt);
    emit(c, r.json);
    if (!r.pass) status = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  }
  return status;
}
