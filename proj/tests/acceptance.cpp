// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iterator>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fglab/cocycle.hpp"
#include "fglab/error.hpp"
#include "fglab/io.hpp"
#include "fglab/line_geometry.hpp"
#include "fglab/recurrence_probe.hpp"
#include "fglab/stabilizer_lab.hpp"
#include "fglab/verify.hpp"
#include "unit/oracles.hpp"

using namespace fglab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

using ActionPtr = FullGroupElement::ActionPtr;

ActionPtr shared(std::string_view name) { return std::make_shared<const ActionSystem>(builtin_action(name)); }

// Simple graph as sorted neighbor sets, loops and multi-edges dropped.
std::vector<std::set<int>> simple(const FiniteGraph& g) {
  std::vector<std::set<int>> adj(g.size());
  for (const auto& e : g.edges()) {
    if (e.from == e.to) continue;
    adj[e.from].insert(static_cast<int>(e.to));
    adj[e.to].insert(static_cast<int>(e.from));
  }
  return adj;
}

bool path_degrees(const std::vector<std::set<int>>& adj) {
  std::size_t ones = 0;
  std::size_t edges = 0;
  for (const auto& n : adj) {
    if (n.size() == 1) ++ones;
    else if (n.size() != 2) return false;
    edges += n.size();
  }
  const auto d = oracle::distances(adj, 0);
  for (int x : d) {
    if (x < 0) return false;
  }
  return ones == 2 && edges / 2 + 1 == adj.size();
}

// Level-n graph built from the hand-written recursion alone.
std::vector<std::set<int>> oracle_level(std::string (*gen)(char, std::string), const std::string& letters,
                                        std::size_t n) {
  const auto words = all_words(n);
  std::vector<std::set<int>> adj(words.size());
  auto index = [&](const std::string& w) {
    return static_cast<int>(std::lower_bound(words.begin(), words.end(), w) - words.begin());
  };
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (char c : letters) {
      const int j = index(gen(c, words[i]));
      if (j != static_cast<int>(i)) {
        adj[i].insert(j);
        adj[j].insert(static_cast<int>(i));
      }
    }
  }
  return adj;
}

std::vector<BoundaryPoint> sym_diff(std::vector<BoundaryPoint> a, std::vector<BoundaryPoint> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<BoundaryPoint> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FullGroupElement swap_pairs(const ActionPtr& odo) { return make_element(odo, {{"0", {"t"}}, {"1", {"t^-1"}}}); }

FullGroupElement swap_quads(const ActionPtr& odo) {
  return make_element(odo, {{"00", {"t", "t"}}, {"01", {"t^-1", "t^-1"}}, {"10", {}}, {"11", {}}});
}

// ---------------------------------------------------------------------------

Outcome relations() {
  Outcome out;
  const ActionSystem g = builtin_action("grigorchuk");
  std::mt19937_64 rng(lab_seed());
  const std::vector<GroupWord> rels{{"a", "a"}, {"b", "b"}, {"c", "c"}, {"d", "d"}, {"b", "c", "d"}};
  for (int i = 0; i < 1000; ++i) {
    const BoundaryPoint x = random_point(rng);
    for (const auto& w : rels) out.require(g.apply(w, x) == x, w.to_string() + " moves " + x.to_string());
  }
  return out;
}

Outcome line_shape() {
  Outcome out;
  for (std::size_t n = 1; n <= 11; ++n) {
    const LevelGraph gl = build_level_graph(builtin_action("grigorchuk"), n);
    const LevelGraph dl = build_level_graph(builtin_action("dihedral"), n);
    const auto ga = simple(gl.graph);
    const auto da = simple(dl.graph);
    out.require(ga.size() == (std::size_t{1} << n) && da.size() == ga.size(), "vertex count at n=" + std::to_string(n));
    out.require(ga == oracle_level(oracle::grigorchuk, "abcd", n), "grigorchuk edges differ at n=" + std::to_string(n));
    out.require(da == oracle_level(oracle::dihedral, "ab", n), "dihedral edges differ at n=" + std::to_string(n));
    out.require(path_degrees(ga), "grigorchuk level " + std::to_string(n) + " is not a path");
    out.require(path_degrees(da), "dihedral level " + std::to_string(n) + " is not a path");
  }
  const SchreierBall ball = build_ball(builtin_action("odometer"), 200);
  out.require(ball.size() == 401, "odometer ball has " + std::to_string(ball.size()) + " vertices");
  const auto adj = simple(ball.graph);
  out.require(path_degrees(adj), "odometer ball is not a path");
  for (Vertex v = 0; v < ball.size(); ++v) {
    const long long k = oracle::point_int(ball.points[v]);
    out.require(k >= -200 && k <= 200, "vertex outside -200..200");
    for (int u : adj[v]) {
      const long long j = oracle::point_int(ball.points[u]);
      out.require(j == k + 1 || j == k - 1, "edge between non-adjacent integers");
    }
  }
  return out;
}

Outcome qi_certificates() {
  Outcome out;
  const SchreierBall ball = build_ball(builtin_action("odometer"), 200);
  const LineChart c = fit_line_chart(ball.graph);
  out.require(c.alpha == 1 && c.beta == 0 && c.gamma == 0 && c.m == 1,
              "odometer constants " + to_string(c.alpha) + "," + to_string(c.beta) + "," + to_string(c.gamma) + "," +
                  to_string(c.m));

  const LevelGraph lg = build_level_graph(builtin_action("grigorchuk"), 10);
  const LineChart gc = fit_line_chart(lg.graph);
  const FiberReport fib = fiber_diameter_check(lg.graph, gc);
  // Independent fiber scan.
  const auto adj = simple(lg.graph);
  std::size_t widest = 0;
  std::map<std::int64_t, std::vector<int>> fibers;
  for (Vertex v = 0; v < lg.graph.size(); ++v) fibers[gc.f[v]].push_back(static_cast<int>(v));
  for (const auto& [value, members] : fibers) {
    for (int a : members) {
      const auto d = oracle::distances(adj, a);
      for (int b : members) widest = std::max<std::size_t>(widest, static_cast<std::size_t>(d[b]));
    }
  }
  out.require(fib.max_fiber_diameter == widest, "fiber diameter disagrees with the scan");
  out.require(fib.pass && Rational(static_cast<long long>(widest)) <= gc.alpha * gc.beta, "fiber check fails");
  const CoveringReport cov = m_covering_check(lg.graph, diametral_geodesic(lg.graph, gc), gc.m, gc.margin);
  out.require(cov.pass, "covering check fails");
  return out;
}

Outcome cocycle_suite() {
  Outcome out;
  const ActionPtr odo = shared("odometer");
  const SchreierBall ball = build_ball(*odo, 60);
  const LineChart chart = fit_line_chart(ball.graph);
  const HalfSpace y = half_space(ball.graph, chart);
  std::mt19937_64 rng(lab_seed());
  std::vector<FullGroupElement> elems;
  for (int i = 0; i < 100; ++i) elems.push_back(random_element(odo, rng, 3, 3));

  out.require(cocycle_value(identity_element(odo), y, ball).vertices.empty(), "c_id is not empty");

  for (std::size_t i = 0; i < elems.size(); ++i) {
    const FullGroupElement& phi = elems[i];
    const FullGroupElement& psi = elems[(i + 1) % elems.size()];
    const FullGroupElement pp = compose(phi, psi);
    const CocycleValue c_pp = cocycle_value(pp, y, ball, 40);
    const CocycleValue c_phi = cocycle_value(phi, y, ball, 40);
    const CocycleValue c_psi = cocycle_value(psi, y, ball, 40);
    std::vector<BoundaryPoint> moved;
    for (const auto& p : c_psi.points) moved.push_back(apply_element(phi, p));
    out.require(sym_diff(c_phi.points, moved) == c_pp.points, "cocycle identity fails at pair " + std::to_string(i));
  }

  std::vector<FullGroupElement> kernel{identity_element(odo), swap_pairs(odo), swap_quads(odo)};
  for (const auto& e : elems) {
    if (stabilizer_test(e, y, ball, 40)) kernel.push_back(e);
  }
  for (const auto& a : kernel) {
    out.require(stabilizer_test(invert(a), y, ball, 40), "kernel not closed under inverse");
    for (const auto& b : kernel) {
      out.require(stabilizer_test(compose(a, b), y, ball, 40), "kernel not closed under product");
    }
  }
  return out;
}

Outcome derived_constants() {
  Outcome out;
  std::vector<std::pair<std::string, FiniteGraph>> graphs;
  graphs.emplace_back("odometer", build_ball(builtin_action("odometer"), 200).graph);
  graphs.emplace_back("grigorchuk", build_level_graph(builtin_action("grigorchuk"), 10).graph);
  graphs.emplace_back("dihedral", build_level_graph(builtin_action("dihedral"), 10).graph);
  graphs.emplace_back("grigorchuk-ball", build_ball(builtin_action("grigorchuk"), 200).graph);
  graphs.emplace_back("dihedral-ball", build_ball(builtin_action("dihedral"), 200).graph);
  for (const auto& [name, g] : graphs) {
    const LineChart chart = fit_line_chart(g);
    const HalfSpace y = half_space(g, chart);
    out.require(boundary_band_check(g, chart, y).pass, name + ": boundary outside the band");
    for (Vertex v = 0; v < g.size(); ++v) {
      if (!y.contains(v) || !g.certified(v, y.margin)) continue;
      bool edge = false;
      for (Vertex u : g.neighbors(v)) edge = edge || !y.contains(u);
      if (edge) {
        out.require(chart.f[v] >= 0 && Rational(chart.f[v]) <= chart.alpha + chart.beta - 1,
                    name + ": boundary vertex " + g.label(v) + " outside the band");
      }
    }
  }

  const ActionPtr odo = shared("odometer");
  VerifyOptions opt;
  const Json report = run_verification(odo, default_family(odo), opt).json;
  const Json& k = report.at("constants");
  const Rational m = parse_rational(k.at("m").get<std::string>());
  const auto r = k.at("R").get<std::size_t>();
  const auto d = k.at("d_phi").get<std::size_t>();
  const Rational n = parse_rational(k.at("N_phi").get<std::string>());
  out.require(n == 6 * m + static_cast<long long>(r) + 2 * static_cast<long long>(d), "N_phi != 6m + R + 2 d_phi");
  out.require(m == 1 && r == 1 && d == 1 && n == 9, "odometer constants differ from m=1, R=1, d=1, N=9");
  return out;
}

Outcome transport_and_nesting() {
  Outcome out;
  const ActionPtr odo = shared("odometer");
  const LineSetting s = LineSetting::build(*odo, 200);
  const std::vector<FullGroupElement> f{swap_pairs(odo)};
  out.require(max_n_phi(f, s) == 9, "N_phi is " + to_string(max_n_phi(f, s)));
  const RepetitionReport rep = repetition_radius(f, 10, s.ball, s.p);
  std::size_t passed = 0;
  for (Vertex z : rep.matches) {
    if (passed >= 5) break;
    const TransportedHalfSpace t = transport_halfspace(f, z, 10, s, false);
    out.require(t.ok(), "transport at " + s.ball.graph.label(z) + ": " + t.witness);
    // Y_z = {k >= f(z)} by integer bookkeeping.
    const long long kz = oracle::point_int(s.ball.points[z]);
    for (Vertex v : s.ball.graph.certified_vertices(t.margin)) {
      out.require(t.contains(v) == (oracle::point_int(s.ball.points[v]) >= kz), "Y_z differs from the half-line");
    }
    ++passed;
  }
  out.require(passed >= 5, "fewer than 5 match points");

  const NestedFamily fam = nested_family(f, 10, s, std::nullopt, false);
  out.require(fam.anchors.size() >= 3, "fewer than 3 anchors");
  out.require(fam.nesting_ok && fam.bound_ok, "nesting or block bound fails: " + fam.witness);
  for (std::size_t i = 0; i + 1 < fam.anchors.size(); ++i) {
    const auto& outer = fam.anchors[i].member;
    const auto& inner = fam.anchors[i + 1].member;
    for (Vertex v = 0; v < s.ball.size(); ++v) {
      if (s.ball.graph.certified(v, fam.margin)) out.require(!inner[v] || outer[v], "Y_{i+1} not inside Y_i");
    }
  }
  for (const auto& b : fam.blocks) out.require(b.size() <= fam.u, "block larger than U");
  return out;
}

Outcome finite_order() {
  Outcome out;
  const ActionPtr odo = shared("odometer");
  const LineSetting s = LineSetting::build(*odo, 200);
  struct Case {
    std::vector<FullGroupElement> f;
    std::size_t n;
    std::uint64_t expect;
  };
  const std::vector<Case> cases{{{identity_element(odo)}, 10, 1},
                                {{swap_pairs(odo)}, 10, 2},
                                {{swap_pairs(odo), swap_quads(odo)}, 12, 8}};
  for (const auto& c : cases) {
    for (const auto& phi : c.f) out.require(stabilizer_test(phi, s.y, s.ball), "element outside the kernel");
    const NestedFamily fam = nested_family(c.f, c.n, s);
    const OrderReport order = finite_embedding_order(c.f, fam, s);
    out.require(order.agree && order.blocks == order.brute,
                "orders disagree: " + std::to_string(order.blocks) + " vs " + std::to_string(order.brute));
    out.require(order.brute == c.expect, "order " + std::to_string(order.brute) + ", expected " +
                                             std::to_string(c.expect));
    out.require(order.brute <= 1000000, "order above 10^6");
  }
  return out;
}

Outcome recurrence() {
  Outcome out;
  const SchreierBall ball = build_ball(builtin_action("odometer"), 40);
  for (std::size_t r = 1; r <= 32; ++r) {
    out.require(escape_probability(ball.graph, r) == Rational(1, static_cast<long long>(r)),
                "escape at r=" + std::to_string(r) + " is not 1/r");
  }
  for (std::size_t r = 1; r <= 10; ++r) {
    const Rational p = escape_probability(regular_tree_ball(3, r + 1), r);
    out.require(p >= Rational(1, 4), "tree escape below 1/4 at r=" + std::to_string(r));
  }
  return out;
}

Outcome determinism() {
  Outcome out;
  const ActionPtr odo = shared("odometer");
  VerifyOptions opt;
  opt.radius = 200;
  opt.n = 10;
  const VerificationReport a = run_verification(odo, default_family(odo), opt);
  const VerificationReport b = run_verification(odo, default_family(odo), opt);
  out.require(a.json.dump(2) == b.json.dump(2), "reports differ");
  out.require(a.pass, "verify odometer did not pass");
  for (const auto& l : a.json.at("lemmas")) {
    out.require(l.at("status") == "pass", "lemma " + l.at("id").get<std::string>() + " is " +
                                              l.at("status").get<std::string>());
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "builtin relations", 1, relations},
      {2, "line shape", 10, line_shape},
      {3, "qi certificates", 30, qi_certificates},
      {4, "cocycle suite", 60, cocycle_suite},
      {5, "constants", 5, derived_constants},
      {6, "transport and nesting", 60, transport_and_nesting},
      {7, "finite order", 60, finite_order},
      {8, "recurrence probe", 10, recurrence},
      {9, "determinism", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit) {
      o.ok = false;
      o.detail = "took longer than " + std::to_string(static_cast<int>(c.limit)) + " s";
    }
    std::printf("%s %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.ok ? "" : ": ",
                o.detail.c_str());
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
