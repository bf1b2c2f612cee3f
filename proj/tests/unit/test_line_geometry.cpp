#include <doctest.h>

#include <cstdlib>
#include <set>

#include "fglab/error.hpp"
#include "fglab/line_geometry.hpp"
#include "oracles.hpp"

using namespace fglab;

namespace {

std::vector<std::set<int>> adjacency(const FiniteGraph& g) {
  std::vector<std::set<int>> adj(g.size());
  for (const auto& e : g.edges()) {
    if (e.from == e.to) continue;
    adj[e.from].insert(static_cast<int>(e.to));
    adj[e.to].insert(static_cast<int>(e.from));
  }
  return adj;
}

int oracle_diameter(const FiniteGraph& g) {
  const auto adj = adjacency(g);
  int best = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (int d : oracle::distances(adj, static_cast<int>(s))) best = std::max(best, d);
  }
  return best;
}

}  // namespace

TEST_CASE("odometer chart") {
  const SchreierBall ball = build_ball(builtin_action("odometer"), 3);
  const LineChart chart = fit_line_chart(ball.graph);
  CHECK(chart.alpha == 1);
  CHECK(chart.beta == 0);
  CHECK(chart.gamma == 0);
  CHECK(chart.m == 1);
  // f is the signed position.
  for (Vertex v = 0; v < ball.size(); ++v) CHECK(chart.f[v] == oracle::point_int(ball.points[v]));

  // Exhaustive check of both inequalities over all 21 pairs of the path.
  const auto adj = adjacency(ball.graph);
  for (Vertex u = 0; u < ball.size(); ++u) {
    const auto d = oracle::distances(adj, static_cast<int>(u));
    for (Vertex v = u + 1; v < ball.size(); ++v) CHECK(std::llabs(chart.f[u] - chart.f[v]) == d[v]);
  }
}

TEST_CASE("chart orientation does not depend on the radius") {
  const ActionSystem odo = builtin_action("odometer");
  for (std::size_t r : {3, 10, 64, 200}) {
    const SchreierBall ball = build_ball(odo, r);
    const LineChart chart = fit_line_chart(ball.graph);
    CHECK(chart.f[*ball.find(oracle::int_point(1))] == 1);
    CHECK(chart.f[*ball.find(oracle::int_point(-1))] == -1);
  }
}

TEST_CASE("single edge") {
  const LineChart chart = fit_line_chart(FiniteGraph::path(2));
  CHECK(chart.alpha == 1);
  CHECK(chart.beta == 0);
  CHECK(chart.m == 1);
  CHECK_THROWS_AS(fit_line_chart(FiniteGraph::path(1)), Error);
  CHECK_THROWS_AS(fit_line_chart(FiniteGraph::from_edges(3, {{0, 1}})), Error);
}

TEST_CASE("m formula") {
  CHECK(m_constant(2, 3) == 16);
  CHECK(m_constant(1, 0) == 1);
  CHECK(m_constant(Rational(3, 2), Rational(1, 2)) == Rational(15, 4));
}

TEST_CASE("fiber diameter") {
  const SchreierBall ball = build_ball(builtin_action("odometer"), 20);
  const FiberReport odo = fiber_diameter_check(ball.graph, fit_line_chart(ball.graph));
  CHECK(odo.pass);
  CHECK(odo.max_fiber_diameter == 0);
  CHECK(odo.bound == 0);

  const LevelGraph lg = build_level_graph(builtin_action("grigorchuk"), 8);
  const LineChart gc = fit_line_chart(lg.graph);
  const FiberReport gr = fiber_diameter_check(lg.graph, gc);
  CHECK(gr.pass);
  CHECK(Rational(static_cast<long long>(gr.max_fiber_diameter)) <= gc.alpha * gc.beta);

  // Fat fiber: a 4-cycle 0-1-2-3 seen from vertex 0 puts 1 and 3 on the same
  // level, at distance 2, while (1, 0) claims singleton fibers.
  const FiniteGraph cycle = FiniteGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  LineChart fake;
  fake.f = {0, 1, 2, 1};
  fake.alpha = 1;
  fake.beta = 0;
  fake.margin = 0;
  const FiberReport bad = fiber_diameter_check(cycle, fake);
  CHECK(!bad.pass);
  CHECK(bad.max_fiber_diameter == 2);
  CHECK(bad.worst_value == 1);
}

TEST_CASE("diametral geodesics") {
  const FiniteGraph p7 = FiniteGraph::path(7);
  const GeodesicSegment seg = diametral_geodesic(p7);
  CHECK(seg.length() == 6);
  CHECK(is_geodesic(p7, seg));

  const SchreierBall ball = build_ball(builtin_action("odometer"), 10);
  const GeodesicSegment odo = diametral_geodesic(ball.graph);
  CHECK(odo.length() == 20);
  CHECK(static_cast<int>(odo.length()) == oracle_diameter(ball.graph));

  const LevelGraph lg = build_level_graph(builtin_action("grigorchuk"), 6);
  const GeodesicSegment gseg = diametral_geodesic(lg.graph);
  CHECK(gseg.length() == 63);
  CHECK(oracle_diameter(lg.graph) == 63);
  CHECK(is_geodesic(lg.graph, gseg));

  // Chart orientation: f increases towards the end.
  const LineChart chart = fit_line_chart(ball.graph);
  const GeodesicSegment oriented = diametral_geodesic(ball.graph, chart);
  CHECK(chart.f[oriented.vertices.front()] < chart.f[oriented.vertices.back()]);
}

TEST_CASE("geodesic midpoints") {
  const FiniteGraph p9 = FiniteGraph::path(9);
  CHECK(max_geodesic_midpoint(p9, 4) == 4);
  CHECK(max_geodesic_midpoint(p9, 0) == 0);
  CHECK(max_geodesic_midpoint(p9, 2) == 2);

  const LevelGraph lg = build_level_graph(builtin_action("grigorchuk"), 3);
  const GeodesicSegment seg = diametral_geodesic(lg.graph);
  REQUIRE(seg.vertices.size() == 8);
  CHECK(max_geodesic_midpoint(lg.graph, seg.vertices[3]) == 3);
  CHECK(max_geodesic_midpoint(lg.graph, seg.vertices[4]) == 3);
}

TEST_CASE("projection tie-break") {
  // Geodesic 0-1-2-3-4-5-6 and x = 7 adjacent to 3 and 5.
  const FiniteGraph g =
      FiniteGraph::from_edges(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {7, 3}, {7, 5}});
  GeodesicSegment seg;
  seg.vertices = {0, 1, 2, 3, 4, 5, 6};
  CHECK(project_to_geodesic(g, seg, 7) == 3);
  std::reverse(seg.vertices.begin(), seg.vertices.end());
  CHECK(project_to_geodesic(g, seg, 7) == 5);
  CHECK(project_to_geodesic(g, seg, 4) == 4);

  const SchreierBall ball = build_ball(builtin_action("odometer"), 6);
  const GeodesicSegment odo = diametral_geodesic(ball.graph);
  for (Vertex v = 0; v < ball.size(); ++v) CHECK(project_to_geodesic(ball.graph, odo, v) == v);
}

TEST_CASE("covering checks") {
  const SchreierBall ball = build_ball(builtin_action("odometer"), 30);
  const CoveringReport odo = m_covering_check(ball.graph, diametral_geodesic(ball.graph), 1);
  CHECK(odo.pass);
  CHECK(odo.max_distance == 0);

  const LevelGraph lg = build_level_graph(builtin_action("grigorchuk"), 9);
  const LineChart chart = fit_line_chart(lg.graph);
  CHECK(m_covering_check(lg.graph, diametral_geodesic(lg.graph, chart), chart.m, chart.margin).pass);

  const FiniteGraph star = FiniteGraph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  GeodesicSegment seg;
  seg.vertices = {1, 0, 2};
  const CoveringReport bad = m_covering_check(star, seg, 0, 0);
  CHECK(!bad.pass);
  CHECK(bad.max_distance == 1);
  CHECK(bad.worst_vertex == 3);
}

TEST_CASE("constants are tight") {
  for (const auto& name : {"grigorchuk", "dihedral"}) {
    for (std::size_t n : {4, 6, 8}) {
      const LevelGraph lg = build_level_graph(builtin_action(name), n);
      const LineChart chart = fit_line_chart(lg.graph);
      CHECK(satisfies_qi(lg.graph, chart.f, chart.alpha, chart.beta, chart.margin));
      CHECK(minimal_beta(lg.graph, chart.f, chart.alpha, chart.margin) == chart.beta);
      if (chart.beta > 0) {
        CHECK(!satisfies_qi(lg.graph, chart.f, chart.alpha, chart.beta - Rational(1, 2), chart.margin));
      }
    }
  }
}

TEST_CASE("chart hash is stable") {
  const SchreierBall ball = build_ball(builtin_action("odometer"), 12);
  CHECK(fit_line_chart(ball.graph).hash() == fit_line_chart(ball.graph).hash());
  const SchreierBall other = build_ball(builtin_action("odometer"), 13);
  CHECK(fit_line_chart(ball.graph).hash() != fit_line_chart(other.graph).hash());
}
