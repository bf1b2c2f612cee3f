#include <doctest.h>

#include <map>
#include <set>

#include "fglab/error.hpp"
#include "fglab/schreier.hpp"
#include "oracles.hpp"

using namespace fglab;

namespace {

VertexSet odometer_vertices(const SchreierBall& ball, std::initializer_list<long long> ks) {
  std::vector<Vertex> out;
  for (long long k : ks) out.push_back(*ball.find(oracle::int_point(k)));
  return make_vertex_set(out);
}

std::set<std::pair<Vertex, Vertex>> simple_edges(const FiniteGraph& g) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (const auto& e : g.edges()) {
    if (e.from != e.to) out.emplace(std::min(e.from, e.to), std::max(e.from, e.to));
  }
  return out;
}

bool is_simple_path(const FiniteGraph& g) {
  std::size_t ends = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.degree(v) == 1) ++ends;
    else if (g.degree(v) != 2) return false;
  }
  return g.connected() && ends == 2 && simple_edges(g).size() + 1 == g.size();
}

}  // namespace

TEST_CASE("odometer ball is a path of integers") {
  const SchreierBall ball = build_ball(builtin_action("odometer"), 3);
  REQUIRE(ball.size() == 7);
  CHECK(ball.graph.dist(ball.graph.base()) == 0);
  CHECK(is_simple_path(ball.graph));
  for (Vertex v = 0; v < ball.size(); ++v) {
    const long long k = oracle::point_int(ball.points[v]);
    CHECK(ball.graph.dist(v) == static_cast<std::size_t>(k < 0 ? -k : k));
  }
  CHECK(ball.graph.rim_radius() == std::size_t{3});
}

TEST_CASE("radius zero") {
  for (const auto& name : builtin_action_names()) {
    const SchreierBall ball = build_ball(builtin_action(name), 0);
    CHECK(ball.size() == 1);
    CHECK(simple_edges(ball.graph).empty());
  }
}

TEST_CASE("grigorchuk ball equals the oracle closure") {
  const ActionSystem g = builtin_action("grigorchuk");
  const SchreierBall ball = build_ball(g, 2);
  // Closure on 40-letter prefixes of (1); the action only rewrites a few letters.
  const std::string start = g.basepoint().prefix(40);
  std::map<std::string, int> dist{{start, 0}};
  std::vector<std::string> frontier{start};
  for (int r = 1; r <= 2; ++r) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      for (char c : std::string("abcd")) {
        const std::string y = oracle::grigorchuk(c, w);
        if (dist.emplace(y, r).second) next.push_back(y);
      }
    }
    frontier = next;
  }
  REQUIRE(ball.size() == dist.size());
  for (Vertex v = 0; v < ball.size(); ++v) {
    const auto it = dist.find(ball.points[v].prefix(40));
    REQUIRE(it != dist.end());
    CHECK(ball.graph.dist(v) == static_cast<std::size_t>(it->second));
  }
}

TEST_CASE("ball vertices come in BFS order") {
  const SchreierBall ball = build_ball(builtin_action("grigorchuk"), 12);
  for (Vertex v = 1; v < ball.size(); ++v) {
    const bool ordered = ball.graph.dist(v - 1) < ball.graph.dist(v) ||
                         (ball.graph.dist(v - 1) == ball.graph.dist(v) && ball.points[v - 1] < ball.points[v]);
    CHECK(ordered);
  }
}

TEST_CASE("ball monotonicity") {
  for (const auto& name : builtin_action_names()) {
    const ActionSystem a = builtin_action(name);
    for (std::size_t r = 0; r < 10; ++r) {
      const SchreierBall small = build_ball(a, r);
      const SchreierBall big = build_ball(a, r + 1);
      for (Vertex v = 0; v < small.size(); ++v) {
        const auto w = big.find(small.points[v]);
        REQUIRE(w);
        CHECK(big.graph.dist(*w) == small.graph.dist(v));
      }
    }
  }
}

TEST_CASE("ball cap") {
  CHECK_THROWS_AS(build_ball(builtin_action("odometer"), 100, 50), Error);
}

TEST_CASE("level graphs") {
  const LevelGraph g2 = build_level_graph(builtin_action("grigorchuk"), 2);
  REQUIRE(g2.words == std::vector<Bits>{"00", "01", "10", "11"});
  // 10 - 00 - 01 - 11
  CHECK(simple_edges(g2.graph) == std::set<std::pair<Vertex, Vertex>>{{0, 2}, {0, 1}, {1, 3}});

  CHECK(is_simple_path(build_level_graph(builtin_action("dihedral"), 3).graph));

  const LevelGraph o2 = build_level_graph(builtin_action("odometer"), 2);
  CHECK(simple_edges(o2.graph) == std::set<std::pair<Vertex, Vertex>>{{0, 2}, {1, 2}, {1, 3}, {0, 3}});

  for (std::size_t n = 1; n <= 8; ++n) {
    const LevelGraph lg = build_level_graph(builtin_action("grigorchuk"), n);
    // Every edge agrees with the hand-written recursion.
    for (Vertex v = 0; v < lg.words.size(); ++v) {
      for (std::size_t k = 0; k < lg.generator_names.size(); ++k) {
        CHECK(lg.words[lg.step[v][k]] == oracle::grigorchuk(lg.generator_names[k][0], lg.words[v]));
      }
    }
  }
  CHECK_THROWS_AS(build_level_graph(builtin_action("odometer"), 0), Error);
}

TEST_CASE("boundary sets") {
  const FiniteGraph path = FiniteGraph::path(5);
  CHECK(boundary_set(path, {0, 1, 2}) == VertexSet{2});
  CHECK(boundary_set(path, {0, 1, 2, 3, 4}).empty());

  const SchreierBall ball = build_ball(builtin_action("odometer"), 3);
  const VertexSet w = odometer_vertices(ball, {0, 1, 2, 3});
  const BoundaryReport rep = boundary_report(ball.graph, w);
  CHECK(rep.certified == odometer_vertices(ball, {0}));
  CHECK(rep.rim_flagged == odometer_vertices(ball, {3}));
}

TEST_CASE("neighborhoods") {
  const FiniteGraph path = FiniteGraph::path(7);
  CHECK(neighborhood_set(path, {3}, 0) == VertexSet{3});
  CHECK(neighborhood_set(path, {0, 6}, 0) == VertexSet{0, 6});
  CHECK(neighborhood_set(path, {3}, 2) == VertexSet{1, 2, 3, 4, 5});

  const SchreierBall ball = build_ball(builtin_action("odometer"), 5);
  CHECK(neighborhood_set(ball.graph, odometer_vertices(ball, {0}), 3) ==
        odometer_vertices(ball, {-3, -2, -1, 0, 1, 2, 3}));
}

TEST_CASE("set helpers") {
  CHECK(make_vertex_set({3, 1, 3, 2}) == VertexSet{1, 2, 3});
  CHECK(set_union({1, 3}, {2, 3}) == VertexSet{1, 2, 3});
  CHECK(set_difference({1, 2, 3}, {2}) == VertexSet{1, 3});
  CHECK(set_symmetric_difference({1, 2}, {2, 3}) == VertexSet{1, 3});
  CHECK(is_subset({1, 3}, {1, 2, 3}));
  CHECK(!is_subset({4}, {1, 2, 3}));
}

TEST_CASE("distance table matches BFS") {
  const SchreierBall ball = build_ball(builtin_action("grigorchuk"), 8);
  const DistanceTable table(ball.graph);
  std::vector<std::set<int>> adj(ball.size());
  for (const auto& e : ball.graph.edges()) {
    if (e.from == e.to) continue;
    adj[e.from].insert(static_cast<int>(e.to));
    adj[e.to].insert(static_cast<int>(e.from));
  }
  for (Vertex s = 0; s < ball.size(); s += 3) {
    const auto d = oracle::distances(adj, static_cast<int>(s));
    for (Vertex v = 0; v < ball.size(); ++v) CHECK(table(s, v) == static_cast<std::size_t>(d[v]));
  }
}
