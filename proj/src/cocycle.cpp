#include "fglab/cocycle.hpp"

#include <algorithm>

#include "fglab/error.hpp"

namespace fglab {

HalfSpace half_space(const FiniteGraph& g, const LineChart& chart) {
  HalfSpace y;
  y.margin = g.rim_radius() ? 1 : 0;
  y.chart_hash = chart.hash();
  y.member.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) y.member[v] = chart.f.at(v) >= 0;

  VertexSet inside;
  VertexSet outside;
  for (Vertex v = 0; v < g.size(); ++v) (y.member[v] ? inside : outside).push_back(v);
  for (Vertex v : inside) {
    if (g.certified(v, y.margin)) y.members.push_back(v);
  }
  y.boundary = boundary_report(g, inside, y.margin).certified;
  y.complement_boundary = boundary_report(g, outside, y.margin).certified;
  return y;
}

BandReport boundary_band_check(const FiniteGraph& /*g*/, const LineChart& chart, const HalfSpace& y) {
  BandReport report;
  report.upper = chart.alpha + chart.beta - 1;
  for (Vertex v : y.boundary) {
    const std::int64_t fv = chart.f.at(v);
    if (fv < 0 || Rational(fv) > report.upper) report.violators.push_back(v);
  }
  report.pass = report.violators.empty();
  return report;
}

namespace {

Vertex locate(const SchreierBall& ball, const BoundaryPoint& p) {
  if (auto v = ball.find(p)) return *v;
  throw Error(ErrorKind::NotStabilized, "image " + p.to_string() + " left the ball; radius too small");
}

}  // namespace

CocycleValue compute_cocycle(const FullGroupElement& phi, const HalfSpace& y, const SchreierBall& ball,
                             std::optional<std::size_t> radius) {
  CocycleValue c;
  c.d_phi = displacement_bound(phi);
  const std::size_t d = c.d_phi;
  if (ball.radius < 2 * d + 1) {
    throw Error(ErrorKind::NotStabilized, "ball radius " + std::to_string(ball.radius) +
                                              " too small for d_phi = " + std::to_string(d));
  }
  c.radius = radius.value_or(ball.radius - 2 * d - 1);
  if (c.radius + 2 * d > ball.radius) {
    throw Error(ErrorKind::NotStabilized, "evaluation radius too close to the rim");
  }
  c.verified_radius = c.radius + d;

  const FiniteGraph& g = ball.graph;
  const FullGroupElement inv = invert(phi);
  VertexSet outer;
  for (Vertex x = 0; x < ball.size(); ++x) {
    if (g.dist(x) > c.verified_radius) continue;
    const Vertex pre = locate(ball, inv(ball.points[x]));
    if (y.contains(x) != y.contains(pre)) {
      outer.push_back(x);
      if (g.dist(x) <= c.radius) c.vertices.push_back(x);
    }
  }
  c.stabilized = outer == c.vertices;
  for (Vertex v : c.vertices) c.points.push_back(ball.points[v]);
  std::sort(c.points.begin(), c.points.end());

  // gY \ Y within the len(g)-neighborhood of the boundary of Y.
  const auto& action = *phi.action();
  auto escapes_into = [&](const GroupWord& w, const VertexSet& allowed) {
    const GroupWord w_inv = action.inverse(w);
    for (Vertex x = 0; x < ball.size(); ++x) {
      if (g.dist(x) > c.radius || y.contains(x)) continue;
      const Vertex pre = locate(ball, action.apply(w_inv, ball.points[x]));
      if (y.contains(pre) && !std::binary_search(allowed.begin(), allowed.end(), x)) return false;
    }
    return true;
  };
  c.containment_ok = true;
  for (const auto& piece : phi.pieces()) {
    c.containment_ok =
        c.containment_ok && escapes_into(piece.word, neighborhood_set(g, y.boundary, piece.word.size()));
  }
  const VertexSet near_boundary = neighborhood_set(g, y.boundary, d);
  for (Vertex x : c.vertices) {
    if (!y.contains(x) && !std::binary_search(near_boundary.begin(), near_boundary.end(), x)) {
      c.containment_ok = false;
    }
  }
  return c;
}

CocycleValue cocycle_value(const FullGroupElement& phi, const HalfSpace& y, const SchreierBall& ball,
                           std::optional<std::size_t> radius) {
  CocycleValue c = compute_cocycle(phi, y, ball, radius);
  if (!c.stabilized) {
    throw Error(ErrorKind::NotStabilized, "cocycle changes between radius " + std::to_string(c.radius) +
                                              " and " + std::to_string(c.verified_radius));
  }
  return c;
}

bool stabilizer_test(const FullGroupElement& phi, const HalfSpace& y, const SchreierBall& ball,
                     std::optional<std::size_t> radius) {
  return cocycle_value(phi, y, ball, radius).vertices.empty();
}

std::size_t r_constant(const FiniteGraph& g, const HalfSpace& y, const GeodesicSegment& ell, Vertex p) {
  if (!ell.contains(p)) throw Error(ErrorKind::InvalidAction, "reference point is not on the geodesic");
  const auto dist = bfs_distances(g, p);
  std::size_t r = 0;
  for (const VertexSet* set : {&y.boundary, &y.complement_boundary}) {
    for (Vertex v : *set) {
      if (g.rim_radius() && !g.certified(v, y.margin + 1)) {
        throw Error(ErrorKind::NotStabilized, "boundary vertex " + g.label(v) + " touches the rim");
      }
      r = std::max(r, dist[v]);
    }
  }
  return r;
}

Rational n_phi(const Rational& m, std::size_t r, std::size_t d_phi) {
  return 6 * m + static_cast<long long>(r) + 2 * static_cast<long long>(d_phi);
}

}  // namespace fglab
