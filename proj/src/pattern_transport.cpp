#include "fglab/pattern_transport.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "fglab/error.hpp"

namespace fglab {

LineSetting LineSetting::build(const ActionSystem& action, std::size_t radius, std::size_t cap) {
  LineSetting s;
  s.ball = build_ball(action, radius, cap);
  s.chart = fit_line_chart(s.ball.graph);
  s.y = half_space(s.ball.graph, s.chart);
  s.ell = diametral_geodesic(s.ball.graph, s.chart);
  s.p = s.ball.graph.base();
  if (!s.ell.contains(s.p)) {
    // The reference point must lie on the geodesic; fall back to its projection.
    s.p = project_to_geodesic(s.ball.graph, s.ell, s.p);
  }
  s.r_const = r_constant(s.ball.graph, s.y, s.ell, s.p);
  return s;
}

LocalPattern local_pattern(std::span<const FullGroupElement> f, const SchreierBall& ball, Vertex v, std::size_t n) {
  if (ball.graph.dist(v) + n + 1 > ball.radius) {
    throw Error(ErrorKind::RimContact, "the " + std::to_string(n) + "-ball of " + ball.graph.label(v) +
                                           " reaches the rim of a radius-" + std::to_string(ball.radius) +
                                           " ball");
  }
  const std::size_t gens = ball.generator_names.size();
  LocalPattern pat;
  pat.center = v;
  pat.depth = n;

  std::unordered_map<Vertex, std::size_t> canon;
  std::vector<std::size_t> depth_of;
  std::deque<Vertex> queue{v};
  canon.emplace(v, 0);
  pat.order.push_back(v);
  depth_of.push_back(0);
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    const std::size_t dx = depth_of[canon.at(x)];
    if (dx == n) continue;
    for (std::size_t g = 0; g < gens; ++g) {
      const Vertex t = ball.step[x][g];
      if (canon.contains(t)) continue;
      canon.emplace(t, pat.order.size());
      pat.order.push_back(t);
      depth_of.push_back(dx + 1);
      queue.push_back(t);
    }
  }

  pat.shape.reserve(pat.order.size() * gens);
  pat.table.reserve(pat.order.size() * f.size());
  for (Vertex x : pat.order) {
    for (std::size_t g = 0; g < gens; ++g) {
      auto it = canon.find(ball.step[x][g]);
      pat.shape.push_back(it == canon.end() ? -1 : static_cast<std::ptrdiff_t>(it->second));
    }
    for (const auto& phi : f) pat.table.push_back(phi.piece_for(ball.points[x]).word);
  }
  return pat;
}

RepetitionReport repetition_radius(std::span<const FullGroupElement> f, std::size_t n, const SchreierBall& ball,
                                   Vertex reference) {
  const LocalPattern ref = local_pattern(f, ball, reference, n);
  RepetitionReport report;
  report.window_radius = ball.radius;
  VertexSet candidates;
  for (Vertex v = 0; v < ball.size(); ++v) {
    if (ball.graph.dist(v) + n + 1 > ball.radius) continue;
    candidates.push_back(v);
    if (local_pattern(f, ball, v, n).same_as(ref)) report.matches.push_back(v);
  }
  report.candidates = candidates.size();
  const auto dist = multi_source_distances(ball.graph, report.matches);
  for (Vertex y : candidates) {
    if (dist[y] == kUnreachable) {
      throw Error(ErrorKind::NoRepetition, "no pattern match reachable from " + ball.graph.label(y));
    }
    report.r = std::max(report.r, dist[y]);
  }
  return report;
}

Rational max_n_phi(std::span<const FullGroupElement> f, const LineSetting& setting) {
  Rational best = n_phi(setting.chart.m, setting.r_const, 0);
  for (const auto& phi : f) best = std::max(best, n_phi(setting.chart.m, setting.r_const, displacement_bound(phi)));
  return best;
}

namespace {

std::vector<bool> reachable_avoiding(const FiniteGraph& g, const VertexSet& from, const VertexSet& avoid) {
  std::vector<bool> blocked(g.size(), false);
  for (Vertex v : avoid) blocked[v] = true;
  const auto dist = multi_source_distances(g, from, &blocked);
  std::vector<bool> out(g.size());
  for (Vertex v = 0; v < g.size(); ++v) out[v] = dist[v] != kUnreachable;
  return out;
}

VertexSet members(const std::vector<bool>& mask) {
  VertexSet out;
  for (Vertex v = 0; v < mask.size(); ++v) {
    if (mask[v]) out.push_back(v);
  }
  return out;
}

VertexSet restrict_to(const FiniteGraph& g, const VertexSet& s, std::size_t margin) {
  VertexSet out;
  for (Vertex v : s) {
    if (g.certified(v, margin)) out.push_back(v);
  }
  return out;
}

}  // namespace

TransportedHalfSpace transport_halfspace(std::span<const FullGroupElement> f, Vertex z, std::size_t n,
                                         const LineSetting& setting, bool throw_on_failure) {
  const SchreierBall& ball = setting.ball;
  const FiniteGraph& g = ball.graph;

  std::size_t max_d = 0;
  for (const auto& phi : f) {
    if (!stabilizer_test(phi, setting.y, ball)) {
      throw Error(ErrorKind::TransportFailure, "an element of F does not stabilize Y");
    }
    max_d = std::max(max_d, displacement_bound(phi));
  }
  const Rational bound = max_n_phi(f, setting);
  if (Rational(static_cast<long long>(n)) <= bound) {
    throw Error(ErrorKind::PreconditionNphi,
                "n = " + std::to_string(n) + " must exceed max N_phi = " + to_string(bound));
  }
  const LocalPattern at_p = local_pattern(f, ball, setting.p, n);
  const LocalPattern at_z = local_pattern(f, ball, z, n);
  if (!at_p.same_as(at_z)) {
    throw Error(ErrorKind::PatternMismatch, "pattern at " + g.label(z) + " differs from the reference");
  }

  TransportedHalfSpace t;
  t.z = z;
  t.n = n;
  std::unordered_map<Vertex, Vertex> h;
  for (std::size_t i = 0; i < at_p.order.size(); ++i) {
    h.emplace(at_p.order[i], at_z.order[i]);
    t.h.emplace_back(at_p.order[i], at_z.order[i]);
    (setting.y.contains(at_p.order[i]) ? t.b_plus : t.b_minus).push_back(at_z.order[i]);
  }
  t.b_plus = make_vertex_set(std::move(t.b_plus));
  t.b_minus = make_vertex_set(std::move(t.b_minus));
  t.in_a_plus = reachable_avoiding(g, t.b_plus, t.b_minus);
  t.in_a_minus = reachable_avoiding(g, t.b_minus, t.b_plus);

  t.margin = static_cast<std::size_t>(ceil_to_int(setting.chart.m)) + max_d + 1;
  const VertexSet window = g.certified_vertices(t.margin);
  auto fail = [&](const std::string& what) {
    if (t.witness.empty()) t.witness = what;
  };

  t.partition_ok = true;
  for (Vertex x : window) {
    if (t.in_a_plus[x] == t.in_a_minus[x]) {
      t.partition_ok = false;
      fail("vertex " + g.label(x) + (t.in_a_plus[x] ? " lies in both A+ and A-" : " lies in neither A+ nor A-"));
      break;
    }
  }

  auto image = [&](const VertexSet& s) {
    std::vector<Vertex> out;
    for (Vertex v : s) {
      auto it = h.find(v);
      if (it == h.end()) {
        fail("boundary vertex " + g.label(v) + " outside B_n(p)");
        return VertexSet{};
      }
      out.push_back(it->second);
    }
    return make_vertex_set(std::move(out));
  };
  const VertexSet d_plus = restrict_to(g, boundary_set(g, members(t.in_a_plus)), t.margin);
  const VertexSet d_minus = restrict_to(g, boundary_set(g, members(t.in_a_minus)), t.margin);
  const VertexSet h_dy = restrict_to(g, image(setting.y.boundary), t.margin);
  const VertexSet h_dyc = restrict_to(g, image(setting.y.complement_boundary), t.margin);
  t.boundary_ok = d_plus == h_dy && d_minus == h_dyc;
  if (!t.boundary_ok) fail("boundary of A+/- differs from the image of the boundary of Y");

  const std::size_t strip = static_cast<std::size_t>(std::max<std::int64_t>(1, ceil_to_int(setting.chart.m)));
  const auto& ell = setting.ell.vertices;
  auto holds_end = [&](const std::vector<bool>& mask, bool plus_end) {
    const std::size_t w = std::min(strip, ell.size());
    for (std::size_t i = 0; i < w; ++i) {
      if (!mask[plus_end ? ell[ell.size() - 1 - i] : ell[i]]) return false;
    }
    return true;
  };
  const bool plus_in_a_plus = holds_end(t.in_a_plus, true);
  const bool plus_in_a_minus = holds_end(t.in_a_minus, true);
  const bool minus_in_a_plus = holds_end(t.in_a_plus, false);
  const bool minus_in_a_minus = holds_end(t.in_a_minus, false);
  t.y_is_a_plus = plus_in_a_plus;
  t.ends_ok = (plus_in_a_plus != plus_in_a_minus) && (minus_in_a_plus != minus_in_a_minus) &&
              (plus_in_a_plus != minus_in_a_plus);
  if (!t.ends_ok) fail("ends of the geodesic are not split between A+ and A-");
  t.in_y_z = t.y_is_a_plus ? t.in_a_plus : t.in_a_minus;

  const auto from_z = bfs_distances(g, z);
  const VertexSet d_yz = t.y_is_a_plus ? d_plus : d_minus;
  t.boundary_in_ball_ok = std::all_of(d_yz.begin(), d_yz.end(),
                                      [&](Vertex v) { return from_z[v] <= setting.r_const; });
  if (!t.boundary_in_ball_ok) fail("boundary of Y_z leaves B_R(z)");

  t.invariance_ok = true;
  for (const auto& phi : f) {
    const FullGroupElement inv = invert(phi);
    for (Vertex x : window) {
      for (const FullGroupElement* e : {&phi, &inv}) {
        const auto y = ball.find((*e)(ball.points[x]));
        if (!y || t.in_y_z[*y] != t.in_y_z[x]) {
          t.invariance_ok = false;
          fail("F does not preserve Y_z at " + g.label(x));
          break;
        }
      }
      if (!t.invariance_ok) break;
    }
  }

  if (throw_on_failure && !t.ok()) throw Error(ErrorKind::TransportFailure, t.witness);
  return t;
}

}  // namespace fglab
