#include "fglab/line_geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "fglab/error.hpp"

namespace fglab {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Lowest-index vertex at maximal distance.
Vertex farthest(const std::vector<std::size_t>& dist) {
  Vertex best = 0;
  for (Vertex v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreachable && dist[v] > dist[best]) best = v;
  }
  return best;
}

std::pair<Vertex, Vertex> diametral_pair(const FiniteGraph& g) {
  const Vertex a = farthest(bfs_distances(g, g.base()));
  const Vertex b = farthest(bfs_distances(g, a));
  return {a, b};
}

/// The endpoint of the diametral pair that makes f increase along the first
/// labeled edge leaving the base (smallest generator name, loops skipped).
/// The rim's lexicographic tie-break alone would flip the chart between
/// radii. Falls back to the first endpoint when that edge does not decide.
Vertex oriented_anchor(const FiniteGraph& g) {
  const auto [a, b] = diametral_pair(g);
  const LabeledEdge* lead = nullptr;
  for (const auto& e : g.edges()) {
    if (e.from != g.base() || e.to == g.base()) continue;
    if (lead == nullptr || std::tie(e.label, e.to) < std::tie(lead->label, lead->to)) lead = &e;
  }
  if (lead == nullptr) return a;
  for (Vertex u : {a, b}) {
    const auto d = bfs_distances(g, u);
    if (d[lead->to] > d[g.base()]) return u;
  }
  return a;
}

/// Distinct (distance, |f difference|) combinations over certified pairs.
struct PairProfile {
  std::set<std::pair<std::size_t, std::int64_t>> combos;
  std::size_t diameter = 0;
  std::size_t pairs = 0;
};

PairProfile profile_pairs(const FiniteGraph& g, const std::vector<std::int64_t>& f, std::size_t margin) {
  PairProfile prof;
  const VertexSet certified = g.certified_vertices(margin);
  for (std::size_t i = 0; i < certified.size(); ++i) {
    const Vertex u = certified[i];
    const auto dist = bfs_distances(g, u);
    for (std::size_t j = i + 1; j < certified.size(); ++j) {
      const Vertex v = certified[j];
      if (dist[v] == kUnreachable) throw Error(ErrorKind::NotConnected, "certified vertices disconnected");
      prof.combos.emplace(dist[v], std::llabs(f[u] - f[v]));
      prof.diameter = std::max(prof.diameter, dist[v]);
      ++prof.pairs;
    }
  }
  return prof;
}

Rational beta_needed(const PairProfile& prof, const Rational& alpha) {
  Rational need = 0;
  for (const auto& [d, df] : prof.combos) {
    const Rational lower = Rational(static_cast<long long>(d)) / alpha - df;  // d/alpha - beta <= df
    const Rational upper = Rational(df) - alpha * static_cast<long long>(d);  // df <= alpha d + beta
    need = std::max({need, lower, upper});
  }
  // Round up to the half-integer grid.
  return Rational(ceil_to_int(need * 2), 2);
}

}  // namespace

std::uint64_t LineChart::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (auto v : f) h = fnv1a(h, std::to_string(v) + ",");
  h = fnv1a(h, std::to_string(anchor) + "|" + to_string(alpha) + "|" + to_string(beta) + "|" +
                   to_string(gamma) + "|" + std::to_string(margin));
  return h;
}

Rational m_constant(const Rational& alpha, const Rational& beta) { return alpha * alpha + 2 * alpha * beta; }

Rational minimal_beta(const FiniteGraph& g, const std::vector<std::int64_t>& f, const Rational& alpha,
                      std::size_t margin) {
  return beta_needed(profile_pairs(g, f, margin), alpha);
}

bool satisfies_qi(const FiniteGraph& g, const std::vector<std::int64_t>& f, const Rational& alpha,
                  const Rational& beta, std::size_t margin) {
  const auto prof = profile_pairs(g, f, margin);
  return std::all_of(prof.combos.begin(), prof.combos.end(), [&](const auto& c) {
    const Rational d(static_cast<long long>(c.first));
    return d / alpha - beta <= c.second && Rational(c.second) <= alpha * d + beta;
  });
}

LineChart fit_line_chart(const FiniteGraph& g) {
  if (g.size() < 2) throw Error(ErrorKind::WindowTooSmall, "chart needs at least two vertices");
  if (!g.connected()) throw Error(ErrorKind::NotConnected, "graph is not connected");

  LineChart chart;
  chart.margin = g.rim_radius() ? 1 : 0;
  if (g.certified_vertices(chart.margin).size() < 2) {
    throw Error(ErrorKind::WindowTooSmall, "fewer than two certified vertices");
  }
  chart.anchor = oriented_anchor(g);
  const auto from_anchor = bfs_distances(g, chart.anchor);
  const auto offset = static_cast<std::int64_t>(from_anchor[g.base()]);
  chart.f.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) chart.f[v] = static_cast<std::int64_t>(from_anchor[v]) - offset;

  const auto prof = profile_pairs(g, chart.f, chart.margin);
  chart.certified_pairs = prof.pairs;
  const auto diam = static_cast<long long>(std::max<std::size_t>(prof.diameter, 1));
  bool found = false;
  for (long long k = 2; k <= 2 * diam && !found; ++k) {
    const Rational alpha(k, 2);
    const Rational beta = beta_needed(prof, alpha);
    if (beta <= diam) {
      chart.alpha = alpha;
      chart.beta = beta;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::NotConnected, "no quasi-isometry constants on the grid");

  std::vector<std::int64_t> image;
  for (Vertex v : g.certified_vertices(chart.margin)) image.push_back(chart.f[v]);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  std::int64_t gamma = 0;
  for (std::size_t i = 0; i + 1 < image.size(); ++i) gamma = std::max(gamma, (image[i + 1] - image[i]) / 2);
  chart.gamma = gamma;
  chart.m = m_constant(chart.alpha, chart.beta);
  return chart;
}

FiberReport fiber_diameter_check(const FiniteGraph& g, const LineChart& chart) {
  std::map<std::int64_t, std::vector<Vertex>> fibers;
  for (Vertex v : g.certified_vertices(chart.margin)) fibers[chart.f.at(v)].push_back(v);
  FiberReport report;
  report.bound = chart.alpha * chart.beta;
  for (const auto& [value, members] : fibers) {
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      const auto dist = bfs_distances(g, members[i]);
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (dist[members[j]] > report.max_fiber_diameter) {
          report.max_fiber_diameter = dist[members[j]];
          report.worst_value = value;
        }
      }
    }
  }
  report.pass = Rational(static_cast<long long>(report.max_fiber_diameter)) <= report.bound;
  return report;
}

std::size_t GeodesicSegment::position(Vertex v) const {
  auto it = std::find(vertices.begin(), vertices.end(), v);
  return it == vertices.end() ? kUnreachable : static_cast<std::size_t>(it - vertices.begin());
}

namespace {

GeodesicSegment shortest_path(const FiniteGraph& g, Vertex from, Vertex to) {
  const auto dist = bfs_distances(g, from);
  if (dist[to] == kUnreachable) throw Error(ErrorKind::NotConnected, "endpoints not connected");
  GeodesicSegment seg;
  Vertex cur = to;
  seg.vertices.push_back(cur);
  while (cur != from) {
    for (Vertex u : g.neighbors(cur)) {  // neighbors are sorted: lowest index wins
      if (dist[u] + 1 == dist[cur]) {
        cur = u;
        break;
      }
    }
    seg.vertices.push_back(cur);
  }
  std::reverse(seg.vertices.begin(), seg.vertices.end());
  return seg;
}

}  // namespace

GeodesicSegment diametral_geodesic(const FiniteGraph& g) {
  if (!g.connected()) throw Error(ErrorKind::NotConnected, "graph is not connected");
  const auto [a, b] = diametral_pair(g);
  // f = d(a, .) - const grows from a to b.
  return shortest_path(g, a, b);
}

GeodesicSegment diametral_geodesic(const FiniteGraph& g, const LineChart& chart) {
  auto seg = diametral_geodesic(g);
  if (chart.f.at(seg.vertices.back()) < chart.f.at(seg.vertices.front())) {
    std::reverse(seg.vertices.begin(), seg.vertices.end());
  }
  return seg;
}

bool is_geodesic(const FiniteGraph& g, const GeodesicSegment& segment) {
  const auto& vs = segment.vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto dist = bfs_distances(g, vs[i]);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const std::size_t expect = i > j ? i - j : j - i;
      if (dist[vs[j]] != expect) return false;
    }
  }
  return true;
}

std::size_t max_geodesic_midpoint(const FiniteGraph& g, Vertex v) {
  const auto from_v = bfs_distances(g, v);
  std::unordered_map<Vertex, std::vector<std::size_t>> rows;
  auto distance = [&](Vertex x, Vertex y) {
    auto it = rows.find(x);
    if (it == rows.end()) it = rows.emplace(x, bfs_distances(g, x)).first;
    return it->second[y];
  };

  // Level k of the tree: endpoint pairs {x, y} of geodesics of length 2k with
  // midpoint v. A geodesic is determined up to its interior by its endpoints,
  // so pairs are enough to decide extendability.
  std::set<std::pair<Vertex, Vertex>> level{{v, v}};
  std::size_t k = 0;
  while (true) {
    std::set<std::pair<Vertex, Vertex>> next;
    for (const auto& [x, y] : level) {
      for (Vertex x2 : g.neighbors(x)) {
        if (from_v[x2] != k + 1) continue;
        for (Vertex y2 : g.neighbors(y)) {
          if (from_v[y2] != k + 1) continue;
          if (distance(x2, y2) == 2 * k + 2) next.emplace(std::min(x2, y2), std::max(x2, y2));
        }
      }
    }
    if (next.empty()) return k;
    level = std::move(next);
    ++k;
  }
}

Vertex project_to_geodesic(const FiniteGraph& g, const GeodesicSegment& segment, Vertex x) {
  const auto dist = bfs_distances(g, x);
  Vertex best = segment.vertices.at(0);
  for (Vertex v : segment.vertices) {
    if (dist[v] < dist[best]) best = v;
  }
  return best;
}

CoveringReport m_covering_check(const FiniteGraph& g, const GeodesicSegment& segment, const Rational& m,
                                std::size_t margin) {
  const auto dist = multi_source_distances(g, segment.vertices);
  CoveringReport report;
  report.m = m;
  report.worst_vertex = segment.vertices.empty() ? 0 : segment.vertices.front();
  for (Vertex v : g.certified_vertices(margin)) {
    if (dist[v] > report.max_distance) {
      report.max_distance = dist[v];
      report.worst_vertex = v;
    }
  }
  report.pass = report.max_distance != kUnreachable &&
                Rational(static_cast<long long>(report.max_distance)) <= m;
  return report;
}

}  // namespace fglab
