#include "fglab/stabilizer_lab.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "fglab/error.hpp"

namespace fglab {

std::size_t anchor_spacing(std::size_t r, std::size_t n, const Rational& m) {
  return 2 * r + 2 * n + static_cast<std::size_t>(ceil_to_int(2 * m)) + 2;
}

namespace {

/// Closest match of the reference pattern within r of y, ties by index.
/// nullopt when no candidate lies within r.
std::optional<Vertex> nearest_match(std::span<const FullGroupElement> f, const LineSetting& s, const LocalPattern& ref,
                                    Vertex y, std::size_t r, std::size_t n) {
  const auto dist = bfs_distances(s.ball.graph, y);
  std::vector<Vertex> order;
  for (Vertex v = 0; v < dist.size(); ++v) {
    if (dist[v] <= r) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  for (Vertex v : order) {
    if (s.ball.graph.dist(v) + n + 1 > s.ball.radius) continue;
    if (local_pattern(f, s.ball, v, n).same_as(ref)) return v;
  }
  return std::nullopt;
}

std::size_t block_bound(const LineSetting& s, std::size_t spacing) {
  const FiniteGraph& g = s.ball.graph;
  const auto k = static_cast<std::size_t>(floor_to_int(s.chart.m));
  std::vector<Vertex> line;
  for (Vertex v : s.ell.vertices) {
    if (g.certified(v, k + 1)) line.push_back(v);
  }
  const std::size_t width = 3 * spacing + 1;
  if (line.size() <= width) return neighborhood_set(g, make_vertex_set(line), k).size();
  std::size_t best = 0;
  for (std::size_t start = 0; start + width <= line.size(); ++start) {
    VertexSet window(line.begin() + static_cast<std::ptrdiff_t>(start),
                     line.begin() + static_cast<std::ptrdiff_t>(start + width));
    best = std::max(best, neighborhood_set(g, make_vertex_set(std::move(window)), k).size());
  }
  return best;
}

}  // namespace

NestedFamily nested_family(std::span<const FullGroupElement> f, std::size_t n, const LineSetting& setting,
                           std::optional<std::size_t> r, bool throw_on_failure) {
  const SchreierBall& ball = setting.ball;
  const FiniteGraph& g = ball.graph;
  const Rational bound = max_n_phi(f, setting);
  if (Rational(static_cast<long long>(n)) <= bound) {
    throw Error(ErrorKind::PreconditionNphi,
                "n = " + std::to_string(n) + " must exceed max N_phi = " + to_string(bound));
  }
  std::size_t max_d = 0;
  for (const auto& phi : f) {
    if (!stabilizer_test(phi, setting.y, ball)) {
      throw Error(ErrorKind::FamilyFailure, "an element of F does not stabilize Y");
    }
    max_d = std::max(max_d, displacement_bound(phi));
  }

  NestedFamily fam;
  fam.n = n;
  fam.r = r ? *r : repetition_radius(f, n, ball, setting.p).r;
  fam.spacing = anchor_spacing(fam.r, n, setting.chart.m);
  fam.u = block_bound(setting, fam.spacing);
  fam.margin = static_cast<std::size_t>(ceil_to_int(setting.chart.m)) + max_d + 1;

  const LocalPattern ref = local_pattern(f, ball, setting.p, n);
  const std::size_t p_pos = setting.ell.position(setting.p);
  const auto& line = setting.ell.vertices;

  // Walk outwards from p in both directions until the window runs out.
  std::vector<Anchor> anchors;
  for (int dir : {1, -1}) {
    for (std::int64_t i = dir > 0 ? 0 : -1;; i += dir) {
      const std::int64_t pos = static_cast<std::int64_t>(p_pos) + i * static_cast<std::int64_t>(fam.spacing);
      if (pos < 0 || pos >= static_cast<std::int64_t>(line.size())) break;
      const Vertex y = line[static_cast<std::size_t>(pos)];
      const auto z = i == 0 ? std::optional<Vertex>(setting.p) : nearest_match(f, setting, ref, y, fam.r, n);
      if (!z) {
        if (g.dist(y) + n + 1 <= ball.radius) {
          throw Error(ErrorKind::FamilyFailure, "no pattern match within r of anchor " + g.label(y));
        }
        break;
      }
      if (!g.certified(*z, fam.margin)) break;
      anchors.push_back({i, y, *z, {}});
    }
  }
  std::sort(anchors.begin(), anchors.end(), [](const Anchor& a, const Anchor& b) { return a.index < b.index; });
  if (anchors.size() < 3) {
    throw Error(ErrorKind::WindowTooSmall, "only " + std::to_string(anchors.size()) +
                                               " anchor(s) fit with spacing " + std::to_string(fam.spacing));
  }

  std::vector<std::future<TransportedHalfSpace>> jobs;
  for (const Anchor& a : anchors) {
    if (a.index == 0) continue;
    jobs.push_back(std::async(std::launch::async,
                              [&, z = a.z] { return transport_halfspace(f, z, n, setting, false); }));
  }
  std::size_t job = 0;
  for (Anchor& a : anchors) {
    if (a.index == 0) {
      a.member = setting.y.member;
      continue;
    }
    TransportedHalfSpace t = jobs[job++].get();
    if (!t.ok()) {
      throw Error(ErrorKind::FamilyFailure, "transport to " + g.label(a.z) + " failed: " + t.witness);
    }
    a.member = std::move(t.in_y_z);
  }
  fam.anchors = std::move(anchors);

  const VertexSet window = g.certified_vertices(fam.margin);
  std::string witness;
  auto fail = [&](const std::string& what) {
    if (witness.empty()) witness = what;
  };

  fam.nesting_ok = true;
  for (std::size_t k = 0; k + 1 < fam.anchors.size(); ++k) {
    for (Vertex x : window) {
      if (fam.anchors[k + 1].member[x] && !fam.anchors[k].member[x]) {
        fam.nesting_ok = false;
        fail("Y_" + std::to_string(fam.anchors[k + 1].index) + " is not inside Y_" +
             std::to_string(fam.anchors[k].index) + " at " + g.label(x));
        break;
      }
    }
  }

  fam.bound_ok = true;
  fam.local_ok = true;
  fam.invariance_ok = true;
  std::vector<FullGroupElement> inverses;
  for (const auto& phi : f) inverses.push_back(invert(phi));
  const auto m_floor = static_cast<std::size_t>(floor_to_int(setting.chart.m));
  for (std::size_t k = 0; k + 1 < fam.anchors.size(); ++k) {
    VertexSet block;
    for (Vertex x = 0; x < g.size(); ++x) {
      if (fam.anchors[k].member[x] && !fam.anchors[k + 1].member[x]) block.push_back(x);
    }
    const std::string name = "block " + std::to_string(fam.anchors[k].index);
    if (!std::all_of(block.begin(), block.end(), [&](Vertex x) { return g.certified(x, fam.margin); })) {
      throw Error(ErrorKind::FamilyFailure, name + " reaches the rim of the window");
    }
    if (block.size() > fam.u) {
      fam.bound_ok = false;
      fail(name + " has " + std::to_string(block.size()) + " points, U = " + std::to_string(fam.u));
    }

    const auto y_pos = static_cast<std::int64_t>(setting.ell.position(fam.anchors[k].y));
    const auto s = static_cast<std::int64_t>(fam.spacing);
    const auto lo = static_cast<std::size_t>(std::max<std::int64_t>(0, y_pos - s));
    const auto hi = static_cast<std::size_t>(
        std::min<std::int64_t>(static_cast<std::int64_t>(line.size()) - 1, y_pos + 2 * s));
    const VertexSet allowed =
        neighborhood_set(g, make_vertex_set({line.begin() + static_cast<std::ptrdiff_t>(lo),
                                             line.begin() + static_cast<std::ptrdiff_t>(hi) + 1}),
                         m_floor);
    if (!is_subset(block, allowed)) {
      fam.local_ok = false;
      fail(name + " leaves the m-neighborhood of [y_{i-1}, y_{i+2}]");
    }

    for (std::size_t e = 0; e < f.size() && fam.invariance_ok; ++e) {
      for (const FullGroupElement* phi : {&f[e], static_cast<const FullGroupElement*>(&inverses[e])}) {
        for (Vertex x : block) {
          const auto y = ball.find((*phi)(ball.points[x]));
          if (!y || !std::binary_search(block.begin(), block.end(), *y)) {
            fam.invariance_ok = false;
            fail("F moves " + g.label(x) + " out of " + name);
            break;
          }
        }
      }
    }
    fam.blocks.push_back(std::move(block));
  }

  fam.disjoint_ok = true;
  for (std::size_t a = 0; a < fam.anchors.size() && fam.disjoint_ok; ++a) {
    const auto dist = bfs_distances(g, fam.anchors[a].z);
    for (std::size_t b = a + 1; b < fam.anchors.size(); ++b) {
      if (dist[fam.anchors[b].z] <= 2 * n) {
        fam.disjoint_ok = false;
        fail("n-balls around " + g.label(fam.anchors[a].z) + " and " + g.label(fam.anchors[b].z) + " meet");
        break;
      }
    }
  }

  fam.witness = witness;
  if (throw_on_failure && !fam.ok()) throw Error(ErrorKind::FamilyFailure, witness);
  return fam;
}

namespace {

using Perm = std::vector<std::uint32_t>;

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t x : p) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Permutation induced by phi on `domain` (sorted); throws if phi leaves it.
Perm induced(const FullGroupElement& phi, const SchreierBall& ball, const VertexSet& domain) {
  Perm p(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const auto y = ball.find(phi(ball.points[domain[i]]));
    auto it = y ? std::lower_bound(domain.begin(), domain.end(), *y) : domain.end();
    if (it == domain.end() || *it != *y) {
      throw Error(ErrorKind::FamilyFailure, "F does not preserve the permutation domain");
    }
    p[i] = static_cast<std::uint32_t>(it - domain.begin());
  }
  return p;
}

}  // namespace

std::uint64_t permutation_group_order(const std::vector<std::vector<std::uint32_t>>& generators,
                                      std::uint64_t cap) {
  if (generators.empty()) return 1;
  const std::size_t k = generators.front().size();
  Perm id(k);
  for (std::size_t i = 0; i < k; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::unordered_set<Perm, PermHash> seen{id};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    const Perm e = std::move(queue.front());
    queue.pop_front();
    for (const auto& gen : generators) {
      Perm next(k);
      for (std::size_t i = 0; i < k; ++i) next[i] = gen[e[i]];
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw Error(ErrorKind::OrderCap, "group order exceeds " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

OrderReport finite_embedding_order(std::span<const FullGroupElement> f, const NestedFamily& family,
                                   const LineSetting& setting, std::uint64_t cap) {
  const SchreierBall& ball = setting.ball;
  OrderReport report;

  VertexSet block_domain;
  for (const auto& b : family.blocks) block_domain = set_union(block_domain, b);
  std::vector<Perm> gens;
  for (const auto& phi : f) gens.push_back(induced(phi, ball, block_domain));
  report.blocks = permutation_group_order(gens, cap);

  // Close the certified window under F and F^-1.
  std::vector<FullGroupElement> both(f.begin(), f.end());
  for (const auto& phi : f) both.push_back(invert(phi));
  std::vector<bool> in(ball.size(), false);
  std::deque<Vertex> queue;
  for (Vertex v : ball.graph.certified_vertices(family.margin)) {
    in[v] = true;
    queue.push_back(v);
  }
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    for (const auto& phi : both) {
      const auto y = ball.find(phi(ball.points[x]));
      if (!y) throw Error(ErrorKind::RimContact, "orbit of " + ball.graph.label(x) + " leaves the ball");
      if (!in[*y]) {
        in[*y] = true;
        queue.push_back(*y);
      }
    }
  }
  VertexSet domain;
  for (Vertex v = 0; v < ball.size(); ++v) {
    if (in[v]) domain.push_back(v);
  }
  gens.clear();
  for (const auto& phi : f) gens.push_back(induced(phi, ball, domain));
  report.brute = permutation_group_order(gens, cap);
  report.agree = report.blocks == report.brute;
  return report;
}

}  // namespace fglab
