#include "fglab/schreier.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <set>

#include "fglab/error.hpp"

namespace fglab {

FiniteGraph::FiniteGraph(std::vector<std::string> labels, std::vector<LabeledEdge> edges, Vertex base,
                         std::optional<std::size_t> rim_radius)
    : labels_(std::move(labels)), edges_(std::move(edges)), base_(base), rim_radius_(rim_radius) {
  const std::size_t n = labels_.size();
  if (n > 0 && base_ >= n) throw Error(ErrorKind::InvalidAction, "base vertex out of range");
  adjacency_.assign(n, {});
  for (const auto& e : edges_) {
    if (e.from >= n || e.to >= n) throw Error(ErrorKind::InvalidAction, "edge endpoint out of range");
    if (e.from == e.to) continue;
    adjacency_[e.from].push_back(e.to);
    adjacency_[e.to].push_back(e.from);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  for (Vertex v = 0; v < n; ++v) by_label_.emplace(labels_[v], v);
  dist_ = n > 0 ? bfs_distances(*this, base_) : std::vector<std::size_t>{};
}

bool FiniteGraph::connected() const noexcept {
  return std::none_of(dist_.begin(), dist_.end(), [](std::size_t d) { return d == kUnreachable; });
}

bool FiniteGraph::certified(Vertex v, std::size_t margin) const {
  if (!rim_radius_) return true;
  const std::size_t d = dist_.at(v);
  return d != kUnreachable && d + margin <= *rim_radius_;
}

VertexSet FiniteGraph::certified_vertices(std::size_t margin) const {
  VertexSet out;
  for (Vertex v = 0; v < size(); ++v) {
    if (certified(v, margin)) out.push_back(v);
  }
  return out;
}

std::optional<Vertex> FiniteGraph::find(std::string_view label) const {
  if (auto it = by_label_.find(std::string(label)); it != by_label_.end()) return it->second;
  return std::nullopt;
}

FiniteGraph FiniteGraph::path(std::size_t n, Vertex base) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return from_edges(n, edges, base);
}

FiniteGraph FiniteGraph::from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                                    Vertex base, std::optional<std::size_t> rim_radius) {
  std::vector<std::string> labels;
  for (Vertex v = 0; v < n; ++v) labels.push_back(std::to_string(v));
  std::vector<LabeledEdge> labeled;
  for (const auto& [u, v] : edges) labeled.push_back({u, "s", v});
  return FiniteGraph(std::move(labels), std::move(labeled), base, rim_radius);
}

std::vector<std::size_t> bfs_distances(const FiniteGraph& g, Vertex source) {
  const Vertex sources[] = {source};
  return multi_source_distances(g, sources);
}

std::vector<std::size_t> multi_source_distances(const FiniteGraph& g, std::span<const Vertex> sources,
                                                const std::vector<bool>* blocked, std::size_t max_depth) {
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (dist.at(s) == kUnreachable) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    if (dist[u] >= max_depth) continue;
    for (Vertex v : g.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      if (blocked != nullptr && (*blocked)[v]) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

DistanceTable::DistanceTable(const FiniteGraph& g) : n_(g.size()), d_(g.size() * g.size()) {
  for (Vertex u = 0; u < n_; ++u) {
    const auto row = bfs_distances(g, u);
    std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(u * n_));
  }
}

// ---------------------------------------------------------------------------

std::optional<Vertex> SchreierBall::find(const BoundaryPoint& p) const {
  if (auto it = index.find(p); it != index.end()) return it->second;
  return std::nullopt;
}

SchreierBall build_ball(const ActionSystem& action, std::size_t radius, std::size_t cap) {
  SchreierBall ball;
  ball.action_name = action.name();
  ball.base = action.basepoint();
  ball.radius = radius;
  for (const auto& g : action.generators()) ball.generator_names.push_back(g.name);

  auto add = [&](const BoundaryPoint& p) {
    if (ball.points.size() >= cap) {
      throw Error(ErrorKind::BallTooLarge, "ball exceeds cap of " + std::to_string(cap) + " vertices");
    }
    ball.index.emplace(p, ball.points.size());
    ball.points.push_back(p);
  };
  add(ball.base);

  const std::size_t gens = action.generator_count();
  std::vector<std::vector<BoundaryPoint>> images;  // images[v][g], filled lazily in BFS order
  auto images_of = [&](Vertex v) -> const std::vector<BoundaryPoint>& {
    while (images.size() <= v) {
      const Vertex u = images.size();
      std::vector<BoundaryPoint> row;
      row.reserve(gens);
      for (std::size_t g = 0; g < gens; ++g) row.push_back(action.apply_generator(g, ball.points[u]));
      images.push_back(std::move(row));
    }
    return images[v];
  };

  std::size_t layer_begin = 0;
  for (std::size_t d = 1; d <= radius; ++d) {
    const std::size_t layer_end = ball.points.size();
    std::set<BoundaryPoint> next;
    for (Vertex v = layer_begin; v < layer_end; ++v) {
      for (const auto& q : images_of(v)) {
        if (!ball.index.contains(q)) next.insert(q);
      }
    }
    if (next.empty()) break;
    for (const auto& q : next) add(q);
    layer_begin = layer_end;
  }

  std::vector<LabeledEdge> edges;
  ball.step.assign(ball.points.size(), std::vector<Vertex>(gens, kNoVertex));
  for (Vertex v = 0; v < ball.points.size(); ++v) {
    const auto& row = images_of(v);
    for (std::size_t g = 0; g < gens; ++g) {
      if (auto w = ball.find(row[g])) {
        ball.step[v][g] = *w;
        edges.push_back({v, ball.generator_names[g], *w});
      }
    }
  }
  std::vector<std::string> labels;
  labels.reserve(ball.points.size());
  for (const auto& p : ball.points) labels.push_back(p.to_string());
  ball.graph = FiniteGraph(std::move(labels), std::move(edges), 0, radius);
  return ball;
}

LevelGraph build_level_graph(const ActionSystem& action, std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::InvalidRadius, "level must be >= 1");
  if (n < action.piece_depth()) {
    throw Error(ErrorKind::InvalidAction, "level below the piece depth of the generators");
  }
  if (n >= 8 * sizeof(std::size_t) - 1 || (std::size_t{1} << n) > cap) {
    throw Error(ErrorKind::BallTooLarge, "2^" + std::to_string(n) + " words exceed cap");
  }
  LevelGraph lg;
  lg.level = n;
  lg.words = all_words(n);
  for (const auto& g : action.generators()) lg.generator_names.push_back(g.name);

  auto index_of = [](const Bits& w) {
    Vertex v = 0;
    for (char c : w) v = (v << 1) | (c == '1' ? 1U : 0U);
    return v;
  };
  const std::size_t gens = action.generator_count();
  lg.step.assign(lg.words.size(), std::vector<Vertex>(gens, kNoVertex));
  std::vector<LabeledEdge> edges;
  for (std::size_t g = 0; g < gens; ++g) {
    std::vector<bool> hit(lg.words.size(), false);
    for (Vertex v = 0; v < lg.words.size(); ++v) {
      const Vertex w = index_of(action.apply_generator(g, lg.words[v]));
      if (hit[w]) {
        throw Error(ErrorKind::InvalidAction,
                    "generator " + lg.generator_names[g] + " is not a permutation at level " + std::to_string(n));
      }
      hit[w] = true;
      lg.step[v][g] = w;
    }
  }
  for (Vertex v = 0; v < lg.words.size(); ++v) {
    for (std::size_t g = 0; g < gens; ++g) edges.push_back({v, lg.generator_names[g], lg.step[v][g]});
  }
  lg.graph = FiniteGraph(lg.words, std::move(edges), index_of(action.basepoint().prefix(n)));
  return lg;
}

// ---------------------------------------------------------------------------

VertexSet make_vertex_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_symmetric_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

VertexSet boundary_set(const FiniteGraph& g, const VertexSet& w) {
  std::vector<bool> in(g.size(), false);
  for (Vertex v : w) in.at(v) = true;
  VertexSet out;
  for (Vertex v : w) {
    const auto& adj = g.neighbors(v);
    if (std::any_of(adj.begin(), adj.end(), [&](Vertex u) { return !in[u]; })) out.push_back(v);
  }
  return out;
}

BoundaryReport boundary_report(const FiniteGraph& g, const VertexSet& w, std::size_t margin) {
  BoundaryReport report;
  for (Vertex v : boundary_set(g, w)) {
    if (g.certified(v, margin)) report.certified.push_back(v);
  }
  for (Vertex v : w) {
    if (!g.certified(v, margin)) report.rim_flagged.push_back(v);
  }
  return report;
}

VertexSet neighborhood_set(const FiniteGraph& g, const VertexSet& w, std::size_t k) {
  const auto dist = multi_source_distances(g, w, nullptr, k);
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (dist[v] <= k) out.push_back(v);
  }
  return out;
}

}  // namespace fglab
