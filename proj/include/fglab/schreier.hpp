#pragma once

// Finite pieces of orbit Schreier graphs: balls around the basepoint and the
// level-n graphs of the truncated action, plus boundary/neighborhood calculus.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fglab/cantor_actions.hpp"

namespace fglab {

using Vertex = std::size_t;
inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr std::size_t kDefaultBallCap = std::size_t{1} << 20;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

struct LabeledEdge {
  Vertex from;
  std::string label;
  Vertex to;
};

/// An undirected graph with a distinguished base vertex. Labeled edges keep
/// loops and multi-edges; metric queries use the simple underlying graph.
///
/// A graph cut out of an infinite one carries its rim radius: vertices far
/// from the base are complete, vertices near the rim may be missing
/// neighbors. `certified(v, k)` holds when dist(base, v) + k <= rim radius.
/// Closed graphs (no rim) certify every vertex.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  FiniteGraph(std::vector<std::string> labels, std::vector<LabeledEdge> edges, Vertex base,
              std::optional<std::size_t> rim_radius = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Vertex v) const { return labels_.at(v); }
  const std::vector<LabeledEdge>& edges() const noexcept { return edges_; }
  Vertex base() const noexcept { return base_; }
  std::size_t dist(Vertex v) const { return dist_.at(v); }
  std::optional<std::size_t> rim_radius() const noexcept { return rim_radius_; }
  bool connected() const noexcept;

  bool certified(Vertex v, std::size_t margin = 1) const;
  VertexSet certified_vertices(std::size_t margin = 1) const;
  std::optional<Vertex> find(std::string_view label) const;

  /// Path 0 - 1 - ... - (n-1) with labels "0".."n-1".
  static FiniteGraph path(std::size_t n, Vertex base = 0);
  static FiniteGraph from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                                Vertex base = 0, std::optional<std::size_t> rim_radius = std::nullopt);

 private:
  std::vector<std::string> labels_;
  std::vector<LabeledEdge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::size_t> dist_;
  Vertex base_ = 0;
  std::optional<std::size_t> rim_radius_;
  std::unordered_map<std::string, Vertex> by_label_;
};

std::vector<std::size_t> bfs_distances(const FiniteGraph& g, Vertex source);
/// Distances to the nearest source; vertices in `blocked` are never entered
/// (sources are entered even if blocked). Stops expanding at max_depth.
std::vector<std::size_t> multi_source_distances(const FiniteGraph& g, std::span<const Vertex> sources,
                                                const std::vector<bool>* blocked = nullptr,
                                                std::size_t max_depth = kUnreachable);

/// Dense all-pairs distance table (BFS from every vertex).
class DistanceTable {
 public:
  explicit DistanceTable(const FiniteGraph& g);
  std::size_t operator()(Vertex u, Vertex v) const { return d_[u * n_ + v]; }
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_;
  std::vector<std::size_t> d_;
};

/// Radius-r ball of Sch(G, X, S) around the basepoint. Vertices are indexed
/// in BFS order with ties broken by the lexicographic order of canonical
/// forms.
struct SchreierBall {
  std::string action_name;
  BoundaryPoint base;
  std::size_t radius = 0;
  std::vector<BoundaryPoint> points;
  std::unordered_map<BoundaryPoint, Vertex> index;
  std::vector<std::string> generator_names;
  /// step[v][g]: target of generator g from v, or kNoVertex outside the ball.
  std::vector<std::vector<Vertex>> step;
  FiniteGraph graph;

  std::optional<Vertex> find(const BoundaryPoint& p) const;
  std::size_t size() const noexcept { return points.size(); }
};

SchreierBall build_ball(const ActionSystem& action, std::size_t radius,
                        std::size_t cap = kDefaultBallCap);

/// Graph of the truncated action on all binary words of length n, indexed
/// lexicographically; the base vertex is the length-n prefix of the basepoint.
struct LevelGraph {
  std::size_t level = 0;
  std::vector<Bits> words;
  std::vector<std::string> generator_names;
  std::vector<std::vector<Vertex>> step;
  FiniteGraph graph;
};

LevelGraph build_level_graph(const ActionSystem& action, std::size_t n,
                             std::size_t cap = kDefaultBallCap);

/// {x in W : x has a neighbor outside W}, within the finite graph.
VertexSet boundary_set(const FiniteGraph& g, const VertexSet& w);

/// Boundary split by certification: members at distance <= rim - margin are
/// decided; members closer to the rim are flagged because their outside
/// neighbors may be missing.
struct BoundaryReport {
  VertexSet certified;
  VertexSet rim_flagged;
};
BoundaryReport boundary_report(const FiniteGraph& g, const VertexSet& w, std::size_t margin = 1);

/// Gamma_k(W) = {q : d(q, W) <= k}.
VertexSet neighborhood_set(const FiniteGraph& g, const VertexSet& w, std::size_t k);

/// Sort + dedupe helpers.
VertexSet make_vertex_set(std::vector<Vertex> v);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_symmetric_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);

}  // namespace fglab
