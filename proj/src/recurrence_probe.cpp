#include "fglab/recurrence_probe.hpp"

#include <cmath>
#include <future>
#include <map>

#include "fglab/error.hpp"

namespace fglab {

namespace {

/// Sparse symmetric system solved by Gaussian elimination in minimum-degree
/// order, exact over the rationals.
std::vector<Rational> solve_sparse(std::vector<std::map<std::size_t, Rational>> rows, std::vector<Rational> rhs) {
  const std::size_t n = rows.size();
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t v = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && (v == n || rows[i].size() < rows[v].size())) v = i;
    }
    alive[v] = false;
    order.push_back(v);
    const Rational pivot = rows[v].at(v);
    for (const auto& [u, a_uv_ref] : rows[v]) {
      if (u == v || !alive[u]) continue;
      auto& row_u = rows[u];
      const Rational factor = row_u.at(v) / pivot;
      for (const auto& [w, a_vw] : rows[v]) {
        if (w == v) continue;
        Rational& entry = row_u[w];
        entry -= factor * a_vw;
        if (entry == 0) row_u.erase(w);
      }
      row_u.erase(v);
      rhs[u] -= factor * rhs[v];
    }
  }
  std::vector<Rational> x(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t v = *it;
    Rational acc = rhs[v];
    for (const auto& [w, a] : rows[v]) {
      if (w != v) acc -= a * x[w];
    }
    x[v] = acc / rows[v].at(v);
  }
  return x;
}

}  // namespace

Rational escape_probability(const FiniteGraph& g, std::size_t r) {
  if (r == 0) throw Error(ErrorKind::InvalidRadius, "radius must be positive");
  if (g.rim_radius() && r > *g.rim_radius()) {
    throw Error(ErrorKind::InvalidRadius, "radius " + std::to_string(r) + " exceeds the ball radius " +
                                              std::to_string(*g.rim_radius()));
  }
  bool reaches = false;
  std::vector<std::size_t> local(g.size(), kUnreachable);
  std::size_t unknowns = 0;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.dist(v) == r) reaches = true;
    if (g.dist(v) >= 1 && g.dist(v) < r) local[v] = unknowns++;
  }
  if (!reaches) throw Error(ErrorKind::InvalidRadius, "no vertex at distance " + std::to_string(r));

  std::vector<std::map<std::size_t, Rational>> rows(unknowns);
  std::vector<Rational> rhs(unknowns);
  for (Vertex v = 0; v < g.size(); ++v) {
    if (local[v] == kUnreachable) continue;
    auto& row = rows[local[v]];
    row[local[v]] = Rational(static_cast<long long>(g.degree(v)));
    for (Vertex w : g.neighbors(v)) {
      if (local[w] != kUnreachable) {
        row[local[w]] -= 1;
      } else if (g.dist(w) == r) {
        rhs[local[v]] += 1;
      }
    }
  }
  const auto h = solve_sparse(std::move(rows), std::move(rhs));

  const Vertex base = g.base();
  Rational total = 0;
  for (Vertex w : g.neighbors(base)) total += g.dist(w) == r ? Rational(1) : h[local[w]];
  return total / static_cast<long long>(g.degree(base));
}

std::vector<EscapePoint> escape_series(const FiniteGraph& g, const std::vector<std::size_t>& radii) {
  std::vector<std::future<Rational>> jobs;
  for (std::size_t r : radii) jobs.push_back(std::async(std::launch::async, [&g, r] { return escape_probability(g, r); }));
  std::vector<EscapePoint> out;
  for (std::size_t i = 0; i < radii.size(); ++i) out.push_back({radii[i], jobs[i].get()});
  return out;
}

FiniteGraph regular_tree_ball(std::size_t degree, std::size_t radius) {
  if (degree < 2) throw Error(ErrorKind::InvalidRadius, "tree degree must be at least 2");
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> layer{0};
  std::size_t count = 1;
  for (std::size_t depth = 0; depth < radius; ++depth) {
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      const std::size_t children = depth == 0 ? degree : degree - 1;
      for (std::size_t c = 0; c < children; ++c) {
        edges.emplace_back(v, count);
        next.push_back(count++);
      }
    }
    layer = std::move(next);
  }
  return FiniteGraph::from_edges(count, edges, 0, radius);
}

SimulationReport simulate_escape(const FiniteGraph& g, std::size_t r, std::size_t trials, std::mt19937_64& rng) {
  if (r == 0) throw Error(ErrorKind::InvalidRadius, "radius must be positive");
  SimulationReport rep;
  rep.trials = trials;
  const Vertex base = g.base();
  if (g.degree(base) == 0) return rep;
  auto step = [&](Vertex v) {
    const auto& nb = g.neighbors(v);
    return nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
  };
  for (std::size_t t = 0; t < trials; ++t) {
    Vertex v = step(base);
    while (v != base && g.dist(v) < r) v = step(v);
    if (v != base) ++rep.escapes;
  }
  if (trials > 0) {
    rep.estimate = static_cast<double>(rep.escapes) / static_cast<double>(trials);
    rep.standard_error = std::sqrt(rep.estimate * (1.0 - rep.estimate) / static_cast<double>(trials));
  }
  return rep;
}

}  // namespace fglab
