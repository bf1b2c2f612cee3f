#pragma once

// Finite certificates that a graph looks like a line: a chart f: V -> Z with
// exact quasi-isometry constants, fiber and covering checks, and geodesic
// tools (diametral geodesic, midpoint extension, projection).

#include <cstdint>
#include <vector>

#include "fglab/rational.hpp"
#include "fglab/schreier.hpp"

namespace fglab {

/// f(x) = d(u, x) - d(u, base) for a diametral endpoint u, together with the
/// smallest (alpha, beta) on the half-integer grid for which
///   d(x,y)/alpha - beta <= |f(x) - f(y)| <= alpha d(x,y) + beta
/// holds over every certified pair. Of the two diametral endpoints, u is the
/// one for which f grows along the base's first generator edge.
struct LineChart {
  std::vector<std::int64_t> f;
  Vertex anchor = 0;  ///< the diametral endpoint u
  Rational alpha{1};
  Rational beta{0};
  Rational gamma{0};
  Rational m{1};       ///< alpha^2 + 2 alpha beta
  std::size_t margin = 1;
  std::size_t certified_pairs = 0;

  std::uint64_t hash() const;
};

/// alpha^2 + 2 alpha beta.
Rational m_constant(const Rational& alpha, const Rational& beta);

/// Throws NotConnected for disconnected graphs, WindowTooSmall below two
/// certified vertices.
LineChart fit_line_chart(const FiniteGraph& g);

/// Smallest beta on the half grid such that all certified pairs satisfy the
/// quasi-isometry inequalities for the given alpha (used to re-check
/// tightness).
Rational minimal_beta(const FiniteGraph& g, const std::vector<std::int64_t>& f, const Rational& alpha,
                      std::size_t margin = 1);
/// Both inequalities over every certified pair.
bool satisfies_qi(const FiniteGraph& g, const std::vector<std::int64_t>& f, const Rational& alpha,
                  const Rational& beta, std::size_t margin = 1);

struct FiberReport {
  std::size_t max_fiber_diameter = 0;
  std::int64_t worst_value = 0;
  Rational bound;  ///< alpha * beta
  bool pass = false;
};

/// Every fiber f^-1(n) among certified vertices has diameter <= alpha beta.
FiberReport fiber_diameter_check(const FiniteGraph& g, const LineChart& chart);

/// A shortest path v_0 ... v_L; v_0 is the "-infinity" end.
struct GeodesicSegment {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }
  /// Index on the segment or kUnreachable.
  std::size_t position(Vertex v) const;
  bool contains(Vertex v) const { return position(v) != kUnreachable; }
};

/// Shortest path between the diametral pair found by double BFS from the
/// base, oriented so that f increases towards the end (f from the chart
/// when given, else the chart this graph would get).
GeodesicSegment diametral_geodesic(const FiniteGraph& g);
GeodesicSegment diametral_geodesic(const FiniteGraph& g, const LineChart& chart);

/// d(v_i, v_j) == |i - j| for all pairs.
bool is_geodesic(const FiniteGraph& g, const GeodesicSegment& segment);

/// Largest n such that v is the midpoint of a geodesic of length 2n, by
/// growing the tree of even geodesics centered at v two endpoints at a time.
std::size_t max_geodesic_midpoint(const FiniteGraph& g, Vertex v);

/// Closest vertex of the segment to x; ties go to the vertex nearest the
/// "-infinity" end.
Vertex project_to_geodesic(const FiniteGraph& g, const GeodesicSegment& segment, Vertex x);

struct CoveringReport {
  std::size_t max_distance = 0;
  Vertex worst_vertex = 0;
  Rational m;
  bool pass = false;
};

/// d(x, segment) <= m for every certified x.
CoveringReport m_covering_check(const FiniteGraph& g, const GeodesicSegment& segment, const Rational& m,
                                std::size_t margin = 1);

}  // namespace fglab
