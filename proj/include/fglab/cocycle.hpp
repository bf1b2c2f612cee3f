#pragma once

// The half-space Y = f^-1(N) of a line chart and the cocycle
// c_phi = Y symmetric-difference phi(Y), evaluated on finite balls with
// stabilization certificates.

#include <cstdint>
#include <optional>
#include <vector>

#include "fglab/full_group.hpp"
#include "fglab/line_geometry.hpp"
#include "fglab/schreier.hpp"

namespace fglab {

struct HalfSpace {
  std::vector<bool> member;  ///< f(x) >= 0, over every vertex of the graph
  VertexSet members;         ///< certified members
  VertexSet boundary;        ///< certified part of the boundary of Y
  VertexSet complement_boundary;
  std::size_t margin = 1;
  std::uint64_t chart_hash = 0;

  bool contains(Vertex v) const { return member.at(v); }
};

HalfSpace half_space(const FiniteGraph& g, const LineChart& chart);

/// The boundary of Y lies in f^-1([0, alpha + beta - 1]).
struct BandReport {
  Rational upper;  ///< alpha + beta - 1
  VertexSet violators;
  bool pass = false;
};
BandReport boundary_band_check(const FiniteGraph& g, const LineChart& chart, const HalfSpace& y);

struct CocycleValue {
  VertexSet vertices;
  std::vector<BoundaryPoint> points;  ///< sorted
  std::size_t radius = 0;             ///< evaluation radius r
  std::size_t verified_radius = 0;    ///< r + d_phi, must give the same set
  std::size_t d_phi = 0;
  bool stabilized = false;
  /// g(Y) \ Y lies in Gamma_len(g)(boundary of Y) for every piece word g,
  /// and phi(Y) \ Y lies in Gamma_{d_phi}(boundary of Y).
  bool containment_ok = false;
};

/// Evaluates Y xor phi(Y) on the vertices within `radius` of the base
/// (default: ball radius - 2 d_phi - 1). Throws NotStabilized when the ball is
/// too small to evaluate; instability is reported in the flag.
CocycleValue compute_cocycle(const FullGroupElement& phi, const HalfSpace& y, const SchreierBall& ball,
                             std::optional<std::size_t> radius = std::nullopt);
/// As compute_cocycle, but throws NotStabilized unless stabilized.
CocycleValue cocycle_value(const FullGroupElement& phi, const HalfSpace& y, const SchreierBall& ball,
                           std::optional<std::size_t> radius = std::nullopt);

/// phi(Y) == Y on the certified window, i.e. the stabilized cocycle is empty.
bool stabilizer_test(const FullGroupElement& phi, const HalfSpace& y, const SchreierBall& ball,
                     std::optional<std::size_t> radius = std::nullopt);

/// Smallest R with both boundaries of Y inside B_R(p); p must lie on the
/// geodesic. Throws NotStabilized if a boundary vertex sits on the
/// certification rim.
std::size_t r_constant(const FiniteGraph& g, const HalfSpace& y, const GeodesicSegment& ell, Vertex p);

/// 6 m + R + 2 d_phi.
Rational n_phi(const Rational& m, std::size_t r, std::size_t d_phi);

}  // namespace fglab
