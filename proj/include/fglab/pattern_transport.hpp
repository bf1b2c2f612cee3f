#pragma once

// Local action patterns of finitely many full-group elements, their
// repetition radius along the orbit, and the transport of the half-space Y to
// a point whose pattern matches the basepoint's.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fglab/cocycle.hpp"
#include "fglab/full_group.hpp"
#include "fglab/line_geometry.hpp"
#include "fglab/schreier.hpp"

namespace fglab {

/// Everything derived from one pinned chart on one ball: the half-space Y, the
/// diametral geodesic, the reference point p (the basepoint) and R.
struct LineSetting {
  SchreierBall ball;
  LineChart chart;
  HalfSpace y;
  GeodesicSegment ell;
  Vertex p = 0;
  std::size_t r_const = 0;

  static LineSetting build(const ActionSystem& action, std::size_t radius, std::size_t cap = kDefaultBallCap);
};

/// The labeled n-ball around a vertex in canonical BFS order (generators in
/// name order) plus, for every vertex of it and every element of F, the piece
/// word the element uses there.
struct LocalPattern {
  Vertex center = 0;
  std::size_t depth = 0;
  std::vector<Vertex> order;
  /// shape[i * gens + g]: canonical index of the g-neighbor of order[i], or -1
  /// when it leaves the n-ball.
  std::vector<std::ptrdiff_t> shape;
  /// table[i * |F| + k]: word of F[k] on order[i].
  std::vector<GroupWord> table;

  /// Isomorphic labeled neighborhoods carrying the same tables.
  bool same_as(const LocalPattern& other) const {
    return depth == other.depth && shape == other.shape && table == other.table;
  }
};

/// Throws RimContact unless the n-ball of v lies strictly inside the ball.
LocalPattern local_pattern(std::span<const FullGroupElement> f, const SchreierBall& ball, Vertex v, std::size_t n);

/// Window-relative evidence: the smallest r such that every vertex whose
/// pattern is computable has a match of the reference pattern within r.
struct RepetitionReport {
  std::size_t r = 0;
  std::size_t window_radius = 0;
  std::size_t candidates = 0;
  VertexSet matches;
};

/// Throws NoRepetition if some candidate has no reachable match.
RepetitionReport repetition_radius(std::span<const FullGroupElement> f, std::size_t n, const SchreierBall& ball,
                                   Vertex reference);

struct TransportedHalfSpace {
  Vertex z = 0;
  std::size_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> h;  ///< (x in B_n(p), h(x) in B_n(z))
  VertexSet b_plus;
  VertexSet b_minus;
  std::vector<bool> in_a_plus;
  std::vector<bool> in_a_minus;
  bool y_is_a_plus = true;
  std::vector<bool> in_y_z;
  std::size_t margin = 0;  ///< claims are checked on dist(base, x) <= radius - margin

  bool partition_ok = false;       ///< A- is the complement of A+
  bool boundary_ok = false;        ///< boundary(A+) = h(boundary Y), boundary(A-) = h(boundary Y^c)
  bool invariance_ok = false;      ///< F maps Y_z onto itself
  bool ends_ok = false;            ///< each end in exactly one of A+/-, +inf in Y_z
  bool boundary_in_ball_ok = false;  ///< boundary(Y_z) inside B_R(z)
  std::string witness;

  bool ok() const noexcept {
    return partition_ok && boundary_ok && invariance_ok && ends_ok && boundary_in_ball_ok;
  }
  bool contains(Vertex v) const { return in_y_z.at(v); }
};

/// Builds B+/-, A+/- and Y_z for a match point z and checks every conclusion
/// on the certified window. Precondition failures throw (PreconditionNphi,
/// PatternMismatch, RimContact, TransportFailure for F outside the
/// stabilizer); failed conclusions throw TransportFailure when
/// throw_on_failure, otherwise they are reported in the flags.
TransportedHalfSpace transport_halfspace(std::span<const FullGroupElement> f, Vertex z, std::size_t n,
                                         const LineSetting& setting, bool throw_on_failure = true);

/// max N_phi over F.
Rational max_n_phi(std::span<const FullGroupElement> f, const LineSetting& setting);

}  // namespace fglab
