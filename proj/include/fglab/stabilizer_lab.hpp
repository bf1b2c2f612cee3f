#pragma once

// Anchors along the geodesic, the nested family of transported half-spaces
// Y_i, bounds on the blocks Y_i \ Y_{i+1}, and the order of <F> computed via
// the blocks and by brute force.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fglab/full_group.hpp"
#include "fglab/pattern_transport.hpp"

namespace fglab {

inline constexpr std::size_t kDefaultOrderCap = 1000000;

struct Anchor {
  std::int64_t index = 0;  ///< i; anchor 0 sits at the reference point
  Vertex y = 0;            ///< on the geodesic, |i| * spacing from p
  Vertex z = 0;            ///< nearest pattern match to y
  std::vector<bool> member;  ///< Y_i over all ball vertices
};

struct NestedFamily {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t spacing = 0;  ///< 2r + 2n + ceil(2m) + 2
  std::size_t u = 0;        ///< max |Gamma_m(window)| over (3 spacing + 1)-vertex geodesic windows
  std::size_t margin = 0;   ///< checks run on dist(base, x) <= radius - margin
  std::vector<Anchor> anchors;    ///< ascending index
  std::vector<VertexSet> blocks;  ///< blocks[k] = Y_k \ Y_{k+1} for consecutive anchors

  bool nesting_ok = false;
  bool bound_ok = false;      ///< |block| <= U
  bool local_ok = false;      ///< block inside Gamma_m([y_{i-1}, y_{i+2}])
  bool invariance_ok = false; ///< F permutes every block
  bool disjoint_ok = false;   ///< n-balls around distinct z_i are disjoint
  std::string witness;

  bool ok() const noexcept { return nesting_ok && bound_ok && local_ok && invariance_ok && disjoint_ok; }
};

/// Anchor spacing 2r + 2n + ceil(2m) + 2.
std::size_t anchor_spacing(std::size_t r, std::size_t n, const Rational& m);

/// Builds every anchor the window certifies (in both directions along the
/// geodesic) and checks nesting, block bounds, block invariance and
/// disjointness. r defaults to the repetition radius. Throws
/// PreconditionNphi, WindowTooSmall (< 3 anchors) or FamilyFailure; with
/// throw_on_failure off, failed claims are only reported in the flags.
NestedFamily nested_family(std::span<const FullGroupElement> f, std::size_t n, const LineSetting& setting,
                           std::optional<std::size_t> r = std::nullopt, bool throw_on_failure = true);

struct OrderReport {
  std::uint64_t blocks = 0;  ///< order inside the product of symmetric groups on the blocks
  std::uint64_t brute = 0;   ///< order as permutations of the closed certified window
  bool agree = false;
};

/// Order of the permutation group generated by `generators` (each a
/// permutation of 0..k-1). Throws OrderCap past `cap` elements.
std::uint64_t permutation_group_order(const std::vector<std::vector<std::uint32_t>>& generators,
                                      std::uint64_t cap = kDefaultOrderCap);

OrderReport finite_embedding_order(std::span<const FullGroupElement> f, const NestedFamily& family,
                                   const LineSetting& setting, std::uint64_t cap = kDefaultOrderCap);

}  // namespace fglab
