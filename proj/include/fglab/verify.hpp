#pragma once

// The end-to-end evidence run behind `fglab verify`: every lemma check on one
// ball with one pinned chart, collected into a deterministic JSON report.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fglab/full_group.hpp"
#include "fglab/io.hpp"
#include "fglab/schreier.hpp"
#include "fglab/stabilizer_lab.hpp"

namespace fglab {

inline constexpr std::array<std::string_view, 15> kLemmaIds = {
    "localfin", "biinf",          "m_geod",  "boundY",      "cocycle_fin",  "cocycle_identity", "kernel_stab", "upp",
    "d_phi",    "oneend",         "stab_transport", "nesting", "block_bound", "finite_order",     "recurrence"};

struct VerifyOptions {
  std::size_t radius = 200;
  std::size_t n = 10;
  std::size_t ball_cap = kDefaultBallCap;
  std::size_t depth_cap = kDefaultDepthCap;
  std::uint64_t order_cap = kDefaultOrderCap;
  std::size_t random_pairs = 20;
  std::size_t transport_points = 5;
  bool timing = false;
};

/// The pair-swap involution {("0", t), ("1", t^-1)} on the odometer.
FullGroupElement pair_swap(FullGroupElement::ActionPtr odometer);

/// Odometer: {pair-swap}; every other action: {identity}.
std::vector<FullGroupElement> default_family(const FullGroupElement::ActionPtr& action);

struct VerificationReport {
  Json json;
  bool pass = false;  ///< no lemma failed (skipped lemmas do not count)
};

VerificationReport run_verification(const FullGroupElement::ActionPtr& action, const std::vector<FullGroupElement>& f,
                                    const VerifyOptions& options);

}  // namespace fglab
