#pragma once

// Elements of the topological full group as finite prefix tables: on the
// cylinder of each prefix the element acts by a fixed group word.

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fglab/cantor_actions.hpp"

namespace fglab {

struct Piece {
  Bits prefix;
  GroupWord word;

  auto operator<=>(const Piece&) const = default;
};

inline constexpr std::size_t kDefaultDepthCap = 20;

class FullGroupElement {
 public:
  using ActionPtr = std::shared_ptr<const ActionSystem>;

  const ActionPtr& action() const noexcept { return action_; }
  /// Sorted by prefix; the prefixes partition the Cantor set.
  const std::vector<Piece>& pieces() const noexcept { return pieces_; }
  /// Longest prefix.
  std::size_t depth() const noexcept;

  const Piece& piece_for(const BoundaryPoint& x) const;
  BoundaryPoint operator()(const BoundaryPoint& x) const;

 private:
  friend FullGroupElement make_element(ActionPtr, std::vector<Piece>, std::size_t);
  friend FullGroupElement make_unchecked(ActionPtr, std::vector<Piece>);
  ActionPtr action_;
  std::vector<Piece> pieces_;
};

/// Validates the partition (NotAPartition), the words (UnknownGenerator) and
/// bijectivity (NotInvertible). Bijectivity is decided on the level
/// depth + displacement: every generator maps depth-k cylinders onto depth-k
/// cylinders, so a permutation of cylinders there is a homeomorphism.
FullGroupElement make_element(FullGroupElement::ActionPtr action, std::vector<Piece> pieces,
                              std::size_t depth_cap = kDefaultDepthCap);

FullGroupElement identity_element(FullGroupElement::ActionPtr action);
/// The single-piece element acting by word w everywhere.
FullGroupElement word_element(FullGroupElement::ActionPtr action, const GroupWord& w);

BoundaryPoint apply_element(const FullGroupElement& phi, const BoundaryPoint& x);

/// phi o psi (psi acts first). Throws DepthCap if the common refinement gets
/// deeper than depth_cap.
FullGroupElement compose(const FullGroupElement& phi, const FullGroupElement& psi,
                         std::size_t depth_cap = kDefaultDepthCap);
FullGroupElement invert(const FullGroupElement& phi, std::size_t depth_cap = kDefaultDepthCap);

/// max word length over the pieces: d(x, phi(x)) <= d_phi for every x.
std::size_t displacement_bound(const FullGroupElement& phi);

/// Exact equality as homeomorphisms: on a common refinement, image cylinders
/// agree and the residual automata are equivalent.
bool equivalent(const FullGroupElement& phi, const FullGroupElement& psi);
bool is_identity(const FullGroupElement& phi);

/// Pieces refined to depth `depth` (at least the current depth), sorted;
/// sibling cells with equal words are not merged.
std::vector<Piece> refine_to_depth(const FullGroupElement& phi, std::size_t depth);

/// Random validated element: piece depth <= max_depth, word length <=
/// max_word. Rejection sampling; gives up after max_attempts (returns
/// identity).
FullGroupElement random_element(FullGroupElement::ActionPtr action, std::mt19937_64& rng,
                                std::size_t max_depth, std::size_t max_word,
                                std::size_t max_attempts = 10000);

}  // namespace fglab
