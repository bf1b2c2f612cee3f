#pragma once

// Points of the binary Cantor set and finite-state actions on them.
//
// A point is an eventually periodic infinite word u v v v ... kept in a
// canonical (preperiod, period) form. Generators are Mealy automaton states or
// piecewise combinations of states over a prefix partition. Words act from the
// left: the rightmost letter is applied first.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fglab {

/// Binary strings are std::string over the characters '0' and '1'.
using Bits = std::string;

bool is_binary(std::string_view s) noexcept;

class BoundaryPoint {
 public:
  /// The point 0^inf.
  BoundaryPoint() : period_("0") {}

  const Bits& preperiod() const noexcept { return preperiod_; }
  const Bits& period() const noexcept { return period_; }

  char at(std::size_t i) const noexcept {
    return i < preperiod_.size() ? preperiod_[i]
                                 : period_[(i - preperiod_.size()) % period_.size()];
  }
  Bits prefix(std::size_t n) const;
  bool has_prefix(std::string_view p) const noexcept;

  /// Drops the first k letters.
  BoundaryPoint shift(std::size_t k) const;

  /// "pre(period)", e.g. "10(1)" for 1 0 1 1 1 ...
  std::string to_string() const;
  /// Inverse of to_string; also accepts "(period)" and a bare word "w"
  /// meaning w(0).
  static BoundaryPoint parse(std::string_view text);

  auto operator<=>(const BoundaryPoint&) const = default;

 private:
  friend BoundaryPoint canonical_point(std::string_view, std::string_view);
  Bits preperiod_;
  Bits period_;
};

/// Canonical representative of preperiod . period^inf. Throws InvalidPoint on
/// an empty period or non-binary input.
BoundaryPoint canonical_point(std::string_view preperiod, std::string_view period);

/// Uniform-ish random eventually periodic point (preperiod length 0..max_pre,
/// period length 1..max_period), canonicalized.
BoundaryPoint random_point(std::mt19937_64& rng, std::size_t max_pre = 6,
                           std::size_t max_period = 6);

/// Seed for randomized spot checks: FULLGROUP_LAB_SEED if set, else a fixed
/// default.
std::uint64_t lab_seed();

// ---------------------------------------------------------------------------

using StateId = std::size_t;

/// A binary Mealy automaton where every state acts by a tree automorphism.
class Transducer {
 public:
  struct State {
    std::string name;
    std::array<StateId, 2> next{};
    std::array<char, 2> out{'0', '1'};
  };

  Transducer() = default;
  /// Validates that outputs of each state permute {0,1}. If no state named
  /// "e" is present an identity state "e" is appended.
  explicit Transducer(std::vector<State> states);

  std::size_t size() const noexcept { return states_.size(); }
  const State& state(StateId s) const { return states_.at(s); }
  const std::vector<State>& states() const noexcept { return states_; }
  std::optional<StateId> find(std::string_view name) const;
  StateId identity() const noexcept { return identity_; }

  /// Runs a finite word from state s; returns (output, state after).
  std::pair<Bits, StateId> run(StateId s, std::string_view input) const;
  /// Image of an eventually periodic point under state s.
  BoundaryPoint apply(StateId s, const BoundaryPoint& x) const;
  /// True if the two states induce the same tree automorphism.
  bool equivalent(StateId a, StateId b) const;
  /// True if the composite s_1 ... s_k (rightmost first) acts trivially.
  bool acts_trivially(const std::vector<StateId>& composite) const;
  /// True if the two composites (rightmost first) act identically.
  bool equivalent(const std::vector<StateId>& lhs, const std::vector<StateId>& rhs) const;

 private:
  std::vector<State> states_;
  std::map<std::string, StateId, std::less<>> index_;
  StateId identity_ = 0;
};

/// One cell of a piecewise generator: on the cylinder `prefix` act by `state`.
struct StatePiece {
  Bits prefix;
  StateId state;
};

/// A generator is either a single automaton state or a piecewise map over a
/// prefix partition (e.g. a fragmentation of an involution).
using GeneratorSpec = std::variant<StateId, std::vector<StatePiece>>;

class GroupWord {
 public:
  GroupWord() = default;
  GroupWord(std::initializer_list<std::string> letters) : letters_(letters) {}
  explicit GroupWord(std::vector<std::string> letters) : letters_(std::move(letters)) {}
  /// Whitespace separated letters; "" and "e" denote the empty word.
  static GroupWord parse(std::string_view text);

  const std::vector<std::string>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// this . rhs (rhs acts first).
  GroupWord operator*(const GroupWord& rhs) const;
  std::string to_string() const;

  auto operator<=>(const GroupWord&) const = default;

 private:
  std::vector<std::string> letters_;
};

/// A finite symmetric generating set acting on the Cantor set, with a
/// basepoint whose orbit is the Schreier graph under study.
class ActionSystem {
 public:
  struct Generator {
    std::string name;
    GeneratorSpec spec;
  };

  /// Validates generators (piece partitions, name uniqueness) and resolves
  /// each generator's inverse inside the set. Throws InvalidAction when some
  /// generator has no inverse among the generators.
  static ActionSystem create(std::string name, Transducer transducer,
                             std::vector<Generator> generators, BoundaryPoint basepoint);

  const std::string& name() const noexcept { return name_; }
  const Transducer& transducer() const noexcept { return transducer_; }
  const std::vector<Generator>& generators() const noexcept { return generators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  const BoundaryPoint& basepoint() const noexcept { return basepoint_; }

  /// Generator index; throws UnknownGenerator.
  std::size_t generator_index(std::string_view name) const;
  std::optional<std::size_t> find_generator(std::string_view name) const;
  std::size_t inverse_of(std::size_t g) const { return inverse_.at(g); }
  bool is_involution(std::size_t g) const { return inverse_.at(g) == g; }

  /// Longest piece prefix over all generators (0 when all are plain states).
  /// Truncated actions on words of at least this length are well defined.
  std::size_t piece_depth() const noexcept { return piece_depth_; }

  /// State used by generator g on the cylinder of `prefix`; needs
  /// prefix.size() >= the generator's piece depth.
  StateId state_on(std::size_t g, std::string_view prefix) const;

  BoundaryPoint apply_generator(std::size_t g, const BoundaryPoint& x) const;
  /// Truncated action on a finite word (length >= piece_depth()).
  Bits apply_generator(std::size_t g, std::string_view word) const;

  /// Rightmost letter first. Throws UnknownGenerator.
  BoundaryPoint apply(const GroupWord& w, const BoundaryPoint& x) const;
  Bits apply(const GroupWord& w, std::string_view word) const;

  /// Formal inverse: reversed word of inverse letters.
  GroupWord inverse(const GroupWord& w) const;
  /// Cancels adjacent g g^-1 pairs.
  GroupWord reduce(const GroupWord& w) const;
  /// Throws UnknownGenerator if some letter does not resolve.
  void check_word(const GroupWord& w) const;

  ActionSystem with_basepoint(BoundaryPoint basepoint) const;

 private:
  std::string name_;
  Transducer transducer_;
  std::vector<Generator> generators_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::size_t> inverse_;
  std::size_t piece_depth_ = 0;
  BoundaryPoint basepoint_;
};

BoundaryPoint apply_word(const ActionSystem& action, const GroupWord& w, const BoundaryPoint& x);

/// "grigorchuk", "odometer" or "dihedral"; throws UnknownAction.
ActionSystem builtin_action(std::string_view name);
std::vector<std::string> builtin_action_names();

/// One fragment: the cylinders where it acts by the base generator (true) or
/// fixes the point (false).
struct FragmentTable {
  std::string name;
  std::vector<std::pair<Bits, bool>> cells;
};

/// Replaces the involution `base_generator` by the given fragments. Each
/// fragment's on-set must be invariant under the base involution and every
/// cylinder must be covered by some fragment acting as the base.
ActionSystem fragment_generators(const ActionSystem& action, std::string_view base_generator,
                                 const std::vector<FragmentTable>& fragments);

// ---------------------------------------------------------------------------
// Prefix codes (clopen partitions by cylinders).

enum class PartitionStatus { Ok, Overlap, Gap };

/// Whether the prefixes are pairwise incomparable and cover every infinite word.
PartitionStatus check_partition(const std::vector<Bits>& prefixes);

/// All binary words of length n in lexicographic order.
std::vector<Bits> all_words(std::size_t n);

}  // namespace fglab

template <>
struct std::hash<fglab::BoundaryPoint> {
  std::size_t operator()(const fglab::BoundaryPoint& p) const noexcept {
    const std::size_t h1 = std::hash<std::string>{}(p.preperiod());
    const std::size_t h2 = std::hash<std::string>{}(p.period());
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};
