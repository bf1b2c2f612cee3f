#include "fglab/cantor_actions.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>

#include "fglab/error.hpp"
#include "fglab/rational.hpp"

namespace fglab {

bool is_binary(std::string_view s) noexcept {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

namespace {

int bit(char c) { return c == '1' ? 1 : 0; }

Bits primitive_root(const Bits& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return w.substr(0, d);
  }
  return w;
}

}  // namespace

Bits BoundaryPoint::prefix(std::size_t n) const {
  Bits out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

bool BoundaryPoint::has_prefix(std::string_view p) const noexcept {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (at(i) != p[i]) return false;
  }
  return true;
}

BoundaryPoint BoundaryPoint::shift(std::size_t k) const {
  if (k <= preperiod_.size()) return canonical_point(preperiod_.substr(k), period_);
  const std::size_t r = (k - preperiod_.size()) % period_.size();
  return canonical_point("", period_.substr(r) + period_.substr(0, r));
}

std::string BoundaryPoint::to_string() const { return preperiod_ + "(" + period_ + ")"; }

BoundaryPoint BoundaryPoint::parse(std::string_view text) {
  const auto open = text.find('(');
  if (open == std::string_view::npos) return canonical_point(text, "0");
  if (text.empty() || text.back() != ')') {
    throw Error(ErrorKind::InvalidPoint, "expected pre(period), got '" + std::string(text) + "'");
  }
  return canonical_point(text.substr(0, open), text.substr(open + 1, text.size() - open - 2));
}

BoundaryPoint canonical_point(std::string_view preperiod, std::string_view period) {
  if (period.empty()) throw Error(ErrorKind::InvalidPoint, "empty period");
  if (!is_binary(preperiod) || !is_binary(period)) {
    throw Error(ErrorKind::InvalidPoint, "non-binary letters in point");
  }
  BoundaryPoint p;
  p.preperiod_ = Bits(preperiod);
  p.period_ = primitive_root(Bits(period));
  // Absorb the tail of the preperiod into a rotated period.
  while (!p.preperiod_.empty() && p.preperiod_.back() == p.period_.back()) {
    p.preperiod_.pop_back();
    std::rotate(p.period_.rbegin(), p.period_.rbegin() + 1, p.period_.rend());
  }
  return p;
}

BoundaryPoint random_point(std::mt19937_64& rng, std::size_t max_pre, std::size_t max_period) {
  std::uniform_int_distribution<std::size_t> pre_len(0, max_pre);
  std::uniform_int_distribution<std::size_t> per_len(1, std::max<std::size_t>(1, max_period));
  std::uniform_int_distribution<int> coin(0, 1);
  Bits pre(pre_len(rng), '0');
  Bits per(per_len(rng), '0');
  for (char& c : pre) c = coin(rng) ? '1' : '0';
  for (char& c : per) c = coin(rng) ? '1' : '0';
  return canonical_point(pre, per);
}

std::uint64_t lab_seed() {
  if (const char* env = std::getenv("FULLGROUP_LAB_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env) return v;
  }
  return 20211105ULL;
}

// ---------------------------------------------------------------------------

Transducer::Transducer(std::vector<State> states) : states_(std::move(states)) {
  for (StateId s = 0; s < states_.size(); ++s) {
    const auto& st = states_[s];
    if (!index_.emplace(st.name, s).second) {
      throw Error(ErrorKind::InvalidAction, "duplicate state '" + st.name + "'");
    }
    const bool perm = (st.out[0] == '0' && st.out[1] == '1') || (st.out[0] == '1' && st.out[1] == '0');
    if (!perm) throw Error(ErrorKind::InvalidAction, "state '" + st.name + "' is not a permutation");
    for (StateId t : st.next) {
      if (t >= states_.size()) throw Error(ErrorKind::InvalidAction, "dangling transition");
    }
  }
  if (auto e = find("e")) {
    const auto& st = states_[*e];
    if (st.out[0] != '0' || st.out[1] != '1' || st.next[0] != *e || st.next[1] != *e) {
      throw Error(ErrorKind::InvalidAction, "state 'e' is reserved for the identity");
    }
    identity_ = *e;
  } else {
    identity_ = states_.size();
    states_.push_back(State{"e", {identity_, identity_}, {'0', '1'}});
    index_.emplace("e", identity_);
  }
}

std::optional<StateId> Transducer::find(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

std::pair<Bits, StateId> Transducer::run(StateId s, std::string_view input) const {
  Bits out(input);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (s == identity_) break;
    const int b = bit(input[i]);
    out[i] = states_[s].out[b];
    s = states_[s].next[b];
  }
  return {std::move(out), s};
}

BoundaryPoint Transducer::apply(StateId s, const BoundaryPoint& x) const {
  auto [out, state] = run(s, x.preperiod());
  if (state == identity_) return canonical_point(out, x.period());
  // Simulate whole periods until the state at a period start repeats.
  std::map<StateId, std::size_t> seen;
  std::vector<Bits> chunks;
  while (true) {
    if (state == identity_) {
      for (const auto& c : chunks) out += c;
      return canonical_point(out, x.period());
    }
    if (auto it = seen.find(state); it != seen.end()) {
      Bits per;
      for (std::size_t k = 0; k < chunks.size(); ++k) (k < it->second ? out : per) += chunks[k];
      return canonical_point(out, per);
    }
    seen.emplace(state, chunks.size());
    auto [chunk, next] = run(state, x.period());
    chunks.push_back(std::move(chunk));
    state = next;
  }
}

bool Transducer::equivalent(StateId a, StateId b) const {
  return equivalent(std::vector<StateId>{a}, std::vector<StateId>{b});
}

bool Transducer::acts_trivially(const std::vector<StateId>& composite) const {
  return equivalent(composite, std::vector<StateId>{});
}

bool Transducer::equivalent(const std::vector<StateId>& lhs, const std::vector<StateId>& rhs) const {
  using Composite = std::vector<StateId>;
  auto normalize = [this](Composite c) {
    std::erase(c, identity_);
    return c;
  };
  // Feeds one letter through a composite (last entry acts first).
  auto step = [this](const Composite& c, int letter) {
    Composite next(c.size());
    for (std::size_t k = c.size(); k-- > 0;) {
      const auto& st = states_[c[k]];
      next[k] = st.next[letter];
      letter = bit(st.out[letter]);
    }
    return std::pair{letter, next};
  };

  std::set<std::pair<Composite, Composite>> visited;
  std::deque<std::pair<Composite, Composite>> queue;
  queue.emplace_back(normalize(lhs), normalize(rhs));
  while (!queue.empty()) {
    auto pair = std::move(queue.front());
    queue.pop_front();
    if (pair.first == pair.second) continue;
    if (!visited.insert(pair).second) continue;
    for (int letter = 0; letter < 2; ++letter) {
      auto [o1, n1] = step(pair.first, letter);
      auto [o2, n2] = step(pair.second, letter);
      if (o1 != o2) return false;
      queue.emplace_back(normalize(std::move(n1)), normalize(std::move(n2)));
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

GroupWord GroupWord::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> letters;
  for (std::string tok; in >> tok;) letters.push_back(tok);
  return GroupWord(std::move(letters));
}

GroupWord GroupWord::operator*(const GroupWord& rhs) const {
  std::vector<std::string> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return GroupWord(std::move(out));
}

std::string GroupWord::to_string() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += l;
  }
  return out;
}

// ---------------------------------------------------------------------------

PartitionStatus check_partition(const std::vector<Bits>& prefixes) {
  if (prefixes.empty()) return PartitionStatus::Gap;
  std::vector<Bits> sorted = prefixes;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i + 1].starts_with(sorted[i])) return PartitionStatus::Overlap;
  }
  Rational mass = 0;
  for (const auto& p : sorted) mass += Rational(1, BigInt(1) << p.size());
  return mass == 1 ? PartitionStatus::Ok : PartitionStatus::Gap;
}

std::vector<Bits> all_words(std::size_t n) {
  std::vector<Bits> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    Bits w(n, '0');
    for (std::size_t j = 0; j < n; ++j) {
      if ((i >> (n - 1 - j)) & 1U) w[j] = '1';
    }
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const StatePiece& piece_for(const std::vector<StatePiece>& pieces, std::string_view prefix) {
  for (const auto& p : pieces) {
    if (prefix.starts_with(p.prefix)) return p;
  }
  throw Error(ErrorKind::InvalidAction, "word shorter than piece depth");
}

const StatePiece* piece_for(const std::vector<StatePiece>& pieces, const BoundaryPoint& x) {
  for (const auto& p : pieces) {
    if (x.has_prefix(p.prefix)) return &p;
  }
  return nullptr;
}

}  // namespace

ActionSystem ActionSystem::create(std::string name, Transducer transducer,
                                  std::vector<Generator> generators, BoundaryPoint basepoint) {
  ActionSystem a;
  a.name_ = std::move(name);
  a.transducer_ = std::move(transducer);
  a.basepoint_ = std::move(basepoint);
  std::sort(generators.begin(), generators.end(),
            [](const Generator& x, const Generator& y) { return x.name < y.name; });
  a.generators_ = std::move(generators);
  if (a.generators_.empty()) throw Error(ErrorKind::InvalidAction, "no generators");

  for (std::size_t g = 0; g < a.generators_.size(); ++g) {
    const auto& gen = a.generators_[g];
    if (gen.name.empty() || gen.name.find_first_of(" \t\n") != std::string::npos) {
      throw Error(ErrorKind::InvalidAction, "bad generator name '" + gen.name + "'");
    }
    if (!a.index_.emplace(gen.name, g).second) {
      throw Error(ErrorKind::InvalidAction, "duplicate generator '" + gen.name + "'");
    }
    if (const auto* s = std::get_if<StateId>(&gen.spec)) {
      if (*s >= a.transducer_.size()) throw Error(ErrorKind::InvalidAction, "unknown state");
    } else {
      const auto& pieces = std::get<std::vector<StatePiece>>(gen.spec);
      std::vector<Bits> prefixes;
      for (const auto& p : pieces) {
        if (p.state >= a.transducer_.size() || !is_binary(p.prefix)) {
          throw Error(ErrorKind::InvalidAction, "bad piece in generator '" + gen.name + "'");
        }
        prefixes.push_back(p.prefix);
        a.piece_depth_ = std::max(a.piece_depth_, p.prefix.size());
      }
      if (check_partition(prefixes) != PartitionStatus::Ok) {
        throw Error(ErrorKind::NotAPartition, "pieces of '" + gen.name + "' do not partition");
      }
    }
  }

  // Exact inverse resolution: h is g^-1 iff on every cylinder of depth
  // piece_depth() the composite h g returns the prefix and its residual
  // automaton acts trivially.
  const auto cells = all_words(a.piece_depth_);
  auto inverts = [&](std::size_t h, std::size_t g) {
    for (const auto& cell : cells) {
      auto [u, sg] = a.transducer_.run(a.state_on(g, cell), cell);
      auto [v, sh] = a.transducer_.run(a.state_on(h, u), u);
      if (v != cell || !a.transducer_.acts_trivially({sh, sg})) return false;
    }
    return true;
  };
  a.inverse_.assign(a.generators_.size(), a.generators_.size());
  for (std::size_t g = 0; g < a.generators_.size(); ++g) {
    if (inverts(g, g)) {
      a.inverse_[g] = g;
      continue;
    }
    for (std::size_t h = 0; h < a.generators_.size(); ++h) {
      if (h != g && inverts(h, g)) {
        a.inverse_[g] = h;
        break;
      }
    }
    if (a.inverse_[g] == a.generators_.size()) {
      throw Error(ErrorKind::InvalidAction,
                  "generator '" + a.generators_[g].name + "' has no inverse in the generating set");
    }
  }
  return a;
}

std::optional<std::size_t> ActionSystem::find_generator(std::string_view name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t ActionSystem::generator_index(std::string_view name) const {
  if (auto g = find_generator(name)) return *g;
  throw Error(ErrorKind::UnknownGenerator, "'" + std::string(name) + "' in action " + name_);
}

StateId ActionSystem::state_on(std::size_t g, std::string_view prefix) const {
  const auto& spec = generators_.at(g).spec;
  if (const auto* s = std::get_if<StateId>(&spec)) return *s;
  return piece_for(std::get<std::vector<StatePiece>>(spec), prefix).state;
}

BoundaryPoint ActionSystem::apply_generator(std::size_t g, const BoundaryPoint& x) const {
  const auto& spec = generators_.at(g).spec;
  if (const auto* s = std::get_if<StateId>(&spec)) return transducer_.apply(*s, x);
  const auto* piece = piece_for(std::get<std::vector<StatePiece>>(spec), x);
  return transducer_.apply(piece->state, x);
}

Bits ActionSystem::apply_generator(std::size_t g, std::string_view word) const {
  return transducer_.run(state_on(g, word), word).first;
}

BoundaryPoint ActionSystem::apply(const GroupWord& w, const BoundaryPoint& x) const {
  check_word(w);
  BoundaryPoint y = x;
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    y = apply_generator(generator_index(*it), y);
  }
  return y;
}

Bits ActionSystem::apply(const GroupWord& w, std::string_view word) const {
  check_word(w);
  Bits y(word);
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    y = apply_generator(generator_index(*it), y);
  }
  return y;
}

GroupWord ActionSystem::inverse(const GroupWord& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(generators_[inverse_of(generator_index(*it))].name);
  }
  return GroupWord(std::move(out));
}

GroupWord ActionSystem::reduce(const GroupWord& w) const {
  std::vector<std::string> out;
  for (const auto& letter : w.letters()) {
    const std::size_t g = generator_index(letter);
    if (!out.empty() && generator_index(out.back()) == inverse_of(g)) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return GroupWord(std::move(out));
}

void ActionSystem::check_word(const GroupWord& w) const {
  for (const auto& letter : w.letters()) generator_index(letter);
}

ActionSystem ActionSystem::with_basepoint(BoundaryPoint basepoint) const {
  ActionSystem copy = *this;
  copy.basepoint_ = std::move(basepoint);
  return copy;
}

BoundaryPoint apply_word(const ActionSystem& action, const GroupWord& w, const BoundaryPoint& x) {
  return action.apply(w, x);
}

// ---------------------------------------------------------------------------

namespace {

using St = Transducer::State;

ActionSystem make_grigorchuk() {
  // 0:a 1:b 2:c 3:d 4:e
  Transducer t({
      St{"a", {4, 4}, {'1', '0'}},
      St{"b", {0, 2}, {'0', '1'}},
      St{"c", {0, 3}, {'0', '1'}},
      St{"d", {4, 1}, {'0', '1'}},
      St{"e", {4, 4}, {'0', '1'}},
  });
  return ActionSystem::create("grigorchuk", std::move(t),
                              {{"a", StateId{0}}, {"b", StateId{1}}, {"c", StateId{2}}, {"d", StateId{3}}},
                              canonical_point("", "1"));
}

ActionSystem make_odometer() {
  // Least significant digit first: t adds one, t^-1 subtracts one.
  Transducer t({
      St{"t", {2, 0}, {'1', '0'}},
      St{"t^-1", {1, 2}, {'1', '0'}},
      St{"e", {2, 2}, {'0', '1'}},
  });
  return ActionSystem::create("odometer", std::move(t), {{"t", StateId{0}}, {"t^-1", StateId{1}}},
                              canonical_point("", "0"));
}

ActionSystem make_dihedral() {
  Transducer t({
      St{"a", {2, 2}, {'1', '0'}},
      St{"b", {0, 1}, {'0', '1'}},
      St{"e", {2, 2}, {'0', '1'}},
  });
  return ActionSystem::create("dihedral", std::move(t), {{"a", StateId{0}}, {"b", StateId{1}}},
                              canonical_point("", "1"));
}

}  // namespace

std::vector<std::string> builtin_action_names() { return {"dihedral", "grigorchuk", "odometer"}; }

ActionSystem builtin_action(std::string_view name) {
  if (name == "grigorchuk") return make_grigorchuk();
  if (name == "odometer") return make_odometer();
  if (name == "dihedral") return make_dihedral();
  throw Error(ErrorKind::UnknownAction, "'" + std::string(name) + "'");
}

ActionSystem fragment_generators(const ActionSystem& action, std::string_view base_generator,
                                 const std::vector<FragmentTable>& fragments) {
  const auto base = action.find_generator(base_generator);
  if (!base) throw Error(ErrorKind::InvalidBase, "no generator '" + std::string(base_generator) + "'");
  const auto* base_state = std::get_if<StateId>(&action.generators()[*base].spec);
  if (base_state == nullptr || !action.is_involution(*base)) {
    throw Error(ErrorKind::InvalidBase, "'" + std::string(base_generator) + "' is not an involutive state");
  }
  if (fragments.empty()) throw Error(ErrorKind::NotAFragmentation, "no fragments");

  std::size_t depth = 1;
  for (const auto& f : fragments) {
    std::vector<Bits> prefixes;
    for (const auto& [p, on] : f.cells) {
      if (!is_binary(p)) throw Error(ErrorKind::NotAFragmentation, "non-binary prefix");
      prefixes.push_back(p);
      depth = std::max(depth, p.size());
    }
    if (check_partition(prefixes) != PartitionStatus::Ok) {
      throw Error(ErrorKind::NotAFragmentation, "cells of '" + f.name + "' do not partition");
    }
  }

  const auto& tr = action.transducer();
  const auto words = all_words(depth);
  std::set<Bits> covered;
  for (const auto& f : fragments) {
    std::set<Bits> on_set;
    for (const auto& w : words) {
      for (const auto& [p, on] : f.cells) {
        if (w.starts_with(p)) {
          if (on) on_set.insert(w);
          break;
        }
      }
    }
    for (const auto& w : on_set) {
      if (!on_set.contains(tr.run(*base_state, w).first)) {
        throw Error(ErrorKind::NotAFragmentation,
                    "on-set of '" + f.name + "' is not invariant under " + std::string(base_generator));
      }
    }
    covered.insert(on_set.begin(), on_set.end());
  }
  if (covered.size() != words.size()) {
    throw Error(ErrorKind::NotAFragmentation, "some cylinder is not covered by any fragment");
  }

  std::vector<ActionSystem::Generator> gens;
  for (std::size_t g = 0; g < action.generator_count(); ++g) {
    if (g != *base) gens.push_back(action.generators()[g]);
  }
  for (const auto& f : fragments) {
    std::vector<StatePiece> pieces;
    for (const auto& [p, on] : f.cells) pieces.push_back({p, on ? *base_state : tr.identity()});
    gens.push_back({f.name, std::move(pieces)});
  }
  return ActionSystem::create(action.name() + "-fragmented", tr, std::move(gens), action.basepoint());
}

}  // namespace fglab
