#include "fglab/full_group.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "fglab/error.hpp"

namespace fglab {

namespace {

std::size_t word_value(std::string_view w) {
  std::size_t v = 0;
  for (char c : w) v = (v << 1) | (c == '1' ? 1U : 0U);
  return v;
}

/// Merges sibling cells carrying the same word until nothing changes.
std::vector<Piece> coarsen(std::vector<Piece> pieces) {
  std::map<Bits, GroupWord> cells;
  for (auto& p : pieces) cells.emplace(std::move(p.prefix), std::move(p.word));
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = cells.begin(); it != cells.end(); ++it) {
      const Bits& key = it->first;
      if (key.empty() || key.back() != '0') continue;
      Bits sibling = key;
      sibling.back() = '1';
      auto sib = cells.find(sibling);
      if (sib == cells.end() || sib->second != it->second) continue;
      GroupWord word = it->second;
      Bits parent = key.substr(0, key.size() - 1);
      cells.erase(sib);
      cells.erase(it);
      cells.emplace(std::move(parent), std::move(word));
      changed = true;
      break;
    }
  }
  std::vector<Piece> out;
  out.reserve(cells.size());
  for (auto& [prefix, word] : cells) out.push_back({prefix, word});
  return out;
}

/// Image prefix and residual automaton states (in word order) of w on the
/// cylinder of p.
std::pair<Bits, std::vector<StateId>> residual(const ActionSystem& action, const GroupWord& w,
                                               const Bits& p) {
  std::vector<StateId> states(w.size());
  Bits cur = p;
  for (std::size_t k = w.size(); k-- > 0;) {
    const std::size_t g = action.generator_index(w.letters()[k]);
    auto [next, s] = action.transducer().run(action.state_on(g, cur), cur);
    states[k] = s;
    cur = std::move(next);
  }
  return {std::move(cur), std::move(states)};
}

}  // namespace

FullGroupElement make_unchecked(FullGroupElement::ActionPtr action, std::vector<Piece> pieces) {
  FullGroupElement e;
  e.action_ = std::move(action);
  std::sort(pieces.begin(), pieces.end());
  e.pieces_ = std::move(pieces);
  return e;
}

std::size_t FullGroupElement::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& p : pieces_) d = std::max(d, p.prefix.size());
  return d;
}

const Piece& FullGroupElement::piece_for(const BoundaryPoint& x) const {
  for (const auto& p : pieces_) {
    if (x.has_prefix(p.prefix)) return p;
  }
  throw Error(ErrorKind::NotAPartition, "no piece matches " + x.to_string());
}

BoundaryPoint FullGroupElement::operator()(const BoundaryPoint& x) const {
  return action_->apply(piece_for(x).word, x);
}

FullGroupElement make_element(FullGroupElement::ActionPtr action, std::vector<Piece> pieces,
                              std::size_t depth_cap) {
  if (!action) throw Error(ErrorKind::InvalidAction, "null action");
  std::vector<Bits> prefixes;
  for (const auto& p : pieces) {
    if (!is_binary(p.prefix)) throw Error(ErrorKind::NotAPartition, "non-binary prefix '" + p.prefix + "'");
    action->check_word(p.word);
    prefixes.push_back(p.prefix);
  }
  switch (check_partition(prefixes)) {
    case PartitionStatus::Overlap: throw Error(ErrorKind::NotAPartition, "overlapping prefixes");
    case PartitionStatus::Gap: throw Error(ErrorKind::NotAPartition, "prefixes do not cover");
    case PartitionStatus::Ok: break;
  }
  FullGroupElement e = make_unchecked(std::move(action), std::move(pieces));

  const std::size_t level =
      std::max(e.depth(), e.action()->piece_depth()) + displacement_bound(e);
  if (level > depth_cap) {
    throw Error(ErrorKind::DepthCap, "bijectivity level " + std::to_string(level) + " exceeds cap");
  }
  std::vector<bool> hit(std::size_t{1} << level, false);
  for (const auto& u : all_words(level)) {
    const Piece* piece = nullptr;
    for (const auto& p : e.pieces()) {
      if (u.starts_with(p.prefix)) {
        piece = &p;
        break;
      }
    }
    const std::size_t img = word_value(e.action()->apply(piece->word, u));
    if (hit[img]) throw Error(ErrorKind::NotInvertible, "two cylinders of depth " + std::to_string(level) +
                                                            " map onto " + e.action()->apply(piece->word, u));
    hit[img] = true;
  }
  return e;
}

FullGroupElement identity_element(FullGroupElement::ActionPtr action) {
  return make_unchecked(std::move(action), {Piece{"", GroupWord{}}});
}

FullGroupElement word_element(FullGroupElement::ActionPtr action, const GroupWord& w) {
  action->check_word(w);
  return make_unchecked(std::move(action), {Piece{"", w}});
}

BoundaryPoint apply_element(const FullGroupElement& phi, const BoundaryPoint& x) { return phi(x); }

FullGroupElement compose(const FullGroupElement& phi, const FullGroupElement& psi, std::size_t depth_cap) {
  if (phi.action() != psi.action() && phi.action()->name() != psi.action()->name()) {
    throw Error(ErrorKind::InvalidAction, "elements over different actions");
  }
  const ActionSystem& action = *psi.action();
  const std::size_t min_depth = action.piece_depth();
  std::vector<Piece> out;
  std::function<void(const Bits&, const GroupWord&)> refine = [&](const Bits& p, const GroupWord& w) {
    if (p.size() > depth_cap) throw Error(ErrorKind::DepthCap, "composition refinement too deep");
    if (p.size() >= min_depth) {
      const Bits image = action.apply(w, p);
      for (const auto& q : phi.pieces()) {
        if (image.starts_with(q.prefix)) {
          out.push_back({p, action.reduce(q.word * w)});
          return;
        }
      }
    }
    if (p.size() >= depth_cap) throw Error(ErrorKind::DepthCap, "composition refinement too deep");
    refine(p + '0', w);
    refine(p + '1', w);
  };
  for (const auto& piece : psi.pieces()) refine(piece.prefix, piece.word);
  return make_unchecked(psi.action(), coarsen(std::move(out)));
}

std::vector<Piece> refine_to_depth(const FullGroupElement& phi, std::size_t depth) {
  std::vector<Piece> out;
  for (const auto& piece : phi.pieces()) {
    if (piece.prefix.size() >= depth) {
      out.push_back(piece);
      continue;
    }
    for (const auto& tail : all_words(depth - piece.prefix.size())) out.push_back({piece.prefix + tail, piece.word});
  }
  std::sort(out.begin(), out.end());
  return out;
}

FullGroupElement invert(const FullGroupElement& phi, std::size_t depth_cap) {
  const ActionSystem& action = *phi.action();
  const std::size_t min_depth = action.piece_depth();
  if (min_depth > depth_cap) throw Error(ErrorKind::DepthCap, "piece depth exceeds cap");
  std::vector<Piece> out;
  for (const auto& piece : phi.pieces()) {
    const GroupWord inv = action.reduce(action.inverse(piece.word));
    if (piece.prefix.size() >= min_depth) {
      out.push_back({action.apply(piece.word, piece.prefix), inv});
      continue;
    }
    for (const auto& tail : all_words(min_depth - piece.prefix.size())) {
      out.push_back({action.apply(piece.word, piece.prefix + tail), inv});
    }
  }
  return make_unchecked(phi.action(), coarsen(std::move(out)));
}

std::size_t displacement_bound(const FullGroupElement& phi) {
  std::size_t d = 0;
  for (const auto& p : phi.pieces()) d = std::max(d, p.word.size());
  return d;
}

bool equivalent(const FullGroupElement& phi, const FullGroupElement& psi) {
  const ActionSystem& action = *phi.action();
  const std::size_t min_depth = action.piece_depth();
  auto covering = [](const FullGroupElement& e, const Bits& p) -> const Piece* {
    for (const auto& q : e.pieces()) {
      if (p.starts_with(q.prefix)) return &q;
    }
    return nullptr;
  };
  std::function<bool(const Bits&)> same_on = [&](const Bits& p) {
    const Piece* a = covering(phi, p);
    const Piece* b = covering(psi, p);
    if (a != nullptr && b != nullptr && p.size() >= min_depth) {
      if (a->word == b->word) return true;
      auto [img_a, res_a] = residual(action, a->word, p);
      auto [img_b, res_b] = residual(action, b->word, p);
      return img_a == img_b && action.transducer().equivalent(res_a, res_b);
    }
    return same_on(p + '0') && same_on(p + '1');
  };
  return same_on("");
}

bool is_identity(const FullGroupElement& phi) { return equivalent(phi, identity_element(phi.action())); }

FullGroupElement random_element(FullGroupElement::ActionPtr action, std::mt19937_64& rng, std::size_t max_depth,
                                std::size_t max_word, std::size_t max_attempts) {
  std::uniform_int_distribution<int> percent(0, 99);
  std::uniform_int_distribution<std::size_t> word_len(0, max_word);
  std::uniform_int_distribution<std::size_t> letter(0, action->generator_count() - 1);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Bits> prefixes;
    std::function<void(const Bits&)> split = [&](const Bits& p) {
      if (p.size() < max_depth && percent(rng) < 60) {
        split(p + '0');
        split(p + '1');
      } else {
        prefixes.push_back(p);
      }
    };
    split("");
    std::vector<Piece> pieces;
    for (auto& p : prefixes) {
      std::vector<std::string> letters(word_len(rng));
      for (auto& l : letters) l = action->generators()[letter(rng)].name;
      pieces.push_back({p, GroupWord(std::move(letters))});
    }
    try {
      return make_element(action, std::move(pieces));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInvertible) throw;
    }
  }
  return identity_element(std::move(action));
}

}  // namespace fglab
