#pragma once

// JSON and DOT formats: action definitions, full-group element files and
// graph exports.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fglab/cantor_actions.hpp"
#include "fglab/full_group.hpp"
#include "fglab/schreier.hpp"

namespace fglab {

using Json = nlohmann::json;

/// {"name", "transducers": {state: {"transitions": {"0","1"}, "outputs":
/// {"0","1"}}}, "generators": {name: state | [{"prefix","state"}]},
/// "basepoint": {"preperiod","period"}}
Json action_to_json(const ActionSystem& action);
ActionSystem action_from_json(const Json& j);

/// A built-in name, or a path to an action JSON file.
ActionSystem load_action(std::string_view name_or_path);

/// FNV-1a of the canonical JSON dump.
std::string action_hash(const ActionSystem& action);

/// {"pieces": [{"prefix": "01", "word": ["a", "b"]}]}
Json element_to_json(const FullGroupElement& phi);
FullGroupElement element_from_json(FullGroupElement::ActionPtr action, const Json& j);
/// An array of elements, {"elements": [...]}, or a single element.
std::vector<FullGroupElement> elements_from_json(FullGroupElement::ActionPtr action, const Json& j);

/// Throws ParseError.
Json read_json_file(const std::string& path);

std::string graph_to_dot(const FiniteGraph& g, bool no_loops);
/// {"vertices": [labels], "edges": [[from, label, to]], "dist": [...], "base"}
Json graph_to_json(const FiniteGraph& g);

}  // namespace fglab
