#include "fglab/io.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fglab/error.hpp"

namespace fglab {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) parse_fail(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

char letter(const Json& j, const char* key) {
  const std::string s = string_field(j, key);
  if (s != "0" && s != "1") parse_fail("output letters must be \"0\" or \"1\"");
  return s[0];
}

}  // namespace

Json action_to_json(const ActionSystem& action) {
  const Transducer& t = action.transducer();
  Json states = Json::object();
  for (const auto& s : t.states()) {
    states[s.name] = {
        {"transitions", {{"0", t.state(s.next[0]).name}, {"1", t.state(s.next[1]).name}}},
        {"outputs", {{"0", std::string(1, s.out[0])}, {"1", std::string(1, s.out[1])}}},
    };
  }
  Json gens = Json::object();
  for (const auto& g : action.generators()) {
    if (const auto* s = std::get_if<StateId>(&g.spec)) {
      gens[g.name] = t.state(*s).name;
    } else {
      Json pieces = Json::array();
      for (const auto& p : std::get<std::vector<StatePiece>>(g.spec)) {
        pieces.push_back({{"prefix", p.prefix}, {"state", t.state(p.state).name}});
      }
      gens[g.name] = pieces;
    }
  }
  return {
      {"name", action.name()},
      {"transducers", states},
      {"generators", gens},
      {"basepoint", {{"preperiod", action.basepoint().preperiod()}, {"period", action.basepoint().period()}}},
  };
}

ActionSystem action_from_json(const Json& j) {
  const std::string name = string_field(j, "name");
  const Json& states = field(j, "transducers");
  if (!states.is_object() || states.empty()) parse_fail("'transducers' must be a non-empty object");

  std::map<std::string, StateId> ids;
  for (auto it = states.begin(); it != states.end(); ++it) ids.emplace(it.key(), ids.size());
  auto resolve = [&](const std::string& s) {
    auto it = ids.find(s);
    if (it == ids.end()) throw Error(ErrorKind::InvalidAction, "unknown state '" + s + "'");
    return it->second;
  };
  std::vector<Transducer::State> list;
  for (auto it = states.begin(); it != states.end(); ++it) {
    const Json& tr = field(it.value(), "transitions");
    const Json& out = field(it.value(), "outputs");
    list.push_back({it.key(),
                    {resolve(string_field(tr, "0")), resolve(string_field(tr, "1"))},
                    {letter(out, "0"), letter(out, "1")}});
  }
  Transducer transducer(std::move(list));

  std::vector<ActionSystem::Generator> gens;
  const Json& gj = field(j, "generators");
  if (!gj.is_object()) parse_fail("'generators' must be an object");
  for (auto it = gj.begin(); it != gj.end(); ++it) {
    if (it.value().is_string()) {
      gens.push_back({it.key(), resolve(it.value().get<std::string>())});
    } else if (it.value().is_array()) {
      std::vector<StatePiece> pieces;
      for (const Json& p : it.value()) pieces.push_back({string_field(p, "prefix"), resolve(string_field(p, "state"))});
      gens.push_back({it.key(), std::move(pieces)});
    } else {
      parse_fail("generator '" + it.key() + "' must be a state name or a piece list");
    }
  }
  const Json& bp = field(j, "basepoint");
  BoundaryPoint base = canonical_point(string_field(bp, "preperiod"), string_field(bp, "period"));
  return ActionSystem::create(name, std::move(transducer), std::move(gens), std::move(base));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
}

ActionSystem load_action(std::string_view name_or_path) {
  for (const auto& n : builtin_action_names()) {
    if (n == name_or_path) return builtin_action(n);
  }
  const std::string path(name_or_path);
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorKind::UnknownAction, "no built-in action or file named '" + path + "'");
  }
  return action_from_json(read_json_file(path));
}

std::string action_hash(const ActionSystem& action) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : action_to_json(action).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

Json element_to_json(const FullGroupElement& phi) {
  Json pieces = Json::array();
  for (const auto& p : phi.pieces()) pieces.push_back({{"prefix", p.prefix}, {"word", p.word.letters()}});
  return {{"pieces", pieces}};
}

FullGroupElement element_from_json(FullGroupElement::ActionPtr action, const Json& j) {
  const Json& pj = field(j, "pieces");
  if (!pj.is_array()) parse_fail("'pieces' must be an array");
  std::vector<Piece> pieces;
  for (const Json& p : pj) {
    const Json& w = field(p, "word");
    std::vector<std::string> letters;
    if (w.is_string()) {
      letters = GroupWord::parse(w.get<std::string>()).letters();
    } else if (w.is_array()) {
      for (const Json& l : w) {
        if (!l.is_string()) parse_fail("word letters must be strings");
        letters.push_back(l.get<std::string>());
      }
    } else {
      parse_fail("'word' must be an array of generator names");
    }
    pieces.push_back({string_field(p, "prefix"), GroupWord(std::move(letters))});
  }
  return make_element(std::move(action), std::move(pieces));
}

std::vector<FullGroupElement> elements_from_json(FullGroupElement::ActionPtr action, const Json& j) {
  const Json* list = &j;
  if (j.is_object() && j.contains("elements")) list = &j.at("elements");
  std::vector<FullGroupElement> out;
  if (list->is_array()) {
    for (const Json& e : *list) out.push_back(element_from_json(action, e));
  } else {
    out.push_back(element_from_json(action, *list));
  }
  return out;
}

std::string graph_to_dot(const FiniteGraph& g, bool no_loops) {
  std::ostringstream out;
  out << "graph schreier {\n";
  for (Vertex v = 0; v < g.size(); ++v) out << "  v" << v << " [label=\"" << g.label(v) << "\"];\n";
  for (const auto& e : g.edges()) {
    if (no_loops && e.from == e.to) continue;
    out << "  v" << e.from << " -- v" << e.to << " [label=\"" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Json graph_to_json(const FiniteGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.from, e.label, e.to}));
  Json dist = Json::array();
  for (Vertex v = 0; v < g.size(); ++v) dist.push_back(g.dist(v));
  return {{"vertices", g.labels()}, {"edges", edges}, {"dist", dist}, {"base", g.base()}};
}

}  // namespace fglab
