#include <doctest.h>

#include <memory>
#include <random>

#include "fglab/error.hpp"
#include "fglab/io.hpp"
#include "fglab/verify.hpp"

using namespace fglab;

TEST_CASE("action JSON round trip") {
  std::mt19937_64 rng(10);
  for (const auto& name : builtin_action_names()) {
    const ActionSystem a = builtin_action(name);
    const ActionSystem b = action_from_json(action_to_json(a));
    CHECK(b.name() == a.name());
    CHECK(b.basepoint() == a.basepoint());
    CHECK(action_hash(a) == action_hash(b));
    for (int i = 0; i < 50; ++i) {
      const BoundaryPoint x = random_point(rng);
      for (const auto& g : a.generators()) CHECK(a.apply(GroupWord{g.name}, x) == b.apply(GroupWord{g.name}, x));
    }
  }
  CHECK(action_hash(builtin_action("odometer")) != action_hash(builtin_action("dihedral")));
}

TEST_CASE("malformed actions") {
  CHECK_THROWS_AS(action_from_json(Json::object()), Error);
  Json j = action_to_json(builtin_action("dihedral"));
  j["transducers"]["b"]["transitions"]["0"] = "zz";
  try {
    action_from_json(j);
    FAIL("expected InvalidAction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidAction);
  }
  try {
    load_action("no-such-action");
    FAIL("expected UnknownAction");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownAction);
  }
}

TEST_CASE("element JSON") {
  const auto odo = std::make_shared<const ActionSystem>(builtin_action("odometer"));
  const FullGroupElement s = pair_swap(odo);
  const FullGroupElement back = element_from_json(odo, element_to_json(s));
  CHECK(back.pieces() == s.pieces());

  const Json text = Json::parse(R"({"pieces": [{"prefix": "0", "word": "t"}, {"prefix": "1", "word": "t^-1"}]})");
  CHECK(equivalent(element_from_json(odo, text), s));

  const Json many = Json::parse(R"({"elements": [{"pieces": [{"prefix": "", "word": []}]},
                                                {"pieces": [{"prefix": "", "word": ["t"]}]}]})");
  const auto list = elements_from_json(odo, many);
  REQUIRE(list.size() == 2);
  CHECK(is_identity(list[0]));
  CHECK(elements_from_json(odo, Json::array({element_to_json(s)})).size() == 1);
  CHECK(elements_from_json(odo, element_to_json(s)).size() == 1);
}

TEST_CASE("graph exports") {
  const FiniteGraph p = FiniteGraph::path(3);
  const Json j = graph_to_json(p);
  CHECK(j["vertices"].size() == 3);
  CHECK(j["base"] == 0);
  const std::string dot = graph_to_dot(build_level_graph(builtin_action("grigorchuk"), 2).graph, true);
  CHECK(dot.find("graph") != std::string::npos);
  const std::string with_loops = graph_to_dot(build_level_graph(builtin_action("grigorchuk"), 2).graph, false);
  CHECK(with_loops.size() > dot.size());
}
