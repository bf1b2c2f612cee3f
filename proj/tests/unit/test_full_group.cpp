#include <doctest.h>

#include <memory>
#include <random>
#include <set>

#include "fglab/error.hpp"
#include "fglab/full_group.hpp"
#include "fglab/schreier.hpp"
#include "oracles.hpp"

using namespace fglab;

namespace {

FullGroupElement::ActionPtr odometer() {
  static const auto ptr = std::make_shared<const ActionSystem>(builtin_action("odometer"));
  return ptr;
}

FullGroupElement swap_pairs() { return make_element(odometer(), {{"0", {"t"}}, {"1", {"t^-1"}}}); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an fglab::Error");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("pair swap is valid and pairs 2k with 2k+1") {
  const FullGroupElement phi = swap_pairs();
  CHECK(phi.depth() == 1);
  for (long long k = -100; k <= 100; ++k) {
    const long long expect = (k % 2 == 0) ? k + 1 : k - 1;
    CHECK(oracle::point_int(apply_element(phi, oracle::int_point(k))) == expect);
  }
  CHECK(apply_element(phi, canonical_point("", "0")) == canonical_point("1", "0"));
  CHECK(apply_element(phi, canonical_point("1", "0")) == canonical_point("", "0"));

  // Bijectivity on level-3 words by brute force.
  std::set<Bits> images;
  for (const auto& w : all_words(3)) images.insert(apply_element(phi, canonical_point(w, "0")).prefix(3));
  CHECK(images.size() == 8);
}

TEST_CASE("element validation") {
  CHECK(kind_of([] { make_element(odometer(), {{"0", {"t"}}, {"01", {"t"}}}); }) == ErrorKind::NotAPartition);
  CHECK(kind_of([] { make_element(odometer(), {{"0", {"t"}}}); }) == ErrorKind::NotAPartition);
  CHECK(kind_of([] { make_element(odometer(), {{"0", {"t"}}, {"1", {}}}); }) == ErrorKind::NotInvertible);
  CHECK(kind_of([] { make_element(odometer(), {{"", {"s"}}}); }) == ErrorKind::UnknownGenerator);

  const FullGroupElement id2 = make_element(odometer(), {{"0", {}}, {"1", {}}});
  CHECK(is_identity(id2));
  CHECK(equivalent(id2, identity_element(odometer())));
  CHECK(!is_identity(swap_pairs()));
}

TEST_CASE("identity acts trivially") {
  std::mt19937_64 rng(1);
  const FullGroupElement id = identity_element(odometer());
  for (int i = 0; i < 100; ++i) {
    const BoundaryPoint x = random_point(rng);
    CHECK(apply_element(id, x) == x);
  }
  CHECK(displacement_bound(id) == 0);
}

TEST_CASE("composition and inversion") {
  std::mt19937_64 rng(2);
  const FullGroupElement t = word_element(odometer(), {"t"});
  const FullGroupElement tt = compose(t, t);
  for (long long k = -50; k <= 50; ++k) CHECK(oracle::point_int(apply_element(tt, oracle::int_point(k))) == k + 2);
  CHECK(equivalent(invert(t), word_element(odometer(), {"t^-1"})));

  const FullGroupElement s = swap_pairs();
  CHECK(is_identity(compose(s, s)));
  CHECK(equivalent(invert(s), s));
  CHECK(is_identity(invert(identity_element(odometer()))));

  for (int i = 0; i < 50; ++i) {
    const FullGroupElement phi = random_element(odometer(), rng, 3, 3);
    const FullGroupElement psi = random_element(odometer(), rng, 3, 3);
    CHECK(is_identity(compose(phi, invert(phi))));
    const FullGroupElement pp = compose(phi, psi);
    for (int j = 0; j < 20; ++j) {
      const BoundaryPoint x = random_point(rng);
      CHECK(apply_element(pp, x) == apply_element(phi, apply_element(psi, x)));
      CHECK(apply_element(invert(phi), apply_element(phi, x)) == x);
    }
  }
}

TEST_CASE("depth cap") {
  const FullGroupElement deep = make_element(
      odometer(), {{"000", {"t"}}, {"100", {"t^-1"}}, {"010", {}}, {"110", {}}, {"001", {}}, {"101", {}},
                   {"011", {}}, {"111", {}}});
  CHECK(kind_of([&] { compose(deep, deep, 2); }) == ErrorKind::DepthCap);
  CHECK_NOTHROW(compose(deep, deep));
}

TEST_CASE("displacement bound") {
  CHECK(displacement_bound(swap_pairs()) == 1);
  const FullGroupElement four = make_element(odometer(), {{"0", {"t", "t", "t", "t"}}, {"1", {"t^-1", "t^-1", "t^-1", "t^-1"}}});
  CHECK(displacement_bound(four) == 4);
  const SchreierBall ball = build_ball(*odometer(), 40);
  const DistanceTable dist(ball.graph);
  for (Vertex v = 0; v < ball.size(); ++v) {
    if (ball.graph.dist(v) + 4 > ball.radius) continue;
    const auto w = ball.find(apply_element(four, ball.points[v]));
    REQUIRE(w);
    CHECK(dist(v, *w) <= 4);
    CHECK(dist(v, *w) == 4);
  }
}

TEST_CASE("refinement keeps the action") {
  std::mt19937_64 rng(4);
  const FullGroupElement s = swap_pairs();
  const auto fine = refine_to_depth(s, 3);
  CHECK(fine.size() == 8);
  const FullGroupElement same = make_element(odometer(), fine);
  CHECK(equivalent(same, s));
  for (int i = 0; i < 200; ++i) {
    const BoundaryPoint x = random_point(rng);
    CHECK(apply_element(same, x) == apply_element(s, x));
  }
}

TEST_CASE("equal on a ball and random points means equal") {
  std::mt19937_64 rng(5);
  const SchreierBall ball = build_ball(*odometer(), 12);
  for (int i = 0; i < 30; ++i) {
    const FullGroupElement phi = random_element(odometer(), rng, 2, 2);
    const FullGroupElement psi = random_element(odometer(), rng, 2, 2);
    bool agree = true;
    for (const auto& x : ball.points) agree = agree && apply_element(phi, x) == apply_element(psi, x);
    for (int j = 0; j < 200 && agree; ++j) {
      const BoundaryPoint x = random_point(rng);
      agree = apply_element(phi, x) == apply_element(psi, x);
    }
    CHECK(agree == equivalent(phi, psi));
  }
}

TEST_CASE("random elements respect their bounds") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const FullGroupElement phi = random_element(odometer(), rng, 3, 3);
    CHECK(phi.depth() <= 3);
    CHECK(displacement_bound(phi) <= 3);
  }
}
