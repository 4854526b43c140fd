#include <catch_amalgamated.hpp>

#include "fairb/error.hpp"
#include "fairb/sets.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace fairb;
using fairb::testing::Mask;

TEST_CASE("set algebra agrees with bit masks") {
  fairb::testing::Rng rng(11);
  for (std::size_t n = 1; n <= 9; ++n) {
    const StateSpace u("u", n);
    for (int k = 0; k < 50; ++k) {
      const auto a = fairb::testing::random_set(u, rng);
      const auto b = fairb::testing::random_set(u, rng);
      const Mask ma = fairb::testing::to_mask(a), mb = fairb::testing::to_mask(b);
      const Mask all = (Mask{1} << n) - 1;
      CHECK(fairb::testing::to_mask(a | b) == (ma | mb));
      CHECK(fairb::testing::to_mask(a & b) == (ma & mb));
      CHECK(fairb::testing::to_mask(a - b) == (ma & ~mb));
      CHECK(fairb::testing::to_mask(~a) == (all & ~ma));
      CHECK(a.is_subset_of(b) == ((ma & ~mb) == 0));
      CHECK(a.intersects(b) == ((ma & mb) != 0));
      CHECK(a.count() == static_cast<std::size_t>(__builtin_popcount(ma)));
    }
  }
}

TEST_CASE("complement respects the universe across word boundaries") {
  for (std::size_t n : {63u, 64u, 65u, 130u}) {
    const StateSpace u("big", n);
    const auto e = StateSet::empty(u);
    CHECK((~e).is_full());
    CHECK((~e).count() == n);
    CHECK((~~e).is_empty());
    const auto one = StateSet::of(u, {n - 1});
    CHECK((~one).count() == n - 1);
    CHECK(!(~one).contains(n - 1));
  }
}

TEST_CASE("de Morgan and absorption laws") {
  fairb::testing::Rng rng(3);
  const StateSpace u("u", 70);
  for (int k = 0; k < 100; ++k) {
    const auto a = fairb::testing::random_set(u, rng), b = fairb::testing::random_set(u, rng);
    CHECK(~(a | b) == (~a & ~b));
    CHECK(~(a & b) == (~a | ~b));
    CHECK((a | (a & b)) == a);
    CHECK((a & (a | b)) == a);
    CHECK((a - b) == (a & ~b));
  }
}

TEST_CASE("members, first and builder") {
  const StateSpace u("u", 10);
  StateSetBuilder b(u);
  b.insert(7).insert(2).insert(7).erase(5);
  const auto s = std::move(b).build();
  CHECK(s.members() == std::vector<std::size_t>{2, 7});
  CHECK(s.first() == 2u);
  CHECK(StateSet::empty(u).first() == std::nullopt);
  CHECK(s.with(5).count() == 3);
  CHECK(s.without(2) == StateSet::of(u, {7}));
  CHECK(s.to_string() == "{2,7}");
}

TEST_CASE("mixing spaces is rejected") {
  const StateSpace u("u", 4), v("v", 4);
  const auto a = StateSet::full(u), b = StateSet::full(v);
  CHECK_THROWS_AS(a | b, SpaceMismatch);
  CHECK_THROWS_AS(a.is_subset_of(b), SpaceMismatch);
  // Same id and size is the same space.
  CHECK_NOTHROW(a | StateSet::full(StateSpace("u", 4)));
}

TEST_CASE("labelled spaces render labels") {
  const StateSpace u("ctr", std::vector<std::string>{"x=0", "x=1", "x=2"});
  CHECK(u.size() == 3);
  CHECK(u.label(2) == "x=2");
  CHECK(StateSet::of(u, {0, 2}).to_string().find("x=2") != std::string::npos);
}

TEST_CASE("relation image and inverse image") {
  const StateSpace u("u", 4);
  const std::vector<StateRelation::Pair> pairs{{0, 1}, {0, 2}, {1, 3}, {3, 3}};
  const StateRelation r(u, u, pairs);
  CHECK(r.image(StateSet::of(u, {0})) == StateSet::of(u, {1, 2}));
  CHECK(r.inverse_image(StateSet::of(u, {3})) == StateSet::of(u, {1, 3}));
  CHECK(r.domain() == StateSet::of(u, {0, 1, 3}));
  CHECK(!r.is_total());
  CHECK(r.first_orphan() == 2u);
  CHECK(r.inverse().contains(2, 0));
  CHECK(r.pair_count() == 4);
  CHECK(StateRelation::identity(u).is_total());
}

TEST_CASE("relation image agrees with a pairwise definition") {
  fairb::testing::Rng rng(5);
  const StateSpace u("u", 7);
  for (int k = 0; k < 50; ++k) {
    const auto r = fairb::testing::random_relation(u, rng);
    const auto a = fairb::testing::random_set(u, rng);
    StateSetBuilder img(u), pre(u);
    for (auto [s, t] : r.pairs()) {
      if (a.contains(s)) img.insert(t);
      if (a.contains(t)) pre.insert(s);
    }
    CHECK(r.image(a) == std::move(img).build());
    CHECK(r.inverse_image(a) == std::move(pre).build());
  }
}
