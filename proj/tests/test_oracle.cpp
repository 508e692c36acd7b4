#include <vector>

#include "doctest.h"
#include "popmatch/gen.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/verifier.hpp"
#include "test_util.hpp"

using namespace popmatch;

TEST_CASE("enumeration counts on hand-counted instances") {
  // one edge: the empty matching and the edge itself
  CHECK(all_matchings(testutil::make_tie_instance(1, {{0}})).size() == 2);

  // complete 2x2: empty + 4 singletons + 2 perfect
  CHECK(all_matchings(testutil::make_tie_instance(2, {{0, 1}, {0, 1}})).size() == 7);

  // fig1_top_left: 1 empty + 7 singletons + 10 pairs + 2 triples
  CHECK(all_matchings(fixture("fig1_top_left")).size() == 20);
}

TEST_CASE("enumeration starts from the empty matching and never repeats") {
  Instance inst = fixture("fig1_top_left");
  std::vector<Matching> all = all_matchings(inst);
  CHECK(all.front() == Matching(3));
  for (size_t i = 0; i < all.size(); ++i) {
    validate_matching(inst, all[i]);
    for (size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(all[i] == all[j]);
  }
}

TEST_CASE("size guard trips on either side and can be overridden") {
  std::vector<std::vector<PostId>> wide(9, std::vector<PostId>{0});
  Instance many_applicants = testutil::make_tie_instance(1, wide);
  CHECK_THROWS_AS(all_matchings(many_applicants), GuardExceeded);
  CHECK(all_matchings(many_applicants, true).size() == 10);

  std::vector<PostId> long_list;
  for (PostId b = 0; b < 9; ++b) long_list.push_back(b);
  Instance many_posts = testutil::make_tie_instance(9, {long_list});
  CHECK_THROWS_AS(popular_set(many_posts), GuardExceeded);
  CHECK(all_matchings(many_posts, true).size() == 10);

  // 8x8 is within the guard
  CHECK_NOTHROW(all_matchings(testutil::make_tie_instance(
      8, std::vector<std::vector<PostId>>(8, std::vector<PostId>{0}))));
}

TEST_CASE("popular sets of the four fixtures") {
  CHECK(popular_set(fixture("fig1_bottom_left")).empty());

  std::vector<Matching> top = popular_set(fixture("fig1_top_left"));
  CHECK(testutil::contains_matching(
      top, testutil::make_matching(3, {{0, 0}, {1, 1}, {2, 2}})));

  std::vector<Matching> right = popular_set(fixture("fig1_right"));
  Matching red = testutil::make_matching(5, {{0, 0}, {1, 1}, {2, 2}, {3, 4}, {4, 3}});
  Matching green = testutil::make_matching(5, {{0, 1}, {1, 0}, {2, 2}, {3, 3}, {4, 4}});
  Matching mix = testutil::make_matching(5, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
  CHECK(testutil::contains_matching(right, red));
  CHECK(testutil::contains_matching(right, green));
  CHECK_FALSE(testutil::contains_matching(right, mix));
}

TEST_CASE("popular set equals the quadratic definition on small instances") {
  for (const char* name : {"fig1_top_left", "fig1_middle"}) {
    Instance inst = fixture(name);
    std::vector<Matching> all = all_matchings(inst);
    std::vector<Matching> by_definition;
    for (const Matching& m : all) {
      bool beaten = false;
      for (const Matching& rival : all) {
        auto [for_rival, for_m] = score(inst, rival, m);
        beaten |= for_rival > for_m;
      }
      if (!beaten) by_definition.push_back(m);
    }
    CHECK(popular_set(inst) == by_definition);
  }
}

TEST_CASE("popular set agrees with the margin verifier on random instances") {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 30; ++trial) {
    int num_applicants = 1 + static_cast<int>(rng() % 4);
    int num_posts = 1 + static_cast<int>(rng() % 4);
    double density = 0.5 + 0.5 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    if (density * num_posts < 1.0) density = 1.0;
    Instance inst = random_instance(rng(), num_applicants, num_posts, density, 0.5);
    std::vector<Matching> popular = popular_set(inst);
    for (const Matching& m : all_matchings(inst))
      CHECK(testutil::contains_matching(popular, m) == is_popular(inst, m));
  }
}
