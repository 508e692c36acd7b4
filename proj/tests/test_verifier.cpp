#include <random>
#include <vector>

#include "doctest.h"
#include "popmatch/gen.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/verifier.hpp"
#include "test_util.hpp"

using namespace popmatch;

namespace {

// The three matchings of interest on fig1_right: two popular ones and the
// mix-and-match of the pair, which loses an election despite being built
// from two winners.
Matching right_red() {
  return testutil::make_matching(5, {{0, 0}, {1, 1}, {2, 2}, {3, 4}, {4, 3}});
}
Matching right_green() {
  return testutil::make_matching(5, {{0, 1}, {1, 0}, {2, 2}, {3, 3}, {4, 4}});
}
Matching right_mix() {
  return testutil::make_matching(5, {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {4, 4}});
}

}  // namespace

TEST_CASE("score tallies both sides of the election") {
  Instance inst = fixture("fig1_right");
  // swapping the partners of posts 3 and 4 trades one applicant vote each
  // way while both single-tie posts abstain: a dead heat
  CHECK(score(inst, right_mix(), right_red()) == std::pair<int, int>(1, 1));
  CHECK(score(inst, right_red(), right_mix()) == std::pair<int, int>(1, 1));
  CHECK(votes_preferring(inst, right_mix(), right_red()) == 1);
  CHECK(votes_preferring(inst, right_red(), right_mix()) == 1);

  // everyone prefers being matched to not
  Matching empty(5);
  auto [for_red, for_empty] = score(inst, right_red(), empty);
  CHECK(for_red == 10);  // 5 applicants + 5 single-tie posts
  CHECK(for_empty == 0);
}

TEST_CASE("score validates its arguments") {
  Instance inst = fixture("fig1_top_left");
  Matching bad = testutil::make_matching(3, {{0, 2}});  // (0,2) is not an edge
  CHECK_THROWS_AS(score(inst, bad, Matching(3)), ModelViolation);
}

TEST_CASE("margins on the fig1_right trio") {
  Instance inst = fixture("fig1_right");
  CHECK(margin(inst, right_red()).margin == 0);
  CHECK(margin(inst, right_green()).margin == 0);
  CHECK(is_popular(inst, right_red()));
  CHECK(is_popular(inst, right_green()));

  MarginReport mix = margin(inst, right_mix());
  CHECK(mix.margin >= 1);
  CHECK_FALSE(is_popular(inst, right_mix()));
  // the witness actually wins by the reported margin
  auto [for_witness, for_mix] = score(inst, mix.witness, right_mix());
  CHECK(for_witness - for_mix == mix.margin);
  validate_matching(inst, mix.witness);
}

TEST_CASE("margin of the empty matching counts both chairs of each pair") {
  Instance inst = testutil::make_tie_instance(1, {{0}});
  MarginReport report = margin(inst, Matching(1));
  CHECK(report.margin == 2);  // the lone applicant and the lone post
  CHECK(report.witness == testutil::make_matching(1, {{0, 0}}));
}

TEST_CASE("margin agrees with exhaustive election on random mixed instances") {
  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 100; ++trial) {
    int num_applicants = 1 + static_cast<int>(rng() % 4);
    int num_posts = 1 + static_cast<int>(rng() % 4);
    double density = 0.4 + 0.6 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    if (density * num_posts < 1.0) density = 1.0;
    double tie_fraction = 0.5 * (trial % 3);  // 0, 0.5, 1 in rotation
    Instance inst = random_instance(rng(), num_applicants, num_posts, density,
                                    tie_fraction);
    std::vector<Matching> all = all_matchings(inst);
    for (const Matching& m : all) {
      MarginReport report = margin(inst, m);
      CHECK(report.margin == testutil::brute_margin(inst, m, all));
      auto [for_witness, for_m] = score(inst, report.witness, m);
      CHECK(for_witness - for_m == report.margin);
    }
  }
}

TEST_CASE("is_popular matches the enumerated popular set") {
  for (const char* name : {"fig1_top_left", "fig1_middle", "fig1_bottom_left"}) {
    Instance inst = fixture(name);
    std::vector<Matching> popular = popular_set(inst);
    for (const Matching& m : all_matchings(inst))
      CHECK(is_popular(inst, m) == testutil::contains_matching(popular, m));
  }
}

TEST_CASE("deferred acceptance output is always popular when posts rank strictly") {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 50; ++trial) {
    int num_applicants = 1 + static_cast<int>(rng() % 6);
    int num_posts = 1 + static_cast<int>(rng() % 6);
    double density = 0.4 + 0.6 * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    if (density * num_posts < 1.0) density = 1.0;
    Instance inst = random_instance(rng(), num_applicants, num_posts, density, 0.0);
    Matching stable = testutil::deferred_acceptance(inst);
    validate_matching(inst, stable);
    CHECK(margin(inst, stable).margin == 0);
  }
}
