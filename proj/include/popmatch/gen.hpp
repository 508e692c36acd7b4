#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch {

// Names accepted by fixture().
std::vector<std::string> fixture_names();

// Small hand-built instances used throughout the tests and docs:
//   fig1_top_left     3 applicants, 3 posts; two applicants share a 2-post
//                     list, the third lists all three
//   fig1_bottom_left  3 applicants with identical 3-post lists (admits no
//                     popular matching)
//   fig1_middle       4 applicants, 4 posts, mixed list lengths
//   fig1_right        5 applicants, 6 posts, two disjoint post groups joined
//                     by one cross edge
// Throws std::invalid_argument on an unknown name.
Instance fixture(const std::string& name);

// The chain family exercising the solver's demotion loop: 2n+1 applicants
// a_0, a_1, a'_1, ..., a_n, a'_n and 2n+2 posts f_0..f_n, s_0..s_n with
// 5n+2 edges. a_0: f_0 > s_0; a_i: f_i > f_{i-1} > s_i; a'_i: f_i > s_i.
// Ids: a_0 = 0, a_i = 2i-1, a'_i = 2i; f_i = i, s_i = n+1+i. Requires n >= 1.
Instance tight_family(int n);

// Seed-deterministic random instance. Every applicant lists a seeded random
// permutation prefix of the posts; prefix lengths are binomial(num_posts,
// density) draws raised to at least 1, so density 1 lists every post. Each
// post is a single tie with probability tie_fraction, otherwise strict with
// a seeded random ranking of its neighbors. Throws std::invalid_argument
// when a parameter is out of range or density * num_posts < 1 (too low to
// give every applicant a neighbor).
Instance random_instance(std::uint64_t seed, int num_applicants, int num_posts,
                         double density, double tie_fraction);

}  // namespace popmatch
