#pragma once

#include <utility>

#include "popmatch/core.hpp"

namespace popmatch {

// Number of vertices (applicants and posts together) that strictly prefer
// their partner under `p` to their partner under `q`.
int votes_preferring(const Instance& inst, const Matching& p, const Matching& q);

// Head-to-head election tally: (votes for m1, votes for m2). m1 beats m2 when
// the first component is strictly larger.
std::pair<int, int> score(const Instance& inst, const Matching& m1, const Matching& m2);

struct MarginReport {
  // max over all matchings m' of (votes for m') - (votes for m). Always >= 0
  // because m' = m ties. Zero exactly when m is popular.
  int margin = 0;
  // A matching attaining the margin (equal to m-or-equivalent when margin 0).
  Matching witness;
};

// Computes the popularity margin of m together with a worst-case rival.
MarginReport margin(const Instance& inst, const Matching& m);

// True when no matching beats m in the head-to-head election.
bool is_popular(const Instance& inst, const Matching& m);

}  // namespace popmatch
