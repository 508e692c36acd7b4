#pragma once

#include <functional>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch {

// Limits below which exhaustive enumeration is allowed without an override.
inline constexpr int kOracleGuard = 8;

// Calls `visit` once per matching of inst, the empty matching included.
// Throws GuardExceeded when the instance exceeds kOracleGuard on either side,
// unless guard_override is set.
void enumerate_matchings(const Instance& inst,
                         const std::function<void(const Matching&)>& visit,
                         bool guard_override = false);

// Every matching of inst, in the enumeration order of enumerate_matchings.
std::vector<Matching> all_matchings(const Instance& inst, bool guard_override = false);

// The popular matchings of inst, found by running the head-to-head election
// between every pair of matchings (definition-level, no reweighting tricks).
std::vector<Matching> popular_set(const Instance& inst, bool guard_override = false);

}  // namespace popmatch
