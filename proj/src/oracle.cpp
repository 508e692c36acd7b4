#include "popmatch/oracle.hpp"

#include <string>

#include "popmatch/verifier.hpp"

namespace popmatch {

namespace {

struct Enumerator {
  const Instance& inst;
  const std::function<void(const Matching&)>& visit;
  Matching current;
  std::vector<char> post_used;

  Enumerator(const Instance& inst_, const std::function<void(const Matching&)>& visit_)
      : inst(inst_), visit(visit_), current(inst_.num_applicants),
        post_used(inst_.num_posts, 0) {}

  void extend(ApplicantId a) {
    if (a == inst.num_applicants) {
      visit(current);
      return;
    }
    extend(a + 1);  // a stays unmatched
    for (PostId b : inst.pref[a]) {
      if (post_used[b]) continue;
      post_used[b] = 1;
      current.post_of[a] = b;
      extend(a + 1);
      current.post_of[a] = kUnmatched;
      post_used[b] = 0;
    }
  }
};

}  // namespace

void enumerate_matchings(const Instance& inst,
                         const std::function<void(const Matching&)>& visit,
                         bool guard_override) {
  if (!guard_override &&
      (inst.num_applicants > kOracleGuard || inst.num_posts > kOracleGuard))
    throw GuardExceeded("instance too large for exhaustive enumeration (" +
                        std::to_string(inst.num_applicants) + " applicants, " +
                        std::to_string(inst.num_posts) + " posts; guard " +
                        std::to_string(kOracleGuard) + " per side)");
  Enumerator e(inst, visit);
  e.extend(0);
}

std::vector<Matching> all_matchings(const Instance& inst, bool guard_override) {
  std::vector<Matching> out;
  enumerate_matchings(inst, [&](const Matching& m) { out.push_back(m); }, guard_override);
  return out;
}

std::vector<Matching> popular_set(const Instance& inst, bool guard_override) {
  std::vector<Matching> all = all_matchings(inst, guard_override);
  std::vector<std::vector<ApplicantId>> inverse;
  inverse.reserve(all.size());
  for (const Matching& m : all) inverse.push_back(m.applicant_of(inst.num_posts));

  // Vertices vote one matching against another exactly as in the popularity
  // definition; the tallies here skip only re-validation of the enumerated
  // matchings, not any part of the election.
  auto beats = [&](size_t p, size_t q) {
    int delta = 0;
    for (ApplicantId a = 0; a < inst.num_applicants; ++a)
      delta += vote_applicant(inst, a, all[p].post_of[a], all[q].post_of[a]);
    for (PostId b = 0; b < inst.num_posts; ++b)
      delta += vote_post(inst, b, inverse[p][b], inverse[q][b]);
    return delta > 0;
  };

  // A non-maximal matching is beaten outright by adding any free pair (both
  // new partners vote for the extension, nobody votes against), so only
  // maximal matchings need the full pairwise election.
  auto is_maximal = [&](size_t p) {
    for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
      if (all[p].post_of[a] != kUnmatched) continue;
      for (PostId b : inst.pref[a])
        if (inverse[p][b] == kUnmatched) return false;
    }
    return true;
  };

  std::vector<Matching> popular;
  for (size_t p = 0; p < all.size(); ++p) {
    if (!is_maximal(p)) continue;
    bool beaten = false;
    for (size_t q = 0; q < all.size() && !beaten; ++q) beaten = beats(q, p);
    if (!beaten) popular.push_back(all[p]);
  }
  return popular;
}

}  // namespace popmatch
