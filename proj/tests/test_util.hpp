#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/dm.hpp"
#include "popmatch/oracle.hpp"
#include "popmatch/verifier.hpp"

namespace testutil {

using namespace popmatch;

// Instance where every post is a single tie; post count inferred from ids.
inline Instance make_tie_instance(int num_posts, std::vector<std::vector<PostId>> pref) {
  Instance inst;
  inst.num_applicants = static_cast<int>(pref.size());
  inst.num_posts = num_posts;
  inst.pref = std::move(pref);
  inst.policy.assign(num_posts, PostPolicy::SingleTie);
  inst.strict_order.resize(num_posts);
  inst.finalize();
  return inst;
}

// Turns one post strict with the given ranking.
inline Instance with_strict(Instance inst, PostId b, std::vector<ApplicantId> order) {
  inst.policy[b] = PostPolicy::Strict;
  inst.strict_order[b] = std::move(order);
  inst.finalize();
  return inst;
}

inline Matching make_matching(int num_applicants,
                              const std::vector<std::pair<ApplicantId, PostId>>& pairs) {
  Matching m(num_applicants);
  for (auto [a, b] : pairs) m.post_of[a] = b;
  return m;
}

// Margin by definition: best vote difference any enumerated rival achieves.
inline int brute_margin(const Instance& inst, const Matching& m,
                        const std::vector<Matching>& all) {
  int best = 0;  // the empty rival never wins, but m itself ties at 0
  for (const Matching& rival : all) {
    auto [for_rival, for_m] = score(inst, rival, m);
    best = std::max(best, for_rival - for_m);
  }
  return best;
}

inline bool contains_matching(const std::vector<Matching>& set, const Matching& m) {
  return std::find(set.begin(), set.end(), m) != set.end();
}

// Applicant-proposing deferred acceptance. Requires every post strict; the
// result is stable, hence popular in the all-strict model: a rival matching's
// extra happiness always traces to an applicant-post pair that both prefer
// each other over their partners, which stability rules out.
inline Matching deferred_acceptance(const Instance& inst) {
  for (PostId b = 0; b < inst.num_posts; ++b)
    if (inst.policy[b] != PostPolicy::Strict)
      throw std::invalid_argument("deferred acceptance needs strict posts");
  Matching m(inst.num_applicants);
  std::vector<ApplicantId> holder(inst.num_posts, kUnmatched);
  std::vector<size_t> next(inst.num_applicants, 0);
  std::vector<ApplicantId> free_stack;
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) free_stack.push_back(a);
  while (!free_stack.empty()) {
    ApplicantId a = free_stack.back();
    if (next[a] >= inst.pref[a].size()) {
      free_stack.pop_back();  // exhausted every post; stays unmatched
      continue;
    }
    PostId b = inst.pref[a][next[a]++];
    ApplicantId current = holder[b];
    if (current == kUnmatched) {
      holder[b] = a;
      m.post_of[a] = b;
      free_stack.pop_back();
    } else if (inst.post_rank(b, a) < inst.post_rank(b, current)) {
      holder[b] = a;
      m.post_of[a] = b;
      m.post_of[current] = kUnmatched;
      free_stack.pop_back();
      free_stack.push_back(current);
    }
  }
  return m;
}

// Seeded bipartite graph with each edge drawn independently.
inline BipartiteGraph random_graph(std::mt19937_64& rng, int n_left, int n_right,
                                   double density) {
  BipartiteGraph g(n_left, n_right);
  for (int l = 0; l < n_left; ++l)
    for (int r = 0; r < n_right; ++r)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < density) g.add_edge(l, r);
  return g;
}

}  // namespace testutil
