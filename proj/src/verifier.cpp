#include "popmatch/verifier.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace popmatch {

int votes_preferring(const Instance& inst, const Matching& p, const Matching& q) {
  validate_matching(inst, p);
  validate_matching(inst, q);
  std::vector<ApplicantId> p_app = p.applicant_of(inst.num_posts);
  std::vector<ApplicantId> q_app = q.applicant_of(inst.num_posts);
  int votes = 0;
  for (ApplicantId a = 0; a < inst.num_applicants; ++a)
    votes += vote_applicant(inst, a, p.post_of[a], q.post_of[a]) == 1;
  for (PostId b = 0; b < inst.num_posts; ++b)
    votes += vote_post(inst, b, p_app[b], q_app[b]) == 1;
  return votes;
}

std::pair<int, int> score(const Instance& inst, const Matching& m1, const Matching& m2) {
  return {votes_preferring(inst, m1, m2), votes_preferring(inst, m2, m1)};
}

namespace {

constexpr long long kNegInf = std::numeric_limits<long long>::min() / 4;

// Margin via a max-weight matching. For a rival matching m' the election
// outcome decomposes vertex by vertex:
//
//   delta(m', m) = sum over edges (a,b) of m' of
//                      [ vote_a(b, m(a)) + vote_b(a, m(b)) ]
//                  - #{ vertices matched in m but not in m' }
//
// because a vertex unmatched in m' votes -1 exactly when m matches it. The
// negative term depends on which vertices m' covers, so it cannot be read off
// edge weights directly. Shift it into the edges: with u(v) = 1 if m matches
// v else 0,
//
//   w(a,b) = vote_a(b, m(a)) + vote_b(a, m(b)) + u(a) + u(b)
//
// turns the tally into  delta(m', m) = weight(m') - sum_v u(v), a constant
// shift of 2|m|. This shift is the single place margins could go wrong:
// every vertex's u must appear exactly once in the subtrahend and once per
// incident m'-edge, which holds because m' is a matching. Each endpoint
// contributes vote + u >= 0 (a vertex unmatched in m votes +1 for any real
// partner), so all weights are nonnegative and lie in {0,...,4}.
//
// The maximization runs by successive augmenting paths of maximum gain. The
// per-step gain is computed by Bellman-Ford-style relaxation over alternating
// paths; it never cycles because the current matching is maximum-weight for
// its cardinality, which rules out positive alternating cycles. Gains are
// non-increasing step to step (weight-by-cardinality is concave), so the
// first non-positive gain ends the search with a global maximum over
// matchings of every cardinality.
struct MaxWeightSearch {
  const Instance& inst;
  std::vector<std::vector<long long>> weight;  // aligned with inst.pref[a]
  std::vector<PostId> right_of;                // rival matching being grown
  std::vector<ApplicantId> left_of;
  std::vector<long long> dl, dr;               // best alternating-path gains
  std::vector<ApplicantId> parent;             // applicant that set dr[b]

  MaxWeightSearch(const Instance& inst_, const Matching& m) : inst(inst_) {
    std::vector<ApplicantId> m_app = m.applicant_of(inst.num_posts);
    weight.resize(inst.num_applicants);
    for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
      int u_a = m.post_of[a] != kUnmatched;
      weight[a].reserve(inst.pref[a].size());
      for (PostId b : inst.pref[a]) {
        int u_b = m_app[b] != kUnmatched;
        long long w = vote_applicant(inst, a, b, m.post_of[a]) +
                      vote_post(inst, b, a, m_app[b]) + u_a + u_b;
        if (w < 0 || w > 4) throw std::logic_error("edge weight out of range");
        weight[a].push_back(w);
      }
    }
    right_of.assign(inst.num_applicants, kUnmatched);
    left_of.assign(inst.num_posts, kUnmatched);
  }

  // One round of relaxations; returns whether anything improved.
  bool relax() {
    bool changed = false;
    for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
      if (dl[a] == kNegInf) continue;
      for (size_t i = 0; i < inst.pref[a].size(); ++i) {
        PostId b = inst.pref[a][i];
        if (b == right_of[a]) continue;  // forward steps use non-matching edges
        if (dl[a] + weight[a][i] > dr[b]) {
          dr[b] = dl[a] + weight[a][i];
          parent[b] = a;
          changed = true;
        }
      }
    }
    for (PostId b = 0; b < inst.num_posts; ++b) {
      ApplicantId a = left_of[b];
      if (a == kUnmatched || dr[b] == kNegInf) continue;
      size_t i = std::find(inst.pref[a].begin(), inst.pref[a].end(), b) - inst.pref[a].begin();
      if (dr[b] - weight[a][i] > dl[a]) {  // backward steps give the weight up
        dl[a] = dr[b] - weight[a][i];
        changed = true;
      }
    }
    return changed;
  }

  // Gain of the best augmenting path, or kNegInf if none reaches a free post.
  long long best_augmentation(PostId* end) {
    dl.assign(inst.num_applicants, kNegInf);
    dr.assign(inst.num_posts, kNegInf);
    parent.assign(inst.num_posts, kUnmatched);
    for (ApplicantId a = 0; a < inst.num_applicants; ++a)
      if (right_of[a] == kUnmatched) dl[a] = 0;
    int cap = inst.num_applicants + inst.num_posts + 2;
    int rounds = 0;
    while (relax())
      if (++rounds > cap)
        throw std::logic_error("alternating-path relaxation failed to settle");
    long long best = kNegInf;
    *end = kUnmatched;
    for (PostId b = 0; b < inst.num_posts; ++b)
      if (left_of[b] == kUnmatched && dr[b] > best) {
        best = dr[b];
        *end = b;
      }
    return best;
  }

  void flip_path(PostId end) {
    PostId b = end;
    while (true) {
      ApplicantId a = parent[b];
      PostId previous = right_of[a];
      right_of[a] = b;
      left_of[b] = a;
      if (previous == kUnmatched) return;
      b = previous;
    }
  }

  long long run() {
    long long total = 0;
    while (true) {
      PostId end;
      long long gain = best_augmentation(&end);
      if (end == kUnmatched || gain <= 0) return total;
      flip_path(end);
      total += gain;
    }
  }
};

}  // namespace

MarginReport margin(const Instance& inst, const Matching& m) {
  validate_matching(inst, m);
  MaxWeightSearch search(inst, m);
  long long best_weight = search.run();

  MarginReport report;
  report.margin = static_cast<int>(best_weight - 2 * m.size());
  report.witness.post_of = std::move(search.right_of);
  validate_matching(inst, report.witness);
  if (report.margin < 0) throw std::logic_error("margin came out negative");

  auto [for_witness, for_m] = score(inst, report.witness, m);
  if (for_witness - for_m != report.margin)
    throw std::logic_error("witness does not re-score to the computed margin");
  return report;
}

bool is_popular(const Instance& inst, const Matching& m) {
  return margin(inst, m).margin == 0;
}

}  // namespace popmatch
