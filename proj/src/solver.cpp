#include "popmatch/solver.hpp"

#include <algorithm>
#include <stdexcept>

namespace popmatch {

std::vector<PostId> Partition::posts_in(PostSet s) const {
  std::vector<PostId> posts;
  for (PostId b = 0; b < static_cast<int>(post_set.size()); ++b)
    if (post_set[b] == s) posts.push_back(b);
  return posts;
}

BipartiteGraph HelperGraph::graph(bool include_z_edges, bool include_dummies) const {
  BipartiteGraph g(num_applicants, num_posts + (include_dummies ? num_applicants : 0));
  for (const HelperEdge& e : edges) {
    switch (e.kind) {
      case HEdgeKind::ZEdge:
        if (include_z_edges) g.add_edge(e.applicant, e.post);
        break;
      case HEdgeKind::Dummy:
        if (include_dummies) g.add_edge(e.applicant, num_posts + e.post);
        break;
      default:
        g.add_edge(e.applicant, e.post);
    }
  }
  return g;
}

std::vector<std::pair<ApplicantId, PostId>> HelperGraph::real_edge_set() const {
  std::vector<std::pair<ApplicantId, PostId>> pairs;
  for (const HelperEdge& e : edges)
    if (e.kind != HEdgeKind::Dummy) pairs.emplace_back(e.applicant, e.post);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

bool HelperGraph::has_real_edge(ApplicantId a, PostId b) const {
  for (const HelperEdge& e : edges)
    if (e.kind != HEdgeKind::Dummy && e.applicant == a && e.post == b) return true;
  return false;
}

namespace {

struct LoopState {
  const Instance& inst;
  std::vector<PostId> fpost;          // per applicant: first choice
  std::vector<int> rrank;             // per applicant: rank of best non-top-set post
  std::vector<PostSet> label;         // per real post
  std::vector<char> in_nbr_z;         // per applicant: adjacent to some Z post
  std::vector<int> eligible_fans;     // per post: first-choice fans outside nbr(Z)
  SolveTrace trace;

  // Edges of the current iteration's graph, rebuilt every round.
  std::vector<HelperEdge> loop_edges;

  explicit LoopState(const Instance& inst_) : inst(inst_) {
    int nA = inst.num_applicants, nB = inst.num_posts;
    fpost.resize(nA);
    rrank.resize(nA);
    std::vector<bool> top_mask = f_set_mask(inst);
    label.assign(nB, PostSet::Y);
    for (PostId b = 0; b < nB; ++b)
      if (top_mask[b]) label[b] = PostSet::X;
    eligible_fans.assign(nB, 0);
    for (ApplicantId a = 0; a < nA; ++a) {
      fpost[a] = f_post(inst, a);
      ++eligible_fans[fpost[a]];
      rrank[a] = kInfiniteRank;
      for (size_t i = 0; i < inst.pref[a].size(); ++i)
        if (!top_mask[inst.pref[a][i]]) {
          rrank[a] = static_cast<int>(i) + 1;
          break;
        }
    }
    in_nbr_z.assign(nA, 0);
  }

  void run() {
    int nA = inst.num_applicants, nB = inst.num_posts;
    while (true) {
      IterationRecord record;

      // Step 2: a first-choice post with no eligible fan left would be
      // isolated after step 1, so it drops out of X before step 3 runs.
      for (PostId b = 0; b < nB; ++b) {
        ++trace.work;
        if (label[b] == PostSet::X && eligible_fans[b] == 0) {
          label[b] = PostSet::Y;
          record.x_to_y.push_back(b);
        }
      }

      // Steps 1 and 3: first-choice edges into X for applicants away from Z,
      // then for every applicant its most preferred Y post if it ranks at
      // least as well as the applicant's best post outside the top set.
      loop_edges.clear();
      for (ApplicantId a = 0; a < nA; ++a) {
        ++trace.work;
        if (!in_nbr_z[a] && label[fpost[a]] == PostSet::X)
          loop_edges.push_back({a, fpost[a], HEdgeKind::Top});
      }
      for (ApplicantId a = 0; a < nA; ++a) {
        const auto& list = inst.pref[a];
        for (size_t i = 0; i < list.size(); ++i) {
          ++trace.work;
          if (label[list[i]] != PostSet::Y) continue;
          if (static_cast<int>(i) + 1 <= rrank[a])
            loop_edges.push_back({a, list[i], HEdgeKind::YEdge});
          break;  // later list entries are worse; the best Y post decides
        }
      }

      // Step 4: find the posts of Y that some maximum matching leaves
      // exposed (the even ones) and demote them all.
      BipartiteGraph h(nA, nB);
      for (const HelperEdge& e : loop_edges) h.add_edge(e.applicant, e.post);
      BipMatching matching = max_matching_left_deg2(h, &trace.work);
      DmClassification labels = classify(h, matching, &trace.work);
      for (PostId b = 0; b < nB; ++b) {
        ++trace.work;
        if (label[b] == PostSet::Y && labels.right[b] == DmLabel::Even)
          record.y_to_z.push_back(b);
      }
      for (PostId b : record.y_to_z) {
        label[b] = PostSet::Z;
        if (eligible_fans[b] != 0)
          throw std::logic_error("post with live first-choice edges became even");
        for (ApplicantId a : inst.post_nbrs[b]) {
          ++trace.work;
          if (!in_nbr_z[a]) {
            in_nbr_z[a] = 1;
            --eligible_fans[fpost[a]];
          }
        }
      }

      bool done = record.y_to_z.empty();
      trace.iterations.push_back(std::move(record));
      if (done) break;
    }
  }
};

}  // namespace

BuildResult build_helper(const Instance& inst) {
  for (PostId b = 0; b < inst.num_posts; ++b)
    if (inst.policy[b] != PostPolicy::SingleTie)
      throw ModelViolation("post " + std::to_string(b) +
                           " has a strict list; the solver handles the single-tie model only");

  LoopState state(inst);
  state.run();

  BuildResult result;
  result.partition.post_set = state.label;
  result.trace = std::move(state.trace);

  HelperGraph& helper = result.helper;
  helper.num_applicants = inst.num_applicants;
  helper.num_posts = inst.num_posts;
  helper.edges = std::move(state.loop_edges);  // graph of the final iteration

  // Post-loop phase: applicants adjacent to Z reach for their most preferred
  // post there.
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    ++result.trace.work;
    if (!state.in_nbr_z[a]) continue;
    for (PostId b : inst.pref[a]) {
      ++result.trace.work;
      if (state.label[b] == PostSet::Z) {
        helper.edges.push_back({a, b, HEdgeKind::ZEdge});
        break;
      }
    }
  }

  // Final phase: applicants whose whole neighborhood sits in X fall back on a
  // private last-resort post; those posts live in Y from here on. (Such an
  // applicant's neighbors are all first-choice posts that were never demoted,
  // so this is exactly the r_a = infinity population with everything in X.)
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    ++result.trace.work;
    if (state.rrank[a] == kInfiniteRank) result.partition.dummy_owners.push_back(a);
    bool all_in_x = true;
    for (PostId b : inst.pref[a]) {
      ++result.trace.work;
      all_in_x &= (state.label[b] == PostSet::X);
    }
    if (all_in_x) helper.edges.push_back({a, a, HEdgeKind::Dummy});
  }

  // Structural checks the construction promises.
  {
    std::vector<bool> top_mask = f_set_mask(inst);
    std::vector<int> degree(inst.num_applicants, 0);
    for (const HelperEdge& e : helper.edges) {
      ++degree[e.applicant];
      if (e.kind != HEdgeKind::Dummy && e.kind != HEdgeKind::ZEdge &&
          state.in_nbr_z[e.applicant] && state.label[e.post] == PostSet::X)
        throw std::logic_error("applicant adjacent to Z touches X in the helper graph");
      if (e.kind == HEdgeKind::ZEdge && state.label[e.post] != PostSet::Z)
        throw std::logic_error("mislabeled Z edge");
    }
    for (int d : degree)
      if (d > 2) throw std::logic_error("applicant degree exceeds 2 in the helper graph");
    for (PostId b = 0; b < inst.num_posts; ++b)
      if (state.label[b] == PostSet::Z && top_mask[b])
        throw std::logic_error("a first-choice post reached Z");
  }

  return result;
}

SolveResult solve(const Instance& inst) {
  BuildResult built = build_helper(inst);
  SolveResult result{std::nullopt, std::move(built.partition), std::move(built.helper),
                     std::move(built.trace)};

  // Maximum matching on the subgraph spanned by the real posts of X and Y.
  // The loop's exit condition makes every such post odd or unreachable there,
  // so this matching covers them all.
  BipartiteGraph restricted = result.helper.graph(false, false);
  BipMatching matching = max_matching_left_deg2(restricted, &result.trace.work);
  for (PostId b = 0; b < inst.num_posts; ++b)
    if (result.partition.post_set[b] != PostSet::Z && matching.left_of[b] == kUnmatched)
      throw std::logic_error("a post of X or Y escaped the restricted matching");

  // Augmenting with the Z and last-resort edges only ever matches more
  // vertices, so the X/Y posts stay covered while every applicant that can be
  // covered becomes covered.
  BipartiteGraph full = result.helper.graph(true, true);
  matching.left_of.resize(full.n_right, kUnmatched);
  extend_to_maximum(full, matching, &result.trace.work);

  if (matching.size != inst.num_applicants) return result;  // no popular matching

  Matching projected(inst.num_applicants);
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    int right = matching.right_of[a];
    if (right < inst.num_posts) projected.post_of[a] = right;  // dummies project away
  }
  validate_matching(inst, projected);
  result.matching = std::move(projected);
  return result;
}

}  // namespace popmatch
