#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "popmatch/core.hpp"
#include "popmatch/dm.hpp"

namespace popmatch {

enum class PostSet { X, Y, Z };

// The evolving three-way split of real posts, plus the dummy last-resort
// posts added in the final phase (dummies belong to Y from then on).
struct Partition {
  std::vector<PostSet> post_set;          // per real post
  std::vector<ApplicantId> dummy_owners;  // applicants whose dummy post joined Y

  std::vector<PostId> posts_in(PostSet s) const;
  std::vector<PostId> x() const { return posts_in(PostSet::X); }
  std::vector<PostId> y() const { return posts_in(PostSet::Y); }
  std::vector<PostId> z() const { return posts_in(PostSet::Z); }
};

enum class HEdgeKind {
  Top,    // applicant's first-choice edge into X
  YEdge,  // most preferred post in Y, at rank r_a or better
  ZEdge,  // most preferred post in Z (applicants adjacent to Z only)
  Dummy,  // last-resort edge for applicants whose whole neighborhood is in X
};

struct HelperEdge {
  ApplicantId applicant;
  PostId post;  // real post id; for Dummy edges the owner's dummy post (= applicant id)
  HEdgeKind kind;
};

// The helper graph: a degree-<=2-per-applicant subgraph over A and the real
// posts plus one private dummy post per applicant that received a Dummy edge.
// In the bipartite view, applicant a's dummy post has right id num_posts + a.
struct HelperGraph {
  int num_applicants = 0;
  int num_posts = 0;  // real posts
  std::vector<HelperEdge> edges;

  // Bipartite view. Rights 0..num_posts-1 are real posts; when
  // `include_dummies` the right side is extended by one dummy per applicant.
  BipartiteGraph graph(bool include_z_edges, bool include_dummies) const;

  // Sorted (applicant, real post) pairs; Dummy edges excluded.
  std::vector<std::pair<ApplicantId, PostId>> real_edge_set() const;
  bool has_real_edge(ApplicantId a, PostId b) const;
};

struct IterationRecord {
  std::vector<PostId> x_to_y;  // posts demoted in this iteration's step 2
  std::vector<PostId> y_to_z;  // posts demoted in this iteration's step 4
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;  // one record per loop-body execution
  long long work = 0;                       // counted elementary operations
};

inline int iteration_count(const SolveTrace& trace) {
  return static_cast<int>(trace.iterations.size());
}

struct BuildResult {
  HelperGraph helper;
  Partition partition;
  SolveTrace trace;
};

// Runs the partition-refinement loop and the two post-processing phases.
// Requires every post to have the SingleTie policy (ModelViolation otherwise).
BuildResult build_helper(const Instance& inst);

struct SolveResult {
  // The popular matching (projected to real posts; dummy-matched applicants
  // are reported unmatched), or nullopt when none exists.
  std::optional<Matching> matching;
  Partition partition;
  HelperGraph helper;
  SolveTrace trace;
};

// Decides existence of a popular matching and constructs one when possible:
// a matching covering every applicant in the helper graph, chosen to match
// all real posts in X and Y.
SolveResult solve(const Instance& inst);

}  // namespace popmatch
