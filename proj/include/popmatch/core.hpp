#pragma once

#include <climits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace popmatch {

using ApplicantId = int;
using PostId = int;

// Partner value meaning "not matched to any real post/applicant".
inline constexpr int kUnmatched = -1;

// Rank value meaning "no such post exists" (e.g. every neighbor is a top post).
inline constexpr int kInfiniteRank = INT_MAX;

enum class PostPolicy {
  SingleTie,  // indifferent between all neighbors, prefers matched to unmatched
  Strict,     // ranks its neighbors strictly, prefers matched to unmatched
};

struct ParseError : std::runtime_error {
  int line;  // 1-based; 0 when not tied to a specific line
  ParseError(int line_, const std::string& message)
      : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + message
                                     : message),
        line(line_) {}
};

// Input violates a structural rule of the model (e.g. a strict post where the
// single-tie model is required, or a matching that is not a matching).
struct ModelViolation : std::runtime_error {
  explicit ModelViolation(const std::string& message) : std::runtime_error(message) {}
};

// A size guard on an exhaustive routine was exceeded.
struct GuardExceeded : std::runtime_error {
  explicit GuardExceeded(const std::string& message) : std::runtime_error(message) {}
};

struct Instance {
  int num_applicants = 0;
  int num_posts = 0;

  // pref[a] = a's neighbors in strictly decreasing preference (rank 1 first).
  std::vector<std::vector<PostId>> pref;

  // policy[b], and for Strict posts the full ranking of b's neighbors
  // (rank 1 first). SingleTie posts keep strict_order[b] empty; their
  // neighborhood is derived from the applicant lists.
  std::vector<PostPolicy> policy;
  std::vector<std::vector<ApplicantId>> strict_order;

  // Optional display names (not part of the value; absent = "a<i>" / "b<j>").
  std::vector<std::string> applicant_names;
  std::vector<std::string> post_names;

  // Derived by finalize():
  std::vector<std::vector<ApplicantId>> post_nbrs;  // ascending applicant ids
  std::vector<std::vector<int>> rank_of;       // [a][b] -> 1-based rank, 0 = no edge
  std::vector<std::vector<int>> post_rank_of;  // [b][a] -> 1-based rank, 0 = n/a

  // Validates all invariants and builds the derived tables. Throws
  // ModelViolation on any violation.
  void finalize();

  bool has_edge(ApplicantId a, PostId b) const { return rank_of[a][b] != 0; }
  // 1-based rank of b in a's list; throws std::invalid_argument if no edge.
  int rank(ApplicantId a, PostId b) const;
  // 1-based rank of a in strict post b's list; throws if b is not Strict.
  int post_rank(PostId b, ApplicantId a) const;

  int num_edges() const;

  std::string applicant_name(ApplicantId a) const;
  std::string post_name(PostId b) const;

  // Structural equality; display names are ignored.
  friend bool operator==(const Instance& lhs, const Instance& rhs) {
    return lhs.num_applicants == rhs.num_applicants && lhs.num_posts == rhs.num_posts &&
           lhs.pref == rhs.pref && lhs.policy == rhs.policy &&
           lhs.strict_order == rhs.strict_order;
  }
};

struct Matching {
  // post_of[a] = real post matched to a, or kUnmatched.
  std::vector<PostId> post_of;

  Matching() = default;
  explicit Matching(int num_applicants) : post_of(num_applicants, kUnmatched) {}

  bool is_matched(ApplicantId a) const { return post_of[a] != kUnmatched; }
  int size() const;  // number of matched pairs

  // Inverse map: applicant_of[b] = applicant matched to b, or kUnmatched.
  std::vector<ApplicantId> applicant_of(int num_posts) const;

  friend bool operator==(const Matching& lhs, const Matching& rhs) {
    return lhs.post_of == rhs.post_of;
  }
};

// Throws ModelViolation unless m is a matching of inst: in-range ids,
// every pair an edge, no post used twice.
void validate_matching(const Instance& inst, const Matching& m);

// --- derived preference quantities ---

// a's first-choice post.
PostId f_post(const Instance& inst, ApplicantId a);

// The set of first-choice posts, as a membership mask over posts.
std::vector<bool> f_set_mask(const Instance& inst);
// Same set as a sorted id list.
std::vector<PostId> f_set(const Instance& inst);

// 1-based rank of a's most preferred post outside the first-choice set,
// kInfiniteRank when every neighbor of a is a first-choice post.
int r_rank(const Instance& inst, ApplicantId a);

// --- votes (Definition of popularity) ---
//
// vote_*(…, p, q) = +1 if the voter strictly prefers partner p to partner q,
// -1 for the reverse, 0 on indifference. p and q are kUnmatched or a neighbor
// of the voter; any matched partner beats kUnmatched.
int vote_applicant(const Instance& inst, ApplicantId a, PostId p, PostId q);
int vote_post(const Instance& inst, PostId b, ApplicantId p, ApplicantId q);

// --- text I/O ---

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Matching parse_matching(const Instance& inst, std::string_view text);
std::string serialize_matching(const Matching& m);

}  // namespace popmatch
