#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "popmatch/core.hpp"

namespace popmatch {

struct Literal {
  int var = 0;  // 0-based variable index
  bool negated = false;

  friend bool operator==(const Literal& lhs, const Literal& rhs) {
    return lhs.var == rhs.var && lhs.negated == rhs.negated;
  }
};

// A CNF formula with exactly 3 literals per clause over distinct variables,
// where every variable occurs exactly twice unnegated and twice negated
// (hence 3m = 4n). Construct through validate_cnf.
struct Cnf22e3 {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

// Checks the shape rules and returns the validated formula. Throws
// ModelViolation whose message lists every violation found (clause arity,
// repeated variable in a clause, each off-count variable with its counts).
Cnf22e3 validate_cnf(int num_vars, const std::vector<std::vector<Literal>>& clauses);

// Vertex ids of the instance produced by build_instance, plus the
// interconnection map. Variables j and clauses i are 0-based; slots t in
// {1,2} and k in {1,2,3} keep their customary 1-based meaning.
struct GadgetIndex {
  int num_vars = 0;
  int num_clauses = 0;

  // interconnect[i][k-1] = the variable-gadget applicant that clause i's
  // k-th occurrence post points to (slot 1 for unnegated, 2 for negated).
  std::vector<std::array<ApplicantId, 3>> interconnect;

  ApplicantId a(int j, int t) const { return 2 * j + (t - 1); }
  PostId b(int j, int t) const { return 2 * j + (t - 1); }
  ApplicantId x(int i, int k) const { return 2 * num_vars + 3 * i + (k - 1); }
  PostId c(int i) const { return 2 * num_vars + i; }
  PostId y(int i, int k) const { return 2 * num_vars + num_clauses + 3 * i + (k - 1); }

  int num_applicants() const { return 2 * num_vars + 3 * num_clauses; }
  int num_posts() const { return 2 * num_vars + 4 * num_clauses; }
};

// Builds the matching instance encoding the formula: a 4-cycle gadget per
// variable (posts held as single ties), a clause gadget per clause (one tie
// post over the clause's three x-applicants, three strict length-2 posts),
// and one interconnecting edge per literal occurrence.
std::pair<Instance, GadgetIndex> build_instance(const Cnf22e3& cnf);

// The canonical popular matching for a satisfying assignment: variable
// gadgets matched per the assignment, and in each clause the lowest-numbered
// true literal donates its occurrence post (left unmatched) while its
// x-applicant takes the clause post. Throws ModelViolation when the
// assignment does not satisfy the formula.
Matching matching_from_assignment(const Cnf22e3& cnf, const GadgetIndex& index,
                                  const std::vector<bool>& assignment);

// Reads a satisfying assignment back out of a structurally-sound matching.
// Throws ModelViolation when the matching uses an interconnecting edge,
// leaves a variable gadget imperfect, or mismatches a clause gadget — any of
// which certifies the matching is not popular.
std::vector<bool> assignment_from_matching(const Cnf22e3& cnf, const GadgetIndex& index,
                                           const Matching& m);

struct DecideOptions {
  // Skip candidates whose clause choices are visibly wrong (each clause's
  // donated post must point at a variable-gadget applicant matched to its
  // gadget's first post). The filter is exact, so survivors are verified
  // only as a cross-check.
  bool structural_prune = true;
  // Upper bound on the 2^n * 3^m candidate space.
  long long guard = 1'000'000;
  // Verify every candidate with the full verifier instead of pruning.
  bool full_verify = false;
  // Scan the whole space and count popular candidates instead of returning
  // at the first hit.
  bool count_all = false;
};

struct DecideResult {
  std::optional<Matching> matching;  // empty = no popular matching exists
  long long candidates_examined = 0;
  long long verifier_calls = 0;
  long long popular_candidates = 0;  // counted fully only under count_all
};

// Decides popular-matching existence on a reduced instance by scanning the
// candidate shapes allowed for popular matchings: one of two perfect
// matchings per variable gadget, one donated post per clause gadget.
DecideResult decide_reduced(const Instance& inst, const GadgetIndex& index,
                            const DecideOptions& opts = {});

// Exhaustive satisfiability check, for cross-validation. Guarded at 20
// variables.
bool satisfiable_bruteforce(const Cnf22e3& cnf);

// Seed-deterministic valid formula on num_vars variables (must be a positive
// multiple of 3): the 4*num_vars occurrence tokens are shuffled into clauses
// until every clause holds three distinct variables.
Cnf22e3 random_cnf(std::uint64_t seed, int num_vars);

// DIMACS CNF text ("p cnf <vars> <clauses>" header, zero-terminated clause
// lines, "c" comments). parse_dimacs validates the (2,2)-E3 shape rules.
Cnf22e3 parse_dimacs(std::string_view text);
std::string to_dimacs(const Cnf22e3& cnf);

// Sidecar listing for a reduced instance: one "applicant <id> <name>" or
// "post <id> <name>" line per vertex, names like a_3_1, c_2, y_2_3 (1-based).
std::string index_to_text(const GadgetIndex& index);

}  // namespace popmatch
