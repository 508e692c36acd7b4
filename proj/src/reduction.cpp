#include "popmatch/reduction.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <stdexcept>

#include "popmatch/verifier.hpp"

namespace popmatch {

namespace {

bool literal_true(const Literal& lit, std::uint64_t assignment_bits) {
  return ((assignment_bits >> lit.var) & 1) != static_cast<std::uint64_t>(lit.negated);
}

bool literal_true(const Literal& lit, const std::vector<bool>& assignment) {
  return assignment[lit.var] != lit.negated;
}

}  // namespace

Cnf22e3 validate_cnf(int num_vars, const std::vector<std::vector<Literal>>& clauses) {
  std::vector<std::string> violations;
  if (num_vars < 1) violations.push_back("number of variables must be positive");

  Cnf22e3 out;
  out.num_vars = num_vars;
  std::vector<int> pos_count(std::max(num_vars, 0), 0);
  std::vector<int> neg_count(std::max(num_vars, 0), 0);
  for (size_t i = 0; i < clauses.size(); ++i) {
    const std::vector<Literal>& clause = clauses[i];
    std::string where = "clause " + std::to_string(i + 1);
    if (clause.size() != 3) {
      violations.push_back(where + " has " + std::to_string(clause.size()) +
                           " literals, want 3");
      continue;
    }
    bool in_range = true;
    for (const Literal& lit : clause)
      if (lit.var < 0 || lit.var >= num_vars) {
        violations.push_back(where + " uses variable " + std::to_string(lit.var + 1) +
                             ", outside 1.." + std::to_string(num_vars));
        in_range = false;
      }
    if (!in_range) continue;
    if (clause[0].var == clause[1].var || clause[0].var == clause[2].var ||
        clause[1].var == clause[2].var)
      violations.push_back(where + " repeats a variable");
    for (const Literal& lit : clause) ++(lit.negated ? neg_count : pos_count)[lit.var];
    out.clauses.push_back({clause[0], clause[1], clause[2]});
  }
  for (int j = 0; j < num_vars; ++j)
    if (pos_count[j] != 2 || neg_count[j] != 2)
      violations.push_back("variable " + std::to_string(j + 1) + " occurs " +
                           std::to_string(pos_count[j]) + " times unnegated and " +
                           std::to_string(neg_count[j]) + " times negated, want 2 and 2");

  if (!violations.empty()) {
    std::string message = violations[0];
    for (size_t i = 1; i < violations.size(); ++i) message += "; " + violations[i];
    throw ModelViolation(message);
  }
  return out;
}

std::pair<Instance, GadgetIndex> build_instance(const Cnf22e3& cnf) {
  // Revalidate: the construction below assumes exactly the validated shape.
  {
    std::vector<std::vector<Literal>> raw;
    for (const auto& clause : cnf.clauses)
      raw.push_back({clause[0], clause[1], clause[2]});
    validate_cnf(cnf.num_vars, raw);
  }

  int n = cnf.num_vars, m = cnf.num_clauses();
  GadgetIndex index;
  index.num_vars = n;
  index.num_clauses = m;
  index.interconnect.assign(m, {kUnmatched, kUnmatched, kUnmatched});

  // occ[slot][j] = occurrence posts of variable j with that sign, in clause
  // order (a variable occurs at most once per clause, so this is total).
  std::vector<std::vector<PostId>> occ[2];
  occ[0].assign(n, {});
  occ[1].assign(n, {});
  for (int i = 0; i < m; ++i)
    for (int k = 1; k <= 3; ++k) {
      const Literal& lit = cnf.clauses[i][k - 1];
      occ[lit.negated][lit.var].push_back(index.y(i, k));
      index.interconnect[i][k - 1] = index.a(lit.var, lit.negated ? 2 : 1);
    }

  Instance inst;
  inst.num_applicants = index.num_applicants();
  inst.num_posts = index.num_posts();
  inst.pref.resize(inst.num_applicants);
  inst.policy.assign(inst.num_posts, PostPolicy::SingleTie);
  inst.strict_order.resize(inst.num_posts);
  inst.applicant_names.resize(inst.num_applicants);
  inst.post_names.resize(inst.num_posts);

  for (int j = 0; j < n; ++j)
    for (int t = 1; t <= 2; ++t) {
      const std::vector<PostId>& mine = occ[t - 1][j];
      inst.pref[index.a(j, t)] = {index.b(j, 1), mine[0], mine[1], index.b(j, 2)};
      std::string suffix = "_" + std::to_string(j + 1) + "_" + std::to_string(t);
      inst.applicant_names[index.a(j, t)] = "a" + suffix;
      inst.post_names[index.b(j, t)] = "b" + suffix;
    }
  for (int i = 0; i < m; ++i) {
    inst.post_names[index.c(i)] = "c_" + std::to_string(i + 1);
    for (int k = 1; k <= 3; ++k) {
      inst.pref[index.x(i, k)] = {index.c(i), index.y(i, k)};
      inst.policy[index.y(i, k)] = PostPolicy::Strict;
      inst.strict_order[index.y(i, k)] = {index.x(i, k), index.interconnect[i][k - 1]};
      std::string suffix = "_" + std::to_string(i + 1) + "_" + std::to_string(k);
      inst.applicant_names[index.x(i, k)] = "x" + suffix;
      inst.post_names[index.y(i, k)] = "y" + suffix;
    }
  }

  inst.finalize();
  return {std::move(inst), std::move(index)};
}

namespace {

// Gadget edges for one assignment, written into m.
void apply_variable_edges(const GadgetIndex& index, std::uint64_t assignment_bits,
                          Matching& m) {
  for (int j = 0; j < index.num_vars; ++j) {
    bool value = (assignment_bits >> j) & 1;
    m.post_of[index.a(j, 1)] = index.b(j, value ? 1 : 2);
    m.post_of[index.a(j, 2)] = index.b(j, value ? 2 : 1);
  }
}

// Clause edges when clause i donates its k-th occurrence post.
void apply_clause_edges(const GadgetIndex& index, int i, int k, Matching& m) {
  for (int l = 1; l <= 3; ++l)
    m.post_of[index.x(i, l)] = (l == k) ? index.c(i) : index.y(i, l);
}

std::uint64_t to_bits(const std::vector<bool>& assignment) {
  std::uint64_t bits = 0;
  for (size_t j = 0; j < assignment.size(); ++j)
    bits |= static_cast<std::uint64_t>(assignment[j]) << j;
  return bits;
}

}  // namespace

Matching matching_from_assignment(const Cnf22e3& cnf, const GadgetIndex& index,
                                  const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != cnf.num_vars)
    throw ModelViolation("assignment has " + std::to_string(assignment.size()) +
                         " values for " + std::to_string(cnf.num_vars) + " variables");
  Matching m(index.num_applicants());
  apply_variable_edges(index, to_bits(assignment), m);
  for (int i = 0; i < index.num_clauses; ++i) {
    int chosen = 0;
    for (int k = 1; k <= 3 && chosen == 0; ++k)
      if (literal_true(cnf.clauses[i][k - 1], assignment)) chosen = k;
    if (chosen == 0)
      throw ModelViolation("assignment does not satisfy clause " + std::to_string(i + 1));
    apply_clause_edges(index, i, chosen, m);
  }
  return m;
}

std::vector<bool> assignment_from_matching(const Cnf22e3& cnf, const GadgetIndex& index,
                                           const Matching& m) {
  if (static_cast<int>(m.post_of.size()) != index.num_applicants())
    throw ModelViolation("matching size does not fit the reduced instance");
  for (int i = 0; i < index.num_clauses; ++i)
    for (int k = 1; k <= 3; ++k)
      if (m.post_of[index.interconnect[i][k - 1]] == index.y(i, k))
        throw ModelViolation("matching uses the interconnecting edge of clause " +
                             std::to_string(i + 1) + ", occurrence " + std::to_string(k));

  std::vector<bool> assignment(cnf.num_vars);
  for (int j = 0; j < cnf.num_vars; ++j) {
    PostId first = m.post_of[index.a(j, 1)];
    PostId second = m.post_of[index.a(j, 2)];
    if (first == index.b(j, 1) && second == index.b(j, 2))
      assignment[j] = true;
    else if (first == index.b(j, 2) && second == index.b(j, 1))
      assignment[j] = false;
    else
      throw ModelViolation("variable gadget " + std::to_string(j + 1) +
                           " is not perfectly matched");
  }
  for (int i = 0; i < index.num_clauses; ++i) {
    int donated = 0;
    for (int k = 1; k <= 3; ++k) {
      PostId partner = m.post_of[index.x(i, k)];
      if (partner == index.c(i)) {
        if (donated != 0)
          throw ModelViolation("clause gadget " + std::to_string(i + 1) +
                               " matches two applicants to its clause post");
        donated = k;
      } else if (partner != index.y(i, k)) {
        throw ModelViolation("clause gadget " + std::to_string(i + 1) +
                             " is not matched in a recognized shape");
      }
    }
    if (donated == 0)
      throw ModelViolation("clause gadget " + std::to_string(i + 1) +
                           " leaves its clause post unmatched");
    ApplicantId target = index.interconnect[i][donated - 1];
    if (m.post_of[target] != index.b(target / 2, 1))
      throw ModelViolation("the donated post of clause " + std::to_string(i + 1) +
                           " points at an applicant away from its gadget's first post");
    if (!literal_true(cnf.clauses[i][donated - 1], assignment))
      throw std::logic_error("extracted assignment misses a checked clause");
  }
  return assignment;
}

DecideResult decide_reduced(const Instance& inst, const GadgetIndex& index,
                            const DecideOptions& opts) {
  if (inst.num_applicants != index.num_applicants() ||
      inst.num_posts != index.num_posts())
    throw ModelViolation("instance does not match the gadget index");

  int n = index.num_vars, m = index.num_clauses;
  long long total = 1;
  for (int j = 0; j < n; ++j) {
    total *= 2;
    if (total > opts.guard)
      throw GuardExceeded("candidate space exceeds " + std::to_string(opts.guard));
  }
  for (int i = 0; i < m; ++i) {
    total *= 3;
    if (total > opts.guard)
      throw GuardExceeded("candidate space exceeds " + std::to_string(opts.guard));
  }

  DecideResult result;
  Matching candidate(index.num_applicants());
  std::vector<int> donated(m, 1);  // clause i donates occurrence donated[i]
  for (std::uint64_t sigma = 0; sigma < (std::uint64_t{1} << n); ++sigma) {
    apply_variable_edges(index, sigma, candidate);
    std::fill(donated.begin(), donated.end(), 1);
    while (true) {
      ++result.candidates_examined;
      bool plausible = true;
      if (opts.structural_prune && !opts.full_verify) {
        // A donated post must point back into a gadget whose first post took
        // its slot-1 applicant when the literal is unnegated (slot 2 when
        // negated) — i.e. the chosen literal must hold under sigma.
        for (int i = 0; i < m && plausible; ++i)
          plausible = literal_true(/*lit=*/{index.interconnect[i][donated[i] - 1] / 2,
                                            index.interconnect[i][donated[i] - 1] % 2 == 1},
                                   sigma);
      }
      if (plausible) {
        for (int i = 0; i < m; ++i) apply_clause_edges(index, i, donated[i], candidate);
        ++result.verifier_calls;
        if (is_popular(inst, candidate)) {
          ++result.popular_candidates;
          if (!result.matching) result.matching = candidate;
          if (!opts.count_all) return result;
        }
      }

      // Advance the donation odometer, last clause fastest.
      int digit = m - 1;
      while (digit >= 0 && donated[digit] == 3) donated[digit--] = 1;
      if (digit < 0) break;
      ++donated[digit];
    }
  }
  return result;
}

bool satisfiable_bruteforce(const Cnf22e3& cnf) {
  if (cnf.num_vars > 20)
    throw GuardExceeded("brute-force satisfiability is guarded at 20 variables");
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    bool ok = true;
    for (const auto& clause : cnf.clauses) {
      if (!literal_true(clause[0], bits) && !literal_true(clause[1], bits) &&
          !literal_true(clause[2], bits)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

Cnf22e3 random_cnf(std::uint64_t seed, int num_vars) {
  if (num_vars < 3 || num_vars % 3 != 0)
    throw std::invalid_argument("num_vars must be a positive multiple of 3");
  std::mt19937_64 rng(seed);
  std::vector<Literal> tokens;
  for (int j = 0; j < num_vars; ++j) {
    tokens.push_back({j, false});
    tokens.push_back({j, false});
    tokens.push_back({j, true});
    tokens.push_back({j, true});
  }
  int m = 4 * num_vars / 3;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    for (int i = static_cast<int>(tokens.size()) - 1; i > 0; --i)
      std::swap(tokens[i], tokens[rng() % static_cast<std::uint64_t>(i + 1)]);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      ok = tokens[3 * i].var != tokens[3 * i + 1].var &&
           tokens[3 * i].var != tokens[3 * i + 2].var &&
           tokens[3 * i + 1].var != tokens[3 * i + 2].var;
    if (!ok) continue;
    std::vector<std::vector<Literal>> clauses(m);
    for (int i = 0; i < m; ++i)
      clauses[i] = {tokens[3 * i], tokens[3 * i + 1], tokens[3 * i + 2]};
    return validate_cnf(num_vars, clauses);
  }
  throw std::logic_error("token shuffling failed to produce distinct-variable clauses");
}

Cnf22e3 parse_dimacs(std::string_view text) {
  struct Token {
    int value;
    int line;
  };
  std::vector<Token> tokens;
  bool header_seen = false;
  int declared_vars = 0, declared_clauses = 0;
  int line_number = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_number;

    size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string_view::npos) continue;
    if (line[start] == 'c') continue;
    if (line[start] == 'p') {
      if (header_seen) throw ParseError(line_number, "duplicate header");
      int fields = std::sscanf(std::string(line.substr(start)).c_str(), "p cnf %d %d",
                               &declared_vars, &declared_clauses);
      if (fields != 2) throw ParseError(line_number, "malformed header, want 'p cnf <vars> <clauses>'");
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError(line_number, "clause data before 'p cnf' header");
    size_t cursor = start;
    while (cursor < line.size()) {
      while (cursor < line.size() && (line[cursor] == ' ' || line[cursor] == '\t' ||
                                      line[cursor] == '\r'))
        ++cursor;
      if (cursor >= line.size()) break;
      int value = 0;
      auto [next, err] = std::from_chars(line.data() + cursor, line.data() + line.size(), value);
      if (err != std::errc())
        throw ParseError(line_number, "expected an integer literal");
      cursor = next - line.data();
      tokens.push_back({value, line_number});
    }
  }
  if (!header_seen) throw ParseError(0, "missing 'p cnf' header");

  std::vector<std::vector<Literal>> clauses;
  std::vector<Literal> current;
  for (const Token& token : tokens) {
    if (token.value == 0) {
      clauses.push_back(current);
      current.clear();
      continue;
    }
    int var = std::abs(token.value) - 1;
    if (var >= declared_vars)
      throw ParseError(token.line, "literal " + std::to_string(token.value) +
                                       " exceeds the declared variable count");
    current.push_back({var, token.value < 0});
  }
  if (!current.empty()) throw ParseError(0, "last clause is not 0-terminated");
  if (static_cast<int>(clauses.size()) != declared_clauses)
    throw ParseError(0, "found " + std::to_string(clauses.size()) + " clauses, header declares " +
                            std::to_string(declared_clauses));
  try {
    return validate_cnf(declared_vars, clauses);
  } catch (const ModelViolation& e) {
    throw ParseError(0, e.what());
  }
}

std::string to_dimacs(const Cnf22e3& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.num_vars) + " " +
                    std::to_string(cnf.num_clauses()) + "\n";
  for (const auto& clause : cnf.clauses) {
    for (const Literal& lit : clause)
      out += std::to_string(lit.negated ? -(lit.var + 1) : lit.var + 1) + " ";
    out += "0\n";
  }
  return out;
}

std::string index_to_text(const GadgetIndex& index) {
  std::vector<std::string> applicant(index.num_applicants());
  std::vector<std::string> post(index.num_posts());
  for (int j = 0; j < index.num_vars; ++j)
    for (int t = 1; t <= 2; ++t) {
      std::string suffix = "_" + std::to_string(j + 1) + "_" + std::to_string(t);
      applicant[index.a(j, t)] = "a" + suffix;
      post[index.b(j, t)] = "b" + suffix;
    }
  for (int i = 0; i < index.num_clauses; ++i) {
    post[index.c(i)] = "c_" + std::to_string(i + 1);
    for (int k = 1; k <= 3; ++k) {
      std::string suffix = "_" + std::to_string(i + 1) + "_" + std::to_string(k);
      applicant[index.x(i, k)] = "x" + suffix;
      post[index.y(i, k)] = "y" + suffix;
    }
  }
  std::string out;
  for (size_t id = 0; id < applicant.size(); ++id)
    out += "applicant " + std::to_string(id) + " " + applicant[id] + "\n";
  for (size_t id = 0; id < post.size(); ++id)
    out += "post " + std::to_string(id) + " " + post[id] + "\n";
  return out;
}

}  // namespace popmatch
