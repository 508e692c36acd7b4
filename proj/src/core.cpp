#include "popmatch/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace popmatch {

namespace {

// Dense rank tables cost num_applicants * num_posts ints.
constexpr long long kMaxDenseCells = 100'000'000;

std::string id_error(const char* what, long long value, long long limit) {
  std::ostringstream os;
  os << what << " " << value << " out of range [0, " << limit << ")";
  return os.str();
}

}  // namespace

void Instance::finalize() {
  if (num_applicants <= 0) throw ModelViolation("instance needs at least one applicant");
  if (num_posts <= 0) throw ModelViolation("instance needs at least one post");
  if (static_cast<long long>(num_applicants) * num_posts > kMaxDenseCells)
    throw GuardExceeded("instance too large for dense rank tables");
  if (static_cast<int>(pref.size()) != num_applicants)
    throw ModelViolation("preference table size differs from applicant count");
  if (static_cast<int>(policy.size()) != num_posts)
    throw ModelViolation("policy table size differs from post count");
  if (static_cast<int>(strict_order.size()) != num_posts)
    throw ModelViolation("strict order table size differs from post count");

  rank_of.assign(num_applicants, std::vector<int>(num_posts, 0));
  post_nbrs.assign(num_posts, {});
  for (ApplicantId a = 0; a < num_applicants; ++a) {
    if (pref[a].empty())
      throw ModelViolation("empty preference list for applicant " + std::to_string(a));
    for (size_t i = 0; i < pref[a].size(); ++i) {
      PostId b = pref[a][i];
      if (b < 0 || b >= num_posts)
        throw ModelViolation(id_error("post id", b, num_posts) + " in list of applicant " +
                             std::to_string(a));
      if (rank_of[a][b] != 0)
        throw ModelViolation("post " + std::to_string(b) +
                             " listed twice by applicant " + std::to_string(a));
      rank_of[a][b] = static_cast<int>(i) + 1;
      post_nbrs[b].push_back(a);
    }
  }

  post_rank_of.assign(num_posts, {});
  for (PostId b = 0; b < num_posts; ++b) {
    if (policy[b] == PostPolicy::SingleTie) {
      if (!strict_order[b].empty())
        throw ModelViolation("single-tie post " + std::to_string(b) +
                             " must not carry a ranking");
      continue;
    }
    // Strict list must be exactly the neighborhood implied by applicant lists.
    post_rank_of[b].assign(num_applicants, 0);
    for (size_t i = 0; i < strict_order[b].size(); ++i) {
      ApplicantId a = strict_order[b][i];
      if (a < 0 || a >= num_applicants)
        throw ModelViolation(id_error("applicant id", a, num_applicants) +
                             " in list of post " + std::to_string(b));
      if (post_rank_of[b][a] != 0)
        throw ModelViolation("applicant " + std::to_string(a) +
                             " listed twice by post " + std::to_string(b));
      if (rank_of[a][b] == 0)
        throw ModelViolation("post " + std::to_string(b) + " ranks applicant " +
                             std::to_string(a) + " who does not list it back");
      post_rank_of[b][a] = static_cast<int>(i) + 1;
    }
    if (strict_order[b].size() != post_nbrs[b].size())
      throw ModelViolation("post " + std::to_string(b) + " ranks " +
                           std::to_string(strict_order[b].size()) + " applicants but has " +
                           std::to_string(post_nbrs[b].size()) + " neighbors");
  }

  if (!applicant_names.empty() && static_cast<int>(applicant_names.size()) != num_applicants)
    throw ModelViolation("applicant name table has wrong size");
  if (!post_names.empty() && static_cast<int>(post_names.size()) != num_posts)
    throw ModelViolation("post name table has wrong size");
}

int Instance::rank(ApplicantId a, PostId b) const {
  if (a < 0 || a >= num_applicants || b < 0 || b >= num_posts || rank_of[a][b] == 0)
    throw std::invalid_argument("no edge between applicant " + std::to_string(a) +
                                " and post " + std::to_string(b));
  return rank_of[a][b];
}

int Instance::post_rank(PostId b, ApplicantId a) const {
  if (b < 0 || b >= num_posts || policy[b] != PostPolicy::Strict)
    throw std::invalid_argument("post " + std::to_string(b) + " has no strict ranking");
  if (a < 0 || a >= num_applicants || post_rank_of[b][a] == 0)
    throw std::invalid_argument("no edge between applicant " + std::to_string(a) +
                                " and post " + std::to_string(b));
  return post_rank_of[b][a];
}

int Instance::num_edges() const {
  int total = 0;
  for (const auto& list : pref) total += static_cast<int>(list.size());
  return total;
}

std::string Instance::applicant_name(ApplicantId a) const {
  if (!applicant_names.empty()) return applicant_names[a];
  return "a" + std::to_string(a);
}

std::string Instance::post_name(PostId b) const {
  if (!post_names.empty()) return post_names[b];
  return "b" + std::to_string(b);
}

int Matching::size() const {
  int n = 0;
  for (PostId b : post_of) n += (b != kUnmatched);
  return n;
}

std::vector<ApplicantId> Matching::applicant_of(int num_posts) const {
  std::vector<ApplicantId> inverse(num_posts, kUnmatched);
  for (ApplicantId a = 0; a < static_cast<int>(post_of.size()); ++a)
    if (post_of[a] != kUnmatched) inverse[post_of[a]] = a;
  return inverse;
}

void validate_matching(const Instance& inst, const Matching& m) {
  if (static_cast<int>(m.post_of.size()) != inst.num_applicants)
    throw ModelViolation("matching covers " + std::to_string(m.post_of.size()) +
                         " applicants, instance has " + std::to_string(inst.num_applicants));
  std::vector<bool> used(inst.num_posts, false);
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    PostId b = m.post_of[a];
    if (b == kUnmatched) continue;
    if (b < 0 || b >= inst.num_posts)
      throw ModelViolation(id_error("post id", b, inst.num_posts) + " for applicant " +
                           std::to_string(a));
    if (!inst.has_edge(a, b))
      throw ModelViolation("pair (" + std::to_string(a) + ", " + std::to_string(b) +
                           ") is not an edge");
    if (used[b])
      throw ModelViolation("post " + std::to_string(b) + " matched twice");
    used[b] = true;
  }
}

PostId f_post(const Instance& inst, ApplicantId a) { return inst.pref[a][0]; }

std::vector<bool> f_set_mask(const Instance& inst) {
  std::vector<bool> mask(inst.num_posts, false);
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) mask[f_post(inst, a)] = true;
  return mask;
}

std::vector<PostId> f_set(const Instance& inst) {
  std::vector<bool> mask = f_set_mask(inst);
  std::vector<PostId> posts;
  for (PostId b = 0; b < inst.num_posts; ++b)
    if (mask[b]) posts.push_back(b);
  return posts;
}

int r_rank(const Instance& inst, ApplicantId a) {
  std::vector<bool> mask = f_set_mask(inst);
  for (size_t i = 0; i < inst.pref[a].size(); ++i)
    if (!mask[inst.pref[a][i]]) return static_cast<int>(i) + 1;
  return kInfiniteRank;
}

int vote_applicant(const Instance& inst, ApplicantId a, PostId p, PostId q) {
  if (a < 0 || a >= inst.num_applicants)
    throw std::invalid_argument("applicant id out of range");
  // Effective rank: real partners by list rank, kUnmatched below everything.
  auto effective = [&](PostId b) {
    return b == kUnmatched ? kInfiniteRank : inst.rank(a, b);
  };
  int rp = effective(p), rq = effective(q);
  return rp < rq ? +1 : rp > rq ? -1 : 0;
}

int vote_post(const Instance& inst, PostId b, ApplicantId p, ApplicantId q) {
  if (b < 0 || b >= inst.num_posts) throw std::invalid_argument("post id out of range");
  auto effective = [&](ApplicantId a) {
    if (a == kUnmatched) return kInfiniteRank;
    if (a < 0 || a >= inst.num_applicants || !inst.has_edge(a, b))
      throw std::invalid_argument("applicant " + std::to_string(a) +
                                  " is not a neighbor of post " + std::to_string(b));
    // A single-tie post holds all neighbors in one indifference class.
    return inst.policy[b] == PostPolicy::SingleTie ? 1 : inst.post_rank_of[b][a];
  };
  int rp = effective(p), rq = effective(q);
  return rp < rq ? +1 : rp > rq ? -1 : 0;
}

// --- text I/O ---

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;

  bool next_line(std::string_view& out) {
    while (pos < text.size()) {
      size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + (end < text.size() ? 1 : 0);
      size_t hash = raw.find('#');
      if (hash != std::string_view::npos) raw = raw.substr(0, hash);
      size_t first = raw.find_first_not_of(" \t\r");
      if (first == std::string_view::npos) {
        ++line;
        continue;
      }
      size_t last = raw.find_last_not_of(" \t\r");
      out = raw.substr(first, last - first + 1);
      return true;
    }
    return false;
  }
};

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) tokens.push_back(s.substr(start, i - start));
  }
  return tokens;
}

int parse_int(std::string_view token, int line, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" +
                               std::string(token) + "'");
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Cursor cursor{text};
  std::string_view line;

  auto header = [&](const char* keyword) {
    if (!cursor.next_line(line))
      throw ParseError(cursor.line, std::string("expected '") + keyword + " <count>'");
    auto tokens = split_tokens(line);
    if (tokens.size() != 2 || tokens[0] != keyword)
      throw ParseError(cursor.line, std::string("expected '") + keyword + " <count>', got '" +
                                        std::string(line) + "'");
    int value = parse_int(tokens[1], cursor.line, "a count");
    if (value <= 0)
      throw ParseError(cursor.line, std::string(keyword) + " count must be positive");
    ++cursor.line;
    return value;
  };

  Instance inst;
  inst.num_applicants = header("applicants");
  inst.num_posts = header("posts");
  inst.pref.assign(inst.num_applicants, {});
  inst.policy.assign(inst.num_posts, PostPolicy::SingleTie);
  inst.strict_order.assign(inst.num_posts, {});

  std::vector<bool> applicant_seen(inst.num_applicants, false);
  std::vector<bool> post_seen(inst.num_posts, false);

  while (cursor.next_line(line)) {
    int at = cursor.line;
    ++cursor.line;
    auto tokens = split_tokens(line);
    if (tokens.size() < 3 || (tokens[0] != "a" && tokens[0] != "b") || tokens[2] != ":")
      throw ParseError(at, "expected 'a <id> : <posts...>' or 'b <id> : tie|strict ...', got '" +
                               std::string(line) + "'");
    bool is_applicant = tokens[0] == "a";
    int id = parse_int(tokens[1], at, "an id");
    if (is_applicant) {
      if (id < 0 || id >= inst.num_applicants)
        throw ParseError(at, id_error("applicant id", id, inst.num_applicants));
      if (applicant_seen[id])
        throw ParseError(at, "duplicate line for applicant " + std::to_string(id));
      applicant_seen[id] = true;
      if (tokens.size() == 3)
        throw ParseError(at, "empty preference list for applicant " + std::to_string(id));
      for (size_t i = 3; i < tokens.size(); ++i)
        inst.pref[id].push_back(parse_int(tokens[i], at, "a post id"));
    } else {
      if (id < 0 || id >= inst.num_posts)
        throw ParseError(at, id_error("post id", id, inst.num_posts));
      if (post_seen[id]) throw ParseError(at, "duplicate line for post " + std::to_string(id));
      post_seen[id] = true;
      if (tokens[3] == "tie") {
        if (tokens.size() != 4) throw ParseError(at, "'tie' takes no arguments");
      } else if (tokens[3] == "strict") {
        inst.policy[id] = PostPolicy::Strict;
        for (size_t i = 4; i < tokens.size(); ++i)
          inst.strict_order[id].push_back(parse_int(tokens[i], at, "an applicant id"));
      } else {
        throw ParseError(at, "expected 'tie' or 'strict', got '" + std::string(tokens[3]) + "'");
      }
    }
  }

  for (ApplicantId a = 0; a < inst.num_applicants; ++a)
    if (!applicant_seen[a])
      throw ParseError(0, "missing preference line for applicant " + std::to_string(a));

  try {
    inst.finalize();
  } catch (const ModelViolation& violation) {
    throw ParseError(0, violation.what());
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream os;
  os << "applicants " << inst.num_applicants << "\n";
  os << "posts " << inst.num_posts << "\n";
  for (ApplicantId a = 0; a < inst.num_applicants; ++a) {
    os << "a " << a << " :";
    for (PostId b : inst.pref[a]) os << " " << b;
    os << "\n";
  }
  for (PostId b = 0; b < inst.num_posts; ++b) {
    if (inst.policy[b] != PostPolicy::Strict) continue;  // tie is the default
    os << "b " << b << " : strict";
    for (ApplicantId a : inst.strict_order[b]) os << " " << a;
    os << "\n";
  }
  return os.str();
}

Matching parse_matching(const Instance& inst, std::string_view text) {
  Cursor cursor{text};
  std::string_view line;
  Matching m(inst.num_applicants);
  std::vector<bool> seen(inst.num_applicants, false);
  while (cursor.next_line(line)) {
    int at = cursor.line;
    ++cursor.line;
    auto tokens = split_tokens(line);
    if (tokens.size() != 3 || tokens[0] != "a")
      throw ParseError(at, "expected 'a <id> <post|->', got '" + std::string(line) + "'");
    int a = parse_int(tokens[1], at, "an applicant id");
    if (a < 0 || a >= inst.num_applicants)
      throw ParseError(at, id_error("applicant id", a, inst.num_applicants));
    if (seen[a]) throw ParseError(at, "duplicate line for applicant " + std::to_string(a));
    seen[a] = true;
    if (tokens[2] != "-") m.post_of[a] = parse_int(tokens[2], at, "a post id or '-'");
  }
  try {
    validate_matching(inst, m);
  } catch (const ModelViolation& violation) {
    throw ParseError(0, violation.what());
  }
  return m;
}

std::string serialize_matching(const Matching& m) {
  std::ostringstream os;
  for (ApplicantId a = 0; a < static_cast<int>(m.post_of.size()); ++a) {
    os << "a " << a << " ";
    if (m.post_of[a] == kUnmatched)
      os << "-";
    else
      os << m.post_of[a];
    os << "\n";
  }
  return os.str();
}

}  // namespace popmatch
