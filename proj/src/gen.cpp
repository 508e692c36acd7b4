#include "popmatch/gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace popmatch {

namespace {

Instance make(int num_applicants, int num_posts, std::vector<std::vector<PostId>> pref,
              std::vector<std::string> applicant_names, std::vector<std::string> post_names) {
  Instance inst;
  inst.num_applicants = num_applicants;
  inst.num_posts = num_posts;
  inst.pref = std::move(pref);
  inst.policy.assign(num_posts, PostPolicy::SingleTie);
  inst.strict_order.resize(num_posts);
  inst.applicant_names = std::move(applicant_names);
  inst.post_names = std::move(post_names);
  inst.finalize();
  return inst;
}

// The generators draw through these helpers only, so seeded output is a pure
// function of the seed on every platform (no distribution-object variance).
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_below(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
}

template <typename T>
void shuffle_ids(std::mt19937_64& rng, std::vector<T>& ids) {
  for (int i = static_cast<int>(ids.size()) - 1; i > 0; --i)
    std::swap(ids[i], ids[uniform_below(rng, i + 1)]);
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"fig1_top_left", "fig1_bottom_left", "fig1_middle", "fig1_right"};
}

Instance fixture(const std::string& name) {
  if (name == "fig1_top_left")
    return make(3, 3, {{0, 1}, {0, 1}, {0, 1, 2}}, {"a1", "a2", "a3"}, {"b1", "b2", "b3"});
  if (name == "fig1_bottom_left")
    return make(3, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, {"a1", "a2", "a3"},
                {"b1", "b2", "b3"});
  if (name == "fig1_middle")
    return make(4, 4, {{0, 3}, {1, 2}, {1, 2}, {1, 0, 2}}, {"a0", "a1", "a2", "a3"},
                {"b0", "b1", "b2", "b3"});
  if (name == "fig1_right")
    return make(5, 6, {{0, 1}, {0, 3, 1}, {0, 1, 2}, {3, 4, 5}, {3, 4}},
                {"a1", "a2", "a3", "x1", "x2"}, {"b1", "b2", "b3", "y1", "y2", "y3"});
  throw std::invalid_argument("unknown fixture: " + name);
}

Instance tight_family(int n) {
  if (n < 1) throw std::invalid_argument("tight_family requires n >= 1");
  auto f = [](int i) { return i; };
  auto s = [n](int i) { return n + 1 + i; };

  std::vector<std::vector<PostId>> pref(2 * n + 1);
  std::vector<std::string> applicant_names(2 * n + 1);
  std::vector<std::string> post_names(2 * n + 2);
  pref[0] = {f(0), s(0)};
  applicant_names[0] = "a0";
  for (int i = 1; i <= n; ++i) {
    pref[2 * i - 1] = {f(i), f(i - 1), s(i)};
    pref[2 * i] = {f(i), s(i)};
    applicant_names[2 * i - 1] = "a" + std::to_string(i);
    applicant_names[2 * i] = "ap" + std::to_string(i);
  }
  for (int i = 0; i <= n; ++i) {
    post_names[f(i)] = "f" + std::to_string(i);
    post_names[s(i)] = "s" + std::to_string(i);
  }
  return make(2 * n + 1, 2 * n + 2, std::move(pref), std::move(applicant_names),
              std::move(post_names));
}

Instance random_instance(std::uint64_t seed, int num_applicants, int num_posts,
                         double density, double tie_fraction) {
  if (num_applicants < 1 || num_posts < 1)
    throw std::invalid_argument("need at least one applicant and one post");
  if (density < 0.0 || density > 1.0 || tie_fraction < 0.0 || tie_fraction > 1.0)
    throw std::invalid_argument("density and tie_fraction must lie in [0,1]");
  if (density * num_posts < 1.0)
    throw std::invalid_argument("density too low to give every applicant a neighbor");

  std::mt19937_64 rng(seed);
  std::vector<std::vector<PostId>> pref(num_applicants);
  std::vector<PostId> order(num_posts);
  for (ApplicantId a = 0; a < num_applicants; ++a) {
    int degree = 0;
    for (int t = 0; t < num_posts; ++t) degree += uniform01(rng) < density;
    degree = std::max(degree, 1);
    for (PostId b = 0; b < num_posts; ++b) order[b] = b;
    shuffle_ids(rng, order);
    pref[a].assign(order.begin(), order.begin() + degree);
  }

  Instance inst;
  inst.num_applicants = num_applicants;
  inst.num_posts = num_posts;
  inst.pref = std::move(pref);
  inst.policy.assign(num_posts, PostPolicy::SingleTie);
  inst.strict_order.resize(num_posts);

  // Post neighborhoods are needed to rank strict posts; finalize once with
  // all ties to derive them, then overlay the strict posts and re-finalize.
  inst.finalize();
  for (PostId b = 0; b < num_posts; ++b) {
    if (uniform01(rng) < tie_fraction) continue;
    inst.policy[b] = PostPolicy::Strict;
    inst.strict_order[b] = inst.post_nbrs[b];
    shuffle_ids(rng, inst.strict_order[b]);
  }
  inst.finalize();
  return inst;
}

}  // namespace popmatch
