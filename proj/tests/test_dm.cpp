#include <numeric>
#include <random>

#include "doctest.h"
#include "popmatch/dm.hpp"
#include "test_util.hpp"

using namespace popmatch;

namespace {

BipartiteGraph path_graph() {
  // l0 - r0 - l1 - r1 - l2 - r2 (a path: maximum matching 3, perfect)
  BipartiteGraph g(3, 3);
  g.add_edge(0, 0);
  g.add_edge(1, 0);
  g.add_edge(1, 1);
  g.add_edge(2, 1);
  g.add_edge(2, 2);
  return g;
}

int count_label(const std::vector<DmLabel>& labels, DmLabel want) {
  int n = 0;
  for (DmLabel l : labels) n += l == want;
  return n;
}

}  // namespace

TEST_CASE("hopcroft-karp finds maximum matchings") {
  CHECK(max_matching(path_graph()).size == 3);

  BipartiteGraph star(3, 1);
  star.add_edge(0, 0);
  star.add_edge(1, 0);
  star.add_edge(2, 0);
  CHECK(max_matching(star).size == 1);

  BipartiteGraph empty(2, 2);
  CHECK(max_matching(empty).size == 0);
}

TEST_CASE("left order steers which maximum matching appears") {
  BipartiteGraph g(2, 2);
  g.add_edge(0, 0);
  g.add_edge(1, 0);
  g.add_edge(1, 1);
  BipMatching forward = max_matching(g, {0, 1});
  BipMatching backward = max_matching(g, {1, 0});
  CHECK(forward.size == 2);
  CHECK(backward.size == 2);
  CHECK_THROWS_AS(max_matching(g, {0}), std::invalid_argument);
}

TEST_CASE("degree-2 peeling matches hopcroft-karp sizes") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n_left = 1 + static_cast<int>(rng() % 7);
    int n_right = 1 + static_cast<int>(rng() % 7);
    BipartiteGraph g(n_left, n_right);
    for (int l = 0; l < n_left; ++l) {
      int degree = static_cast<int>(rng() % 3);  // 0, 1, or 2
      for (int d = 0; d < degree; ++d) {
        int r = static_cast<int>(rng() % n_right);
        bool duplicate = false;
        for (int existing : g.adj[l]) duplicate |= existing == r;
        if (!duplicate) g.add_edge(l, r);
      }
    }
    BipMatching peeled = max_matching_left_deg2(g);
    CHECK(peeled.size == max_matching(g).size);
    // result is a consistent matching
    for (int l = 0; l < n_left; ++l)
      if (peeled.right_of[l] != -1) CHECK(peeled.left_of[peeled.right_of[l]] == l);
  }
}

TEST_CASE("degree-2 peeling rejects higher degrees") {
  BipartiteGraph g(1, 3);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  CHECK_THROWS_AS(max_matching_left_deg2(g), std::invalid_argument);
}

TEST_CASE("extend_to_maximum grows a matching without unmatching anyone") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    BipartiteGraph g = testutil::random_graph(rng, 1 + rng() % 6, 1 + rng() % 6, 0.5);
    BipMatching m;
    m.right_of.assign(g.n_left, -1);
    m.left_of.assign(g.n_right, -1);
    // greedy partial start
    for (int l = 0; l < g.n_left; ++l)
      for (int r : g.adj[l])
        if (m.right_of[l] == -1 && m.left_of[r] == -1) {
          m.right_of[l] = r;
          m.left_of[r] = l;
          ++m.size;
        }
    std::vector<int> matched_rights;
    for (int r = 0; r < g.n_right; ++r)
      if (m.left_of[r] != -1) matched_rights.push_back(r);

    extend_to_maximum(g, m);
    CHECK(m.size == max_matching(g).size);
    for (int r : matched_rights) CHECK(m.left_of[r] != -1);
  }
}

TEST_CASE("classification on the path graph") {
  BipartiteGraph g = path_graph();
  DmClassification labels = classify(g, max_matching(g));
  // perfect matching, no free vertex, the whole graph is unreachable
  CHECK(count_label(labels.left, DmLabel::Unreachable) == 3);
  CHECK(count_label(labels.right, DmLabel::Unreachable) == 3);
}

TEST_CASE("classify rejects non-maximum matchings") {
  BipartiteGraph g = path_graph();
  BipMatching empty;
  empty.right_of.assign(3, -1);
  empty.left_of.assign(3, -1);
  CHECK_THROWS_AS(classify(g, empty), std::invalid_argument);
}

TEST_CASE("classification properties on random graphs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    int n_left = 1 + static_cast<int>(rng() % 8);
    int n_right = 1 + static_cast<int>(rng() % 8);
    BipartiteGraph g = testutil::random_graph(rng, n_left, n_right, 0.4);

    std::vector<int> order(n_left);
    std::iota(order.begin(), order.end(), 0);
    BipMatching m1 = max_matching(g, order);
    std::reverse(order.begin(), order.end());
    BipMatching m2 = max_matching(g, order);
    REQUIRE(m1.size == m2.size);

    DmClassification c1 = classify(g, m1);
    DmClassification c2 = classify(g, m2);
    // the classes depend on the graph, not on which maximum matching is used
    CHECK(c1.left == c2.left);
    CHECK(c1.right == c2.right);

    int odd = count_label(c1.left, DmLabel::Odd) + count_label(c1.right, DmLabel::Odd);
    int unreachable = count_label(c1.left, DmLabel::Unreachable) +
                      count_label(c1.right, DmLabel::Unreachable);
    CHECK(m1.size * 2 == odd * 2 + unreachable);

    for (int l = 0; l < n_left; ++l)
      for (int r : g.adj[l]) {
        bool even_to_even = c1.left[l] == DmLabel::Even && c1.right[r] == DmLabel::Even;
        bool even_to_unreachable =
            (c1.left[l] == DmLabel::Even && c1.right[r] == DmLabel::Unreachable) ||
            (c1.left[l] == DmLabel::Unreachable && c1.right[r] == DmLabel::Even);
        CHECK(!even_to_even);
        CHECK(!even_to_unreachable);
      }

    // free vertices are exactly the even unmatched ones
    for (int l = 0; l < n_left; ++l)
      if (m1.right_of[l] == -1) CHECK(c1.left[l] == DmLabel::Even);
    for (int r = 0; r < n_right; ++r)
      if (m1.left_of[r] == -1) CHECK(c1.right[r] == DmLabel::Even);
  }
}

TEST_CASE("work counters accumulate") {
  long long work = 0;
  BipartiteGraph g = path_graph();
  BipMatching m = max_matching_left_deg2(g, &work);
  CHECK(work > 0);
  long long before = work;
  classify(g, m, &work);
  CHECK(work > before);
}
