#pragma once

#include <vector>

namespace popmatch {

// Plain bipartite graph; left/right vertex ids are dense and 0-based.
struct BipartiteGraph {
  int n_left = 0;
  int n_right = 0;
  std::vector<std::vector<int>> adj;  // adj[left] = rights, in insertion order

  BipartiteGraph() = default;
  BipartiteGraph(int n_left_, int n_right_) : n_left(n_left_), n_right(n_right_), adj(n_left_) {}

  void add_edge(int left, int right) { adj[left].push_back(right); }
  int num_edges() const;
};

struct BipMatching {
  std::vector<int> right_of;  // per left vertex; -1 = free
  std::vector<int> left_of;   // per right vertex; -1 = free
  int size = 0;
};

// Maximum matching via Hopcroft-Karp. `left_order`, when nonempty, fixes the
// order in which left vertices are offered augmenting paths (the matching is
// maximum either way; the order only picks among maximum matchings).
BipMatching max_matching(const BipartiteGraph& g, const std::vector<int>& left_order = {});

// Maximum matching for graphs where every left vertex has degree <= 2, in
// O(V + E): peel right vertices of degree 1 (their unique edge is always safe
// to take), and once none remain every component with edges has at least as
// many edges as right vertices, so any edge is safe to take. Throws
// std::invalid_argument if a left degree exceeds 2. `work`, when given, is
// incremented by the number of elementary steps.
BipMatching max_matching_left_deg2(const BipartiteGraph& g, long long* work = nullptr);

// Completes `m` to a maximum matching by single-path augmentation from each
// free left vertex (in ascending order). Never unmatches a matched vertex.
void extend_to_maximum(const BipartiteGraph& g, BipMatching& m, long long* work = nullptr);

enum class DmLabel {
  Even,         // reachable from some free vertex by an even-length alternating path
  Odd,          // reachable by an odd-length alternating path
  Unreachable,  // not reachable from any free vertex
};

struct DmClassification {
  std::vector<DmLabel> left;
  std::vector<DmLabel> right;
};

// Even/Odd/Unreachable labels relative to maximum matching m. Alternating
// paths start at free vertices of either side. Throws std::invalid_argument
// if m is not maximum (an augmenting path makes some vertex both even and
// odd, which the two search passes detect as a label conflict).
DmClassification classify(const BipartiteGraph& g, const BipMatching& m,
                          long long* work = nullptr);

}  // namespace popmatch
