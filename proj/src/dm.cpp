#include "popmatch/dm.hpp"

#include <climits>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace popmatch {

namespace {

constexpr int kFree = -1;

std::vector<std::vector<int>> right_adjacency(const BipartiteGraph& g) {
  std::vector<std::vector<int>> radj(g.n_right);
  for (int u = 0; u < g.n_left; ++u)
    for (int v : g.adj[u]) radj[v].push_back(u);
  return radj;
}

void check_matching(const BipartiteGraph& g, const BipMatching& m) {
  if (static_cast<int>(m.right_of.size()) != g.n_left ||
      static_cast<int>(m.left_of.size()) != g.n_right)
    throw std::invalid_argument("matching size does not fit graph");
  for (int u = 0; u < g.n_left; ++u) {
    int v = m.right_of[u];
    if (v == kFree) continue;
    if (v < 0 || v >= g.n_right || m.left_of[v] != u)
      throw std::invalid_argument("inconsistent matching");
    bool found = false;
    for (int cand : g.adj[u]) found |= (cand == v);
    if (!found) throw std::invalid_argument("matching uses a non-edge");
  }
  for (int v = 0; v < g.n_right; ++v) {
    int u = m.left_of[v];
    if (u != kFree && (u < 0 || u >= g.n_left || m.right_of[u] != v))
      throw std::invalid_argument("inconsistent matching");
  }
}

}  // namespace

int BipartiteGraph::num_edges() const {
  int total = 0;
  for (const auto& list : adj) total += static_cast<int>(list.size());
  return total;
}

BipMatching max_matching(const BipartiteGraph& g, const std::vector<int>& left_order) {
  if (!left_order.empty() && static_cast<int>(left_order.size()) != g.n_left)
    throw std::invalid_argument("left_order must cover all left vertices");
  std::vector<int> order = left_order;
  if (order.empty()) {
    order.resize(g.n_left);
    std::iota(order.begin(), order.end(), 0);
  }

  BipMatching m;
  m.right_of.assign(g.n_left, kFree);
  m.left_of.assign(g.n_right, kFree);

  std::vector<int> dist(g.n_left);
  auto bfs = [&]() {
    std::queue<int> queue;
    for (int u : order) {
      if (m.right_of[u] == kFree) {
        dist[u] = 0;
        queue.push(u);
      } else {
        dist[u] = INT_MAX;
      }
    }
    bool reachable_free_right = false;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int v : g.adj[u]) {
        int w = m.left_of[v];
        if (w == kFree) {
          reachable_free_right = true;
        } else if (dist[w] == INT_MAX) {
          dist[w] = dist[u] + 1;
          queue.push(w);
        }
      }
    }
    return reachable_free_right;
  };

  std::function<bool(int)> dfs = [&](int u) -> bool {
    for (int v : g.adj[u]) {
      int w = m.left_of[v];
      if (w == kFree || (dist[w] == dist[u] + 1 && dfs(w))) {
        m.right_of[u] = v;
        m.left_of[v] = u;
        return true;
      }
    }
    dist[u] = INT_MAX;
    return false;
  };

  while (bfs())
    for (int u : order)
      if (m.right_of[u] == kFree && dfs(u)) ++m.size;
  return m;
}

BipMatching max_matching_left_deg2(const BipartiteGraph& g, long long* work) {
  long long steps = 0;
  for (const auto& list : g.adj)
    if (list.size() > 2)
      throw std::invalid_argument("left vertex degree exceeds 2");

  BipMatching m;
  m.right_of.assign(g.n_left, kFree);
  m.left_of.assign(g.n_right, kFree);

  std::vector<std::vector<int>> radj = right_adjacency(g);
  std::vector<int> rdeg(g.n_right, 0);   // alive left neighbors of each alive right
  std::vector<int> lcnt(g.n_left, 0);    // alive endpoints of each alive left
  std::vector<char> left_alive(g.n_left, 1), right_alive(g.n_right, 1);
  for (int u = 0; u < g.n_left; ++u) {
    lcnt[u] = static_cast<int>(g.adj[u].size());
    if (lcnt[u] == 0) left_alive[u] = 0;
    for (int v : g.adj[u]) ++rdeg[v];
    ++steps;
  }

  std::queue<int> degree_one;
  for (int v = 0; v < g.n_right; ++v) {
    if (rdeg[v] == 1) degree_one.push(v);
    ++steps;
  }

  auto assign = [&](int u, int v) {
    m.right_of[u] = v;
    m.left_of[v] = u;
    ++m.size;
    left_alive[u] = 0;
    for (int e : g.adj[u]) {
      ++steps;
      if (e != v && right_alive[e] && --rdeg[e] == 1) degree_one.push(e);
    }
    right_alive[v] = 0;
    for (int u2 : radj[v]) {
      ++steps;
      if (u2 != u && left_alive[u2] && --lcnt[u2] == 0) left_alive[u2] = 0;
    }
  };

  // Taking the unique edge of a degree-1 right never loses optimality (any
  // maximum matching can be rewritten to use it). Once no degree-1 right
  // remains, every component that still has edges has >= as many edges as
  // right vertices (each alive right has degree >= 2, each alive left
  // contributes <= 2 endpoints), so all its rights can be matched and taking
  // any edge keeps that true for the remainder.
  int scan = 0;
  while (true) {
    while (!degree_one.empty()) {
      int v = degree_one.front();
      degree_one.pop();
      ++steps;
      if (!right_alive[v] || rdeg[v] != 1) continue;  // stale entry
      int u = kFree;
      for (int cand : radj[v]) {
        ++steps;
        if (left_alive[cand]) {
          u = cand;
          break;
        }
      }
      assign(u, v);
    }
    while (scan < g.n_left && !left_alive[scan]) {
      ++scan;
      ++steps;
    }
    if (scan >= g.n_left) break;
    int u = scan;
    int v = kFree;
    for (int cand : g.adj[u]) {
      ++steps;
      if (right_alive[cand]) {
        v = cand;
        break;
      }
    }
    assign(u, v);
  }

  if (work) *work += steps;
  return m;
}

void extend_to_maximum(const BipartiteGraph& g, BipMatching& m, long long* work) {
  check_matching(g, m);
  long long steps = 0;
  std::vector<char> visited(g.n_left, 0);
  std::function<bool(int)> try_augment = [&](int u) -> bool {
    for (int v : g.adj[u]) {
      ++steps;
      int w = m.left_of[v];
      if (w == u) continue;
      if (w == kFree || (!visited[w] && (visited[w] = 1) && try_augment(w))) {
        m.right_of[u] = v;
        m.left_of[v] = u;
        return true;
      }
    }
    return false;
  };
  for (int u = 0; u < g.n_left; ++u) {
    ++steps;
    if (m.right_of[u] != kFree) continue;
    std::fill(visited.begin(), visited.end(), 0);
    visited[u] = 1;
    if (try_augment(u)) ++m.size;
  }
  if (work) *work += steps;
}

DmClassification classify(const BipartiteGraph& g, const BipMatching& m, long long* work) {
  check_matching(g, m);
  long long steps = 0;
  std::vector<std::vector<int>> radj = right_adjacency(g);

  DmClassification result;
  result.left.assign(g.n_left, DmLabel::Unreachable);
  result.right.assign(g.n_right, DmLabel::Unreachable);
  // 0 = untouched, 1 = reached from a free left, 2 = reached from a free right
  std::vector<char> left_pass(g.n_left, 0), right_pass(g.n_right, 0);

  auto not_maximum = [] {
    return std::invalid_argument("matching is not maximum (augmenting path exists)");
  };

  // Pass 1: alternating BFS out of free left vertices. Lefts reached at even
  // distance, rights at odd distance.
  {
    std::queue<int> queue;
    for (int u = 0; u < g.n_left; ++u) {
      ++steps;
      if (m.right_of[u] == kFree) {
        left_pass[u] = 1;
        result.left[u] = DmLabel::Even;
        queue.push(u);
      }
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int v : g.adj[u]) {
        ++steps;
        if (v == m.right_of[u] || right_pass[v]) continue;
        right_pass[v] = 1;
        result.right[v] = DmLabel::Odd;
        int w = m.left_of[v];
        if (w == kFree) throw not_maximum();  // free-to-free alternating path
        if (!left_pass[w]) {
          left_pass[w] = 1;
          result.left[w] = DmLabel::Even;
          queue.push(w);
        }
      }
    }
  }

  // Pass 2: the same from free right vertices. With a maximum matching the
  // two passes reach disjoint vertex sets; any overlap splices into a
  // free-left-to-free-right augmenting path.
  {
    std::queue<int> queue;
    for (int v = 0; v < g.n_right; ++v) {
      ++steps;
      if (m.left_of[v] != kFree) continue;
      if (right_pass[v]) throw not_maximum();
      right_pass[v] = 2;
      result.right[v] = DmLabel::Even;
      queue.push(v);
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop();
      for (int u : radj[v]) {
        ++steps;
        if (u == m.left_of[v]) continue;
        if (left_pass[u] == 1) throw not_maximum();
        if (left_pass[u] == 2) continue;
        left_pass[u] = 2;
        result.left[u] = DmLabel::Odd;
        int w = m.right_of[u];
        if (w == kFree) throw not_maximum();
        if (right_pass[w] == 1) throw not_maximum();
        if (!right_pass[w]) {
          right_pass[w] = 2;
          result.right[w] = DmLabel::Even;
          queue.push(w);
        }
      }
    }
  }

  if (work) *work += steps;
  return result;
}

}  // namespace popmatch
