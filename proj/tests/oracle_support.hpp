#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// anchored enumeration and explicit-stack solver: connectivity runs a plain
// BFS over vertex lists, removal generation scans all 2^n subsets, and game
// values come from naive recursion.

#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "csg/graph.hpp"
#include "csg/solver.hpp"
#include "csg/star.hpp"
#include "csg/subtraction.hpp"

namespace csg::testing {

inline bool ref_connected(const Graph& g, VertexSet s) {
  std::vector<int> verts = vs_to_vector(s);
  if (verts.empty()) return true;
  std::set<int> pending(verts.begin(), verts.end());
  std::queue<int> q;
  q.push(verts.front());
  pending.erase(verts.front());
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (auto it = pending.begin(); it != pending.end();) {
      if (g.has_edge(v, *it)) {
        q.push(*it);
        ++reached;
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  }
  return reached == static_cast<int>(verts.size());
}

// Every legal removal by scanning all nonempty submasks of live.
inline std::vector<VertexSet> scan_removals(const Graph& g, VertexSet live,
                                            const SubtractionSet& L) {
  std::vector<VertexSet> out;
  for (VertexSet s = live; s != 0; s = (s - 1) & live) {
    if (!L.contains(vs_size(s))) continue;
    if (!ref_connected(g, s)) continue;
    if (!ref_connected(g, live & ~s)) continue;
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline int ref_grundy(const Graph& g, VertexSet live, const SubtractionSet& L,
                      std::map<VertexSet, int>& memo) {
  if (live == 0) return 0;
  if (auto it = memo.find(live); it != memo.end()) return it->second;
  std::set<int> options;
  for (VertexSet s : scan_removals(g, live, L))
    options.insert(ref_grundy(g, live & ~s, L, memo));
  int v = 0;
  while (options.contains(v)) ++v;
  memo.emplace(live, v);
  return v;
}

inline int ref_grundy(const Graph& g, const SubtractionSet& L) {
  std::map<VertexSet, int> memo;
  return ref_grundy(g, g.vertices(), L, memo);
}

// Grundy value of the two-component sum by direct search over paired
// positions: a move plays in exactly one component.
inline int ref_sum_grundy(const Graph& g1, VertexSet live1, const Graph& g2,
                          VertexSet live2, const SubtractionSet& L,
                          std::map<std::pair<VertexSet, VertexSet>, int>& memo) {
  if (live1 == 0 && live2 == 0) return 0;
  auto key = std::pair{live1, live2};
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::set<int> options;
  for (VertexSet s : enumerate_removals(g1, live1, L))
    options.insert(ref_sum_grundy(g1, live1 & ~s, g2, live2, L, memo));
  for (VertexSet s : enumerate_removals(g2, live2, L))
    options.insert(ref_sum_grundy(g1, live1, g2, live2 & ~s, L, memo));
  int v = 0;
  while (options.contains(v)) ++v;
  memo.emplace(key, v);
  return v;
}

inline int ref_sum_grundy(const Graph& g1, const Graph& g2,
                          const SubtractionSet& L) {
  std::map<std::pair<VertexSet, VertexSet>, int> memo;
  return ref_sum_grundy(g1, g1.vertices(), g2, g2.vertices(), L, memo);
}

// Random connected graph: a random recursive tree plus extra edges.
inline Graph random_connected_graph(std::mt19937& rng, int n,
                                    double extra_edge_prob = 0.25) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    edges.emplace_back(pick(rng), v);
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (coin(rng) < extra_edge_prob) edges.emplace_back(a, b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(n, edges);
}

inline SubtractionSet random_subtraction_set(std::mt19937& rng, int max_value) {
  std::vector<int> values;
  while (values.empty()) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int v = 1; v <= max_value; ++v)
      if (coin(rng) < 0.4) values.push_back(v);
  }
  return SubtractionSet(values);
}

// Reads the shape of an induced star remainder back as a canonical star;
// nullopt for the empty remainder. Works for paths and for trees with one
// center of degree >= 3 (every position reachable in star play).
inline std::optional<SubdividedStar> star_shape(const Graph& g, VertexSet live) {
  if (live == 0) return std::nullopt;
  std::vector<int> verts = vs_to_vector(live);
  auto degree = [&](int v) {
    return vs_size(g.neighbors(v) & live);
  };
  int center = -1;
  for (int v : verts)
    if (degree(v) >= 3) center = v;
  if (center < 0) return SubdividedStar({static_cast<int>(verts.size()) - 1});
  std::vector<int> branches;
  VertexSet arms = g.neighbors(center) & live;
  while (arms) {
    int v = vs_min(arms);
    arms &= arms - 1;
    int len = 1;
    int prev = center, cur = v;
    for (;;) {
      VertexSet next = (g.neighbors(cur) & live) & ~vs_single(prev);
      if (next == 0) break;
      prev = cur;
      cur = vs_min(next);
      ++len;
    }
    branches.push_back(len);
  }
  return SubdividedStar(std::move(branches));
}

}  // namespace csg::testing
