#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "csg/subtraction.hpp"

namespace csg {

// A set of vertices of a companion Graph, one bit per vertex index.
using VertexSet = std::uint64_t;

constexpr int kMaxVertices = 64;

inline int vs_size(VertexSet s) { return std::popcount(s); }
inline bool vs_contains(VertexSet s, int v) { return (s >> v) & 1; }
inline VertexSet vs_single(int v) { return VertexSet{1} << v; }
inline int vs_min(VertexSet s) { return std::countr_zero(s); }

inline std::vector<int> vs_to_vector(VertexSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

struct capacity_error : std::length_error {
  using std::length_error::length_error;
};

// Simple connected undirected graph on at most 64 vertices, adjacency stored
// as one bitset per vertex. The empty graph (n = 0) is a valid value.
// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    if (n > 0 && !g.connected_on(g.vertices()))
      throw std::invalid_argument("game graph must be connected");
    return g;
  }

  int size() const { return n_; }
  bool empty() const { return n_ == 0; }

  VertexSet vertices() const {
    return n_ == 64 ? ~VertexSet{0} : (VertexSet{1} << n_) - 1;
  }

  VertexSet neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }

  VertexSet neighborhood(VertexSet s) const {
    VertexSet out = 0;
    while (s) {
      out |= adj_[static_cast<std::size_t>(std::countr_zero(s))];
      s &= s - 1;
    }
    return out;
  }

  int edge_count() const {
    int twice = 0;
    for (VertexSet a : adj_) twice += std::popcount(a);
    return twice / 2;
  }

  bool has_edge(int a, int b) const { return vs_contains(adj_[static_cast<std::size_t>(a)], b); }

  // True iff the subgraph induced on s is connected; the empty set counts as
  // connected (removing the whole graph is a legal move).
  bool connected_on(VertexSet s) const {
    if (s == 0) return true;
    VertexSet seen = s & (~s + 1);
    VertexSet frontier = seen;
    while (frontier) {
      frontier = (neighborhood(frontier) & s) & ~seen;
      seen |= frontier;
    }
    return seen == s;
  }

  std::uint64_t fingerprint() const { return fingerprint_; }

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && adj_ == other.adj_;
  }

 private:
  friend Graph make_path(int);
  friend Graph make_subdivided_star(std::span<const int>);
  friend Graph append_path(const Graph&, int, int);

  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxVertices)
      throw capacity_error("graph capacity is 64 vertices");
  }

  void add_edge(int a, int b) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
      throw std::invalid_argument("bad edge");
    adj_[static_cast<std::size_t>(a)] |= vs_single(b);
    adj_[static_cast<std::size_t>(b)] |= vs_single(a);
  }

  void seal() {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
      h ^= x;
      h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(n_));
    for (VertexSet a : adj_) mix(a);
    fingerprint_ = h;
  }

  int n_ = 0;
  std::vector<VertexSet> adj_;
  std::uint64_t fingerprint_ = 0xcbf29ce484222325ULL;
};

// P_k, the path on k vertices; k = 0 gives the empty graph.
inline Graph make_path(int k) {
  Graph g(k);
  for (int v = 0; v + 1 < k; ++v) g.add_edge(v, v + 1);
  g.seal();
  return g;
}

// S(l1,...,lt): center at index 0, branch i occupying a contiguous index
// range. Zero-length branches contribute nothing.
inline Graph make_subdivided_star(std::span<const int> branches) {
  int total = 1;
  for (int b : branches) {
    if (b < 0) throw std::invalid_argument("branch lengths must be >= 0");
    total += b;
  }
  if (total > kMaxVertices) throw capacity_error("graph capacity is 64 vertices");
  Graph g(total);
  int next = 1;
  for (int b : branches) {
    int prev = 0;
    for (int j = 0; j < b; ++j) {
      g.add_edge(prev, next);
      prev = next++;
    }
  }
  g.seal();
  return g;
}

inline Graph make_subdivided_star(std::initializer_list<int> branches) {
  return make_subdivided_star(std::span<const int>(branches.begin(), branches.size()));
}

// G.u.k: base with a pendant path of k fresh vertices attached at anchor.
// An empty base realizes P_k (the anchor is ignored).
inline Graph append_path(const Graph& base, int anchor, int k) {
  if (k < 0) throw std::invalid_argument("appended path length must be >= 0");
  if (base.empty()) return make_path(k);
  if (anchor < 0 || anchor >= base.size())
    throw std::invalid_argument("anchor vertex not in base graph");
  if (base.size() + k > kMaxVertices)
    throw capacity_error("graph capacity is 64 vertices");
  Graph g(base.size() + k);
  g.adj_ = base.adj_;
  g.adj_.resize(static_cast<std::size_t>(g.n_), 0);
  int prev = anchor;
  for (int j = 0; j < k; ++j) {
    int v = base.size() + j;
    g.add_edge(prev, v);
    prev = v;
  }
  g.seal();
  return g;
}

inline bool is_connected(const Graph& g, VertexSet s) { return g.connected_on(s); }

namespace detail {

// Grows a connected set one boundary vertex at a time. Each connected superset
// of `grown` avoiding `forbidden` is reached exactly once: candidates already
// tried at this level are forbidden in the sibling branches.
template <typename F>
void expand_connected(const Graph& g, VertexSet live, VertexSet grown,
                      VertexSet forbidden, int cap, F&& emit) {
  emit(grown);
  if (vs_size(grown) >= cap) return;
  VertexSet ext = (g.neighborhood(grown) & live) & ~grown & ~forbidden;
  VertexSet tried = 0;
  while (ext) {
    VertexSet b = ext & (~ext + 1);
    ext ^= b;
    expand_connected(g, live, grown | b, forbidden | tried, cap, emit);
    tried |= b;
  }
}

}  // namespace detail

// Calls f(s) for every legal removal s from the position (g, live): s is a
// subset of live, |s| is in L, induced(s) is connected and induced(live \ s)
// is connected (possibly empty). Each set is produced exactly once; the order
// is deterministic (anchored expansion from each set's minimum vertex).
template <typename F>
void for_each_removal(const Graph& g, VertexSet live, const SubtractionSet& L,
                      F&& f) {
  int cap = std::min(L.max(), vs_size(live));
  VertexSet below = 0;
  VertexSet rest = live;
  while (rest) {
    VertexSet b = rest & (~rest + 1);
    rest ^= b;
    detail::expand_connected(g, live, b, below, cap, [&](VertexSet s) {
      if (L.contains(vs_size(s)) && g.connected_on(live & ~s)) f(s);
    });
    below |= b;
  }
}

// All legal removals, sorted by bitset value.
inline std::vector<VertexSet> enumerate_removals(const Graph& g, VertexSet live,
                                                 const SubtractionSet& L) {
  std::vector<VertexSet> out;
  for_each_removal(g, live, L, [&](VertexSet s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace csg
