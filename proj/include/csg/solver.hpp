#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "csg/graph.hpp"
#include "csg/star.hpp"
#include "csg/subtraction.hpp"

namespace csg {

// Smallest nonnegative integer absent from values.
inline int mex(std::span<const int> values) {
  std::uint64_t lo = 0, hi = 0;
  for (int v : values) {
    if (v < 0) throw std::invalid_argument("mex over nonnegative integers");
    if (v < 64)
      lo |= std::uint64_t{1} << v;
    else if (v < 128)
      hi |= std::uint64_t{1} << (v - 64);
  }
  int m = std::countr_one(lo);
  if (m < 64) return m;
  m = std::countr_one(hi);
  if (m < 64) return 64 + m;
  throw std::invalid_argument("mex input exceeds supported range");
}

namespace detail {

// Option values are bounded by the position order (at most 64), so a two-word
// mask covers every mex computation the solvers perform.
struct ValueMask {
  std::uint64_t lo = 0, hi = 0;
  void add(int v) {
    assert(v >= 0 && v < 128);
    if (v < 64)
      lo |= std::uint64_t{1} << v;
    else
      hi |= std::uint64_t{1} << (v - 64);
  }
  int mex() const {
    int m = std::countr_one(lo);
    return m < 64 ? m : 64 + std::countr_one(hi);
  }
};

}  // namespace detail

// Memoized Grundy values keyed by (parent graph identity, surviving vertex
// set). Entries never change once written.
class TranspositionTable {
 public:
  class Shard {
   public:
    std::optional<int> find(VertexSet live) const {
      auto it = values_.find(live);
      if (it == values_.end()) return std::nullopt;
      return static_cast<int>(it->second);
    }
    void insert(VertexSet live, int value) {
      auto [it, fresh] = values_.emplace(live, static_cast<std::uint8_t>(value));
      if (!fresh && it->second != value)
        throw std::logic_error("transposition table write conflict");
    }
    std::size_t size() const { return values_.size(); }

    template <typename F>
    void for_each(F&& f) const {
      for (auto [live, value] : values_) f(live, static_cast<int>(value));
    }

   private:
    friend class TranspositionTable;
    Graph graph_;
    std::unordered_map<VertexSet, std::uint8_t> values_;
  };

  Shard& shard_for(const Graph& g) {
    auto& bucket = shards_[g.fingerprint()];
    for (auto& shard : bucket)
      if (shard.graph_ == g) return shard;
    bucket.emplace_back();
    bucket.back().graph_ = g;
    return bucket.back();
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& [fp, bucket] : shards_)
      for (const auto& shard : bucket) total += shard.size();
    return total;
  }

  // f(live, value) over every entry of every shard.
  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [fp, bucket] : shards_)
      for (const auto& shard : bucket) shard.for_each(f);
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<Shard>> shards_;
};

// The position (graph, surviving vertices) of a CSG(L) game in progress.
struct Position {
  Graph graph;
  VertexSet live = 0;
};

// Exact Grundy value of (g, live) under CSG(L) by memoized search. Uses an
// explicit work stack; children are visited in bitset order.
inline int grundy(const Graph& g, VertexSet live, const SubtractionSet& L,
                  TranspositionTable& memo) {
  if (live == 0) return 0;
  TranspositionTable::Shard& shard = memo.shard_for(g);
  if (auto v = shard.find(live)) return *v;

  struct Frame {
    VertexSet live;
    std::vector<VertexSet> children;
    std::size_t next = 0;
    detail::ValueMask seen;
  };
  std::vector<Frame> stack;
  auto push = [&](VertexSet lv) {
    Frame f;
    f.live = lv;
    for_each_removal(g, lv, L, [&](VertexSet s) { f.children.push_back(lv & ~s); });
    std::sort(f.children.begin(), f.children.end());
    f.children.erase(std::unique(f.children.begin(), f.children.end()),
                     f.children.end());
    stack.push_back(std::move(f));
  };
  push(live);
  int result = 0;
  while (!stack.empty()) {
    Frame& f = stack.back();
    bool descended = false;
    while (f.next < f.children.size()) {
      VertexSet child = f.children[f.next];
      if (child == 0) {
        f.seen.add(0);
        ++f.next;
        continue;
      }
      if (auto v = shard.find(child)) {
        f.seen.add(*v);
        ++f.next;
        continue;
      }
      push(child);
      descended = true;
      break;
    }
    if (descended) continue;
    result = f.seen.mex();
    shard.insert(f.live, result);
    stack.pop_back();
  }
  return result;
}

inline int grundy(const Graph& g, const SubtractionSet& L,
                  TranspositionTable& memo) {
  return grundy(g, g.vertices(), L, memo);
}

inline int grundy(const Position& pos, const SubtractionSet& L,
                  TranspositionTable& memo) {
  return grundy(pos.graph, pos.live, L, memo);
}

enum class Outcome { P, N };

inline Outcome outcome(const Graph& g, VertexSet live, const SubtractionSet& L,
                       TranspositionTable& memo) {
  return grundy(g, live, L, memo) == 0 ? Outcome::P : Outcome::N;
}

inline Outcome outcome(const Graph& g, const SubtractionSet& L,
                       TranspositionTable& memo) {
  return outcome(g, g.vertices(), L, memo);
}

inline int nim_sum(std::span<const int> values) {
  int acc = 0;
  for (int v : values) acc ^= v;
  return acc;
}

// Sprague-Grundy value of a disjoint sum of positions.
inline int grundy_sum(std::span<const Position> parts, const SubtractionSet& L,
                      TranspositionTable& memo) {
  int acc = 0;
  for (const Position& p : parts) acc ^= grundy(p, L, memo);
  return acc;
}

// Grundy values of the 1-D subtraction game on heaps (= CSG(L) on paths),
// grown on demand: g[k] = mex{g[k-c] : c in L, c <= k}.
class PathGrundyTable {
 public:
  explicit PathGrundyTable(SubtractionSet L) : L_(std::move(L)) {
    values_.push_back(0);
  }

  int value(int k) {
    if (k < 0) throw std::invalid_argument("path length must be >= 0");
    while (static_cast<int>(values_.size()) <= k) {
      int n = static_cast<int>(values_.size());
      detail::ValueMask seen;
      for (int c : L_.values()) {
        if (c > n) break;
        seen.add(values_[static_cast<std::size_t>(n - c)]);
      }
      values_.push_back(static_cast<std::uint8_t>(seen.mex()));
    }
    return values_[static_cast<std::size_t>(k)];
  }

  const SubtractionSet& set() const { return L_; }

 private:
  SubtractionSet L_;
  std::vector<std::uint8_t> values_;
};

// Star-shaped positions solved on canonical branch multisets: isomorphic
// positions share one memo entry and path-shaped stars short-circuit into the
// 1-D table, so branch lengths are not limited by the 64-vertex graph cap.
class StarSolver {
 public:
  explicit StarSolver(SubtractionSet L) : L_(std::move(L)), paths_(L_) {}

  int grundy(const SubdividedStar& star) {
    if (star.is_path()) return paths_.value(star.order());
    if (auto it = memo_.find(star); it != memo_.end()) return it->second;

    struct Frame {
      SubdividedStar star;
      std::vector<SubdividedStar> children;
      std::size_t next = 0;
      detail::ValueMask seen;
    };
    std::vector<Frame> stack;
    auto push = [&](SubdividedStar s) {
      Frame f;
      f.star = std::move(s);
      for (StarMove& mv : star_removals(f.star, L_)) {
        if (mv.kind == StarMove::Kind::whole)
          f.seen.add(0);
        else if (mv.result.is_path())
          f.seen.add(paths_.value(mv.result.order()));
        else
          f.children.push_back(std::move(mv.result));
      }
      std::sort(f.children.begin(), f.children.end());
      f.children.erase(std::unique(f.children.begin(), f.children.end()),
                       f.children.end());
      stack.push_back(std::move(f));
    };
    push(star);
    int result = 0;
    while (!stack.empty()) {
      Frame& f = stack.back();
      bool descended = false;
      while (f.next < f.children.size()) {
        if (auto it = memo_.find(f.children[f.next]); it != memo_.end()) {
          f.seen.add(it->second);
          ++f.next;
          continue;
        }
        push(f.children[f.next]);
        descended = true;
        break;
      }
      if (descended) continue;
      result = f.seen.mex();
      memo_.emplace(f.star, result);
      stack.pop_back();
    }
    return result;
  }

  const SubtractionSet& set() const { return L_; }
  PathGrundyTable& paths() { return paths_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  SubtractionSet L_;
  PathGrundyTable paths_;
  std::unordered_map<SubdividedStar, int, StarHash> memo_;
};

// Agrees with grundy() on the realized graph; fast path for stars.
inline int grundy_star(const SubdividedStar& star, const SubtractionSet& L,
                       StarSolver& memo) {
  if (memo.set() != L)
    throw std::invalid_argument("star solver bound to a different L");
  return memo.grundy(star);
}

}  // namespace csg
