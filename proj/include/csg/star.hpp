#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "csg/graph.hpp"
#include "csg/subtraction.hpp"

namespace csg {

// A subdivided star S(l1,...,lt): a center vertex with t pendant paths.
// Canonical form stores the branch lengths sorted descending with zeros
// dropped; S() is the single vertex. A star with at most two positive
// branches is a path of 1 + sum(branches) vertices.
class SubdividedStar {
 public:
  SubdividedStar() = default;

  explicit SubdividedStar(std::vector<int> branches) {
    for (int b : branches)
      if (b < 0) throw std::invalid_argument("branch lengths must be >= 0");
    std::erase(branches, 0);
    std::sort(branches.begin(), branches.end(), std::greater<int>());
    branches_ = std::move(branches);
  }

  SubdividedStar(std::initializer_list<int> branches)
      : SubdividedStar(std::vector<int>(branches)) {}

  const std::vector<int>& branches() const { return branches_; }

  // |S| = 1 + sum of branch lengths.
  int order() const {
    return 1 + std::accumulate(branches_.begin(), branches_.end(), 0);
  }

  bool is_path() const { return branches_.size() <= 2; }

  SubdividedStar with_branch_delta(std::size_t index, int delta) const {
    std::vector<int> b = branches_;
    b.at(index) += delta;
    return SubdividedStar(std::move(b));
  }

  std::string to_string() const {
    std::string s = "S(";
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(branches_[i]);
    }
    return s + ")";
  }

  bool operator==(const SubdividedStar&) const = default;
  auto operator<=>(const SubdividedStar&) const = default;

 private:
  std::vector<int> branches_;
};

inline Graph realize(const SubdividedStar& star) {
  return make_subdivided_star(star.branches());
}

struct StarHash {
  std::size_t operator()(const SubdividedStar& s) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int b : s.branches()) {
      h ^= static_cast<std::size_t>(b) + 1;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

// One legal move on a subdivided star.
//  - tip: remove `removed` vertices from the outer end of one branch;
//  - center: remove the center, every branch but one, and a center-side
//    prefix of the survivor, leaving a path;
//  - whole: remove the entire star.
// `result` is canonical; it is meaningless for whole-graph moves.
struct StarMove {
  enum class Kind { tip, center, whole };
  Kind kind;
  int removed;
  SubdividedStar result;
};

// Every legal move exactly once, mirroring the removal sets of the realized
// graph: equal-length branches yield one move each.
inline std::vector<StarMove> star_removals(const SubdividedStar& star,
                                           const SubtractionSet& L) {
  std::vector<StarMove> out;
  const std::vector<int>& br = star.branches();
  for (std::size_t i = 0; i < br.size(); ++i) {
    for (int c : L.values()) {
      if (c > br[i]) break;
      out.push_back({StarMove::Kind::tip, c, star.with_branch_delta(i, -c)});
    }
  }
  int order = star.order();
  for (std::size_t j = 0; j < br.size(); ++j) {
    // removing center + all other branches + p vertices of branch j leaves
    // the path P_{br[j]-p}, i.e. the star S(br[j]-p-1)
    int base = order - br[j];
    for (int p = 0; p + 1 <= br[j]; ++p) {
      if (L.contains(base + p))
        out.push_back({StarMove::Kind::center, base + p,
                       SubdividedStar({br[j] - p - 1})});
    }
  }
  if (L.contains(order))
    out.push_back({StarMove::Kind::whole, order, SubdividedStar()});
  return out;
}

}  // namespace csg
