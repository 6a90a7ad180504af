#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "csg/graph.hpp"
#include "csg/solver.hpp"
#include "csg/star.hpp"
#include "csg/subtraction.hpp"

namespace csg {

// What a partial evaluator knows about a Grundy value.
struct PartialValue {
  enum class Kind { exact, at_least, unknown };

  Kind kind = Kind::unknown;
  int value = 0;

  static PartialValue exact(int v) { return {Kind::exact, v}; }
  static PartialValue at_least(int v) { return {Kind::at_least, v}; }
  static PartialValue unknown() { return {Kind::unknown, 0}; }

  bool admits(int actual) const {
    switch (kind) {
      case Kind::exact: return actual == value;
      case Kind::at_least: return actual >= value;
      case Kind::unknown: return true;
    }
    return false;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::exact: return "=" + std::to_string(value);
      case Kind::at_least: return ">=" + std::to_string(value);
      case Kind::unknown: return "?";
    }
    return "?";
  }

  bool operator==(const PartialValue&) const = default;
};

namespace detail {

inline StarSolver& star_solver_for(const SubtractionSet& L) {
  thread_local std::map<std::vector<int>, StarSolver> cache;
  auto it = cache.find(L.values());
  if (it == cache.end())
    it = cache.emplace(L.values(), StarSolver(L)).first;
  return it->second;
}

inline StarSolver& star_solver_interval(int n) {
  return star_solver_for(SubtractionSet::interval(n));
}

}  // namespace detail

// Grundy value of P_k under CSG(L). For L = I_N this is k mod (N+1); for
// L = {1,2,4} it is k mod 3; any other L falls back to the heap DP.
inline int path_grundy(int k, const SubtractionSet& L) {
  if (k < 0) throw std::invalid_argument("path length must be >= 0");
  if (int n = L.interval_bound()) return k % (n + 1);
  if (L.values() == std::vector<int>{1, 2, 4}) return k % 3;
  return detail::star_solver_for(L).paths().value(k);
}

// Size-only bounds for CSG(I_N): exact for |G| <= 1 and |G| in {N+1, N+2},
// >= 2 in between, unknown beyond.
inline PartialValue size_based_value(const Graph& g, int N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  int n = g.size();
  if (n <= 1) return PartialValue::exact(n);
  if (n <= N) return PartialValue::at_least(2);
  if (n == N + 1) return PartialValue::exact(0);
  if (n == N + 2) return PartialValue::exact(1);
  return PartialValue::unknown();
}

// The same case table evaluated for G.u.(N+1), still keyed on |G|.
inline PartialValue appended_size_based_value(const Graph& g, int anchor, int N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!g.empty() && (anchor < 0 || anchor >= g.size()))
    throw std::invalid_argument("anchor vertex not in base graph");
  return size_based_value(g, N);
}

// Grundy of the simple star S(1^t) under CSG(I_N), N >= 3, t >= 1.
inline int simple_star_grundy(int t, int N) {
  if (N < 3) throw std::domain_error("N < 3 is handled by the solver");
  if (t < 1) throw std::invalid_argument("t must be >= 1");
  if (t <= N - 1) return t % 2 == 1 ? 2 : 3;
  return (t - N) % 2;
}

// Grundy of S(1^t, k) under CSG(I_N): purely periodic in k with period N+1,
// so only the residues 0..N are ever solved. Base rows are cached per (N, t).
inline int simple_star_appended_grundy(int t, int k, int N) {
  if (t < 0 || k < 0) throw std::invalid_argument("t and k must be >= 0");
  if (N < 3) {
    std::vector<int> branches(static_cast<std::size_t>(t), 1);
    branches.push_back(k);
    return detail::star_solver_interval(N).grundy(SubdividedStar(branches));
  }
  if (t == 0) return (k + 1) % (N + 1);
  thread_local std::map<std::pair<int, int>, std::vector<int>> cache;
  auto it = cache.find({N, t});
  if (it == cache.end()) {
    std::vector<int> row(static_cast<std::size_t>(N) + 1);
    row[0] = simple_star_grundy(t, N);
    StarSolver& solver = detail::star_solver_interval(N);
    for (int k0 = 1; k0 <= N; ++k0) {
      std::vector<int> branches(static_cast<std::size_t>(t), 1);
      branches.push_back(k0);
      row[static_cast<std::size_t>(k0)] = solver.grundy(SubdividedStar(branches));
    }
    it = cache.emplace(std::pair{N, t}, std::move(row)).first;
  }
  return it->second[static_cast<std::size_t>(k % (N + 1))];
}

// Grundy of S(1,k,l) when 0 <= k,l < N.
inline int s1kl_small_formula(int k, int l, int N) {
  if (N < 3) throw std::domain_error("N < 3 is handled by the solver");
  if (k < 0 || l < 0 || k >= N || l >= N)
    throw std::invalid_argument("s1kl_small_formula requires 0 <= k,l < N");
  if (k + l <= N - 2 && k % 2 == 1 && l % 2 == 1) return k + l;
  if (k + l <= N - 2 && k == l && k != 0 && k % 2 == 0) return k + 1;
  return (k + l + 2) % (N + 1);
}

// Residue classes 0 and 1 of |S(1,k,l)| pin the value; anything else is >= 2.
inline PartialValue s1kl_residue01(int k, int l, int N) {
  if (k < 0 || l < 0) throw std::invalid_argument("k and l must be >= 0");
  int residue = (k + l + 2) % (N + 1);
  if (residue == 0) return PartialValue::exact(0);
  if (residue == 1) return PartialValue::exact(1);
  return PartialValue::at_least(2);
}

namespace detail {

// Base values of S(1,a,b) for the bounded residual table: formula when both
// sides are < N, residue when the size pins the value, the star solver
// otherwise.
inline int s1kl_base(int a, int b, int N) {
  if (a >= 0 && b >= 0 && a < N && b < N) return s1kl_small_formula(a, b, N);
  PartialValue res = s1kl_residue01(a, b, N);
  if (res.kind == PartialValue::Kind::exact) return res.value;
  return star_solver_interval(N).grundy(SubdividedStar({1, a, b}));
}

}  // namespace detail

// Grundy of S(1,k,l) under CSG(I_N) via the ultimate-periodicity reduction:
// both arms reduce mod N+1 except when one arm exceeds N while the other is
// congruent to N, which lands in the preperiodic strip k0+N+1.
inline int s1kl_grundy(int k, int l, int N) {
  if (k < 0 || l < 0) throw std::invalid_argument("k and l must be >= 0");
  if (N < 3)
    return detail::star_solver_interval(N).grundy(SubdividedStar({1, k, l}));
  int k0 = k % (N + 1);
  int l0 = l % (N + 1);
  if (k > N && l0 == N) return detail::s1kl_base(k0 + N + 1, N, N);
  if (l > N && k0 == N) return detail::s1kl_base(N, l0 + N + 1, N);
  return detail::s1kl_base(k0, l0, N);
}

// Inputs to the S(1,k,N) column cross-check: r_N and the counts x_k of stars
// S(1,i,N) in the current period window whose value exceeds N.
struct ClaimParams {
  int N = 0;
  int r_N = 0;
  std::map<int, int> x;
};

inline ClaimParams claim_params(int N) {
  if (N < 3) throw std::invalid_argument("claim defined for N >= 3");
  ClaimParams p;
  p.N = N;
  p.r_N = (N % 4 == 2 || N % 4 == 3) ? N / 2 : (N - 2) / 2;
  StarSolver& solver = detail::star_solver_interval(N);
  auto column = [&](int i) { return solver.grundy(SubdividedStar({1, i, N})); };
  for (int k = 1; k <= 2 * N; ++k) {
    int b = k % (N + 1);
    if (b < 1 || b > N - 1) continue;
    int a = k / (N + 1);
    int count = 0;
    for (int i = a * (N + 1) + 1; i < k; ++i)
      if (column(i) > N) ++count;
    p.x[k] = count;
  }
  return p;
}

// The claimed value of S(1,k,N), k in [1,2N] \ {N,N+1}. A cross-check against
// the solver, never the production path.
inline int claim_star1kN_grundy(int k, const ClaimParams& params) {
  int N = params.N;
  if (k < 1 || k > 2 * N || k == N || k == N + 1)
    throw std::invalid_argument("claim excludes k in {N, N+1} and k outside [1,2N]");
  if (k == N - 1 || k == 2 * N) return N;
  if (k == N - 2 || k == 2 * N - 1) return N - 1;
  std::vector<int> row;
  for (int i = 0; i < N; ++i) row.push_back(s1kl_grundy(k, i, N));
  int m = mex(row);
  if ((k >= 1 && k <= params.r_N) || m >= N - 1)
    return N + params.x.at(k) + 1;
  return m;
}

// CSG(1,2,3) on subdivided stars: every branch reduces mod 4.
inline int csg123_star_grundy(const SubdividedStar& star) {
  std::vector<int> reduced;
  for (int b : star.branches()) reduced.push_back(b % 4);
  return detail::star_solver_interval(3).grundy(SubdividedStar(std::move(reduced)));
}

enum class Csg124Family { S11k, S111k, S12k, S112k, S22k, S122k, S1111k };

// The per-family periodic values under CSG(1,2,4), indexed by k mod 3.
inline int csg124_family_formula(Csg124Family family, int k) {
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  static constexpr int kPeriods[][3] = {
      {0, 1, 2},  // S11k
      {1, 0, 3},  // S111k
      {1, 2, 0},  // S12k
      {2, 3, 1},  // S112k
      {2, 0, 1},  // S22k
      {0, 1, 2},  // S122k
      {0, 1, 2},  // S1111k
  };
  return kPeriods[static_cast<int>(family)][k % 3];
}

namespace detail {

struct FamilyPattern {
  Csg124Family family;
  std::vector<int> fixed;  // sorted descending, like canonical branches
};

inline const std::vector<FamilyPattern>& csg124_patterns() {
  static const std::vector<FamilyPattern> patterns = {
      {Csg124Family::S1111k, {1, 1, 1, 1}}, {Csg124Family::S122k, {2, 2, 1}},
      {Csg124Family::S112k, {2, 1, 1}},     {Csg124Family::S111k, {1, 1, 1}},
      {Csg124Family::S22k, {2, 2}},         {Csg124Family::S12k, {2, 1}},
      {Csg124Family::S11k, {1, 1}},
  };
  return patterns;
}

// Matches `branches` = fixed + one leftover element (or none, k = 0).
inline bool match_family(const std::vector<int>& branches,
                         const FamilyPattern& pattern, int* k_out) {
  std::vector<int> rest = branches;
  for (int f : pattern.fixed) {
    auto it = std::find(rest.begin(), rest.end(), f);
    if (it == rest.end()) return false;
    rest.erase(it);
  }
  if (rest.size() > 1) return false;
  *k_out = rest.empty() ? 0 : rest.front();
  return true;
}

}  // namespace detail

// CSG(1,2,4) on subdivided stars: every branch reduces mod 3; the lemma
// families answer directly, everything else goes to the star solver.
inline int csg124_star_grundy(const SubdividedStar& star) {
  std::vector<int> reduced;
  for (int b : star.branches()) reduced.push_back(b % 3);
  SubdividedStar r(std::move(reduced));
  for (const detail::FamilyPattern& pattern : detail::csg124_patterns()) {
    int k = 0;
    if (detail::match_family(r.branches(), pattern, &k))
      return csg124_family_formula(pattern.family, k);
  }
  return detail::star_solver_for(SubtractionSet{1, 2, 4}).grundy(r);
}

}  // namespace csg
