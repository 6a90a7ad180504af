#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "csg/closed_forms.hpp"
#include "csg/graph.hpp"
#include "csg/periodicity.hpp"
#include "csg/solver.hpp"
#include "csg/spec_lang.hpp"
#include "csg/star.hpp"
#include "csg/subtraction.hpp"

namespace csg {

// Outcome of one desk-scale verification run. A passing report has zero
// mismatches; every mismatch names a reproducing instance in the graph
// mini-language.
struct VerificationReport {
  struct Mismatch {
    std::string instance;
    std::string expected;
    std::string got;
  };

  std::string id;
  long checked = 0;
  std::vector<Mismatch> mismatches;
  double millis = 0.0;

  bool passed() const { return mismatches.empty(); }

  void check(bool ok, const std::string& instance, const std::string& expected,
             const std::string& got) {
    ++checked;
    if (!ok) mismatches.push_back({instance, expected, got});
  }

  void check_value(int got, int expected, const std::string& instance) {
    check(got == expected, instance, std::to_string(expected),
          std::to_string(got));
  }
};

// One line per check: id, pass/fail, count, millis.
inline std::string report_line(const VerificationReport& r, bool with_timing) {
  std::ostringstream os;
  os << r.id << (r.passed() ? " pass " : " fail ") << r.checked << " "
     << (with_timing ? static_cast<long>(r.millis) : 0);
  return os.str();
}

namespace detail {

class ReportTimer {
 public:
  explicit ReportTimer(VerificationReport& report) : report_(report) {}
  ~ReportTimer() {
    auto end = std::chrono::steady_clock::now();
    report_.millis =
        std::chrono::duration<double, std::milli>(end - start_).count();
  }

 private:
  VerificationReport& report_;
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

inline std::string sstar_spec(std::span<const int> branches) {
  if (branches.empty()) return "path:1";
  std::string s = "sstar:";
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(branches[i]);
  }
  return s;
}

// Nondecreasing branch tuples with 1..max_branches entries in [1, max_len],
// realized order bounded by size_cap.
inline std::vector<std::vector<int>> star_range(int max_branches, int max_len,
                                                int size_cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> grow = [&](int low, int left) {
    if (!cur.empty()) out.push_back(cur);
    if (left == 0) return;
    for (int b = low; b <= max_len; ++b) {
      int total = 1 + b;
      for (int x : cur) total += x;
      if (total > size_cap) break;
      cur.push_back(b);
      grow(b, left - 1);
      cur.pop_back();
    }
  };
  grow(1, max_branches);
  return out;
}

}  // namespace detail

// Checks the cardinality-lifting hypothesis on concrete families: every
// family member satisfies grundy = alpha[|G| mod T], every probe's legal
// removal sizes hit exactly the residues {1,...,T-1}, and on success each
// probe satisfies the alpha pattern itself.
inline VerificationReport verify_lifting_hypothesis(
    std::span<const Graph> family, int T, std::span<const int> alphas,
    std::span<const Graph> probes, const SubtractionSet& L) {
  std::set<int> alpha_set(alphas.begin(), alphas.end());
  std::set<int> want_alpha;
  for (int i = 0; i < T; ++i) want_alpha.insert(i);
  if (static_cast<int>(alphas.size()) != T || alpha_set != want_alpha)
    throw std::invalid_argument("alphas must be a bijection onto 0..T-1");

  VerificationReport report;
  report.id = "lifting";
  detail::ReportTimer timer(report);
  TranspositionTable memo;
  for (const Graph& g : family) {
    int want = alphas[static_cast<std::size_t>(g.size() % T)];
    report.check_value(grundy(g, L, memo), want,
                       "family member with " + std::to_string(g.size()) + " vertices");
  }
  for (const Graph& g : probes) {
    std::set<int> residues;
    for (VertexSet s : enumerate_removals(g, g.vertices(), L))
      residues.insert(vs_size(s) % T);
    std::set<int> want;
    for (int i = 1; i < T; ++i) want.insert(i);
    bool covered = residues == want;
    report.check(covered, "probe with " + std::to_string(g.size()) + " vertices",
                 "removal residues 1..T-1", covered ? "ok" : "other residues");
    if (covered) {
      int want_value = alphas[static_cast<std::size_t>(g.size() % T)];
      report.check_value(grundy(g, L, memo), want_value,
                         "probe with " + std::to_string(g.size()) + " vertices");
    }
  }
  return report;
}

// Grundy values of S(1^t, k) under CSG(I_4) for t <= 10, k <= 8, row k and
// column t, as printed in the source table.
inline const std::array<std::array<int, 11>, 9>& table1_I4() {
  static const std::array<std::array<int, 11>, 9> kTable = {{
      {1, 2, 3, 2, 0, 1, 0, 1, 0, 1, 0},
      {2, 3, 2, 0, 1, 0, 1, 0, 1, 0, 1},
      {3, 4, 0, 1, 2, 3, 2, 3, 2, 3, 2},
      {4, 0, 1, 4, 3, 2, 3, 2, 3, 2, 3},
      {0, 1, 5, 3, 4, 5, 4, 5, 4, 5, 4},
      {1, 2, 3, 2, 0, 1, 0, 1, 0, 1, 0},
      {2, 3, 2, 0, 1, 0, 1, 0, 1, 0, 1},
      {3, 4, 0, 1, 2, 3, 2, 3, 2, 3, 2},
      {4, 0, 1, 4, 3, 2, 3, 2, 3, 2, 3},
  }};
  return kTable;
}

// All 99 table cells, via exhaustive search on the realized graph and via the
// purely-periodic reduction.
inline VerificationReport verify_table_S1tk_I4() {
  VerificationReport report;
  report.id = "table1-I4";
  detail::ReportTimer timer(report);
  SubtractionSet L = SubtractionSet::interval(4);
  TranspositionTable memo;
  for (int t = 0; t <= 10; ++t) {
    for (int k = 0; k <= 8; ++k) {
      int want = table1_I4()[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)];
      std::vector<int> branches(static_cast<std::size_t>(t), 1);
      if (k > 0) branches.push_back(k);
      std::string instance = detail::sstar_spec(branches);
      report.check_value(grundy(make_subdivided_star(branches), L, memo), want,
                         instance + " [search]");
      report.check_value(simple_star_appended_grundy(t, k, 4), want,
                         instance + " [reduction]");
    }
  }
  return report;
}

// Branch reduction modulo `step`: every star in range keeps its value when a
// branch grows by `step`, and equals its fully reduced form.
inline VerificationReport verify_branch_reduction(
    const std::string& id, const SubtractionSet& L, int step, int max_branches,
    int max_len, int size_cap, const std::function<int(const SubdividedStar&)>&
    closed_form) {
  VerificationReport report;
  report.id = id;
  detail::ReportTimer timer(report);
  StarSolver solver(L);
  for (const std::vector<int>& branches :
       detail::star_range(max_branches, max_len, size_cap)) {
    SubdividedStar star(branches);
    int value = solver.grundy(star);
    std::string instance = detail::sstar_spec(branches);
    for (std::size_t i = 0; i < star.branches().size(); ++i) {
      int extended = solver.grundy(star.with_branch_delta(i, step));
      report.check(extended == value, instance + " +branch " + std::to_string(i),
                   std::to_string(value), std::to_string(extended));
    }
    std::vector<int> reduced;
    for (int b : star.branches()) reduced.push_back(b % step);
    report.check_value(solver.grundy(SubdividedStar(reduced)), value,
                       instance + " [mod-" + std::to_string(step) + "]");
    if (closed_form)
      report.check_value(closed_form(star), value, instance + " [closed form]");
  }
  return report;
}

inline VerificationReport verify_theorem_123(int max_branches, int max_len,
                                             int size_cap) {
  VerificationReport report = verify_branch_reduction(
      "thm-123", SubtractionSet::interval(3), 4, max_branches, max_len,
      size_cap, csg123_star_grundy);
  report.id = "thm-123";
  return report;
}

// The spider fixture displayed alongside the CSG(1,2,4) analysis.
inline const std::vector<std::pair<std::vector<int>, int>>& figure2_fixture() {
  static const std::vector<std::pair<std::vector<int>, int>> kFixture = {
      {{3, 3, 3}, 1}, {{3, 3, 2}, 0}, {{3, 3, 1}, 2}, {{3, 2, 2}, 2},
      {{3, 2, 1}, 1}, {{3, 3}, 1},    {{3, 1, 1}, 0}, {{2, 2, 2}, 1},
      {{2, 2, 1}, 0}, {{3, 2}, 0},    {{2, 2}, 2},    {{2, 2, 3}, 2},
      {{2, 3, 3}, 0},
  };
  return kFixture;
}

// grundy = |G| mod 3 for the eight listed stars, plus the two exceptions.
inline const std::vector<std::pair<std::vector<int>, int>>& small_ones_124_fixture() {
  static const std::vector<std::pair<std::vector<int>, int>> kFixture = {
      {{1, 1, 1}, 1},    {{1, 1, 2}, 2},    {{1, 1, 3}, 0}, {{1, 1, 1, 3}, 1},
      {{1, 2, 2}, 0},    {{1, 2, 3}, 1},    {{1, 1, 2, 2}, 1},
      {{1, 1, 2, 3}, 2}, {{1, 1, 1, 1}, 0}, {{1, 1, 1, 2}, 3},
  };
  return kFixture;
}

inline VerificationReport verify_theorem_124(int max_branches, int max_len,
                                             int size_cap) {
  VerificationReport report = verify_branch_reduction(
      "thm-124", SubtractionSet{1, 2, 4}, 3, max_branches, max_len, size_cap,
      csg124_star_grundy);
  report.id = "thm-124";
  StarSolver solver(SubtractionSet{1, 2, 4});
  for (const auto& [branches, want] : figure2_fixture())
    report.check_value(solver.grundy(SubdividedStar(branches)), want,
                       detail::sstar_spec(branches));
  for (const auto& [branches, want] : small_ones_124_fixture())
    report.check_value(solver.grundy(SubdividedStar(branches)), want,
                       detail::sstar_spec(branches));
  return report;
}

// Appending N+1 fails to preserve the value once L = I_N u {2N+4}: the star
// with N+2 leaves and its appended variant differ.
inline VerificationReport verify_obs_plus_M(int N) {
  VerificationReport report;
  report.id = "obs-plus-M-N" + std::to_string(N);
  detail::ReportTimer timer(report);
  SubtractionSet L = SubtractionSet::interval(N).with(2 * N + 4);
  std::vector<int> leaves(static_cast<std::size_t>(N) + 2, 1);
  Graph star = make_subdivided_star(leaves);
  Graph appended = append_path(star, 0, N + 1);
  TranspositionTable memo;
  int g_star = grundy(star, L, memo);
  int g_appended = grundy(appended, L, memo);
  report.check(g_star != g_appended,
               "star:1^" + std::to_string(N + 2) + " vs append(star:1^" +
                   std::to_string(N + 2) + ",u=0,k=" + std::to_string(N + 1) + ")",
               "different grundy values",
               std::to_string(g_star) + " == " + std::to_string(g_appended));
  return report;
}

// The S(1,k,l) reduction against the solver, with the two anchor values when
// N = 8.
inline VerificationReport verify_s1kl_theorem(int N, int k_max, int l_max) {
  VerificationReport report;
  report.id = "s1kl-N" + std::to_string(N);
  detail::ReportTimer timer(report);
  StarSolver solver(SubtractionSet::interval(N));
  for (int k = 0; k <= k_max; ++k)
    for (int l = 0; l <= l_max; ++l)
      report.check_value(s1kl_grundy(k, l, N),
                         solver.grundy(SubdividedStar({1, k, l})),
                         detail::sstar_spec(std::vector<int>{1, k, l}));
  if (N == 8) {
    report.check_value(solver.grundy(SubdividedStar({1, 8, 2})), 10, "sstar:1,8,2");
    report.check_value(s1kl_grundy(8, 2, 8), 10, "sstar:1,8,2 [reduction]");
    report.check_value(solver.grundy(SubdividedStar({1, 8, 11})), 6, "sstar:1,8,11");
    report.check_value(s1kl_grundy(8, 11, 8), 6, "sstar:1,8,11 [reduction]");
  }
  return report;
}

// Certification spot-checks: certify, then replay each certificate.
inline VerificationReport verify_certificates() {
  VerificationReport report;
  report.id = "certificates";
  detail::ReportTimer timer(report);
  struct Case {
    std::string name;
    Graph base;
    int anchor;
    SubtractionSet L;
  };
  std::vector<Case> cases;
  cases.push_back({"path@I:3", Graph(), -1, SubtractionSet::interval(3)});
  cases.push_back({"star:1^3@0 I:4", make_subdivided_star({1, 1, 1}), 0,
                   SubtractionSet::interval(4)});
  cases.push_back({"sstar:1,1@0 L=2,4,7", make_subdivided_star({1, 1}), 0,
                   SubtractionSet{2, 4, 7}});
  for (const Case& c : cases) {
    CertifyOutcome outcome = certify_period(c.base, c.anchor, c.L, 60);
    report.check(outcome.certificate.has_value(), c.name, "certificate",
                 outcome.certificate ? "ok" : outcome.failure);
    if (!outcome.certificate) continue;
    std::string diag;
    bool replayed = replay_certificate(*outcome.certificate, &diag);
    report.check(replayed, c.name + " replay", "replay matches solver",
                 replayed ? "ok" : diag);
  }
  return report;
}

struct VerificationSuite {
  std::string id;
  std::function<VerificationReport()> run;
};

inline std::vector<VerificationSuite> default_suites() {
  std::vector<VerificationSuite> suites;
  suites.push_back({"lifting-paths-I3", [] {
    std::vector<Graph> family, probes;
    for (int k = 0; k <= 12; ++k) family.push_back(make_path(k));
    for (int k = 0; k <= 6; ++k) {
      std::vector<int> branches{1, 1};
      if (k > 0) branches.push_back(k);
      probes.push_back(make_subdivided_star(branches));
    }
    std::vector<int> alphas{0, 1, 2, 3};
    VerificationReport r = verify_lifting_hypothesis(
        family, 4, alphas, probes, SubtractionSet::interval(3));
    r.id = "lifting-paths-I3";
    return r;
  }});
  suites.push_back({"lifting-124-S11k", [] {
    std::vector<Graph> family, probes;
    SubtractionSet L{1, 2, 4};
    for (int k = 0; k <= 12; ++k) family.push_back(make_path(k));
    for (int k = 1; k <= 8; ++k)
      family.push_back(make_subdivided_star({1, 1, k}));
    for (int k = 4; k <= 8; ++k)
      probes.push_back(make_subdivided_star({1, 1, k}));
    std::vector<int> alphas{0, 1, 2};
    VerificationReport r = verify_lifting_hypothesis(family, 3, alphas, probes, L);
    r.id = "lifting-124-S11k";
    return r;
  }});
  suites.push_back({"table1-I4", [] { return verify_table_S1tk_I4(); }});
  suites.push_back({"table2-small-s1kl", [] {
    VerificationReport report;
    report.id = "table2-small-s1kl";
    detail::ReportTimer timer(report);
    for (int N = 3; N <= 8; ++N) {
      StarSolver solver(SubtractionSet::interval(N));
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l)
          report.check_value(
              s1kl_small_formula(k, l, N),
              solver.grundy(SubdividedStar({1, k, l})),
              detail::sstar_spec(std::vector<int>{1, k, l}) + " N=" + std::to_string(N));
    }
    return report;
  }});
  suites.push_back({"s1kl-N3", [] { return verify_s1kl_theorem(3, 16, 16); }});
  suites.push_back({"s1kl-N8", [] { return verify_s1kl_theorem(8, 9, 12); }});
  suites.push_back({"thm-123", [] { return verify_theorem_123(4, 7, 20); }});
  suites.push_back({"thm-124", [] { return verify_theorem_124(4, 7, 20); }});
  suites.push_back({"obs-plus-M-N2", [] { return verify_obs_plus_M(2); }});
  suites.push_back({"obs-plus-M-N3", [] { return verify_obs_plus_M(3); }});
  suites.push_back({"certificates", [] { return verify_certificates(); }});
  return suites;
}

}  // namespace csg
