#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "csg/graph.hpp"
#include "csg/sequence.hpp"
#include "csg/solver.hpp"
#include "csg/subtraction.hpp"

namespace csg {

// G.u.k as a value: base graph, anchor vertex, appended path length.
// anchor = -1 with an empty base realizes the bare path P_k.
struct AppendSpec {
  Graph base;
  int anchor = -1;
  int k = 0;
};

inline Graph realize(const AppendSpec& spec) {
  return append_path(spec.base, spec.base.empty() ? 0 : spec.anchor, spec.k);
}

// f(0..k_max) where f(k) = grundy of base.anchor.k. One appended graph is
// built at k_max and every shorter position is a live subset of it, so the
// memo is shared across the whole sweep.
inline std::vector<int> appended_sequence(const Graph& base, int anchor,
                                          const SubtractionSet& L, int k_max,
                                          TranspositionTable& memo) {
  if (base.size() + k_max > kMaxVertices)
    throw capacity_error("appended sequence exceeds the 64-vertex capacity");
  Graph big = append_path(base, base.empty() ? 0 : anchor, k_max);
  VertexSet base_mask = base.vertices();
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    VertexSet prefix =
        k == 0 ? 0 : ((VertexSet{1} << k) - 1) << base.size();
    out.push_back(grundy(big, base_mask | prefix, L, memo));
  }
  return out;
}

inline std::vector<int> appended_sequence(const Graph& base, int anchor,
                                          const SubtractionSet& L, int k_max) {
  TranspositionTable memo;
  return appended_sequence(base, anchor, L, k_max, memo);
}

// A constructive periodicity certificate for the family k -> base.anchor.k.
// Families are the connected subgraphs of the base reachable by legal
// removals that spare the anchor, closed transitively; each one certifies
// f(k + period) = f(k) for all k >= k_start via a repeated state vector
// (a window of max(L) consecutive values at indices aligned modulo the lcm
// of the dependency periods).
struct PeriodCertificate {
  struct Family {
    VertexSet live = 0;
    int period = 0;
    int k_start = 0;
    std::vector<int> window;      // f(k_start .. k_start + max(L) - 1)
    std::vector<int> seed;        // f(0 .. k_start + max(L) - 1)
    std::vector<VertexSet> deps;  // child families; the path is implicit
  };

  Graph base;
  int anchor = -1;
  SubtractionSet L{1};
  int path_period = 0;
  int path_start = 0;
  std::vector<Family> families;  // ascending |live|; the subject comes last

  const Family& subject() const { return families.back(); }
  int period() const { return subject().period; }
  int k_start() const { return subject().k_start; }

  std::string to_text() const {
    std::ostringstream os;
    os << "subject |base|=" << base.size() << " anchor=" << anchor
       << " L=" << L.to_string() << " T=" << period()
       << " start=" << k_start() << "\n";
    os << "path T=" << path_period << " start=" << path_start << "\n";
    for (const Family& f : families) {
      os << "family live=0x" << std::hex << f.live << std::dec
         << " T=" << f.period << " start=" << f.k_start << " deps=path";
      for (VertexSet d : f.deps) os << ",0x" << std::hex << d << std::dec;
      os << " window=";
      for (std::size_t i = 0; i < f.window.size(); ++i)
        os << (i ? "," : "") << f.window[i];
      os << "\n";
    }
    return os.str();
  }
};

struct CertifyOutcome {
  std::optional<PeriodCertificate> certificate;
  std::string failure;  // nonempty when the certificate is withheld
  int bound = 0;        // largest k examined
};

namespace detail {

inline bool window_equal(const std::vector<int>& seq, int a, int b, int w) {
  for (int i = 1; i <= w; ++i)
    if (seq[static_cast<std::size_t>(a + i)] != seq[static_cast<std::size_t>(b + i)])
      return false;
  return true;
}

// Scans for k1 < k2 with k2 - k1 a multiple of `align`, both at least k_min,
// whose forward windows of length w coincide.
inline bool find_repeat(const std::vector<int>& seq, int k_min, int align,
                        int w, int* k1_out, int* k2_out) {
  int last = static_cast<int>(seq.size()) - 1 - w;
  for (int k1 = k_min; k1 <= last; ++k1)
    for (int k2 = k1 + align; k2 <= last; k2 += align)
      if (window_equal(seq, k1, k2, w)) {
        *k1_out = k1;
        *k2_out = k2;
        return true;
      }
  return false;
}

}  // namespace detail

// Certifies eventual periodicity of k -> grundy(base.anchor.k). Fails (with
// the bound reported) when no state-vector repeat appears within k <= bound.
inline CertifyOutcome certify_period(const Graph& base, int anchor,
                                     const SubtractionSet& L, int bound = 200) {
  CertifyOutcome out;
  int room = kMaxVertices - base.size();
  out.bound = std::min(bound, room);
  const int w = L.max();

  // Path sequence first: its window alone is the state vector.
  PathGrundyTable paths(L);
  std::vector<int> path_seq;
  for (int k = 0; k <= out.bound; ++k) path_seq.push_back(paths.value(k));
  int p1 = 0, p2 = 0;
  if (!detail::find_repeat(path_seq, w, 1, w, &p1, &p2)) {
    out.failure = "no repeated path window within bound " +
                  std::to_string(out.bound);
    return out;
  }

  PeriodCertificate cert;
  cert.base = base;
  cert.anchor = anchor;
  cert.L = L;
  cert.path_period = p2 - p1;
  cert.path_start = p1 + 1;

  if (base.empty()) {
    PeriodCertificate::Family f;
    f.live = 0;
    f.period = cert.path_period;
    f.k_start = cert.path_start;
    f.seed.assign(path_seq.begin(), path_seq.begin() + f.k_start + w);
    f.window.assign(f.seed.end() - w, f.seed.end());
    cert.families.push_back(std::move(f));
    out.certificate = std::move(cert);
    return out;
  }

  if (anchor < 0 || anchor >= base.size())
    throw std::invalid_argument("anchor vertex not in base graph");

  // Dependency closure: subgraph families reachable by anchor-sparing moves.
  VertexSet anchor_bit = vs_single(anchor);
  std::vector<VertexSet> order{base.vertices()};
  std::map<VertexSet, std::vector<VertexSet>> children;
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexSet live = order[i];
    std::vector<VertexSet>& kids = children[live];
    for_each_removal(base, live, L, [&](VertexSet s) {
      if (s & anchor_bit) return;
      kids.push_back(live & ~s);
    });
    std::sort(kids.begin(), kids.end());
    kids.erase(std::unique(kids.begin(), kids.end()), kids.end());
    for (VertexSet kid : kids)
      if (!children.contains(kid)) {
        order.push_back(kid);
        children[kid];  // reserve the slot so the kid is visited once
      }
  }
  std::sort(order.begin(), order.end(), [](VertexSet a, VertexSet b) {
    return vs_size(a) != vs_size(b) ? vs_size(a) < vs_size(b) : a < b;
  });

  Graph big = append_path(base, anchor, out.bound);
  TranspositionTable memo;
  std::map<VertexSet, PeriodCertificate::Family> built;
  for (VertexSet live : order) {
    long long align = cert.path_period;
    int dep_start = cert.path_start;
    for (VertexSet kid : children[live]) {
      const PeriodCertificate::Family& k = built.at(kid);
      align = std::lcm(align, static_cast<long long>(k.period));
      dep_start = std::max(dep_start, k.k_start);
    }
    if (align > out.bound) {
      out.failure = "dependency period lcm exceeds bound for family live=0x" +
                    std::to_string(live);
      return out;
    }

    std::vector<int> seq;
    for (int k = 0; k <= out.bound; ++k) {
      VertexSet prefix = k == 0 ? 0 : ((VertexSet{1} << k) - 1) << base.size();
      seq.push_back(grundy(big, live | prefix, L, memo));
    }
    int k1 = 0, k2 = 0;
    if (!detail::find_repeat(seq, dep_start + w, static_cast<int>(align), w,
                             &k1, &k2)) {
      std::ostringstream os;
      os << "no state-vector repeat within bound " << out.bound
         << " for family live=0x" << std::hex << live;
      out.failure = os.str();
      return out;
    }
    PeriodCertificate::Family f;
    f.live = live;
    f.period = k2 - k1;
    f.k_start = k1 + 1;
    f.seed.assign(seq.begin(), seq.begin() + f.k_start + w);
    f.window.assign(f.seed.end() - w, f.seed.end());
    f.deps = children[live];
    built.emplace(live, std::move(f));
  }
  for (VertexSet live : order)
    cert.families.push_back(std::move(built.at(live)));
  out.certificate = std::move(cert);
  return out;
}

inline CertifyOutcome certify_period(const AppendSpec& family,
                                     const SubtractionSet& L, int bound = 200) {
  return certify_period(family.base, family.anchor, L, bound);
}

// Replays a certificate: every family's values beyond its seed are recomputed
// purely through the mex recurrence over the certificate's dependencies (own
// window, child families, path values), then checked for the certified
// periodicity and against the solver, for three periods past k_start.
inline bool replay_certificate(const PeriodCertificate& cert,
                               std::string* diagnostic = nullptr) {
  auto fail = [&](const std::string& why) {
    if (diagnostic) *diagnostic = why;
    return false;
  };
  const int w = cert.L.max();
  const PeriodCertificate::Family& subject = cert.families.back();
  int horizon = subject.k_start + w + 3 * subject.period;
  if (cert.base.size() + horizon > kMaxVertices)
    horizon = kMaxVertices - cert.base.size();

  PathGrundyTable paths(cert.L);
  std::map<VertexSet, std::vector<int>> extended;
  for (const PeriodCertificate::Family& fam : cert.families) {
    std::vector<int> ext = fam.seed;
    for (int k = static_cast<int>(ext.size()); k <= horizon; ++k) {
      std::vector<int> options;
      for (int c : cert.L.values())
        options.push_back(ext[static_cast<std::size_t>(k - c)]);
      for (VertexSet kid : fam.deps)
        options.push_back(extended.at(kid)[static_cast<std::size_t>(k)]);
      int live_size = cert.base.empty() ? 0 : vs_size(fam.live);
      if (!cert.base.empty())
        for (int c : cert.L.values())
          if (c >= live_size) options.push_back(paths.value(k - (c - live_size)));
      ext.push_back(mex(options));
    }
    // certified periodicity must hold on the replayed values
    for (int k = fam.k_start; k + fam.period <= horizon; ++k)
      if (ext[static_cast<std::size_t>(k)] !=
          ext[static_cast<std::size_t>(k + fam.period)])
        return fail("replayed family 0x" + std::to_string(fam.live) +
                    " breaks its period at k=" + std::to_string(k));
    extended[fam.live] = std::move(ext);
  }

  // and the replayed subject must match an independent solver sweep
  std::vector<int> reference =
      appended_sequence(cert.base, cert.anchor, cert.L, horizon);
  const std::vector<int>& replayed = extended.at(subject.live);
  for (int k = 0; k <= horizon; ++k)
    if (replayed[static_cast<std::size_t>(k)] !=
        reference[static_cast<std::size_t>(k)])
      return fail("replayed subject diverges from the solver at k=" +
                  std::to_string(k));
  return true;
}

}  // namespace csg
