#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace csg {

// An eventually periodic sequence of Grundy values, split into its minimal
// preperiod and primitive period.
struct GrundySequence {
  std::vector<int> preperiod;
  std::vector<int> period;

  int value_at(int k) const {
    if (k < static_cast<int>(preperiod.size()))
      return preperiod[static_cast<std::size_t>(k)];
    int i = (k - static_cast<int>(preperiod.size())) %
            static_cast<int>(period.size());
    return period[static_cast<std::size_t>(i)];
  }

  bool operator==(const GrundySequence&) const = default;
};

// Empirical period detection. Accepts the smallest period T (and for it the
// smallest preperiod k0) such that seq[k+T] = seq[k] holds for every sampled
// k >= k0 to the end of the data, with at least confirm_window + 2T confirmed
// positions. Returns nullopt when no period passes within the data; nothing
// is fabricated.
inline std::optional<GrundySequence> detect_period(std::span<const int> seq,
                                                   int confirm_window) {
  int n = static_cast<int>(seq.size());
  for (int T = 1; T <= n / 2; ++T) {
    int k0 = n - T;
    while (k0 > 0 && seq[static_cast<std::size_t>(k0 - 1)] ==
                         seq[static_cast<std::size_t>(k0 - 1 + T)])
      --k0;
    if (n - T - k0 >= confirm_window + 2 * T) {
      GrundySequence out;
      out.preperiod.assign(seq.begin(), seq.begin() + k0);
      out.period.assign(seq.begin() + k0, seq.begin() + k0 + T);
      return out;
    }
  }
  return std::nullopt;
}

namespace detail {

inline bool needs_brackets(const GrundySequence& gs) {
  for (int v : gs.preperiod)
    if (v > 9) return true;
  for (int v : gs.period)
    if (v > 9) return true;
  return false;
}

inline std::string digits(std::span<const int> values) {
  std::string s;
  for (int v : values) s += static_cast<char>('0' + v);
  return s;
}

inline std::string bracket_list(std::span<const int> values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(values[i]);
  }
  return s + "]";
}

}  // namespace detail

// "00112203(102)" style: preperiod digits, then the period in parentheses.
// Any value >= 10 switches both parts to comma-separated bracket lists, e.g.
// "([11,0])".
inline std::string format_sequence(const GrundySequence& gs) {
  if (gs.period.empty()) throw std::invalid_argument("period must be nonempty");
  if (detail::needs_brackets(gs)) {
    std::string s;
    if (!gs.preperiod.empty()) s += detail::bracket_list(gs.preperiod);
    return s + "(" + detail::bracket_list(gs.period) + ")";
  }
  return detail::digits(gs.preperiod) + "(" + detail::digits(gs.period) + ")";
}

namespace detail {

inline std::vector<int> parse_part(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  if (text.front() == '[') {
    if (text.back() != ']') throw std::invalid_argument("unterminated bracket list");
    std::string body = text.substr(1, text.size() - 2);
    std::size_t pos = 0;
    while (pos < body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - pos);
      if (item.empty()) throw std::invalid_argument("empty value in sequence");
      out.push_back(std::stoi(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad sequence digit");
    out.push_back(c - '0');
  }
  return out;
}

}  // namespace detail

// Inverse of format_sequence.
inline GrundySequence parse_sequence(const std::string& text) {
  std::size_t open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw std::invalid_argument("sequence text needs a (period) part");
  GrundySequence gs;
  gs.preperiod = detail::parse_part(text.substr(0, open));
  gs.period = detail::parse_part(text.substr(open + 1, text.size() - open - 2));
  if (gs.period.empty()) throw std::invalid_argument("period must be nonempty");
  return gs;
}

}  // namespace csg
