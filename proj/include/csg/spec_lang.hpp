#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "csg/graph.hpp"
#include "csg/subtraction.hpp"

namespace csg {

// Graph mini-language, shared by the CLI and test fixtures:
//   path:7
//   star:1^4
//   sstar:1,2,3
//   append(<spec>,u=<idx>,k=<n>)
//   edges:0-1,1-2,...        (vertices implicit 0..max)
// Parsing and formatting round-trip bit-exactly on canonical spellings.
struct GraphSpec {
  enum class Kind { path, star, sstar, append, edges };

  Kind kind = Kind::path;
  int path_len = 0;
  int star_leaves = 0;
  std::vector<int> sstar_branches;
  std::shared_ptr<const GraphSpec> append_base;
  int append_anchor = 0;
  int append_len = 0;
  std::vector<std::pair<int, int>> edge_list;
};

namespace detail {

inline int parse_int(const std::string& text, std::size_t* pos) {
  std::size_t start = *pos;
  while (*pos < text.size() && std::isdigit(static_cast<unsigned char>(text[*pos])))
    ++*pos;
  if (*pos == start) throw std::invalid_argument("expected a number in '" + text + "'");
  return std::stoi(text.substr(start, *pos - start));
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  out.push_back(parse_int(text, &pos));
  while (pos < text.size()) {
    if (text[pos] != ',') throw std::invalid_argument("expected ',' in '" + text + "'");
    ++pos;
    out.push_back(parse_int(text, &pos));
  }
  return out;
}

GraphSpec parse_graph_spec_at(const std::string& text, std::size_t* pos);

inline GraphSpec parse_graph_spec_at_impl(const std::string& text, std::size_t* pos) {
  auto starts_with = [&](const char* prefix) {
    std::size_t n = std::string(prefix).size();
    if (text.compare(*pos, n, prefix) != 0) return false;
    *pos += n;
    return true;
  };
  GraphSpec spec;
  if (starts_with("path:")) {
    spec.kind = GraphSpec::Kind::path;
    spec.path_len = parse_int(text, pos);
    return spec;
  }
  if (starts_with("star:1^")) {
    spec.kind = GraphSpec::Kind::star;
    spec.star_leaves = parse_int(text, pos);
    return spec;
  }
  if (starts_with("sstar:")) {
    spec.kind = GraphSpec::Kind::sstar;
    spec.sstar_branches.push_back(parse_int(text, pos));
    // a comma only continues the list when a digit follows; ",u=" belongs to
    // an enclosing append()
    while (*pos + 1 < text.size() && text[*pos] == ',' &&
           std::isdigit(static_cast<unsigned char>(text[*pos + 1]))) {
      ++*pos;
      spec.sstar_branches.push_back(parse_int(text, pos));
    }
    return spec;
  }
  if (starts_with("append(")) {
    spec.kind = GraphSpec::Kind::append;
    spec.append_base = std::make_shared<GraphSpec>(parse_graph_spec_at(text, pos));
    if (text.compare(*pos, 3, ",u=") != 0)
      throw std::invalid_argument("append() needs ',u=<idx>'");
    *pos += 3;
    spec.append_anchor = parse_int(text, pos);
    if (text.compare(*pos, 3, ",k=") != 0)
      throw std::invalid_argument("append() needs ',k=<n>'");
    *pos += 3;
    spec.append_len = parse_int(text, pos);
    if (*pos >= text.size() || text[*pos] != ')')
      throw std::invalid_argument("append() is unterminated");
    ++*pos;
    return spec;
  }
  if (starts_with("edges:")) {
    spec.kind = GraphSpec::Kind::edges;
    while (*pos < text.size() && std::isdigit(static_cast<unsigned char>(text[*pos]))) {
      int a = parse_int(text, pos);
      if (*pos >= text.size() || text[*pos] != '-')
        throw std::invalid_argument("expected '-' in edge list");
      ++*pos;
      int b = parse_int(text, pos);
      spec.edge_list.emplace_back(a, b);
      if (*pos + 1 < text.size() && text[*pos] == ',' &&
          std::isdigit(static_cast<unsigned char>(text[*pos + 1])))
        ++*pos;
      else
        break;
    }
    return spec;
  }
  throw std::invalid_argument("unrecognized graph spec '" + text + "'");
}

inline GraphSpec parse_graph_spec_at(const std::string& text, std::size_t* pos) {
  return parse_graph_spec_at_impl(text, pos);
}

}  // namespace detail

inline GraphSpec parse_graph_spec(const std::string& text) {
  std::size_t pos = 0;
  GraphSpec spec = detail::parse_graph_spec_at(text, &pos);
  if (pos != text.size())
    throw std::invalid_argument("trailing characters in graph spec '" + text + "'");
  return spec;
}

inline std::string format_graph_spec(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::path:
      return "path:" + std::to_string(spec.path_len);
    case GraphSpec::Kind::star:
      return "star:1^" + std::to_string(spec.star_leaves);
    case GraphSpec::Kind::sstar: {
      std::string s = "sstar:";
      for (std::size_t i = 0; i < spec.sstar_branches.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(spec.sstar_branches[i]);
      }
      return s;
    }
    case GraphSpec::Kind::append:
      return "append(" + format_graph_spec(*spec.append_base) +
             ",u=" + std::to_string(spec.append_anchor) +
             ",k=" + std::to_string(spec.append_len) + ")";
    case GraphSpec::Kind::edges: {
      std::string s = "edges:";
      for (std::size_t i = 0; i < spec.edge_list.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(spec.edge_list[i].first) + "-" +
             std::to_string(spec.edge_list[i].second);
      }
      return s;
    }
  }
  throw std::logic_error("unhandled graph spec kind");
}

inline Graph realize(const GraphSpec& spec) {
  switch (spec.kind) {
    case GraphSpec::Kind::path:
      return make_path(spec.path_len);
    case GraphSpec::Kind::star: {
      std::vector<int> branches(static_cast<std::size_t>(spec.star_leaves), 1);
      return make_subdivided_star(branches);
    }
    case GraphSpec::Kind::sstar:
      return make_subdivided_star(spec.sstar_branches);
    case GraphSpec::Kind::append:
      return append_path(realize(*spec.append_base), spec.append_anchor,
                         spec.append_len);
    case GraphSpec::Kind::edges: {
      int n = 0;
      for (auto [a, b] : spec.edge_list) n = std::max({n, a + 1, b + 1});
      return Graph::from_edges(n, spec.edge_list);
    }
  }
  throw std::logic_error("unhandled graph spec kind");
}

// Append-family spec for sequence/certify commands:
//   path                      the bare path family (empty base)
//   star:1^3                  a base graph, anchored at vertex 0
//   sstar:1,1@center          '@center' names vertex 0
//   <graph-spec>@<idx>        explicit anchor
struct FamilySpec {
  std::optional<GraphSpec> base;  // nullopt = empty base
  int anchor = 0;
};

inline FamilySpec parse_family_spec(const std::string& text) {
  if (text == "path") return {};
  FamilySpec family;
  std::size_t at = text.rfind('@');
  std::string graph_part = at == std::string::npos ? text : text.substr(0, at);
  family.base = parse_graph_spec(graph_part);
  if (at != std::string::npos) {
    std::string anchor = text.substr(at + 1);
    if (anchor == "center") {
      if (family.base->kind != GraphSpec::Kind::star &&
          family.base->kind != GraphSpec::Kind::sstar)
        throw std::invalid_argument("'@center' only names a star's vertex 0");
      family.anchor = 0;
    } else {
      std::size_t pos = 0;
      family.anchor = detail::parse_int(anchor, &pos);
      if (pos != anchor.size())
        throw std::invalid_argument("bad anchor '" + anchor + "'");
    }
  }
  return family;
}

inline std::string format_family_spec(const FamilySpec& family) {
  if (!family.base) return "path";
  return format_graph_spec(*family.base) + "@" + std::to_string(family.anchor);
}

// L-spec: a comma list '1,2,4', the range form 'I:4' for I_N, or a union
// 'I:8+20' for I_N plus extra values.
inline SubtractionSet parse_lspec(const std::string& text) {
  if (text.rfind("I:", 0) == 0) {
    std::size_t pos = 2;
    int n = detail::parse_int(text, &pos);
    std::vector<int> values;
    for (int v = 1; v <= n; ++v) values.push_back(v);
    while (pos < text.size()) {
      if (text[pos] != '+') throw std::invalid_argument("expected '+' in L spec");
      ++pos;
      values.push_back(detail::parse_int(text, &pos));
    }
    return SubtractionSet(std::move(values));
  }
  return SubtractionSet(detail::parse_int_list(text));
}

inline std::string format_lspec(const SubtractionSet& L) {
  const std::vector<int>& v = L.values();
  int run = 0;
  while (run < static_cast<int>(v.size()) && v[static_cast<std::size_t>(run)] == run + 1)
    ++run;
  if (run >= 2) {
    std::string s = "I:" + std::to_string(run);
    for (std::size_t i = static_cast<std::size_t>(run); i < v.size(); ++i)
      s += "+" + std::to_string(v[i]);
    return s;
  }
  return L.to_string();
}

}  // namespace csg
