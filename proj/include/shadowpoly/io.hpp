#pragma once

// Text format, DOT export and stable hashing.
//
//   vertex <id> <B|D|P|M|Y111|Y12|Y3>
//   edge <id> <v>.<slot> <v>.<slot> [sign=+1|-1]
//   gleam <regionId> <k>        # gleam = k/2; regionId is "<vertex>.<sheet>"
//
// '#' starts a comment; blank lines are ignored. Vertices may be declared
// after the edges that use them.

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "shadowpoly/graph.hpp"

namespace shadowpoly {

struct GleamDirective {
  VertexId region_vertex = 0;  // region id = smallest member sheet
  int region_sheet = 0;
  long long gleam2 = 0;  // doubled gleam, kept integral
  friend bool operator==(const GleamDirective&, const GleamDirective&) = default;
};

struct GraphFile {
  MartelliGraph graph;
  std::vector<GleamDirective> gleams;
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) toks.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline long long parse_int(std::string_view s, int lineno) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    fail(Errc::SyntaxError,
         "line " + std::to_string(lineno) + ": bad integer '" + std::string(s) +
             "'");
  return v;
}

// "<v>.<slot>"
inline std::pair<long long, long long> parse_dotted(std::string_view s,
                                                    int lineno) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == s.size())
    fail(Errc::SyntaxError,
         "line " + std::to_string(lineno) + ": expected <id>.<slot> in '" +
             std::string(s) + "'");
  return {parse_int(s.substr(0, dot), lineno),
          parse_int(s.substr(dot + 1), lineno)};
}

}  // namespace detail

inline GraphFile parse_graph_file(std::string_view text) {
  struct PendingEdge {
    int lineno;
    EdgeId id;
    long long v1, s1, v2, s2;
    int sign;
  };
  GraphFile out;
  std::vector<PendingEdge> pending;

  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;

    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;

    if (toks[0] == "vertex") {
      if (toks.size() != 3)
        fail(Errc::SyntaxError,
             "line " + std::to_string(lineno) + ": vertex <id> <kind>");
      long long id = detail::parse_int(toks[1], lineno);
      auto kind = kind_from_name(toks[2]);
      if (!kind)
        fail(Errc::UnknownKind,
             "line " + std::to_string(lineno) + ": '" + toks[2] + "'");
      if (id <= 0)
        fail(Errc::SyntaxError,
             "line " + std::to_string(lineno) + ": vertex id must be positive");
      if (out.graph.vertices.count(id))
        fail(Errc::DuplicateId,
             "line " + std::to_string(lineno) + ": vertex " + toks[1]);
      out.graph.vertices.emplace(id, *kind);
    } else if (toks[0] == "edge") {
      if (toks.size() != 4 && toks.size() != 5)
        fail(Errc::SyntaxError,
             "line " + std::to_string(lineno) +
                 ": edge <id> <v>.<slot> <v>.<slot> [sign=+1|-1]");
      PendingEdge pe;
      pe.lineno = lineno;
      pe.id = detail::parse_int(toks[1], lineno);
      std::tie(pe.v1, pe.s1) = detail::parse_dotted(toks[2], lineno);
      std::tie(pe.v2, pe.s2) = detail::parse_dotted(toks[3], lineno);
      pe.sign = +1;
      if (toks.size() == 5) {
        if (toks[4] == "sign=+1")
          pe.sign = +1;
        else if (toks[4] == "sign=-1")
          pe.sign = -1;
        else
          fail(Errc::SyntaxError, "line " + std::to_string(lineno) +
                                      ": expected sign=+1 or sign=-1");
      }
      if (pe.id <= 0)
        fail(Errc::SyntaxError,
             "line " + std::to_string(lineno) + ": edge id must be positive");
      pending.push_back(pe);
    } else if (toks[0] == "gleam") {
      if (toks.size() != 3)
        fail(Errc::SyntaxError,
             "line " + std::to_string(lineno) + ": gleam <regionId> <k>");
      auto [rv, rs] = detail::parse_dotted(toks[1], lineno);
      GleamDirective d;
      d.region_vertex = rv;
      d.region_sheet = static_cast<int>(rs);
      d.gleam2 = detail::parse_int(toks[2], lineno);
      out.gleams.push_back(d);
    } else {
      fail(Errc::SyntaxError, "line " + std::to_string(lineno) +
                                  ": unknown directive '" + toks[0] + "'");
    }
  }

  for (const auto& pe : pending) {
    for (long long v : {pe.v1, pe.v2})
      if (!out.graph.vertices.count(v))
        fail(Errc::UnknownVertex,
             "line " + std::to_string(pe.lineno) + ": vertex " +
                 std::to_string(v));
    for (auto [v, s] : {std::pair{pe.v1, pe.s1}, std::pair{pe.v2, pe.s2}}) {
      int n = slot_count(out.graph.kind_of(v));
      if (s < 1 || s > n)
        fail(Errc::BadSlot, "line " + std::to_string(pe.lineno) + ": " +
                                std::to_string(v) + "." + std::to_string(s));
    }
    if (out.graph.edges.count(pe.id))
      fail(Errc::DuplicateId,
           "line " + std::to_string(pe.lineno) + ": edge " +
               std::to_string(pe.id));
    out.graph.edges.emplace(
        pe.id, Edge{EdgeEnd{pe.v1, static_cast<int>(pe.s1)},
                    EdgeEnd{pe.v2, static_cast<int>(pe.s2)}, pe.sign});
  }
  return out;
}

inline MartelliGraph parse_graph(std::string_view text) {
  return parse_graph_file(text).graph;
}

inline std::string serialize(const MartelliGraph& g) {
  std::ostringstream os;
  for (const auto& [id, kind] : g.vertices)
    os << "vertex " << id << ' ' << kind_name(kind) << '\n';
  for (const auto& [id, e] : g.edges) {
    os << "edge " << id << ' ' << e.end1.vertex << '.' << e.end1.slot << ' '
       << e.end2.vertex << '.' << e.end2.slot;
    if (e.sign < 0) os << " sign=-1";
    os << '\n';
  }
  return os.str();
}

inline std::string serialize(const GraphFile& f) {
  std::string s = serialize(f.graph);
  std::ostringstream os;
  for (const auto& d : f.gleams)
    os << "gleam " << d.region_vertex << '.' << d.region_sheet << ' '
       << d.gleam2 << '\n';
  return s + os.str();
}

// Undirected DOT rendering; doubled ends get style=bold,label="x2".
inline std::string export_dot(const MartelliGraph& g) {
  std::ostringstream os;
  os << "graph shadowpoly {\n";
  for (const auto& [id, kind] : g.vertices)
    os << "  v" << id << " [label=\"" << kind_name(kind) << id << "\"];\n";
  for (const auto& [id, e] : g.edges) {
    os << "  v" << e.end1.vertex << " -- v" << e.end2.vertex;
    bool doubled = is_doubled_slot(g.kind_of(e.end1.vertex), e.end1.slot) ||
                   is_doubled_slot(g.kind_of(e.end2.vertex), e.end2.slot);
    std::vector<std::string> attrs;
    if (doubled) {
      attrs.push_back("style=bold");
      attrs.push_back("label=\"\u00d72\"");
    }
    if (e.sign < 0) attrs.push_back("sign=\"-1\"");
    if (!attrs.empty()) {
      os << " [";
      for (std::size_t i = 0; i < attrs.size(); ++i)
        os << (i ? "," : "") << attrs[i];
      os << ']';
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

}  // namespace shadowpoly
