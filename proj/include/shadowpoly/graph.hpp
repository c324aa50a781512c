#pragma once

// Core data model: typed multigraphs encoding simple polyhedra whose singular
// set is a disjoint union of circles. Vertices are polyhedral pieces (or free
// boundary circles), edges are the gluing circles of a decomposition.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/flat_map.hpp>

namespace shadowpoly {

// Runtime toggle for expensive internal verification (SNF postconditions,
// per-move homology preservation, ledger conservation sweeps). Tests keep it
// on; bulk runs may disable it.
inline std::atomic<bool>& checked_mode() {
  static std::atomic<bool> on{true};
  return on;
}

struct CheckedModeGuard {
  explicit CheckedModeGuard(bool value) : prev_(checked_mode().load()) {
    checked_mode().store(value);
  }
  ~CheckedModeGuard() { checked_mode().store(prev_); }

 private:
  bool prev_;
};

// ---------------------------------------------------------------------------
// Vertex kinds

// B: free boundary circle, D: disk, P: pair of pants, M: Moebius strip,
// Y111/Y12/Y3: the three Y-bundles over S^1 (trivial / transposition /
// 3-cycle monodromy).
enum class VertexKind : std::uint8_t { B, D, P, M, Y111, Y12, Y3 };

inline constexpr int slot_count(VertexKind k) {
  switch (k) {
    case VertexKind::B:
    case VertexKind::D:
    case VertexKind::M:
    case VertexKind::Y3:
      return 1;
    case VertexKind::Y12:
      return 2;
    case VertexKind::P:
    case VertexKind::Y111:
      return 3;
  }
  return 0;
}

// Slot 2 of a Y12 is the doubled leg: its circle winds twice around the
// singular circle. No other kind has a distinguished slot.
inline constexpr int kY12SingleSlot = 1;
inline constexpr int kY12DoubledSlot = 2;

inline bool is_doubled_slot(VertexKind k, int slot) {
  return k == VertexKind::Y12 && slot == kY12DoubledSlot;
}

inline const char* kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::B: return "B";
    case VertexKind::D: return "D";
    case VertexKind::P: return "P";
    case VertexKind::M: return "M";
    case VertexKind::Y111: return "Y111";
    case VertexKind::Y12: return "Y12";
    case VertexKind::Y3: return "Y3";
  }
  return "?";
}

inline std::optional<VertexKind> kind_from_name(const std::string& s) {
  if (s == "B") return VertexKind::B;
  if (s == "D") return VertexKind::D;
  if (s == "P") return VertexKind::P;
  if (s == "M") return VertexKind::M;
  if (s == "Y111") return VertexKind::Y111;
  if (s == "Y12") return VertexKind::Y12;
  if (s == "Y3") return VertexKind::Y3;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Errors

enum class Errc {
  SyntaxError,
  DuplicateId,
  UnknownKind,
  BadSlot,
  UnknownVertex,
  UnknownEdge,
  UnknownRegion,
  NotInternalRegion,
  DuplicateAssignment,
  PatternMismatch,
  WrongSlot,
  SpliceDegenerate,
  StaleRecord,
  NotAcyclic,
  NotAcyclicAmbient,
  NotConnected,
  NoDiskPiece,
  NoHomologyS1Subtree,
  NoBoundaryVertex,
  AdjacentBoundaryPair,
  NoProgress,
  GenerationExhausted,
  BoundExceeded,
  ReplayMismatch,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::BadSlot: return "BadSlot";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::UnknownRegion: return "UnknownRegion";
    case Errc::NotInternalRegion: return "NotInternalRegion";
    case Errc::DuplicateAssignment: return "DuplicateAssignment";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::WrongSlot: return "WrongSlot";
    case Errc::SpliceDegenerate: return "SpliceDegenerate";
    case Errc::StaleRecord: return "StaleRecord";
    case Errc::NotAcyclic: return "NotAcyclic";
    case Errc::NotAcyclicAmbient: return "NotAcyclicAmbient";
    case Errc::NotConnected: return "NotConnected";
    case Errc::NoDiskPiece: return "NoDiskPiece";
    case Errc::NoHomologyS1Subtree: return "NoHomologyS1Subtree";
    case Errc::NoBoundaryVertex: return "NoBoundaryVertex";
    case Errc::AdjacentBoundaryPair: return "AdjacentBoundaryPair";
    case Errc::NoProgress: return "NoProgress";
    case Errc::GenerationExhausted: return "GenerationExhausted";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::ReplayMismatch: return "ReplayMismatch";
    case Errc::Internal: return "Internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

// Invariant guard that survives NDEBUG builds.
inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

// ---------------------------------------------------------------------------
// Graph

using VertexId = std::int64_t;
using EdgeId = std::int64_t;

struct EdgeEnd {
  VertexId vertex = 0;
  int slot = 0;
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

struct Edge {
  EdgeEnd end1;
  EdgeEnd end2;
  int sign = +1;  // gluing orientation; +1 by default
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Closed pairing of slots: every slot of every vertex is used by exactly one
// edge end. Values are immutable after construction by convention; all
// mutation produces new graphs.
struct MartelliGraph {
  boost::container::flat_map<VertexId, VertexKind> vertices;
  boost::container::flat_map<EdgeId, Edge> edges;

  void add_vertex(VertexId id, VertexKind kind) {
    if (id <= 0) fail(Errc::SyntaxError, "vertex id must be positive");
    if (!vertices.emplace(id, kind).second)
      fail(Errc::DuplicateId, "vertex " + std::to_string(id));
  }

  void add_edge(EdgeId id, EdgeEnd a, EdgeEnd b, int sign = +1) {
    if (id <= 0) fail(Errc::SyntaxError, "edge id must be positive");
    if (!edges.emplace(id, Edge{a, b, sign}).second)
      fail(Errc::DuplicateId, "edge " + std::to_string(id));
  }

  VertexKind kind_of(VertexId v) const {
    auto it = vertices.find(v);
    if (it == vertices.end())
      fail(Errc::UnknownVertex, std::to_string(v));
    return it->second;
  }

  const Edge& edge(EdgeId e) const {
    auto it = edges.find(e);
    if (it == edges.end()) fail(Errc::UnknownEdge, std::to_string(e));
    return it->second;
  }

  VertexId max_vertex_id() const {
    return vertices.empty() ? 0 : vertices.rbegin()->first;
  }
  EdgeId max_edge_id() const {
    return edges.empty() ? 0 : edges.rbegin()->first;
  }

  std::size_t count_kind(VertexKind k) const {
    std::size_t n = 0;
    for (const auto& [id, kind] : vertices)
      if (kind == k) ++n;
    return n;
  }

  friend bool operator==(const MartelliGraph&, const MartelliGraph&) = default;
};

// Sign carried by one edge end: end1 is +1, end2 carries the edge sign, so
// the product over both ends is the edge sign.
inline int end_sign(const Edge& e, bool second_end) {
  return second_end ? e.sign : +1;
}

// ---------------------------------------------------------------------------
// Slot index and adjacency

// (vertex, slot) -> occupying edge end. Direct-addressed when ids are dense
// (they are for parsed and generated graphs), so rebuilding per rewrite step
// stays cheap even at 10^4 vertices.
struct SlotIndex {
  struct Use {
    EdgeId edge = 0;
    bool second_end = false;
  };

  explicit SlotIndex(const MartelliGraph& g) {
    VertexId max_id = g.max_vertex_id();
    dense_ = max_id <= 64 + 4 * static_cast<VertexId>(g.vertices.size());
    if (dense_) {
      table_.assign(static_cast<std::size_t>(max_id + 1) * 4, 0);
      for (const auto& [eid, e] : g.edges) {
        table_[key_dense(e.end1.vertex, e.end1.slot)] = pack(eid, false);
        table_[key_dense(e.end2.vertex, e.end2.slot)] = pack(eid, true);
      }
    } else {
      sparse_.reserve(g.edges.size() * 2);
      for (const auto& [eid, e] : g.edges) {
        sparse_.push_back(
            {key_dense(e.end1.vertex, e.end1.slot), pack(eid, false)});
        sparse_.push_back(
            {key_dense(e.end2.vertex, e.end2.slot), pack(eid, true)});
      }
      std::sort(sparse_.begin(), sparse_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }

  std::optional<Use> find(VertexId v, int slot) const {
    std::size_t k = key_dense(v, slot);
    std::int64_t packed = 0;
    if (dense_) {
      if (k >= table_.size()) return std::nullopt;
      packed = table_[k];
    } else {
      auto it = std::lower_bound(
          sparse_.begin(), sparse_.end(), k,
          [](const auto& a, std::size_t key) { return a.first < key; });
      if (it == sparse_.end() || it->first != k) return std::nullopt;
      packed = it->second;
    }
    if (packed == 0) return std::nullopt;
    return Use{packed >> 1, (packed & 1) != 0};
  }

 private:
  static std::size_t key_dense(VertexId v, int slot) {
    return static_cast<std::size_t>(v) * 4 + static_cast<std::size_t>(slot);
  }
  static std::int64_t pack(EdgeId e, bool second) {
    return (e << 1) | (second ? 1 : 0);
  }
  bool dense_ = true;
  std::vector<std::int64_t> table_;
  std::vector<std::pair<std::size_t, std::int64_t>> sparse_;
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string location;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  bool well_formed = true;
  std::vector<Violation> violations;
};

// Checks slot saturation, slot ranges and dangling endpoints. Does not check
// acyclicity; a valid graph may encode anything.
inline ValidationReport validate(const MartelliGraph& g) {
  ValidationReport rep;
  auto violate = [&](std::string code, std::string loc) {
    rep.violations.push_back({std::move(code), std::move(loc)});
  };

  VertexId max_id = g.max_vertex_id();
  bool dense = max_id <= 64 + 4 * static_cast<VertexId>(g.vertices.size());
  std::vector<unsigned char> counts;
  std::vector<std::size_t> use_keys;
  if (dense)
    counts.assign(static_cast<std::size_t>(max_id + 1) * 4, 0);
  else
    use_keys.reserve(g.edges.size() * 2);

  for (const auto& [eid, e] : g.edges) {
    for (const EdgeEnd* end : {&e.end1, &e.end2}) {
      auto vit = g.vertices.find(end->vertex);
      if (vit == g.vertices.end()) {
        violate("UnknownVertex", "edge " + std::to_string(eid) + " -> vertex " +
                                     std::to_string(end->vertex));
        continue;
      }
      if (end->slot < 1 || end->slot > slot_count(vit->second)) {
        violate("BadSlot", "edge " + std::to_string(eid) + " -> " +
                               std::to_string(end->vertex) + "." +
                               std::to_string(end->slot));
        continue;
      }
      std::size_t key = static_cast<std::size_t>(end->vertex) * 4 +
                        static_cast<std::size_t>(end->slot);
      if (dense) {
        if (counts[key] < 3) ++counts[key];
      } else {
        use_keys.push_back(key);
      }
    }
  }
  if (!dense) std::sort(use_keys.begin(), use_keys.end());
  auto uses_of = [&](VertexId v, int s) -> std::size_t {
    std::size_t k =
        static_cast<std::size_t>(v) * 4 + static_cast<std::size_t>(s);
    if (dense) return counts[k];
    auto lo = std::lower_bound(use_keys.begin(), use_keys.end(), k);
    auto hi = std::upper_bound(lo, use_keys.end(), k);
    return static_cast<std::size_t>(hi - lo);
  };
  for (const auto& [id, kind] : g.vertices) {
    for (int s = 1; s <= slot_count(kind); ++s) {
      auto n = uses_of(id, s);
      if (n == 1) continue;
      std::string loc = std::to_string(id) + "." + std::to_string(s);
      violate(n == 0 ? "UnsaturatedSlot" : "DuplicateSlotUse", std::move(loc));
    }
  }
  rep.well_formed = rep.violations.empty();
  return rep;
}

inline void require_well_formed(const MartelliGraph& g) {
  ValidationReport rep = validate(g);
  if (!rep.well_formed)
    fail(Errc::Internal, "graph not well-formed: " + rep.violations[0].code +
                             " at " + rep.violations[0].location);
}

// ---------------------------------------------------------------------------
// Hashing

// Word-at-a-time mixer (splitmix-style); stable across runs and platforms.
struct Fnv64 {
  std::uint64_t h = 1469598103934665603ull;
  void mix(std::uint64_t x) {
    x *= 0x9e3779b97f4a7c15ull;
    x ^= x >> 29;
    h = (h ^ x) * 1099511628211ull;
  }
};

inline std::uint64_t graph_hash(const MartelliGraph& g) {
  Fnv64 f;
  f.mix(g.vertices.size());
  for (const auto& [id, kind] : g.vertices) {
    f.mix(static_cast<std::uint64_t>(id));
    f.mix(static_cast<std::uint64_t>(kind));
  }
  f.mix(g.edges.size());
  for (const auto& [id, e] : g.edges) {
    f.mix(static_cast<std::uint64_t>(id));
    f.mix(static_cast<std::uint64_t>(e.end1.vertex));
    f.mix(static_cast<std::uint64_t>(e.end1.slot));
    f.mix(static_cast<std::uint64_t>(e.end2.vertex));
    f.mix(static_cast<std::uint64_t>(e.end2.slot));
    f.mix(static_cast<std::uint64_t>(e.sign == -1 ? 1 : 0));
  }
  return f.h;
}

// ---------------------------------------------------------------------------
// Connectivity

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Vertex partition into connected components; skip_edge (if nonzero) is
// treated as absent.
inline std::vector<std::vector<VertexId>> components(const MartelliGraph& g,
                                                     EdgeId skip_edge = 0) {
  std::vector<VertexId> ids;
  ids.reserve(g.vertices.size());
  for (const auto& [id, k] : g.vertices) ids.push_back(id);
  boost::container::flat_map<VertexId, std::size_t> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);

  UnionFind uf(ids.size());
  for (const auto& [eid, e] : g.edges) {
    if (eid == skip_edge) continue;
    auto a = index.find(e.end1.vertex);
    auto b = index.find(e.end2.vertex);
    if (a != index.end() && b != index.end()) uf.unite(a->second, b->second);
  }
  std::vector<std::vector<VertexId>> out;
  std::vector<std::size_t> group_of(ids.size(), SIZE_MAX);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::size_t root = uf.find(i);
    if (group_of[root] == SIZE_MAX) {
      group_of[root] = out.size();
      out.emplace_back();
    }
    out[group_of[root]].push_back(ids[i]);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

inline bool is_connected(const MartelliGraph& g) {
  return components(g).size() <= 1;
}

// Trees in the multigraph sense: connected, no self-loops or cycles.
inline bool is_tree(const MartelliGraph& g) {
  if (g.vertices.empty()) return false;
  if (g.edges.size() != g.vertices.size() - 1) return false;
  for (const auto& [eid, e] : g.edges)
    if (e.end1.vertex == e.end2.vertex) return false;
  return is_connected(g);
}

// First Betti number of the underlying multigraph (loops count).
inline std::size_t cycle_rank(const MartelliGraph& g) {
  std::size_t c = components(g).size();
  return g.edges.size() + c - g.vertices.size();
}

// ---------------------------------------------------------------------------
// Cutting along an edge circle

struct CutPiece {
  MartelliGraph graph;
  VertexId marker_vertex = 0;  // fresh B capping the cut circle
  EdgeId marker_edge = 0;      // edge carrying the cut circle in this piece
};

struct CutResult {
  bool separating = false;
  // Two pieces when separating (side of end1 first); otherwise the single
  // resulting graph, stored as two markers on one graph.
  std::vector<CutPiece> pieces;
  std::vector<std::pair<VertexId, EdgeId>> open_markers;
};

// Cuts the polyhedron along the circle of edge e. Each freed slot is capped
// by a fresh B vertex so the cut circle survives as a free boundary circle.
inline CutResult cut_edge(const MartelliGraph& g, EdgeId e) {
  const Edge& cut = g.edge(e);
  CutResult res;
  auto comps = components(g, e);

  const VertexId fresh_v = g.max_vertex_id() + 1;
  const EdgeId fresh_e = g.max_edge_id() + 1;

  auto side_of = [&](VertexId v) -> std::size_t {
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (VertexId u : comps[i])
        if (u == v) return i;
    fail(Errc::Internal, "vertex not in any component");
  };

  res.separating =
      side_of(cut.end1.vertex) != side_of(cut.end2.vertex);

  if (res.separating) {
    // Piece 1 is end1's component; piece 2 is the rest of the graph.
    std::size_t c1 = side_of(cut.end1.vertex);
    boost::container::flat_map<VertexId, bool> in_side1;
    for (VertexId v : comps[c1]) in_side1.emplace(v, true);
    for (const EdgeEnd* end : {&cut.end1, &cut.end2}) {
      bool first = end == &cut.end1;
      CutPiece piece;
      for (const auto& [id, k] : g.vertices)
        if (static_cast<bool>(in_side1.count(id)) == first)
          piece.graph.vertices.emplace(id, k);
      for (const auto& [eid, ed] : g.edges)
        if (eid != e &&
            static_cast<bool>(in_side1.count(ed.end1.vertex)) == first)
          piece.graph.edges.emplace(eid, ed);
      piece.marker_vertex = fresh_v;
      piece.marker_edge = e;  // the cut circle keeps its id on both sides
      piece.graph.vertices.emplace(fresh_v, VertexKind::B);
      piece.graph.edges.emplace(
          e, Edge{*end, EdgeEnd{fresh_v, 1}, +1});
      res.pieces.push_back(std::move(piece));
    }
  } else {
    CutPiece piece;
    piece.graph = g;
    piece.graph.edges.erase(e);
    VertexId m1 = fresh_v, m2 = fresh_v + 1;
    piece.graph.vertices.emplace(m1, VertexKind::B);
    piece.graph.vertices.emplace(m2, VertexKind::B);
    piece.graph.edges.emplace(e, Edge{cut.end1, EdgeEnd{m1, 1}, +1});
    piece.graph.edges.emplace(fresh_e, Edge{cut.end2, EdgeEnd{m2, 1}, +1});
    res.open_markers = {{m1, e}, {m2, fresh_e}};
    res.pieces.push_back(std::move(piece));
  }
  return res;
}

}  // namespace shadowpoly
