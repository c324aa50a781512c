#pragma once

// The five rewrites on encoded polyhedra.
//
// Homeomorphism moves:
//   IH  re-associates two pants glued along a circle (the pants A-move);
//   YV  removes a pants capped by a disk (an annulus is just a collar).
// Collapse moves, from a free boundary circle:
//   A   a Y111 with a free leg collapses onto its singular circle, leaving
//       an annulus joining the two remaining legs (splice);
//   B   a Y12 whose doubled band is free collapses, leaving the fixed leg as
//       an annulus with a fresh free boundary;
//   C   a pants with a free circle glued to a Y12 doubled band collapses to
//       a pants joining the third circle, the fixed leg and a fresh free
//       boundary.
// Every move preserves the homology profile of the encoded polyhedron;
// applies assert this when checked mode is on.

#include <optional>
#include <string>
#include <vector>

#include "shadowpoly/graph.hpp"
#include "shadowpoly/homology.hpp"
#include "shadowpoly/regions.hpp"

namespace shadowpoly {

enum class MoveKind { IH, YV, A, B, C };

inline const char* move_name(MoveKind k) {
  switch (k) {
    case MoveKind::IH: return "IH";
    case MoveKind::YV: return "YV";
    case MoveKind::A: return "A";
    case MoveKind::B: return "B";
    case MoveKind::C: return "C";
  }
  return "?";
}

struct MoveInstance {
  MoveKind kind = MoveKind::IH;
  EdgeId edge = 0;   // IH
  int variant = 0;   // IH: 1 or 2
  VertexId b = 0;    // A, B, C: the free boundary vertex
  VertexId v = 0;    // A: the Y111
  VertexId t = 0;    // B, C: the Y12
  VertexId p = 0;    // YV, C: the pants
  VertexId d = 0;    // YV: the disk

  friend bool operator==(const MoveInstance&, const MoveInstance&) = default;
};

inline std::string move_spec(const MoveInstance& m) {
  switch (m.kind) {
    case MoveKind::IH:
      return "IH e=" + std::to_string(m.edge) +
             " variant=" + std::to_string(m.variant);
    case MoveKind::YV:
      return "YV p=" + std::to_string(m.p) + " d=" + std::to_string(m.d);
    case MoveKind::A:
      return "A b=" + std::to_string(m.b) + " v=" + std::to_string(m.v);
    case MoveKind::B:
      return "B b=" + std::to_string(m.b) + " t=" + std::to_string(m.t);
    case MoveKind::C:
      return "C b=" + std::to_string(m.b) + " p=" + std::to_string(m.p) +
             " t=" + std::to_string(m.t);
  }
  return "?";
}

struct MoveRecord {
  MoveInstance move;
  std::uint64_t before_hash = 0;
  std::uint64_t after_hash = 0;
  SheetMap sheet_map;  // sheets of deleted/renamed pieces; others identical
  std::vector<RegionFlow> region_flow;
  std::vector<VertexId> removed_vertices;
  std::vector<std::pair<VertexId, VertexKind>> added_vertices;
  std::vector<EdgeId> removed_edges;
  std::vector<EdgeId> added_edges;
  long long vertex_delta = 0;
};

namespace detail {

struct EndRef {
  EdgeId edge = 0;
  bool second = false;
};

// Edge-end at (v, slot); fails on unwired slots.
inline EndRef end_at(const SlotIndex& idx, VertexId v, int slot) {
  std::optional<SlotIndex::Use> u = idx.find(v, slot);
  require(u.has_value(), Errc::PatternMismatch,
          "slot " + std::to_string(v) + "." + std::to_string(slot) +
              " is not wired");
  return EndRef{u->edge, u->second_end};
}

inline const EdgeEnd& end_of(const MartelliGraph& g, EndRef r) {
  const Edge& e = g.edge(r.edge);
  return r.second ? e.end2 : e.end1;
}

inline const EdgeEnd& far_end_of(const MartelliGraph& g, EndRef r) {
  const Edge& e = g.edge(r.edge);
  return r.second ? e.end1 : e.end2;
}

// Ends occupying v's slots other than `skip` ones, ascending by slot.
inline std::vector<EndRef> other_ends(const MartelliGraph& g,
                                      const SlotIndex& idx, VertexId v,
                                      std::initializer_list<int> skip) {
  std::vector<EndRef> out;
  for (int s = 1; s <= slot_count(g.kind_of(v)); ++s) {
    bool skipped = false;
    for (int t : skip) skipped = skipped || t == s;
    if (!skipped) out.push_back(end_at(idx, v, s));
  }
  return out;
}

struct GraphEdit {
  std::vector<VertexId> remove_vertices;
  std::vector<std::pair<VertexId, VertexKind>> add_vertices;
  std::vector<EdgeId> remove_edges;
  std::vector<std::pair<EdgeId, Edge>> add_edges;
  std::vector<std::pair<EndRef, EdgeEnd>> rewires;
};

// Single-pass rebuild; fresh ids are appended so ordered storage is kept.
inline MartelliGraph apply_edit(const MartelliGraph& g, const GraphEdit& ed) {
  MartelliGraph out;
  out.vertices.reserve(g.vertices.size() + ed.add_vertices.size());
  for (const auto& [id, k] : g.vertices) {
    bool removed = false;
    for (VertexId r : ed.remove_vertices) removed = removed || r == id;
    if (!removed) out.vertices.emplace(id, k);
  }
  for (const auto& [id, k] : ed.add_vertices) out.vertices.emplace(id, k);

  out.edges.reserve(g.edges.size() + ed.add_edges.size());
  for (const auto& [id, e] : g.edges) {
    bool removed = false;
    for (EdgeId r : ed.remove_edges) removed = removed || r == id;
    if (removed) continue;
    Edge ne = e;
    for (const auto& [ref, target] : ed.rewires) {
      if (ref.edge != id) continue;
      (ref.second ? ne.end2 : ne.end1) = target;
    }
    out.edges.emplace(id, ne);
  }
  for (const auto& [id, e] : ed.add_edges) out.edges.emplace(id, e);
  return out;
}

// Flows of the regions touched by the surgery, found by local walks from the
// removed pieces and the endpoints of removed/rewired edges. Identity rows
// are dropped, matching compute_region_flow, which the checked build runs as
// a full-graph cross-check.
inline std::vector<RegionFlow> fast_region_flow(const MartelliGraph& before,
                                                const MartelliGraph& after,
                                                const SheetMap& explicit_map,
                                                const GraphEdit& ed) {
  SlotIndex idx_before(before);
  SlotIndex idx_after(after);

  std::vector<SheetId> seeds;
  auto add_end = [&](const EdgeEnd& end) {
    auto si = sheet_at(before.kind_of(end.vertex), end.slot);
    if (si) seeds.push_back({end.vertex, *si});
  };
  for (VertexId v : ed.remove_vertices)
    for (int i = 1; i <= sheet_count(before.kind_of(v)); ++i)
      seeds.push_back({v, i});
  for (EdgeId eid : ed.remove_edges) {
    const Edge& e = before.edge(eid);
    add_end(e.end1);
    add_end(e.end2);
  }
  for (const auto& [ref, target] : ed.rewires) {
    const Edge& e = before.edge(ref.edge);
    add_end(e.end1);
    add_end(e.end2);
  }

  auto survives = [&](SheetId s) -> std::optional<SheetId> {
    for (const auto& [from, to] : explicit_map)
      if (from == s) return to;
    if (after.vertices.count(s.vertex)) return s;
    return std::nullopt;
  };

  std::set<SheetId> visited;
  std::map<SheetId, std::pair<SheetId, bool>> after_cache;
  std::vector<RegionFlow> flows;
  for (SheetId seed : seeds) {
    if (visited.count(seed)) continue;
    LocalRegion r = local_region(before, idx_before, seed);
    visited.insert(r.sheets.begin(), r.sheets.end());
    RegionFlow f;
    f.old_region = r.id;
    for (SheetId s : r.sheets) {
      auto t = survives(s);
      if (!t) continue;
      auto it = after_cache.find(*t);
      if (it == after_cache.end()) {
        LocalRegion nr = local_region(after, idx_after, *t);
        for (SheetId m : nr.sheets)
          after_cache.emplace(m, std::make_pair(nr.id, nr.boundary));
        it = after_cache.find(*t);
      }
      f.new_region = it->second.first;
      f.to_boundary = it->second.second;
      break;  // one survivor fixes the flow; the full path asserts uniqueness
    }
    if (f.new_region && *f.new_region == r.id && f.to_boundary == r.boundary)
      continue;
    flows.push_back(std::move(f));
  }
  std::sort(flows.begin(), flows.end(),
            [](const RegionFlow& a, const RegionFlow& b) {
              return a.old_region < b.old_region;
            });
  return flows;
}

inline MoveRecord finish_record(const MartelliGraph& before,
                                const MartelliGraph& after,
                                MoveInstance inst, SheetMap sheet_map,
                                const GraphEdit& ed) {
  MoveRecord rec;
  rec.move = inst;
  rec.before_hash = graph_hash(before);
  rec.after_hash = graph_hash(after);
  rec.sheet_map = std::move(sheet_map);
  rec.removed_vertices = ed.remove_vertices;
  rec.added_vertices = ed.add_vertices;
  rec.removed_edges = ed.remove_edges;
  for (const auto& [id, e] : ed.add_edges) rec.added_edges.push_back(id);
  rec.vertex_delta = static_cast<long long>(after.vertices.size()) -
                     static_cast<long long>(before.vertices.size());

  rec.region_flow = fast_region_flow(before, after, rec.sheet_map, ed);

  if (checked_mode().load()) {
    require_well_formed(after);
    RegionMap rb = extract_regions(before);
    RegionMap ra = extract_regions(after);
    auto full = compute_region_flow(after, rec.sheet_map, rb, ra);
    require(full == rec.region_flow, Errc::Internal,
            "local region flows disagree with the full extraction");
    require(homology_profile(before) == homology_profile(after),
            Errc::Internal,
            std::string("move ") + move_name(inst.kind) +
                " changed the homology profile");
  }
  return rec;
}

inline void require_kind(const MartelliGraph& g, VertexId v, VertexKind k,
                         const char* role) {
  if (!g.vertices.count(v))
    fail(Errc::UnknownVertex, std::to_string(v));
  if (g.kind_of(v) != k)
    fail(Errc::PatternMismatch,
         std::string(role) + " " + std::to_string(v) + " is not of type " +
             kind_name(k));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// IH: re-association of two pants along an interior circle

// Re-association transports the gluing orientation data along the changed
// cycle basis; without the figure-level data that is only canonical when the
// pants pair sits in a tree component, which covers the whole acyclic
// domain. Other contexts are rejected.
inline bool ih_supported(const MartelliGraph& g, EdgeId eid) {
  const Edge& e = g.edge(eid);
  if (e.end1.vertex == e.end2.vertex) return false;
  for (const auto& comp : components(g)) {
    bool has_p1 = false;
    for (VertexId v : comp) has_p1 = has_p1 || v == e.end1.vertex;
    if (!has_p1) continue;
    std::size_t edges_inside = 0;
    boost::container::flat_map<VertexId, bool> in;
    for (VertexId v : comp) in.emplace(v, true);
    for (const auto& [id, ed] : g.edges)
      if (in.count(ed.end1.vertex)) {
        if (ed.end1.vertex == ed.end2.vertex) return false;
        ++edges_inside;
      }
    return edges_inside == comp.size() - 1;
  }
  return false;
}

inline std::pair<MartelliGraph, MoveRecord> apply_ih(const MartelliGraph& g,
                                                     EdgeId eid, int variant) {
  using namespace detail;
  if (variant != 1 && variant != 2)
    fail(Errc::PatternMismatch, "IH variant must be 1 or 2");
  const Edge& e = g.edge(eid);
  VertexId p1 = e.end1.vertex, p2 = e.end2.vertex;
  if (p1 == p2)
    fail(Errc::PatternMismatch, "IH edge is a self-edge");
  require_kind(g, p1, VertexKind::P, "vertex");
  require_kind(g, p2, VertexKind::P, "vertex");
  if (!ih_supported(g, eid))
    fail(Errc::PatternMismatch,
         "re-association inside a component with cycles is not supported");

  SlotIndex idx(g);
  auto o1 = other_ends(g, idx, p1, {e.end1.slot});  // w, x
  auto o2 = other_ends(g, idx, p2, {e.end2.slot});  // y, z
  EndRef w = o1[0], x = o1[1], y = o2[0], z = o2[1];

  EdgeId fresh = g.max_edge_id() + 1;
  GraphEdit ed;
  ed.remove_edges = {eid};
  ed.add_edges = {{fresh, Edge{{p1, 3}, {p2, 3}, +1}}};
  if (variant == 1) {
    ed.rewires = {{w, {p1, 1}}, {y, {p1, 2}}, {x, {p2, 1}}, {z, {p2, 2}}};
  } else {
    ed.rewires = {{w, {p1, 1}}, {z, {p1, 2}}, {x, {p2, 1}}, {y, {p2, 2}}};
  }
  MartelliGraph out = apply_edit(g, ed);

  MoveInstance inst;
  inst.kind = MoveKind::IH;
  inst.edge = eid;
  inst.variant = variant;
  return {out, finish_record(g, out, inst, {}, ed)};
}

// ---------------------------------------------------------------------------
// YV: pants capped by a disk is an annulus; splice its two circles

inline std::pair<MartelliGraph, MoveRecord> apply_yv(const MartelliGraph& g,
                                                     VertexId p, VertexId d) {
  using namespace detail;
  require_kind(g, p, VertexKind::P, "pants");
  require_kind(g, d, VertexKind::D, "disk");
  SlotIndex idx(g);
  EndRef cap = end_at(idx, d, 1);
  const EdgeEnd& at_p = far_end_of(g, cap);
  if (at_p.vertex != p)
    fail(Errc::PatternMismatch, "disk is not glued to the pants");

  auto rest = other_ends(g, idx, p, {at_p.slot});  // x, y
  if (rest[0].edge == rest[1].edge)
    fail(Errc::SpliceDegenerate,
         "the two remaining circles of the pants are glued to each other");

  const Edge& ex = g.edge(rest[0].edge);
  const Edge& ey = g.edge(rest[1].edge);
  EdgeEnd farx = far_end_of(g, rest[0]);
  EdgeEnd fary = far_end_of(g, rest[1]);
  EdgeId fresh = g.max_edge_id() + 1;

  GraphEdit ed;
  ed.remove_vertices = {std::min(p, d), std::max(p, d)};
  ed.remove_edges = {cap.edge, rest[0].edge, rest[1].edge};
  // The pants chain hits its two remaining circles with equal signs, so the
  // annulus identifies them with a relative minus; the composite gluing sign
  // is the negated product.
  ed.add_edges = {{fresh, Edge{farx, fary, -(ex.sign * ey.sign)}}};
  MartelliGraph out = apply_edit(g, ed);

  MoveInstance inst;
  inst.kind = MoveKind::YV;
  inst.p = p;
  inst.d = d;
  SheetMap smap{{{p, 1}, std::nullopt}, {{d, 1}, std::nullopt}};
  return {out, finish_record(g, out, inst, std::move(smap), ed)};
}

// ---------------------------------------------------------------------------
// A: free leg of a Y111 collapses onto the singular circle

inline std::pair<MartelliGraph, MoveRecord> apply_a(const MartelliGraph& g,
                                                    VertexId b, VertexId v) {
  using namespace detail;
  require_kind(g, b, VertexKind::B, "boundary vertex");
  require_kind(g, v, VertexKind::Y111, "vertex");
  SlotIndex idx(g);
  EndRef be = end_at(idx, b, 1);
  const EdgeEnd& at_v = far_end_of(g, be);
  if (at_v.vertex != v)
    fail(Errc::PatternMismatch, "boundary circle is not on the Y111");

  auto legs = other_ends(g, idx, v, {at_v.slot});  // e1, e2
  if (legs[0].edge == legs[1].edge)
    fail(Errc::SpliceDegenerate, "remaining legs are glued to each other");

  const Edge& e1 = g.edge(legs[0].edge);
  const Edge& e2 = g.edge(legs[1].edge);
  EdgeEnd far1 = far_end_of(g, legs[0]);
  EdgeEnd far2 = far_end_of(g, legs[1]);
  EdgeId fresh = g.max_edge_id() + 1;

  GraphEdit ed;
  ed.remove_vertices = {std::min(b, v), std::max(b, v)};
  ed.remove_edges = {be.edge, legs[0].edge, legs[1].edge};
  ed.add_edges = {{fresh, Edge{far1, far2, e1.sign * e2.sign}}};
  MartelliGraph out = apply_edit(g, ed);

  MoveInstance inst;
  inst.kind = MoveKind::A;
  inst.b = b;
  inst.v = v;
  SheetMap smap{{{v, 1}, std::nullopt},
                {{v, 2}, std::nullopt},
                {{v, 3}, std::nullopt}};
  return {out, finish_record(g, out, inst, std::move(smap), ed)};
}

// ---------------------------------------------------------------------------
// B: free doubled band of a Y12 collapses; fixed leg gets a free boundary

inline std::pair<MartelliGraph, MoveRecord> apply_b(const MartelliGraph& g,
                                                    VertexId b, VertexId t) {
  using namespace detail;
  require_kind(g, b, VertexKind::B, "boundary vertex");
  require_kind(g, t, VertexKind::Y12, "vertex");
  SlotIndex idx(g);
  EndRef be = end_at(idx, b, 1);
  const EdgeEnd& at_t = far_end_of(g, be);
  if (at_t.vertex != t)
    fail(Errc::PatternMismatch, "boundary circle is not on the Y12");
  if (at_t.slot != kY12DoubledSlot)
    fail(Errc::WrongSlot, "boundary circle sits on the single leg of " +
                              std::to_string(t));

  EndRef f = end_at(idx, t, kY12SingleSlot);
  VertexId fresh_b = g.max_vertex_id() + 1;

  GraphEdit ed;
  ed.remove_vertices = {std::min(b, t), std::max(b, t)};
  ed.remove_edges = {be.edge};
  ed.add_vertices = {{fresh_b, VertexKind::B}};
  ed.rewires = {{f, {fresh_b, 1}}};
  MartelliGraph out = apply_edit(g, ed);

  MoveInstance inst;
  inst.kind = MoveKind::B;
  inst.b = b;
  inst.t = t;
  SheetMap smap{{{t, 1}, std::nullopt}, {{t, 2}, std::nullopt}};
  return {out, finish_record(g, out, inst, std::move(smap), ed)};
}

// ---------------------------------------------------------------------------
// C: pants with a free circle, glued to a Y12 doubled band

inline std::pair<MartelliGraph, MoveRecord> apply_c(const MartelliGraph& g,
                                                    VertexId b, VertexId p,
                                                    VertexId t) {
  using namespace detail;
  require_kind(g, b, VertexKind::B, "boundary vertex");
  require_kind(g, p, VertexKind::P, "pants");
  require_kind(g, t, VertexKind::Y12, "vertex");
  SlotIndex idx(g);
  EndRef be = end_at(idx, b, 1);
  const EdgeEnd& at_p = far_end_of(g, be);
  if (at_p.vertex != p)
    fail(Errc::PatternMismatch, "boundary circle is not on the pants");

  EndRef doubled = end_at(idx, t, kY12DoubledSlot);
  const EdgeEnd& doubled_far = far_end_of(g, doubled);
  if (doubled_far.vertex != p) {
    EndRef single = end_at(idx, t, kY12SingleSlot);
    if (far_end_of(g, single).vertex == p)
      fail(Errc::WrongSlot,
           "pants is glued to the single leg of " + std::to_string(t));
    fail(Errc::PatternMismatch, "pants is not glued to the Y12");
  }
  EndRef c_edge = doubled;

  auto rest = other_ends(g, idx, p, {at_p.slot, doubled_far.slot});
  require(rest.size() == 1, Errc::PatternMismatch,
          "pants pattern for move C");
  EndRef e_end_at_p = rest[0];
  EndRef f_end_at_t = end_at(idx, t, kY12SingleSlot);

  VertexId fresh_p = g.max_vertex_id() + 1;
  VertexId fresh_b = fresh_p + 1;
  EdgeId fresh_e = g.max_edge_id() + 1;

  GraphEdit ed;
  ed.remove_vertices = {b, p, t};
  std::sort(ed.remove_vertices.begin(), ed.remove_vertices.end());
  ed.remove_edges = {be.edge, c_edge.edge};
  ed.add_vertices = {{fresh_p, VertexKind::P}, {fresh_b, VertexKind::B}};
  ed.add_edges = {{fresh_e, Edge{{fresh_p, 3}, {fresh_b, 1}, +1}}};
  ed.rewires = {{e_end_at_p, {fresh_p, 1}}, {f_end_at_t, {fresh_p, 2}}};
  MartelliGraph out = apply_edit(g, ed);

  MoveInstance inst;
  inst.kind = MoveKind::C;
  inst.b = b;
  inst.p = p;
  inst.t = t;
  SheetMap smap{{{p, 1}, SheetId{fresh_p, 1}},
                {{t, 1}, SheetId{fresh_p, 1}},
                {{t, 2}, SheetId{fresh_p, 1}}};
  return {out, finish_record(g, out, inst, std::move(smap), ed)};
}

// ---------------------------------------------------------------------------
// Dispatch and applicability

inline std::pair<MartelliGraph, MoveRecord> apply_move(const MartelliGraph& g,
                                                       const MoveInstance& m) {
  switch (m.kind) {
    case MoveKind::IH: return apply_ih(g, m.edge, m.variant);
    case MoveKind::YV: return apply_yv(g, m.p, m.d);
    case MoveKind::A: return apply_a(g, m.b, m.v);
    case MoveKind::B: return apply_b(g, m.b, m.t);
    case MoveKind::C: return apply_c(g, m.b, m.p, m.t);
  }
  fail(Errc::Internal, "unknown move kind");
}

// All pattern matches, deterministically ordered (kind, then ids). Instances
// whose application would be degenerate (splice of an edge with itself) are
// not listed.
inline std::vector<MoveInstance> applicable_moves(const MartelliGraph& g) {
  require_well_formed(g);
  SlotIndex idx(g);
  std::vector<MoveInstance> out;

  for (const auto& [eid, e] : g.edges) {
    if (e.end1.vertex == e.end2.vertex) continue;
    if (g.kind_of(e.end1.vertex) == VertexKind::P &&
        g.kind_of(e.end2.vertex) == VertexKind::P && ih_supported(g, eid)) {
      for (int variant : {1, 2}) {
        MoveInstance m;
        m.kind = MoveKind::IH;
        m.edge = eid;
        m.variant = variant;
        out.push_back(m);
      }
    }
  }

  auto degenerate_pair = [&](VertexId v, int used_slot) {
    auto rest = detail::other_ends(g, idx, v, {used_slot});
    return rest[0].edge == rest[1].edge;
  };

  for (const auto& [vid, kind] : g.vertices) {
    if (kind == VertexKind::D) {
      auto cap = detail::end_at(idx, vid, 1);
      const EdgeEnd& far = detail::far_end_of(g, cap);
      if (far.vertex != vid && g.kind_of(far.vertex) == VertexKind::P &&
          !degenerate_pair(far.vertex, far.slot)) {
        MoveInstance m;
        m.kind = MoveKind::YV;
        m.p = far.vertex;
        m.d = vid;
        out.push_back(m);
      }
    }
    if (kind != VertexKind::B) continue;
    auto be = detail::end_at(idx, vid, 1);
    const EdgeEnd& far = detail::far_end_of(g, be);
    if (far.vertex == vid) continue;
    VertexKind fk = g.kind_of(far.vertex);
    if (fk == VertexKind::Y111 && !degenerate_pair(far.vertex, far.slot)) {
      MoveInstance m;
      m.kind = MoveKind::A;
      m.b = vid;
      m.v = far.vertex;
      out.push_back(m);
    } else if (fk == VertexKind::Y12 && far.slot == kY12DoubledSlot) {
      MoveInstance m;
      m.kind = MoveKind::B;
      m.b = vid;
      m.t = far.vertex;
      out.push_back(m);
    } else if (fk == VertexKind::P) {
      VertexId p = far.vertex;
      for (int s = 1; s <= 3; ++s) {
        if (s == far.slot) continue;
        auto pe = detail::end_at(idx, p, s);
        const EdgeEnd& pf = detail::far_end_of(g, pe);
        if (pf.vertex != p && pf.vertex != vid &&
            g.kind_of(pf.vertex) == VertexKind::Y12 &&
            pf.slot == kY12DoubledSlot) {
          MoveInstance m;
          m.kind = MoveKind::C;
          m.b = vid;
          m.p = p;
          m.t = pf.vertex;
          out.push_back(m);
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const MoveInstance& a,
                                       const MoveInstance& b) {
    auto key = [](const MoveInstance& m) {
      return std::tuple(static_cast<int>(m.kind), m.edge, m.b, m.p, m.t, m.v,
                        m.d, m.variant);
    };
    return key(a) < key(b);
  });
  return out;
}

// Ledger transfer over one recorded step; pass the ledger by std::move when
// the previous snapshot is no longer needed.
inline GleamLedger transfer_gleams(GleamLedger ledger, const MoveRecord& rec) {
  return transfer_gleams_core(std::move(ledger), rec.before_hash,
                              rec.after_hash, rec.region_flow);
}

}  // namespace shadowpoly
