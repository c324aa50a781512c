#pragma once

// Cellular models of the encoded polyhedron.
//
// Expanded complex (trusted path): every graph edge contributes a base point
// and its gluing circle; every piece contributes its interior cells:
//   D     one 2-cell,  boundary = e*a_e
//   P     two connector 1-cells, one 2-cell, boundary = sum e_i*a_i
//   M     core point + core circle m, connector, 2-cell = e*a - 2m
//   Y111  singular point + circle s, 3 connectors, 2-cells e_i*a_i - s
//   Y12   s, 2 connectors, 2-cells e*a_single - s and e*a_doubled - 2s
//   Y3    s, 1 connector, 2-cell e*a - 3s
// Connector coefficients cancel in every 2-cell boundary, so d2 is supported
// on circle rows; d1*d2 = 0 by construction and is checked in tests.
//
// Reduced complex (oracle path): circles and 2-cell relations only, plus the
// free H1 summand contributed by cycles of the graph itself (collapsing a
// spanning tree of base points and connectors). Component count supplies H0.

#include <string>
#include <vector>

#include "shadowpoly/graph.hpp"
#include "shadowpoly/snf.hpp"

namespace shadowpoly {

struct Cell {
  std::string name;  // provenance: which vertex/edge created the cell
};

struct ChainComplex {
  std::vector<Cell> c0;
  std::vector<Cell> c1;
  std::vector<Cell> c2;
  std::vector<SparseEntry> d1;  // row in c0, col in c1
  std::vector<SparseEntry> d2;  // row in c1, col in c2
  boost::container::flat_map<EdgeId, int> circle_row;  // a_e -> c1 index
};

inline ChainComplex build_chain_complex(const MartelliGraph& g) {
  require_well_formed(g);
  ChainComplex cc;
  boost::container::flat_map<EdgeId, int> vertex_node;  // v_e -> c0 index

  for (const auto& [eid, e] : g.edges) {
    vertex_node.emplace(eid, static_cast<int>(cc.c0.size()));
    cc.c0.push_back({"v:" + std::to_string(eid)});
    cc.circle_row.emplace(eid, static_cast<int>(cc.c1.size()));
    cc.c1.push_back({"a:" + std::to_string(eid)});
  }

  SlotIndex slots(g);
  // Edge id, end sign and base point at a given (vertex, slot).
  auto at_slot = [&](VertexId v, int slot) {
    std::optional<SlotIndex::Use> use = slots.find(v, slot);
    require(use.has_value(), Errc::Internal, "unsaturated slot in complex");
    const Edge& e = g.edge(use->edge);
    struct R {
      EdgeId edge;
      int sign;
      int node;
      int circle;
    };
    return R{use->edge, end_sign(e, use->second_end), vertex_node.at(use->edge),
             0};
  };

  for (const auto& [vid, kind] : g.vertices) {
    const std::string v = std::to_string(vid);
    auto connector = [&](int idx, int from_node, int to_node) {
      int c = static_cast<int>(cc.c1.size());
      cc.c1.push_back({"conn:" + v + ":" + std::to_string(idx)});
      cc.d1.push_back({to_node, c, 1});
      cc.d1.push_back({from_node, c, -1});
      return c;
    };
    auto face = [&](const std::string& name) {
      cc.c2.push_back({name});
      return static_cast<int>(cc.c2.size()) - 1;
    };
    auto rel = [&](int face_col, int circle_row_idx, long long coeff) {
      cc.d2.push_back({circle_row_idx, face_col, coeff});
    };

    switch (kind) {
      case VertexKind::B:
        break;
      case VertexKind::D: {
        auto s1 = at_slot(vid, 1);
        int f = face("disk:" + v);
        rel(f, cc.circle_row.at(s1.edge), s1.sign);
        break;
      }
      case VertexKind::P: {
        auto s1 = at_slot(vid, 1);
        auto s2 = at_slot(vid, 2);
        auto s3 = at_slot(vid, 3);
        connector(1, s1.node, s2.node);
        connector(2, s2.node, s3.node);
        int f = face("pants:" + v);
        rel(f, cc.circle_row.at(s1.edge), s1.sign);
        rel(f, cc.circle_row.at(s2.edge), s2.sign);
        rel(f, cc.circle_row.at(s3.edge), s3.sign);
        break;
      }
      case VertexKind::M: {
        auto s1 = at_slot(vid, 1);
        int core_pt = static_cast<int>(cc.c0.size());
        cc.c0.push_back({"p:" + v});
        int core = static_cast<int>(cc.c1.size());
        cc.c1.push_back({"core:" + v});
        connector(1, s1.node, core_pt);
        int f = face("mob:" + v);
        rel(f, cc.circle_row.at(s1.edge), s1.sign);
        rel(f, core, -2);
        break;
      }
      case VertexKind::Y111: {
        int sing_pt = static_cast<int>(cc.c0.size());
        cc.c0.push_back({"p:" + v});
        int sing = static_cast<int>(cc.c1.size());
        cc.c1.push_back({"sing:" + v});
        for (int s = 1; s <= 3; ++s) {
          auto sl = at_slot(vid, s);
          connector(s, sl.node, sing_pt);
          int f = face("leg:" + v + ":" + std::to_string(s));
          rel(f, cc.circle_row.at(sl.edge), sl.sign);
          rel(f, sing, -1);
        }
        break;
      }
      case VertexKind::Y12: {
        int sing_pt = static_cast<int>(cc.c0.size());
        cc.c0.push_back({"p:" + v});
        int sing = static_cast<int>(cc.c1.size());
        cc.c1.push_back({"sing:" + v});
        auto single = at_slot(vid, kY12SingleSlot);
        auto doubled = at_slot(vid, kY12DoubledSlot);
        connector(1, single.node, sing_pt);
        connector(2, doubled.node, sing_pt);
        int f1 = face("leg:" + v);
        rel(f1, cc.circle_row.at(single.edge), single.sign);
        rel(f1, sing, -1);
        int f2 = face("band:" + v);
        rel(f2, cc.circle_row.at(doubled.edge), doubled.sign);
        rel(f2, sing, -2);
        break;
      }
      case VertexKind::Y3: {
        int sing_pt = static_cast<int>(cc.c0.size());
        cc.c0.push_back({"p:" + v});
        int sing = static_cast<int>(cc.c1.size());
        cc.c1.push_back({"sing:" + v});
        auto s1 = at_slot(vid, 1);
        connector(1, s1.node, sing_pt);
        int f = face("band:" + v);
        rel(f, cc.circle_row.at(s1.edge), s1.sign);
        rel(f, sing, -3);
        break;
      }
    }
  }
  return cc;
}

// d1 * d2 as a sparse product; empty iff the composite vanishes.
inline bool boundary_square_is_zero(const ChainComplex& cc) {
  std::vector<std::map<int, BigInt>> d1_cols(cc.c1.size());
  for (const auto& e : cc.d1) d1_cols[e.col][e.row] += e.value;
  std::vector<std::map<int, BigInt>> acc(cc.c2.size());
  for (const auto& e : cc.d2)
    for (const auto& [r0, v0] : d1_cols[e.row]) acc[e.col][r0] += e.value * v0;
  for (const auto& col : acc)
    for (const auto& [r, v] : col)
      if (v != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Reduced oracle complex

struct ReducedComplex {
  std::size_t component_count = 0;
  std::size_t graph_cycle_rank = 0;  // free H1 summand from graph cycles
  std::vector<Cell> circles;
  std::vector<Cell> faces;
  std::vector<SparseEntry> d2;
};

// Built by an independent walk over the graph; shares no assembly code with
// the expanded recipe.
inline ReducedComplex build_reduced_complex(const MartelliGraph& g) {
  require_well_formed(g);
  ReducedComplex rc;
  rc.component_count = components(g).size();
  rc.graph_cycle_rank = cycle_rank(g);

  boost::container::flat_map<EdgeId, int> circle;
  for (const auto& [eid, e] : g.edges) {
    circle.emplace(eid, static_cast<int>(rc.circles.size()));
    rc.circles.push_back({"a:" + std::to_string(eid)});
  }

  boost::container::flat_map<std::pair<VertexId, int>, std::pair<int, int>>
      at;  // (vertex, slot) -> (circle index, end sign)
  for (const auto& [eid, e] : g.edges) {
    at[{e.end1.vertex, e.end1.slot}] = {circle.at(eid), +1};
    at[{e.end2.vertex, e.end2.slot}] = {circle.at(eid), e.sign};
  }

  for (const auto& [vid, kind] : g.vertices) {
    const std::string v = std::to_string(vid);
    auto slot_circle = [&](int s) { return at.at({vid, s}); };
    auto face = [&](const std::string& name,
                    std::initializer_list<std::pair<int, long long>> rels) {
      int f = static_cast<int>(rc.faces.size());
      rc.faces.push_back({name});
      for (auto [row, coeff] : rels) rc.d2.push_back({row, f, coeff});
    };

    int sing = -1;
    if (kind == VertexKind::M || kind == VertexKind::Y111 ||
        kind == VertexKind::Y12 || kind == VertexKind::Y3) {
      sing = static_cast<int>(rc.circles.size());
      rc.circles.push_back(
          {(kind == VertexKind::M ? "core:" : "sing:") + v});
    }

    switch (kind) {
      case VertexKind::B:
        break;
      case VertexKind::D: {
        auto [c, sgn] = slot_circle(1);
        face("disk:" + v, {{c, sgn}});
        break;
      }
      case VertexKind::P: {
        auto [c1, g1] = slot_circle(1);
        auto [c2, g2] = slot_circle(2);
        auto [c3, g3] = slot_circle(3);
        face("pants:" + v, {{c1, g1}, {c2, g2}, {c3, g3}});
        break;
      }
      case VertexKind::M: {
        auto [c, sgn] = slot_circle(1);
        face("mob:" + v, {{c, sgn}, {sing, -2}});
        break;
      }
      case VertexKind::Y111: {
        for (int s = 1; s <= 3; ++s) {
          auto [c, sgn] = slot_circle(s);
          face("leg:" + v + ":" + std::to_string(s), {{c, sgn}, {sing, -1}});
        }
        break;
      }
      case VertexKind::Y12: {
        auto [cs, gs] = slot_circle(kY12SingleSlot);
        auto [cd, gd] = slot_circle(kY12DoubledSlot);
        face("leg:" + v, {{cs, gs}, {sing, -1}});
        face("band:" + v, {{cd, gd}, {sing, -2}});
        break;
      }
      case VertexKind::Y3: {
        auto [c, sgn] = slot_circle(1);
        face("band:" + v, {{c, sgn}, {sing, -3}});
        break;
      }
    }
  }
  return rc;
}

}  // namespace shadowpoly
