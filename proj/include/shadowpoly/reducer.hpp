#pragma once

// Drives any acyclic graph to the disk graph B-D and emits a replayable
// certificate. Strategy: pick the smallest disk as root; while a Y111
// exists, take the farthest one from the root, cut off a homology-circle
// subtree and push its free boundary circle toward a collapsible
// configuration; afterwards the same dispatch consumes the remaining pants
// and Y12 pieces. The (#vertices, pants-walk length) measure decreases
// lexicographically at every committed move and is checked at runtime.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shadowpoly/graph.hpp"
#include "shadowpoly/homology.hpp"
#include "shadowpoly/moves.hpp"
#include "shadowpoly/regions.hpp"

namespace shadowpoly {

struct CollapseCertificate {
  std::uint64_t initial_hash = 0;
  MartelliGraph initial_graph;
  GleamLedger initial_ledger;
  std::vector<MoveRecord> steps;
  std::vector<std::uint64_t> ledger_trail;  // ledger hash after each step
  MartelliGraph final_graph;
};

struct ReduceResult {
  CollapseCertificate certificate;
  GleamLedger final_ledger;
};

namespace detail {

inline std::optional<VertexId> smallest_of_kind(const MartelliGraph& g,
                                                VertexKind k) {
  for (const auto& [id, kind] : g.vertices)
    if (kind == k) return id;
  return std::nullopt;
}

// Neighbor lists ordered by edge id; deterministic BFS everywhere.
struct Adjacency {
  boost::container::flat_map<VertexId, std::vector<std::pair<EdgeId, VertexId>>>
      at;

  explicit Adjacency(const MartelliGraph& g) {
    at.reserve(g.vertices.size());
    for (const auto& [vid, k] : g.vertices) at.emplace(vid, decltype(at)::mapped_type{});
    for (const auto& [eid, e] : g.edges) {
      at[e.end1.vertex].push_back({eid, e.end2.vertex});
      if (e.end1.vertex != e.end2.vertex)
        at[e.end2.vertex].push_back({eid, e.end1.vertex});
    }
    for (auto& [vid, list] : at) std::sort(list.begin(), list.end());
  }
};

struct BfsTree {
  boost::container::flat_map<VertexId, int> dist;
  boost::container::flat_map<VertexId, std::pair<EdgeId, VertexId>> parent;
};

inline BfsTree bfs_from(const Adjacency& adj, VertexId root) {
  BfsTree t;
  std::vector<VertexId> queue{root};
  t.dist.emplace(root, 0);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId u = queue[qi];
    int du = t.dist.at(u);
    for (const auto& [eid, v] : adj.at.at(u)) {
      if (t.dist.count(v)) continue;
      t.dist.emplace(v, du + 1);
      t.parent.emplace(v, std::make_pair(eid, u));
      queue.push_back(v);
    }
  }
  return t;
}

}  // namespace detail

// Smallest-id disk piece; the root of the collapse.
inline VertexId find_root(const MartelliGraph& g) {
  require_well_formed(g);
  if (!is_acyclic(g)) fail(Errc::NotAcyclic, "find_root needs acyclic input");
  auto d = detail::smallest_of_kind(g, VertexKind::D);
  if (!d)
    fail(Errc::NoDiskPiece, "acyclic polyhedron without a disk piece");
  return *d;
}

// Y111 vertex maximizing tree distance from the root; ties to smallest id.
inline std::optional<VertexId> farthest_y111(const MartelliGraph& g,
                                             VertexId root) {
  require(is_tree(g), Errc::Internal, "farthest_y111 expects a tree");
  detail::Adjacency adj(g);
  detail::BfsTree t = detail::bfs_from(adj, root);
  std::optional<VertexId> best;
  int best_dist = -1;
  for (const auto& [vid, kind] : g.vertices) {
    if (kind != VertexKind::Y111) continue;
    int d = t.dist.at(vid);
    if (d > best_dist) {
      best_dist = d;
      best = vid;
    }
  }
  return best;
}

struct TargetSubtree {
  EdgeId cut_edge = 0;
  VertexId boundary_vertex = 0;       // smallest B in the chosen side
  std::vector<VertexId> side_vertices;  // original vertices of the side
};

// Among v0's two non-root subtrees, pick one whose cut side is the homology
// circle generated by the cut circle; ties to the side with the smallest
// vertex id. Returns its smallest B vertex.
inline TargetSubtree select_target_subtree(const MartelliGraph& g,
                                           VertexId v0) {
  require(g.kind_of(v0) == VertexKind::Y111, Errc::Internal,
          "subtree selection needs a Y111 pivot");
  VertexId root = *detail::smallest_of_kind(g, VertexKind::D);
  detail::Adjacency adj(g);
  detail::BfsTree t = detail::bfs_from(adj, root);
  EdgeId root_edge = v0 == root ? 0 : t.parent.at(v0).first;

  std::optional<TargetSubtree> best;
  for (const auto& [eid, far] : adj.at.at(v0)) {
    if (eid == root_edge) continue;
    SplitReport rep = split_classification(g, eid);
    const Edge& e = g.edge(eid);
    int far_side = e.end1.vertex == v0 ? 2 : 1;
    if (rep.s1_side != far_side || !rep.generator_ok) continue;

    CutResult cut = cut_edge(g, eid);
    const CutPiece& piece = cut.pieces[far_side - 1];
    TargetSubtree cand;
    cand.cut_edge = eid;
    for (const auto& [vid, kind] : piece.graph.vertices) {
      if (vid == piece.marker_vertex) continue;
      cand.side_vertices.push_back(vid);
      if (kind == VertexKind::B && cand.boundary_vertex == 0)
        cand.boundary_vertex = vid;
    }
    if (cand.boundary_vertex == 0)
      fail(Errc::NoBoundaryVertex,
           "homology-circle side of edge " + std::to_string(eid) +
               " has no free boundary");
    if (!best ||
        cand.side_vertices.front() < best->side_vertices.front())
      best = std::move(cand);
  }
  if (!best)
    fail(Errc::NoHomologyS1Subtree,
         "no subtree of " + std::to_string(v0) +
             " is a homology circle generated by its cut");
  return *best;
}

struct DriveDecision {
  bool terminal = false;    // the boundary circle already caps a disk
  MoveInstance move;
  int walk_length = 0;      // IH only: remaining pants walk
};

// Chooses the next move for the boundary circle b. Dispatch priority
// A > B > C > YV > IH; IH transfers b one step along the pants cluster
// toward the nearest pants adjacent to a disk or a Y12 doubled band.
inline DriveDecision drive_boundary(const MartelliGraph& g, VertexId b,
                                    [[maybe_unused]] std::optional<VertexId> v0) {
  require(g.vertices.count(b) && g.kind_of(b) == VertexKind::B,
          Errc::Internal, "drive_boundary needs a B vertex");
  SlotIndex idx(g);
  detail::EndRef be = detail::end_at(idx, b, 1);
  const EdgeEnd& at_n = detail::far_end_of(g, be);
  VertexId nb = at_n.vertex;
  if (nb == b) fail(Errc::Internal, "boundary circle glued to itself");
  VertexKind nk = g.kind_of(nb);

  DriveDecision dec;
  switch (nk) {
    case VertexKind::D:
      dec.terminal = true;
      return dec;
    case VertexKind::Y111:
      dec.move.kind = MoveKind::A;
      dec.move.b = b;
      dec.move.v = nb;
      return dec;
    case VertexKind::Y12:
      if (at_n.slot != kY12DoubledSlot)
        fail(Errc::WrongSlot,
             "boundary circle on the single leg of " + std::to_string(nb) +
                 " cannot occur in an acyclic polyhedron");
      dec.move.kind = MoveKind::B;
      dec.move.b = b;
      dec.move.t = nb;
      return dec;
    case VertexKind::B:
      fail(Errc::Internal, "bare annulus component in the reducer");
    case VertexKind::M:
    case VertexKind::Y3:
      fail(Errc::Internal,
           std::string(kind_name(nk)) + " piece cannot occur in an acyclic "
                                        "polyhedron");
    case VertexKind::P:
      break;
  }

  const VertexId p = nb;
  auto rest = detail::other_ends(g, idx, p, {at_n.slot});
  // Collapsible configurations right next to b, by priority.
  std::optional<VertexId> c_target;
  std::vector<VertexId> d_targets;
  for (const detail::EndRef& r : rest) {
    const EdgeEnd& far = detail::far_end_of(g, r);
    if (far.vertex == p) continue;  // self-edge; cannot occur in trees
    VertexKind fk = g.kind_of(far.vertex);
    if (fk == VertexKind::B)
      fail(Errc::AdjacentBoundaryPair,
           "pants " + std::to_string(p) + " has two free boundary circles");
    if (fk == VertexKind::M || fk == VertexKind::Y3)
      fail(Errc::Internal, "M/Y3 adjacent to the driven pants");
    if (fk == VertexKind::Y12) {
      if (far.slot != kY12DoubledSlot)
        fail(Errc::WrongSlot,
             "pants " + std::to_string(p) + " glued to the single leg of " +
                 std::to_string(far.vertex));
      if (!c_target || far.vertex < *c_target) c_target = far.vertex;
    }
    if (fk == VertexKind::D) d_targets.push_back(far.vertex);
  }
  if (c_target) {
    dec.move.kind = MoveKind::C;
    dec.move.b = b;
    dec.move.p = p;
    dec.move.t = *c_target;
    return dec;
  }
  if (!d_targets.empty()) {
    // Keep the root disk when another cap is available.
    VertexId root = *detail::smallest_of_kind(g, VertexKind::D);
    std::sort(d_targets.begin(), d_targets.end());
    VertexId pick = 0;
    for (VertexId d : d_targets)
      if (d != root) {
        pick = d;
        break;
      }
    if (pick == 0) pick = d_targets.front();
    dec.move.kind = MoveKind::YV;
    dec.move.p = p;
    dec.move.d = pick;
    return dec;
  }

  // Only pants/Y111 around: walk the pants cluster toward the nearest pants
  // adjacent to a disk or a doubled band.
  detail::Adjacency adj(g);
  boost::container::flat_map<VertexId, std::pair<EdgeId, VertexId>> parent;
  boost::container::flat_map<VertexId, int> dist;
  std::vector<VertexId> queue{p};
  dist.emplace(p, 0);
  auto qualifies = [&](VertexId u) {
    for (const auto& [eid, w] : adj.at.at(u)) {
      if (w == u || w == b) continue;
      VertexKind wk = g.kind_of(w);
      if (wk == VertexKind::D) return true;
      if (wk == VertexKind::Y12) {
        const Edge& e = g.edge(eid);
        const EdgeEnd& at_t = e.end1.vertex == w ? e.end1 : e.end2;
        if (at_t.slot == kY12DoubledSlot) return true;
      }
    }
    return false;
  };
  std::optional<VertexId> target;
  for (std::size_t qi = 0; qi < queue.size() && !target; ++qi) {
    VertexId u = queue[qi];
    if (qualifies(u)) {
      target = u;
      break;
    }
    for (const auto& [eid, w] : adj.at.at(u)) {
      if (g.kind_of(w) != VertexKind::P || dist.count(w)) continue;
      dist.emplace(w, dist.at(u) + 1);
      parent.emplace(w, std::make_pair(eid, u));
      queue.push_back(w);
    }
  }
  if (!target)
    fail(Errc::NoProgress,
         "pants cluster at " + std::to_string(p) +
             " has no collapsible neighbor; input cannot be acyclic");

  // Reconstruct the path p = q0, q1, ..., qL = target.
  std::vector<VertexId> path{*target};
  while (path.back() != p) path.push_back(parent.at(path.back()).second);
  std::reverse(path.begin(), path.end());
  int walk = static_cast<int>(path.size()) - 1;
  require(walk >= 1, Errc::Internal, "walk target should not be immediate");

  EdgeId step_edge = parent.at(path[1]).first;
  EdgeId cont_edge = 0;
  if (walk >= 2) {
    cont_edge = parent.at(path[2]).first;
  } else {
    // q1 is the target: continue onto its collapsible neighbor, preferring a
    // doubled band over a disk cap, smallest edge id each.
    EdgeId best_c = 0, best_d = 0;
    for (const auto& [eid, w] : adj.at.at(path[1])) {
      if (w == path[1] || w == b) continue;
      VertexKind wk = g.kind_of(w);
      if (wk == VertexKind::D && best_d == 0) best_d = eid;
      if (wk == VertexKind::Y12 && best_c == 0) {
        const Edge& e = g.edge(eid);
        const EdgeEnd& at_t = e.end1.vertex == w ? e.end1 : e.end2;
        if (at_t.slot == kY12DoubledSlot) best_c = eid;
      }
    }
    cont_edge = best_c != 0 ? best_c : best_d;
    require(cont_edge != 0, Errc::Internal, "lost the walk target");
  }

  // Pick the IH variant that lands b's circle and the continuation circle on
  // the same pants.
  const Edge& se = g.edge(step_edge);
  VertexId a_vertex = se.end1.vertex;
  auto others_a = detail::other_ends(g, idx, se.end1.vertex, {se.end1.slot});
  auto others_b = detail::other_ends(g, idx, se.end2.vertex, {se.end2.slot});
  int variant;
  if (path[0] == a_vertex) {
    bool bw = others_a[0].edge == be.edge;
    bool cy = others_b[0].edge == cont_edge;
    variant = bw == cy ? 1 : 2;
  } else {
    bool by = others_b[0].edge == be.edge;
    bool cw = others_a[0].edge == cont_edge;
    variant = by == cw ? 1 : 2;
  }

  dec.move.kind = MoveKind::IH;
  dec.move.edge = step_edge;
  dec.move.variant = variant;
  dec.walk_length = walk;
  return dec;
}

namespace detail {

inline void check_acyclic_structure(const MartelliGraph& g) {
  require(is_tree(g), Errc::Internal, "acyclic graph must be a tree");
  require(g.count_kind(VertexKind::Y3) == 0, Errc::Internal,
          "acyclic graph contains a Y3 piece");
  require(g.count_kind(VertexKind::M) == 0, Errc::Internal,
          "acyclic graph contains a Moebius piece");
  if (g.count_kind(VertexKind::D) == 0)
    fail(Errc::NoDiskPiece, "acyclic graph without a disk piece");
  if (g.count_kind(VertexKind::B) == 0)
    fail(Errc::NoBoundaryVertex, "acyclic graph without free boundary");
}

}  // namespace detail

inline ReduceResult reduce_to_disk(const MartelliGraph& g0,
                                   const GleamLedger& ledger0) {
  require_well_formed(g0);
  if (!is_connected(g0))
    fail(Errc::NotConnected, "reduction needs a connected graph");
  if (!is_acyclic(g0)) fail(Errc::NotAcyclic, "input graph is not acyclic");
  detail::check_acyclic_structure(g0);
  if (ledger0.graph_version != graph_hash(g0))
    fail(Errc::StaleRecord, "ledger does not match the input graph");

  ReduceResult res;
  res.certificate.initial_hash = graph_hash(g0);
  res.certificate.initial_graph = g0;
  res.certificate.initial_ledger = ledger0;

  MartelliGraph g = g0;
  GleamLedger ledger = ledger0;
  int prev_walk = std::numeric_limits<int>::max();

  while (!is_disk_graph(g)) {
    VertexId first_d = 0, first_b = 0;
    bool has_y111 = false;
    for (const auto& [vid, k] : g.vertices) {
      if (k == VertexKind::D && first_d == 0) first_d = vid;
      else if (k == VertexKind::B && first_b == 0) first_b = vid;
      else if (k == VertexKind::Y111) has_y111 = true;
    }
    std::optional<VertexId> v0;
    if (has_y111) {
      require(first_d != 0, Errc::NoDiskPiece, "disk piece vanished");
      v0 = farthest_y111(g, first_d);
    }
    VertexId b;
    if (v0) {
      b = select_target_subtree(g, *v0).boundary_vertex;
    } else {
      if (first_b == 0)
        fail(Errc::NoBoundaryVertex, "no free boundary circle left");
      b = first_b;
    }

    DriveDecision dec = drive_boundary(g, b, v0);
    require(!dec.terminal, Errc::Internal,
            "terminal configuration on a non-disk graph");

    auto [g2, rec] = apply_move(g, dec.move);

    // Lexicographic measure (#vertices, pants walk) must drop.
    if (g2.vertices.size() < g.vertices.size()) {
      prev_walk = std::numeric_limits<int>::max();
    } else if (g2.vertices.size() == g.vertices.size()) {
      if (dec.move.kind != MoveKind::IH || dec.walk_length >= prev_walk)
        fail(Errc::NoProgress, "termination measure failed to decrease");
      prev_walk = dec.walk_length;
    } else {
      fail(Errc::NoProgress, "vertex count increased");
    }

    ledger = transfer_gleams(std::move(ledger), rec);
    res.certificate.steps.push_back(std::move(rec));
    res.certificate.ledger_trail.push_back(ledger_hash(ledger));

    if (checked_mode().load()) detail::check_acyclic_structure(g2);
    g = std::move(g2);
  }

  require(ledger.live.empty(), Errc::Internal,
          "live gleam entries survived a full collapse");
  res.certificate.final_graph = g;
  res.final_ledger = std::move(ledger);
  return res;
}

struct VerifyResult {
  bool ok = false;
  std::string diagnostic;
};

// Replays every step with full validation; true iff the replay reaches the
// recorded final graph and it is the disk graph.
inline VerifyResult verify_certificate(const MartelliGraph& g0,
                                       const CollapseCertificate& cert) {
  VerifyResult out;
  try {
    if (graph_hash(g0) != cert.initial_hash) {
      out.diagnostic = "ReplayMismatch: initial graph hash";
      return out;
    }
    GleamLedger ledger = cert.initial_ledger;
    if (ledger.graph_version != cert.initial_hash) {
      out.diagnostic = "ReplayMismatch: ledger version";
      return out;
    }
    MartelliGraph g = g0;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      const MoveRecord& rec = cert.steps[i];
      auto [g2, replayed] = apply_move(g, rec.move);
      if (replayed.before_hash != rec.before_hash ||
          replayed.after_hash != rec.after_hash) {
        out.diagnostic =
            "ReplayMismatch: step " + std::to_string(i) + " hashes";
        return out;
      }
      ledger = transfer_gleams(std::move(ledger), replayed);
      if (i < cert.ledger_trail.size() &&
          ledger_hash(ledger) != cert.ledger_trail[i]) {
        out.diagnostic =
            "ReplayMismatch: step " + std::to_string(i) + " ledger";
        return out;
      }
      g = std::move(g2);
    }
    if (!(g == cert.final_graph)) {
      out.diagnostic = "ReplayMismatch: final graph";
      return out;
    }
    if (!is_disk_graph(g)) {
      out.diagnostic = "final graph is not the disk graph";
      return out;
    }
    out.ok = true;
  } catch (const Error& e) {
    out.diagnostic = e.what();
  }
  return out;
}

}  // namespace shadowpoly
