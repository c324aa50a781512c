#pragma once

// Instance generation and small-graph enumeration.
//
// Acyclic instances are grown from the disk graph by inverse collapse
// surgeries (each is the exact inverse of a move, so homology is preserved
// and every acyclic graph is reachable); the result is still filtered
// through the homology oracle. Trees come from slot-capped growth; the
// unconstrained generator draws a kind multiset and a uniform matching.

#include <array>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "shadowpoly/graph.hpp"
#include "shadowpoly/homology.hpp"
#include "shadowpoly/moves.hpp"

namespace shadowpoly {

struct GenConstraints {
  bool require_acyclic = false;
  bool require_tree = false;
};

namespace gen_detail {

// Deterministic bounded draw (independent of distribution implementations).
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return bound == 0 ? 0 : rng() % bound;
}

inline EdgeId pick_edge(const MartelliGraph& g, std::mt19937_64& rng) {
  std::uint64_t k = draw(rng, g.edges.size());
  auto it = g.edges.begin();
  std::advance(it, static_cast<long>(k));
  return it->first;
}

// Insert a pants capped by a disk along an edge (inverse of YV).
inline MartelliGraph inv_yv(const MartelliGraph& g, EdgeId eid) {
  MartelliGraph out = g;
  Edge e = out.edges.at(eid);
  VertexId p = out.max_vertex_id() + 1, d = p + 1;
  EdgeId e2 = out.max_edge_id() + 1, e3 = e2 + 1;
  out.add_vertex(p, VertexKind::P);
  out.add_vertex(d, VertexKind::D);
  out.edges.at(eid).end2 = {p, 1};
  out.add_edge(e2, {p, 2}, e.end2, e.sign);
  out.add_edge(e3, {p, 3}, {d, 1});
  out.edges.at(eid).sign = +1;
  return out;
}

// Insert a Y111 with a free leg along an edge (inverse of move A).
inline MartelliGraph inv_a(const MartelliGraph& g, EdgeId eid) {
  MartelliGraph out = g;
  Edge e = out.edges.at(eid);
  VertexId y = out.max_vertex_id() + 1, b = y + 1;
  EdgeId e2 = out.max_edge_id() + 1, e3 = e2 + 1;
  out.add_vertex(y, VertexKind::Y111);
  out.add_vertex(b, VertexKind::B);
  out.edges.at(eid).end2 = {y, 1};
  out.add_edge(e2, {y, 2}, e.end2, e.sign);
  out.add_edge(e3, {y, 3}, {b, 1});
  out.edges.at(eid).sign = +1;
  return out;
}

// Replace a free boundary by a Y12 whose doubled band is free (inverse of
// move B).
inline MartelliGraph inv_b(const MartelliGraph& g, VertexId bv) {
  MartelliGraph out = g;
  SlotIndex idx(out);
  std::optional<SlotIndex::Use> u = idx.find(bv, 1);
  require(u.has_value(), Errc::Internal, "free boundary is unwired");
  VertexId t = out.max_vertex_id() + 1, nb = t + 1;
  EdgeId e2 = out.max_edge_id() + 1;
  Edge& f = out.edges.at(u->edge);
  (u->second_end ? f.end2 : f.end1) = {t, kY12SingleSlot};
  out.vertices.erase(bv);
  out.add_vertex(t, VertexKind::Y12);
  out.add_vertex(nb, VertexKind::B);
  out.add_edge(e2, {t, kY12DoubledSlot}, {nb, 1});
  return out;
}

// Expand a pants with a free circle into pants + doubled band (inverse of
// move C). Requires p to have a B neighbor.
inline std::optional<MartelliGraph> inv_c(const MartelliGraph& g, VertexId p) {
  SlotIndex idx(g);
  std::optional<int> b_slot;
  VertexId bv = 0;
  for (int s = 1; s <= 3; ++s) {
    std::optional<SlotIndex::Use> u = idx.find(p, s);
    const Edge& e = g.edge(u->edge);
    const EdgeEnd& far = u->second_end ? e.end1 : e.end2;
    if (far.vertex != p && g.kind_of(far.vertex) == VertexKind::B) {
      if (!b_slot || far.vertex < bv) {
        b_slot = s;
        bv = far.vertex;
      }
    }
  }
  if (!b_slot) return std::nullopt;

  std::vector<detail::EndRef> rest =
      detail::other_ends(g, idx, p, {*b_slot});
  MartelliGraph out = g;
  VertexId p2 = out.max_vertex_id() + 1, t = p2 + 1, b2 = t + 1;
  EdgeId ec = out.max_edge_id() + 1, eb = ec + 1;
  EdgeId old_bedge = idx.find(p, *b_slot)->edge;
  out.vertices.erase(p);
  out.vertices.erase(bv);
  out.edges.erase(old_bedge);
  out.add_vertex(p2, VertexKind::P);
  out.add_vertex(t, VertexKind::Y12);
  out.add_vertex(b2, VertexKind::B);
  {
    Edge& e = out.edges.at(rest[0].edge);
    (rest[0].second ? e.end2 : e.end1) = {p2, 1};
  }
  {
    Edge& e = out.edges.at(rest[1].edge);
    (rest[1].second ? e.end2 : e.end1) = {t, kY12SingleSlot};
  }
  out.add_edge(ec, {p2, 2}, {t, kY12DoubledSlot});
  out.add_edge(eb, {p2, 3}, {b2, 1});
  return out;
}

inline MartelliGraph grow_acyclic(std::mt19937_64& rng, int n) {
  MartelliGraph g;
  g.add_vertex(1, VertexKind::B);
  g.add_vertex(2, VertexKind::D);
  g.add_edge(1, {1, 1}, {2, 1});

  int ih_budget = n;
  for (;;) {
    int v = static_cast<int>(g.vertices.size());
    std::vector<int> ops;  // 0 inv_yv(+2) 1 inv_a(+2) 2 inv_b(+1) 3 inv_c(+1)
    if (v + 2 <= n) {
      ops.push_back(0);
      ops.push_back(1);
    }
    if (v + 1 <= n) ops.push_back(2);
    std::vector<VertexId> c_candidates;
    if (v + 1 <= n) {
      SlotIndex idx(g);
      for (const auto& [vid, kind] : g.vertices) {
        if (kind != VertexKind::P) continue;
        for (int s = 1; s <= 3; ++s) {
          std::optional<SlotIndex::Use> u = idx.find(vid, s);
          const Edge& e = g.edge(u->edge);
          const EdgeEnd& far = u->second_end ? e.end1 : e.end2;
          if (far.vertex != vid && g.kind_of(far.vertex) == VertexKind::B) {
            c_candidates.push_back(vid);
            break;
          }
        }
      }
      if (!c_candidates.empty()) ops.push_back(3);
    }
    bool can_ih = ih_budget > 0;
    std::vector<EdgeId> pp_edges;
    if (can_ih) {
      for (const auto& [eid, e] : g.edges)
        if (e.end1.vertex != e.end2.vertex &&
            g.kind_of(e.end1.vertex) == VertexKind::P &&
            g.kind_of(e.end2.vertex) == VertexKind::P)
          pp_edges.push_back(eid);
      if (!pp_edges.empty() && draw(rng, 5) == 0) ops.push_back(4);
    }
    if (ops.empty()) break;

    switch (ops[draw(rng, ops.size())]) {
      case 0:
        g = inv_yv(g, pick_edge(g, rng));
        break;
      case 1:
        g = inv_a(g, pick_edge(g, rng));
        break;
      case 2: {
        std::vector<VertexId> bs;
        for (const auto& [vid, kind] : g.vertices)
          if (kind == VertexKind::B) bs.push_back(vid);
        g = inv_b(g, bs[draw(rng, bs.size())]);
        break;
      }
      case 3: {
        auto out = inv_c(g, c_candidates[draw(rng, c_candidates.size())]);
        require(out.has_value(), Errc::Internal, "inv_c candidate vanished");
        g = *out;
        break;
      }
      case 4: {
        EdgeId e = pp_edges[draw(rng, pp_edges.size())];
        int variant = 1 + static_cast<int>(draw(rng, 2));
        g = apply_ih(g, e, variant).first;
        --ih_budget;
        break;
      }
    }
  }
  return g;
}

inline MartelliGraph grow_tree(std::mt19937_64& rng, int n) {
  const std::array<VertexKind, 7> kinds = {
      VertexKind::B,   VertexKind::D,   VertexKind::P,  VertexKind::M,
      VertexKind::Y111, VertexKind::Y12, VertexKind::Y3};
  MartelliGraph g;
  VertexId next_v = 1;
  EdgeId next_e = 1;

  std::vector<VertexKind> starts;
  for (VertexKind k : kinds)
    if (slot_count(k) <= n - 1) starts.push_back(k);
  VertexKind k0 = starts[draw(rng, starts.size())];
  g.add_vertex(next_v++, k0);
  std::vector<EdgeEnd> open;
  for (int s = 1; s <= slot_count(k0); ++s) open.push_back({1, s});

  while (!open.empty()) {
    std::size_t oi = draw(rng, open.size());
    EdgeEnd slot = open[oi];
    open.erase(open.begin() + static_cast<long>(oi));

    int v = static_cast<int>(g.vertices.size());
    std::vector<VertexKind> growable;
    for (VertexKind k : kinds)
      if (v + static_cast<int>(open.size()) + slot_count(k) <= n)
        growable.push_back(k);
    bool grow = !growable.empty() && draw(rng, 3) != 0;
    if (grow) {
      VertexKind k = growable[draw(rng, growable.size())];
      VertexId nv = next_v++;
      g.add_vertex(nv, k);
      int wired = 1 + static_cast<int>(draw(rng, slot_count(k)));
      g.add_edge(next_e++, slot, {nv, wired});
      for (int s = 1; s <= slot_count(k); ++s)
        if (s != wired) open.push_back({nv, s});
    } else {
      VertexId nv = next_v++;
      g.add_vertex(nv, VertexKind::B);
      g.add_edge(next_e++, slot, {nv, 1});
    }
  }
  return g;
}

inline MartelliGraph random_matching_graph(std::mt19937_64& rng, int n) {
  const std::array<VertexKind, 7> kinds = {
      VertexKind::B,   VertexKind::D,   VertexKind::P,  VertexKind::M,
      VertexKind::Y111, VertexKind::Y12, VertexKind::Y3};
  for (int attempt = 0; attempt < 64; ++attempt) {
    int m = 2 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(n - 1)));
    std::vector<VertexKind> ks;
    int slot_sum = 0;
    for (int i = 0; i < m; ++i) {
      VertexKind k = kinds[draw(rng, kinds.size())];
      ks.push_back(k);
      slot_sum += slot_count(k);
    }
    if (slot_sum % 2 != 0) continue;

    MartelliGraph g;
    std::vector<EdgeEnd> slots;
    for (int i = 0; i < m; ++i) {
      g.add_vertex(i + 1, ks[i]);
      for (int s = 1; s <= slot_count(ks[i]); ++s)
        slots.push_back({i + 1, s});
    }
    for (std::size_t i = slots.size(); i > 1; --i)
      std::swap(slots[i - 1], slots[draw(rng, i)]);
    EdgeId eid = 1;
    for (std::size_t i = 0; i + 1 < slots.size(); i += 2) {
      int sign = draw(rng, 8) == 0 ? -1 : +1;
      g.add_edge(eid++, slots[i], slots[i + 1], sign);
    }
    return g;
  }
  fail(Errc::GenerationExhausted, "no even-slot kind multiset found");
}

}  // namespace gen_detail

// Deterministic in (seed, n, constraints). Acyclic instances are grown by
// inverse collapses and then filtered through the homology oracle.
inline MartelliGraph random_graph(std::uint64_t seed, int n,
                                  GenConstraints c = {}) {
  if (n < 2) fail(Errc::BoundExceeded, "size bound must be at least 2");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 1);
  if (c.require_acyclic) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      MartelliGraph g = gen_detail::grow_acyclic(rng, n);
      require_well_formed(g);
      if (is_acyclic(g)) return g;
    }
    fail(Errc::GenerationExhausted, "acyclic generation kept failing");
  }
  if (c.require_tree) {
    MartelliGraph g = gen_detail::grow_tree(rng, n);
    require_well_formed(g);
    return g;
  }
  MartelliGraph g = gen_detail::random_matching_graph(rng, n);
  require_well_formed(g);
  return g;
}

// Boundary-to-disk chain of doubled bands; reduces by moves (b) only.
inline MartelliGraph make_y12_chain(int total_vertices) {
  require(total_vertices >= 2, Errc::BoundExceeded, "chain needs >= 2");
  MartelliGraph g;
  g.add_vertex(1, VertexKind::B);
  for (int v = 2; v < total_vertices; ++v) g.add_vertex(v, VertexKind::Y12);
  g.add_vertex(total_vertices, VertexKind::D);
  EdgeId e = 1;
  if (total_vertices == 2) {
    g.add_edge(e, {1, 1}, {2, 1});
    return g;
  }
  g.add_edge(e++, {1, 1}, {2, kY12DoubledSlot});
  for (int v = 2; v + 1 < total_vertices; ++v)
    g.add_edge(e++, {v, kY12SingleSlot}, {v + 1, kY12DoubledSlot});
  g.add_edge(e, {total_vertices - 1, kY12SingleSlot}, {total_vertices, 1});
  return g;
}

// ---------------------------------------------------------------------------
// Isomorphism (brute force at desk scale)

namespace gen_detail {

inline int slot_class(VertexKind k, int slot) {
  return k == VertexKind::Y12 ? slot : 0;
}

}  // namespace gen_detail

// Canonical encoding: minimum over kind-preserving relabelings of the sorted
// edge list; slots enter only through their symmetry class (the doubled leg
// of a Y12 is distinguished, all other slots of a kind are interchangeable).
// Edge ids and signs do not participate.
inline std::string canonical_form(const MartelliGraph& g) {
  std::vector<std::vector<VertexId>> groups(7);
  for (const auto& [vid, kind] : g.vertices)
    groups[static_cast<int>(kind)].push_back(vid);

  std::vector<VertexId> perm;  // concatenated group permutations
  for (auto& gr : groups)
    for (VertexId v : gr) perm.push_back(v);

  // Pre-resolved edge ends: (vertex id, slot class).
  struct End {
    VertexId v;
    int cls;
  };
  std::vector<std::pair<End, End>> ends;
  ends.reserve(g.edges.size());
  for (const auto& [eid, e] : g.edges)
    ends.push_back(
        {{e.end1.vertex,
          gen_detail::slot_class(g.kind_of(e.end1.vertex), e.end1.slot)},
         {e.end2.vertex,
          gen_detail::slot_class(g.kind_of(e.end2.vertex), e.end2.slot)}});

  std::size_t max_id = static_cast<std::size_t>(g.max_vertex_id());
  std::vector<int> label(max_id + 1, 0);

  std::vector<std::uint32_t> enc(ends.size()), best;
  auto consider = [&]() {
    for (std::size_t i = 0; i < perm.size(); ++i)
      label[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    for (std::size_t i = 0; i < ends.size(); ++i) {
      std::uint32_t a =
          static_cast<std::uint32_t>(label[ends[i].first.v] * 4 +
                                     ends[i].first.cls);
      std::uint32_t b =
          static_cast<std::uint32_t>(label[ends[i].second.v] * 4 +
                                     ends[i].second.cls);
      if (b < a) std::swap(a, b);
      enc[i] = (a << 16) | b;
    }
    std::sort(enc.begin(), enc.end());
    if (best.empty() || enc < best) best = enc;
  };

  std::vector<std::size_t> offsets;
  std::size_t off = 0;
  for (const auto& gr : groups) {
    offsets.push_back(off);
    off += gr.size();
  }
  auto rec = [&](auto&& self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      consider();
      return;
    }
    std::vector<VertexId>& gr = groups[gi];
    std::sort(gr.begin(), gr.end());
    do {
      std::copy(gr.begin(), gr.end(),
                perm.begin() + static_cast<long>(offsets[gi]));
      self(self, gi + 1);
    } while (std::next_permutation(gr.begin(), gr.end()));
  };
  rec(rec, 0);
  if (best.empty() && !ends.empty()) best = enc;

  std::string s;
  s.reserve(best.size() * 6 + 16);
  for (int ki = 0; ki < 7; ++ki) {
    s += std::to_string(groups[ki].size());
    s += kind_name(static_cast<VertexKind>(ki));
  }
  s += '|';
  for (std::uint32_t x : best) {
    s += std::to_string(x);
    s += ';';
  }
  return s;
}

inline bool isomorphic(const MartelliGraph& a, const MartelliGraph& b) {
  if (a.vertices.size() != b.vertices.size() ||
      a.edges.size() != b.edges.size())
    return false;
  return canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of well-formed graphs up to isomorphism

namespace gen_detail {

struct Enumerator {
  int max_vertices;
  std::vector<MartelliGraph> out;
  bool prune_symmetry = true;

  void run() {
    for (int k = 1; k <= max_vertices; ++k) {
      std::vector<VertexKind> kinds;
      multisets(k, 0, kinds);
    }
  }

  void multisets(int k, int first_kind, std::vector<VertexKind>& kinds) {
    if (static_cast<int>(kinds.size()) == k) {
      int slots = 0;
      for (VertexKind kk : kinds) slots += slot_count(kk);
      if (slots % 2 == 0) matchings(kinds);
      return;
    }
    for (int ki = first_kind; ki < 7; ++ki) {
      kinds.push_back(static_cast<VertexKind>(ki));
      multisets(k, ki, kinds);
      kinds.pop_back();
    }
  }

  void matchings(const std::vector<VertexKind>& kinds) {
    std::vector<EdgeEnd> slots;
    for (std::size_t i = 0; i < kinds.size(); ++i)
      for (int s = 1; s <= slot_count(kinds[i]); ++s)
        slots.push_back({static_cast<VertexId>(i + 1), s});
    std::vector<int> partner(slots.size(), -1);
    std::set<std::string> seen;
    pair_up(kinds, slots, partner, seen);
  }

  void pair_up(const std::vector<VertexKind>& kinds,
               const std::vector<EdgeEnd>& slots, std::vector<int>& partner,
               std::set<std::string>& seen) {
    int first = -1;
    for (std::size_t i = 0; i < partner.size(); ++i)
      if (partner[i] < 0) {
        first = static_cast<int>(i);
        break;
      }
    if (first < 0) {
      emit(kinds, slots, partner, seen);
      return;
    }

    std::set<std::pair<VertexId, int>> offered;  // (vertex, class) dedup
    std::map<VertexKind, VertexId> pristine_rep;  // one untouched vertex/kind
    for (std::size_t j = first + 1; j < partner.size(); ++j) {
      if (partner[static_cast<int>(j)] >= 0) continue;
      VertexId vj = slots[j].vertex;
      VertexKind kj = kinds[vj - 1];
      if (prune_symmetry) {
        int cls = slot_class(kj, slots[j].slot);
        if (!offered.insert({vj, cls}).second) continue;
        bool pristine = true;
        for (std::size_t s = 0; s < slots.size(); ++s)
          if (slots[s].vertex == vj && partner[s] >= 0) pristine = false;
        if (pristine && vj != slots[first].vertex) {
          auto [it, fresh] = pristine_rep.emplace(kj, vj);
          if (!fresh && it->second != vj) continue;
        }
      }
      partner[first] = static_cast<int>(j);
      partner[j] = first;
      pair_up(kinds, slots, partner, seen);
      partner[first] = -1;
      partner[j] = -1;
    }
  }

  void emit(const std::vector<VertexKind>& kinds,
            const std::vector<EdgeEnd>& slots, const std::vector<int>& partner,
            std::set<std::string>& seen) {
    MartelliGraph g;
    for (std::size_t i = 0; i < kinds.size(); ++i)
      g.add_vertex(static_cast<VertexId>(i + 1), kinds[i]);
    EdgeId eid = 1;
    for (std::size_t i = 0; i < partner.size(); ++i) {
      int j = partner[i];
      if (j < 0 || static_cast<std::size_t>(j) < i) continue;
      g.add_edge(eid++, slots[i], slots[static_cast<std::size_t>(j)]);
    }
    if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
  }
};

}  // namespace gen_detail

// All well-formed graphs with 1..n vertices, one per isomorphism class, with
// sign +1 on every edge (signs are not enumerated). n is capped at desk
// scale.
inline std::vector<MartelliGraph> enumerate_graphs(int n,
                                                   bool prune = true) {
  if (n < 0 || n > 8)
    fail(Errc::BoundExceeded, "enumeration is supported up to 8 vertices");
  gen_detail::Enumerator en;
  en.max_vertices = n;
  en.prune_symmetry = prune;
  en.run();
  return std::move(en.out);
}

}  // namespace shadowpoly
