#pragma once

// Regions are the components of the polyhedron minus its singular set. Each
// piece contributes sheets (D/P/M/Y3: one, Y12: fixed leg + doubled band,
// Y111: one leg per slot); sheets merge across graph edges because gluing
// circles are non-singular, and never through a singular circle. A region
// touching a free boundary circle (a B vertex) is a boundary region.
//
// The gleam ledger carries half-integer gleams (stored doubled) on internal
// regions together with the set of original regions each live region
// accumulated, so the collapse gleam sum can be replayed and audited.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/container/flat_map.hpp>

#include "shadowpoly/graph.hpp"

namespace shadowpoly {

struct SheetId {
  VertexId vertex = 0;
  int index = 0;
  friend bool operator==(const SheetId&, const SheetId&) = default;
  friend auto operator<=>(const SheetId&, const SheetId&) = default;
};

inline std::string sheet_name(SheetId s) {
  return std::to_string(s.vertex) + "." + std::to_string(s.index);
}

inline int sheet_count(VertexKind k) {
  switch (k) {
    case VertexKind::B:
      return 0;
    case VertexKind::D:
    case VertexKind::P:
    case VertexKind::M:
    case VertexKind::Y3:
      return 1;
    case VertexKind::Y12:
      return 2;  // 1 = fixed leg, 2 = doubled band
    case VertexKind::Y111:
      return 3;  // one leg per slot
  }
  return 0;
}

// Sheet met by an edge end landing on (kind, slot); B ends meet none.
inline std::optional<int> sheet_at(VertexKind k, int slot) {
  switch (k) {
    case VertexKind::B:
      return std::nullopt;
    case VertexKind::D:
    case VertexKind::P:
    case VertexKind::M:
    case VertexKind::Y3:
      return 1;
    case VertexKind::Y12:
    case VertexKind::Y111:
      return slot;  // slots align with sheet indices
  }
  return std::nullopt;
}

struct Region {
  SheetId id;  // smallest member sheet
  std::vector<SheetId> sheets;
  bool boundary = false;
};

struct RegionMap {
  std::vector<Region> regions;  // sorted by id
  std::vector<std::pair<SheetId, std::size_t>> index_of_sheet;  // sorted

  const Region* region_of_sheet(SheetId s) const {
    auto it = std::lower_bound(
        index_of_sheet.begin(), index_of_sheet.end(), s,
        [](const auto& a, SheetId key) { return a.first < key; });
    if (it == index_of_sheet.end() || it->first != s) return nullptr;
    return &regions[it->second];
  }
  const Region* find(SheetId region_id) const {
    const Region* r = region_of_sheet(region_id);
    return r && r->id == region_id ? r : nullptr;
  }
};

inline RegionMap extract_regions(const MartelliGraph& g) {
  require_well_formed(g);

  std::vector<SheetId> sheets;
  for (const auto& [vid, kind] : g.vertices)
    for (int i = 1; i <= sheet_count(kind); ++i)
      sheets.push_back({vid, i});

  auto sheet_pos = [&](SheetId s) -> std::size_t {
    auto it = std::lower_bound(sheets.begin(), sheets.end(), s);
    return static_cast<std::size_t>(it - sheets.begin());
  };

  UnionFind uf(sheets.size());
  std::vector<char> touches_boundary(sheets.size(), 0);
  for (const auto& [eid, e] : g.edges) {
    auto s1 = sheet_at(g.kind_of(e.end1.vertex), e.end1.slot);
    auto s2 = sheet_at(g.kind_of(e.end2.vertex), e.end2.slot);
    if (s1 && s2) {
      uf.unite(sheet_pos({e.end1.vertex, *s1}), sheet_pos({e.end2.vertex, *s2}));
    } else if (s1) {
      touches_boundary[sheet_pos({e.end1.vertex, *s1})] = 1;
    } else if (s2) {
      touches_boundary[sheet_pos({e.end2.vertex, *s2})] = 1;
    }
  }

  // Group by union-find root. Groups are discovered while scanning the
  // sorted sheet list, so group order is ascending in the smallest member:
  // regions come out sorted by id and the sheet index is sorted for free.
  std::vector<std::size_t> group_of(sheets.size());
  std::size_t group_count = 0;
  {
    std::vector<std::size_t> first_seen(sheets.size(), SIZE_MAX);
    for (std::size_t i = 0; i < sheets.size(); ++i) {
      std::size_t root = uf.find(i);
      if (first_seen[root] == SIZE_MAX) first_seen[root] = group_count++;
      group_of[i] = first_seen[root];
    }
  }
  RegionMap rm;
  rm.regions.resize(group_count);
  rm.index_of_sheet.reserve(sheets.size());
  for (std::size_t i = 0; i < sheets.size(); ++i) {
    Region& r = rm.regions[group_of[i]];
    if (r.sheets.empty()) r.id = sheets[i];  // smallest member
    r.sheets.push_back(sheets[i]);
    r.boundary = r.boundary || touches_boundary[i];
    rm.index_of_sheet.emplace_back(sheets[i], group_of[i]);
  }
  return rm;
}

// One region computed by walking the sheet-merge graph from a single sheet;
// cost is proportional to the region, not the graph.
struct LocalRegion {
  SheetId id;
  bool boundary = false;
  std::vector<SheetId> sheets;
};

inline LocalRegion local_region(const MartelliGraph& g, const SlotIndex& idx,
                                SheetId start) {
  LocalRegion out;
  out.id = start;
  std::vector<SheetId> stack{start};
  std::set<SheetId> seen{start};
  while (!stack.empty()) {
    SheetId s = stack.back();
    stack.pop_back();
    out.sheets.push_back(s);
    if (s < out.id) out.id = s;
    VertexKind k = g.kind_of(s.vertex);
    for (int slot = 1; slot <= slot_count(k); ++slot) {
      auto si = sheet_at(k, slot);
      if (!si || *si != s.index) continue;
      std::optional<SlotIndex::Use> u = idx.find(s.vertex, slot);
      require(u.has_value(), Errc::Internal, "unsaturated slot in region walk");
      const Edge& e = g.edge(u->edge);
      const EdgeEnd& far = u->second_end ? e.end1 : e.end2;
      VertexKind fk = g.kind_of(far.vertex);
      auto fi = sheet_at(fk, far.slot);
      if (!fi) {
        out.boundary = true;
        continue;
      }
      SheetId fs{far.vertex, *fi};
      if (seen.insert(fs).second) stack.push_back(fs);
    }
  }
  std::sort(out.sheets.begin(), out.sheets.end());
  return out;
}

// ---------------------------------------------------------------------------
// Region flow across a rewrite step

// Where an old region went: absent new_region means every sheet vanished.
struct RegionFlow {
  SheetId old_region;
  std::optional<SheetId> new_region;
  bool to_boundary = false;
  friend bool operator==(const RegionFlow&, const RegionFlow&) = default;
};

using SheetMap = std::vector<std::pair<SheetId, std::optional<SheetId>>>;

// Non-identity flows of `before`-regions across a rewrite: merges, deaths
// and boundary promotions. Regions without a row are untouched (same id,
// same membership status). `explicit_map` lists sheets of pieces the rewrite
// deleted or renamed; all other sheets survive unchanged.
inline std::vector<RegionFlow> compute_region_flow(
    const MartelliGraph& after, const SheetMap& explicit_map,
    const RegionMap& rb, const RegionMap& ra) {
  auto survives = [&](SheetId s) -> std::optional<SheetId> {
    for (const auto& [from, to] : explicit_map)
      if (from == s) return to;
    if (after.vertices.count(s.vertex)) return s;
    return std::nullopt;
  };

  std::vector<RegionFlow> flows;
  for (const Region& r : rb.regions) {
    RegionFlow f;
    f.old_region = r.id;
    for (SheetId s : r.sheets) {
      auto t = survives(s);
      if (!t) continue;
      const Region* nr = ra.region_of_sheet(*t);
      require(nr != nullptr, Errc::Internal, "surviving sheet has no region");
      if (!f.new_region) {
        f.new_region = nr->id;
        f.to_boundary = nr->boundary;
      } else {
        require(*f.new_region == nr->id, Errc::Internal,
                "region split across a move");
      }
    }
    require(!(r.boundary && f.new_region && !f.to_boundary), Errc::Internal,
            "boundary region became internal");
    if (f.new_region && *f.new_region == r.id && f.to_boundary == r.boundary)
      continue;  // identity
    flows.push_back(std::move(f));
  }
  return flows;
}

// ---------------------------------------------------------------------------
// Gleam ledger

struct GleamEntry {
  long long gleam2 = 0;  // gleam = gleam2 / 2
  std::set<SheetId> originals;
  friend bool operator==(const GleamEntry&, const GleamEntry&) = default;
};

namespace detail {

inline std::uint64_t sheet_digest(SheetId s) {
  Fnv64 f;
  f.mix(static_cast<std::uint64_t>(s.vertex));
  f.mix(static_cast<std::uint64_t>(s.index));
  return f.h;
}

inline std::uint64_t entry_digest(SheetId id, const GleamEntry& e) {
  Fnv64 f;
  f.mix(sheet_digest(id));
  f.mix(static_cast<std::uint64_t>(e.gleam2));
  f.mix(e.originals.size());
  for (SheetId o : e.originals) f.mix(sheet_digest(o));
  return f.h;
}

}  // namespace detail

struct GleamLedger {
  std::uint64_t graph_version = 0;  // hash of the carrier graph
  std::map<SheetId, GleamEntry> live;  // keyed by current internal region id
  std::set<SheetId> dropped;           // originals whose carrier died
  std::map<SheetId, long long> original_gleam2;  // all original internals

  // Order-independent accumulators, maintained incrementally so hashing a
  // snapshot does not rescan the whole ledger on every step.
  std::uint64_t live_digest = 0;
  std::uint64_t dropped_digest = 0;
};

inline std::uint64_t ledger_hash(const GleamLedger& l) {
  Fnv64 f;
  f.mix(l.graph_version);
  f.mix(l.live.size());
  f.mix(l.live_digest);
  f.mix(l.dropped.size());
  f.mix(l.dropped_digest);
  return f.h;
}

struct GleamAssignment {
  SheetId region;
  long long gleam2 = 0;
};

inline GleamLedger init_gleams(const MartelliGraph& g,
                               const std::vector<GleamAssignment>& assignments,
                               const RegionMap* rm_hint = nullptr) {
  RegionMap local;
  const RegionMap& rm = rm_hint ? *rm_hint : (local = extract_regions(g));

  GleamLedger ledger;
  ledger.graph_version = graph_hash(g);
  for (const Region& r : rm.regions)
    if (!r.boundary) ledger.original_gleam2.emplace(r.id, 0);

  std::set<SheetId> seen;
  for (const auto& a : assignments) {
    const Region* r = rm.find(a.region);
    if (!r) fail(Errc::UnknownRegion, sheet_name(a.region));
    if (r->boundary)
      fail(Errc::NotInternalRegion,
           sheet_name(a.region) + " is a boundary region");
    if (!seen.insert(a.region).second)
      fail(Errc::DuplicateAssignment, sheet_name(a.region));
    ledger.original_gleam2.at(a.region) = a.gleam2;
  }

  for (const auto& [id, g2] : ledger.original_gleam2) {
    GleamEntry e{g2, {id}};
    ledger.live_digest ^= detail::entry_digest(id, e);
    ledger.live.emplace(id, std::move(e));
  }
  return ledger;
}

// Conservation: live originals are pairwise disjoint, their union plus the
// dropped set is exactly the original internal regions, and every live gleam
// re-sums from its originals (the gleam-sum formula, each original once).
// Also recomputes the incremental digests.
inline void check_ledger_conservation(const GleamLedger& l) {
  std::set<SheetId> seen = l.dropped;
  std::uint64_t live_acc = 0, dropped_acc = 0;
  for (SheetId o : l.dropped) dropped_acc ^= detail::sheet_digest(o);
  for (const auto& [id, e] : l.live) {
    live_acc ^= detail::entry_digest(id, e);
    long long sum = 0;
    for (SheetId o : e.originals) {
      require(seen.insert(o).second, Errc::Internal,
              "ledger originals overlap at " + sheet_name(o));
      auto it = l.original_gleam2.find(o);
      require(it != l.original_gleam2.end(), Errc::Internal,
              "unknown original " + sheet_name(o));
      sum += it->second;
    }
    require(sum == e.gleam2, Errc::Internal,
            "gleam of " + sheet_name(id) + " is not the sum of its originals");
  }
  require(seen.size() == l.original_gleam2.size(), Errc::Internal,
          "ledger lost track of original regions");
  require(live_acc == l.live_digest && dropped_acc == l.dropped_digest,
          Errc::Internal, "ledger digests out of date");
}

// Applies the region flows of one rewrite step. Regions that vanish or become
// boundary move their originals to the dropped set; merged regions union
// their originals and add their gleams. Rows absent from `flows` are
// untouched regions. Takes the ledger by value: pass std::move to update in
// place.
inline GleamLedger transfer_gleams_core(GleamLedger ledger,
                                        std::uint64_t before_version,
                                        std::uint64_t after_version,
                                        const std::vector<RegionFlow>& flows) {
  if (ledger.graph_version != before_version)
    fail(Errc::StaleRecord, "ledger does not match the move's before-graph");
  ledger.graph_version = after_version;

  std::map<SheetId, GleamEntry> next;
  for (const RegionFlow& f : flows) {
    auto it = ledger.live.find(f.old_region);
    if (it == ledger.live.end()) continue;  // boundary region: no entry
    GleamEntry& e = it->second;
    ledger.live_digest ^= detail::entry_digest(it->first, e);
    if (!f.new_region || f.to_boundary) {
      for (SheetId o : e.originals) {
        ledger.dropped.insert(o);
        ledger.dropped_digest ^= detail::sheet_digest(o);
      }
    } else {
      GleamEntry& acc = next[*f.new_region];
      acc.gleam2 += e.gleam2;
      for (SheetId o : e.originals)
        require(acc.originals.insert(o).second, Errc::Internal,
                "original counted twice in a merge");
    }
    ledger.live.erase(it);
  }
  for (auto& [id, e] : next) {
    auto it = ledger.live.find(id);
    if (it != ledger.live.end()) {
      // The surviving region kept its id (no flow row) and absorbs the rest.
      ledger.live_digest ^= detail::entry_digest(id, it->second);
      it->second.gleam2 += e.gleam2;
      for (SheetId o : e.originals)
        require(it->second.originals.insert(o).second, Errc::Internal,
                "original counted twice in a merge");
      ledger.live_digest ^= detail::entry_digest(id, it->second);
    } else {
      ledger.live_digest ^= detail::entry_digest(id, e);
      ledger.live.emplace(id, std::move(e));
    }
  }
  if (checked_mode().load()) check_ledger_conservation(ledger);
  return ledger;
}

}  // namespace shadowpoly
