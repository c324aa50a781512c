#pragma once

// JSON views of the domain types (machine output for the CLI and traces).

#include <json.hpp>

#include "shadowpoly/homology.hpp"
#include "shadowpoly/io.hpp"
#include "shadowpoly/moves.hpp"
#include "shadowpoly/reducer.hpp"
#include "shadowpoly/regions.hpp"

namespace shadowpoly {

using Json = nlohmann::ordered_json;

inline Json to_json(const HomologyProfile& p) {
  return Json{{"betti", {p.betti[0], p.betti[1], p.betti[2]}},
              {"torsion1", p.torsion1},
              {"euler", p.euler},
              {"acyclic", p.acyclic}};
}

inline Json to_json(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& viol : r.violations)
    v.push_back(Json{{"code", viol.code}, {"location", viol.location}});
  return Json{{"well_formed", r.well_formed}, {"violations", v}};
}

inline Json to_json(const RegionMap& rm) {
  Json regions = Json::array();
  for (const Region& r : rm.regions) {
    Json sheets = Json::array();
    for (SheetId s : r.sheets) sheets.push_back(sheet_name(s));
    regions.push_back(Json{{"id", sheet_name(r.id)},
                           {"kind", r.boundary ? "boundary" : "internal"},
                           {"sheets", sheets}});
  }
  return Json{{"regions", regions}};
}

inline Json to_json(const GleamLedger& l) {
  Json live = Json::array();
  for (const auto& [id, e] : l.live) {
    Json originals = Json::array();
    for (SheetId o : e.originals) originals.push_back(sheet_name(o));
    live.push_back(Json{{"region", sheet_name(id)},
                        {"gleam2", e.gleam2},
                        {"originals", originals}});
  }
  Json dropped = Json::array();
  for (SheetId o : l.dropped) dropped.push_back(sheet_name(o));
  return Json{{"graph_version", hash_hex(l.graph_version)},
              {"live", live},
              {"dropped", dropped}};
}

inline Json to_json(const MoveInstance& m) {
  Json j{{"kind", move_name(m.kind)}};
  switch (m.kind) {
    case MoveKind::IH:
      j["e"] = m.edge;
      j["variant"] = m.variant;
      break;
    case MoveKind::YV:
      j["p"] = m.p;
      j["d"] = m.d;
      break;
    case MoveKind::A:
      j["b"] = m.b;
      j["v"] = m.v;
      break;
    case MoveKind::B:
      j["b"] = m.b;
      j["t"] = m.t;
      break;
    case MoveKind::C:
      j["b"] = m.b;
      j["p"] = m.p;
      j["t"] = m.t;
      break;
  }
  return j;
}

inline Json to_json(const MoveRecord& r) {
  Json sheet_map = Json::array();
  for (const auto& [from, to] : r.sheet_map)
    sheet_map.push_back(Json{{"from", sheet_name(from)},
                             {"to", to ? Json(sheet_name(*to)) : Json()}});
  Json flows = Json::array();
  for (const RegionFlow& f : r.region_flow) {
    Json j{{"region", sheet_name(f.old_region)}};
    if (!f.new_region)
      j["fate"] = "vanished";
    else if (f.to_boundary)
      j["fate"] = "boundary";
    else
      j["fate"] = "internal";
    if (f.new_region) j["to"] = sheet_name(*f.new_region);
    flows.push_back(j);
  }
  Json added_vertices = Json::array();
  for (const auto& [id, k] : r.added_vertices)
    added_vertices.push_back(Json{{"id", id}, {"kind", kind_name(k)}});
  return Json{{"move", to_json(r.move)},
              {"before", hash_hex(r.before_hash)},
              {"after", hash_hex(r.after_hash)},
              {"vertex_delta", r.vertex_delta},
              {"removed_vertices", r.removed_vertices},
              {"added_vertices", added_vertices},
              {"removed_edges", r.removed_edges},
              {"added_edges", r.added_edges},
              {"sheet_map", sheet_map},
              {"region_flow", flows}};
}

inline Json to_json(const CollapseCertificate& c) {
  Json steps = Json::array();
  for (const MoveRecord& r : c.steps) steps.push_back(to_json(r));
  Json trail = Json::array();
  for (std::uint64_t h : c.ledger_trail) trail.push_back(hash_hex(h));
  return Json{{"initial_hash", hash_hex(c.initial_hash)},
              {"initial_graph", serialize(c.initial_graph)},
              {"initial_ledger", to_json(c.initial_ledger)},
              {"steps", steps},
              {"ledger_trail", trail},
              {"final_graph", serialize(c.final_graph)}};
}

inline Json to_json(const SplitReport& r) {
  return Json{{"separating", r.separating},
              {"acyclic_side", r.acyclic_side},
              {"s1_side", r.s1_side},
              {"generator_ok", r.generator_ok}};
}

}  // namespace shadowpoly
