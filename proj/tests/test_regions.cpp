#include <catch2/catch_amalgamated.hpp>

#include "shadowpoly/io.hpp"
#include "shadowpoly/moves.hpp"
#include "shadowpoly/regions.hpp"

using namespace shadowpoly;

namespace {

const char* kExample8 =
    "vertex 1 D\nvertex 2 Y111\nvertex 3 P\nvertex 4 B\nvertex 5 D\n"
    "vertex 6 P\nvertex 7 B\nvertex 8 D\n"
    "edge 1 1.1 2.1\nedge 2 2.2 3.1\nedge 3 3.2 4.1\nedge 4 3.3 5.1\n"
    "edge 5 2.3 6.1\nedge 6 6.2 7.1\nedge 7 6.3 8.1\n";

std::vector<SheetId> sheet_ids(const Region& r) { return r.sheets; }

}  // namespace

TEST_CASE("disk graph has one boundary region") {
  MartelliGraph g = parse_graph("vertex 1 B\nvertex 2 D\nedge 1 1.1 2.1\n");
  RegionMap rm = extract_regions(g);
  REQUIRE(rm.regions.size() == 1);
  CHECK(rm.regions[0].id == SheetId{2, 1});
  CHECK(rm.regions[0].boundary);
  CHECK(sheet_ids(rm.regions[0]) == std::vector<SheetId>{{2, 1}});
}

TEST_CASE("disk on Moebius strip is one internal region") {
  MartelliGraph g = parse_graph("vertex 1 D\nvertex 2 M\nedge 1 1.1 2.1\n");
  RegionMap rm = extract_regions(g);
  REQUIRE(rm.regions.size() == 1);
  CHECK_FALSE(rm.regions[0].boundary);
  CHECK(sheet_ids(rm.regions[0]) == std::vector<SheetId>{{1, 1}, {2, 1}});
}

TEST_CASE("worked example splits into one internal and two boundary regions") {
  MartelliGraph g = parse_graph(kExample8);
  RegionMap rm = extract_regions(g);
  REQUIRE(rm.regions.size() == 3);

  const Region* internal = rm.find({1, 1});
  REQUIRE(internal != nullptr);
  CHECK_FALSE(internal->boundary);
  CHECK(sheet_ids(*internal) == std::vector<SheetId>{{1, 1}, {2, 1}});

  const Region* pants1 = rm.find({2, 2});
  REQUIRE(pants1 != nullptr);
  CHECK(pants1->boundary);
  CHECK(sheet_ids(*pants1) == std::vector<SheetId>{{2, 2}, {3, 1}, {5, 1}});

  const Region* pants2 = rm.find({2, 3});
  REQUIRE(pants2 != nullptr);
  CHECK(pants2->boundary);
  CHECK(sheet_ids(*pants2) == std::vector<SheetId>{{2, 3}, {6, 1}, {8, 1}});
}

TEST_CASE("singular circles separate sheets that edges would not") {
  // Y111 legs live in distinct regions unless merged through other pieces.
  MartelliGraph g = parse_graph(
      "vertex 1 Y111\nvertex 2 D\nvertex 3 D\nvertex 4 D\n"
      "edge 1 1.1 2.1\nedge 2 1.2 3.1\nedge 3 1.3 4.1\n");
  RegionMap rm = extract_regions(g);
  CHECK(rm.regions.size() == 3);
  for (const Region& r : rm.regions) CHECK_FALSE(r.boundary);
}

TEST_CASE("init_gleams seeds the worked example") {
  MartelliGraph g = parse_graph(kExample8);
  GleamLedger ledger = init_gleams(g, {{{1, 1}, 3}});
  REQUIRE(ledger.live.size() == 1);  // one internal region
  const GleamEntry& e = ledger.live.at({1, 1});
  CHECK(e.gleam2 == 3);
  CHECK(e.originals == std::set<SheetId>{{1, 1}});
  CHECK(ledger.dropped.empty());
  check_ledger_conservation(ledger);
}

TEST_CASE("init_gleams defaults unassigned regions to zero") {
  MartelliGraph g = parse_graph("vertex 1 D\nvertex 2 M\nedge 1 1.1 2.1\n");
  GleamLedger ledger = init_gleams(g, {});
  REQUIRE(ledger.live.size() == 1);
  CHECK(ledger.live.at({1, 1}).gleam2 == 0);
}

TEST_CASE("init_gleams rejects bad assignments") {
  MartelliGraph g = parse_graph(kExample8);
  auto code_of = [&](std::vector<GleamAssignment> as) {
    try {
      init_gleams(g, as);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Internal;
  };
  CHECK(code_of({{{2, 2}, 1}}) == Errc::NotInternalRegion);  // boundary
  CHECK(code_of({{{9, 1}, 1}}) == Errc::UnknownRegion);
  CHECK(code_of({{{2, 1}, 1}}) == Errc::UnknownRegion);  // member, not id
  CHECK(code_of({{{1, 1}, 1}, {{1, 1}, 2}}) == Errc::DuplicateAssignment);
}

TEST_CASE("move (a) merges the two far regions and sums gleams") {
  // Y111 with a free leg; the other two legs capped by disks. The two disk
  // regions carry gleams 1/2 and 1 and merge into one region of gleam 3/2.
  MartelliGraph g = parse_graph(
      "vertex 1 B\nvertex 2 Y111\nvertex 3 D\nvertex 4 D\n"
      "edge 1 1.1 2.1\nedge 2 2.2 3.1\nedge 3 2.3 4.1\n");
  RegionMap rm = extract_regions(g);
  REQUIRE(rm.regions.size() == 3);
  GleamLedger ledger = init_gleams(g, {{{2, 2}, 1}, {{2, 3}, 2}});

  auto [after, rec] = apply_a(g, 1, 2);
  CHECK(after.vertices.size() == 2);
  GleamLedger moved = transfer_gleams(ledger, rec);
  REQUIRE(moved.live.size() == 1);
  const GleamEntry& e = moved.live.begin()->second;
  CHECK(e.gleam2 == 3);
  CHECK(e.originals == std::set<SheetId>{{2, 2}, {2, 3}});
  CHECK(moved.dropped.empty());
}

TEST_CASE("move (b) promotes the fixed-leg region to boundary") {
  MartelliGraph g = parse_graph(
      "vertex 1 B\nvertex 2 Y12\nvertex 3 D\n"
      "edge 1 1.1 2.2\nedge 2 2.1 3.1\n");
  GleamLedger ledger = init_gleams(g, {{{2, 1}, 5}});
  auto [after, rec] = apply_b(g, 1, 2);
  GleamLedger moved = transfer_gleams(ledger, rec);
  CHECK(moved.live.empty());
  CHECK(moved.dropped == std::set<SheetId>{{2, 1}});
}

TEST_CASE("IH leaves the ledger unchanged") {
  MartelliGraph g = parse_graph(
      "vertex 1 P\nvertex 2 P\nvertex 3 B\nvertex 4 D\nvertex 5 D\n"
      "vertex 6 D\n"
      "edge 1 1.1 2.1\nedge 2 1.2 3.1\nedge 3 1.3 4.1\nedge 4 2.2 5.1\n"
      "edge 5 2.3 6.1\n");
  GleamLedger ledger = init_gleams(g, {});
  auto [after, rec] = apply_ih(g, 1, 1);
  GleamLedger moved = transfer_gleams(ledger, rec);
  CHECK(moved.live.size() == ledger.live.size());
  CHECK(moved.dropped == ledger.dropped);
  long long sum_before = 0, sum_after = 0;
  for (const auto& [id, e] : ledger.live) sum_before += e.gleam2;
  for (const auto& [id, e] : moved.live) sum_after += e.gleam2;
  CHECK(sum_before == sum_after);
}

TEST_CASE("stale records are rejected") {
  MartelliGraph g = parse_graph(kExample8);
  GleamLedger ledger = init_gleams(g, {});
  auto [g2, rec] = apply_yv(g, 3, 5);
  GleamLedger moved = transfer_gleams(ledger, rec);
  try {
    transfer_gleams(moved, rec);  // ledger now matches g2, not g
    FAIL("expected StaleRecord");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::StaleRecord);
  }
}
