#include <catch2/catch_amalgamated.hpp>

#include "shadowpoly/graph.hpp"
#include "shadowpoly/io.hpp"

using namespace shadowpoly;

namespace {

MartelliGraph disk_graph() {
  return parse_graph(
      "vertex 1 B\n"
      "vertex 2 D\n"
      "edge 1 1.1 2.1\n");
}

}  // namespace

TEST_CASE("parse builds the disk graph") {
  MartelliGraph g = disk_graph();
  REQUIRE(g.vertices.size() == 2);
  REQUIRE(g.edges.size() == 1);
  REQUIRE(g.kind_of(1) == VertexKind::B);
  REQUIRE(g.kind_of(2) == VertexKind::D);
  REQUIRE(validate(g).well_formed);
}

TEST_CASE("empty input parses to the empty graph") {
  MartelliGraph g = parse_graph("");
  REQUIRE(g.vertices.empty());
  REQUIRE(g.edges.empty());
}

TEST_CASE("comments and blank lines are ignored") {
  MartelliGraph g = parse_graph(
      "# a disk\n"
      "\n"
      "vertex 1 B   # free boundary\n"
      "vertex 2 D\n"
      "edge 1 1.1 2.1\n");
  REQUIRE(g == disk_graph());
}

TEST_CASE("parse errors carry their code") {
  auto code_of = [](const char* text) {
    try {
      parse_graph(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Internal;
  };
  CHECK(code_of("edge 1 1.1 2.1\n") == Errc::UnknownVertex);
  CHECK(code_of("vertex 1 Q\n") == Errc::UnknownKind);
  CHECK(code_of("vertex 1 B\nvertex 1 D\n") == Errc::DuplicateId);
  CHECK(code_of("vertex 1 B\nvertex 2 D\nedge 1 1.2 2.1\n") == Errc::BadSlot);
  CHECK(code_of("frob 1\n") == Errc::SyntaxError);
  CHECK(code_of("vertex 1 B\nvertex 2 D\nedge 1 1.1 2.1 sign=2\n") ==
        Errc::SyntaxError);
}

TEST_CASE("gleam directives parse") {
  GraphFile f = parse_graph_file(
      "vertex 1 D\nvertex 2 M\nedge 1 1.1 2.1\ngleam 1.1 3\n");
  REQUIRE(f.gleams.size() == 1);
  CHECK(f.gleams[0].region_vertex == 1);
  CHECK(f.gleams[0].region_sheet == 1);
  CHECK(f.gleams[0].gleam2 == 3);
}

TEST_CASE("serialize/parse round trip is id-exact") {
  const char* text =
      "vertex 1 D\n"
      "vertex 2 Y111\n"
      "vertex 3 P\n"
      "vertex 4 B\n"
      "vertex 5 D\n"
      "vertex 6 P\n"
      "vertex 7 B\n"
      "vertex 8 D\n"
      "edge 1 1.1 2.1\n"
      "edge 2 2.2 3.1\n"
      "edge 3 3.2 4.1\n"
      "edge 4 3.3 5.1\n"
      "edge 5 2.3 6.1\n"
      "edge 6 6.2 7.1\n"
      "edge 7 6.3 8.1 sign=-1\n";
  MartelliGraph g = parse_graph(text);
  REQUIRE(parse_graph(serialize(g)) == g);
  REQUIRE(serialize(g) == text);
}

TEST_CASE("validation flags unsaturated and reused slots") {
  MartelliGraph g;
  g.add_vertex(1, VertexKind::Y12);
  g.add_vertex(2, VertexKind::D);
  g.add_edge(1, {1, 2}, {2, 1});  // only the doubled slot wired
  ValidationReport rep = validate(g);
  REQUIRE_FALSE(rep.well_formed);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].code == "UnsaturatedSlot");
  CHECK(rep.violations[0].location == "1.1");

  MartelliGraph h;
  h.add_vertex(1, VertexKind::B);
  h.add_vertex(2, VertexKind::B);
  h.add_vertex(3, VertexKind::D);
  h.add_edge(1, {1, 1}, {3, 1});
  h.add_edge(2, {2, 1}, {3, 1});
  ValidationReport rep2 = validate(h);
  REQUIRE_FALSE(rep2.well_formed);
  CHECK(rep2.violations[0].code == "DuplicateSlotUse");
}

TEST_CASE("slot sum equals twice the edge count on well-formed graphs") {
  MartelliGraph g = parse_graph(
      "vertex 1 P\nvertex 2 B\nvertex 3 B\nvertex 4 B\n"
      "edge 1 1.1 2.1\nedge 2 1.2 3.1\nedge 3 1.3 4.1\n");
  REQUIRE(validate(g).well_formed);
  std::size_t slot_sum = 0;
  for (const auto& [id, k] : g.vertices) slot_sum += slot_count(k);
  REQUIRE(slot_sum == 2 * g.edges.size());
}

TEST_CASE("cut of the disk graph edge is the degenerate split") {
  MartelliGraph g = disk_graph();
  CutResult cut = cut_edge(g, 1);
  REQUIRE(cut.separating);
  REQUIRE(cut.pieces.size() == 2);
  // B side: bare circle capped by the marker.
  const MartelliGraph& bside = cut.pieces[0].graph;
  REQUIRE(bside.vertices.size() == 2);
  CHECK(bside.count_kind(VertexKind::B) == 2);
  // D side: disk capped by the marker.
  const MartelliGraph& dside = cut.pieces[1].graph;
  CHECK(dside.count_kind(VertexKind::D) == 1);
  CHECK(dside.count_kind(VertexKind::B) == 1);
  for (const auto& p : cut.pieces) {
    CHECK(validate(p.graph).well_formed);
    CHECK(p.marker_edge == 1);
  }
}

TEST_CASE("cut of a cycle edge does not separate") {
  // Two pants joined by two parallel edges, third slots to B's.
  MartelliGraph g = parse_graph(
      "vertex 1 P\nvertex 2 P\nvertex 3 B\nvertex 4 B\n"
      "edge 1 1.1 2.1\nedge 2 1.2 2.2\nedge 3 1.3 3.1\nedge 4 2.3 4.1\n");
  CutResult cut = cut_edge(g, 1);
  REQUIRE_FALSE(cut.separating);
  REQUIRE(cut.pieces.size() == 1);
  const MartelliGraph& open = cut.pieces[0].graph;
  CHECK(open.vertices.size() == 6);
  CHECK(open.count_kind(VertexKind::B) == 4);
  CHECK(validate(open).well_formed);
  CHECK(cut.open_markers.size() == 2);
}

TEST_CASE("cutting a tree edge always separates, a self-edge never") {
  MartelliGraph g = parse_graph(
      "vertex 1 P\nvertex 2 B\n"
      "edge 1 1.1 1.2\nedge 2 1.3 2.1\n");
  CHECK_FALSE(cut_edge(g, 1).separating);  // self-edge
  CHECK(cut_edge(g, 2).separating);
  CHECK_THROWS_AS(cut_edge(g, 99), Error);
}

TEST_CASE("export_dot renders deterministically") {
  MartelliGraph g = disk_graph();
  std::string dot = export_dot(g);
  CHECK(dot ==
        "graph shadowpoly {\n"
        "  v1 [label=\"B1\"];\n"
        "  v2 [label=\"D2\"];\n"
        "  v1 -- v2;\n"
        "}\n");
  CHECK(export_dot(MartelliGraph{}) == "graph shadowpoly {\n}\n");

  MartelliGraph y = parse_graph(
      "vertex 1 B\nvertex 2 Y12\nvertex 3 D\n"
      "edge 1 1.1 2.2\nedge 2 2.1 3.1\n");
  std::string ydot = export_dot(y);
  CHECK(ydot.find("style=bold,label=\"\u00d72\"") != std::string::npos);
}

TEST_CASE("graph hash is stable") {
  CHECK(graph_hash(disk_graph()) == graph_hash(disk_graph()));
  MartelliGraph g2 = disk_graph();
  g2.vertices[2] = VertexKind::M;
  CHECK(graph_hash(disk_graph()) != graph_hash(g2));
}

TEST_CASE("DOT export of the worked example is deterministic") {
  MartelliGraph g = parse_graph(
      "vertex 1 D\nvertex 2 Y111\nvertex 3 P\nvertex 4 B\nvertex 5 D\n"
      "vertex 6 P\nvertex 7 B\nvertex 8 D\n"
      "edge 1 1.1 2.1\nedge 2 2.2 3.1\nedge 3 3.2 4.1\nedge 4 3.3 5.1\n"
      "edge 5 2.3 6.1\nedge 6 6.2 7.1\nedge 7 6.3 8.1\n");
  std::string dot = export_dot(g);
  CHECK(dot == export_dot(g));
  std::size_t nodes = 0, links = 0;
  for (std::size_t pos = 0; (pos = dot.find("label=\"", pos)) != std::string::npos;
       ++pos)
    ++nodes;
  for (std::size_t pos = 0; (pos = dot.find(" -- ", pos)) != std::string::npos;
       ++pos)
    ++links;
  CHECK(nodes == 8);
  CHECK(links == 7);
}
