#include <catch2/catch_amalgamated.hpp>

#include "shadowpoly/generate.hpp"
#include "shadowpoly/homology.hpp"
#include "shadowpoly/io.hpp"

using namespace shadowpoly;

TEST_CASE("enumerate(0) is empty") {
  CHECK(enumerate_graphs(0).empty());
}

TEST_CASE("enumerate(2) matches the unpruned oracle") {
  auto pruned = enumerate_graphs(2, true);
  auto raw = enumerate_graphs(2, false);
  CHECK(pruned.size() == raw.size());
  // One 1-vertex class (the self-glued Y12) plus the 2-vertex pairings:
  // ten 1-slot pairs, eight (1-slot, 3-slot) kinds, three Y12-Y12 wirings
  // and six 3-slot pairs.
  CHECK(pruned.size() == 28);

  auto contains = [&](const char* text) {
    MartelliGraph g = parse_graph(text);
    for (const MartelliGraph& h : pruned)
      if (isomorphic(g, h)) return true;
    return false;
  };
  CHECK(contains("vertex 1 B\nvertex 2 D\nedge 1 1.1 2.1\n"));
  CHECK(contains("vertex 1 D\nvertex 2 D\nedge 1 1.1 2.1\n"));
  CHECK(contains("vertex 1 D\nvertex 2 M\nedge 1 1.1 2.1\n"));
  CHECK(contains("vertex 1 D\nvertex 2 Y3\nedge 1 1.1 2.1\n"));
  CHECK(contains("vertex 1 B\nvertex 2 B\nedge 1 1.1 2.1\n"));
  CHECK(contains("vertex 1 B\nvertex 2 M\nedge 1 1.1 2.1\n"));
  CHECK(contains("vertex 1 Y12\nedge 1 1.1 1.2\n"));
}

TEST_CASE("the disk graph is the only acyclic class with at most 2 pieces") {
  MartelliGraph disk = parse_graph("vertex 1 B\nvertex 2 D\nedge 1 1.1 2.1\n");
  int acyclic_count = 0;
  for (const MartelliGraph& g : enumerate_graphs(2)) {
    if (!is_acyclic(g)) continue;
    ++acyclic_count;
    CHECK(isomorphic(g, disk));
  }
  CHECK(acyclic_count == 1);
}

TEST_CASE("enumerate(3) agrees with the unpruned oracle") {
  auto pruned = enumerate_graphs(3, true);
  auto raw = enumerate_graphs(3, false);
  CHECK(pruned.size() == raw.size());
  CHECK(pruned.size() == 109);
}

TEST_CASE("enumeration counts are pinned") {
  // Regression goldens; 2 and 3 are also cross-checked against the unpruned
  // oracle above, 4 was once.
  CHECK(enumerate_graphs(2).size() == 28);
  CHECK(enumerate_graphs(3).size() == 109);
  CHECK(enumerate_graphs(4).size() == 941);
}

TEST_CASE("enumeration rejects desk-scale overruns") {
  try {
    enumerate_graphs(9);
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundExceeded);
  }
}

TEST_CASE("random_graph is reproducible") {
  for (GenConstraints c : {GenConstraints{}, GenConstraints{true, false},
                           GenConstraints{false, true}}) {
    MartelliGraph a = random_graph(42, 12, c);
    MartelliGraph b = random_graph(42, 12, c);
    CHECK(a == b);
  }
  MartelliGraph a = random_graph(42, 12, {});
  MartelliGraph b = random_graph(43, 12, {});
  CHECK_FALSE(a == b);
}

TEST_CASE("acyclic generation at the smallest bound gives the disk graph") {
  MartelliGraph g = random_graph(1, 2, {.require_acyclic = true});
  MartelliGraph disk = parse_graph("vertex 1 B\nvertex 2 D\nedge 1 1.1 2.1\n");
  CHECK(isomorphic(g, disk));
}

TEST_CASE("generator contracts hold") {
  MartelliGraph g = random_graph(7, 20, {});
  CHECK(validate(g).well_formed);

  MartelliGraph a = random_graph(3, 8, {.require_acyclic = true});
  CHECK(is_acyclic(a));
  CHECK(a.vertices.size() <= 8);

  MartelliGraph t = random_graph(11, 10, {.require_tree = true});
  CHECK(validate(t).well_formed);
  CHECK(is_tree(t));
}

TEST_CASE("size bound below 2 is rejected") {
  try {
    random_graph(1, 1, {});
    FAIL("expected BoundExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BoundExceeded);
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  MartelliGraph g = parse_graph(
      "vertex 1 D\nvertex 2 Y111\nvertex 3 P\nvertex 4 B\nvertex 5 D\n"
      "vertex 6 P\nvertex 7 B\nvertex 8 D\n"
      "edge 1 1.1 2.1\nedge 2 2.2 3.1\nedge 3 3.2 4.1\nedge 4 3.3 5.1\n"
      "edge 5 2.3 6.1\nedge 6 6.2 7.1\nedge 7 6.3 8.1\n");
  // Same polyhedron with vertices renamed and pants slots permuted.
  MartelliGraph h = parse_graph(
      "vertex 1 D\nvertex 2 Y111\nvertex 3 P\nvertex 4 B\nvertex 5 D\n"
      "vertex 6 P\nvertex 7 B\nvertex 8 D\n"
      "edge 1 5.1 2.1\nedge 2 2.2 6.2\nedge 3 6.3 7.1\nedge 4 6.1 8.1\n"
      "edge 5 2.3 3.3\nedge 6 3.1 4.1\nedge 7 3.2 1.1\n");
  CHECK(canonical_form(g) == canonical_form(h));
  CHECK(isomorphic(g, h));

  MartelliGraph other = parse_graph(
      "vertex 1 D\nvertex 2 Y3\nedge 1 1.1 2.1\n");
  CHECK_FALSE(isomorphic(g, other));
}

TEST_CASE("doubled-band chains are acyclic by construction") {
  CHECK(make_y12_chain(2) ==
        parse_graph("vertex 1 B\nvertex 2 D\nedge 1 1.1 2.1\n"));
  MartelliGraph c5 = make_y12_chain(5);
  CHECK(c5.vertices.size() == 5);
  CHECK(c5.count_kind(VertexKind::Y12) == 3);
  CHECK(is_acyclic(c5));
}
