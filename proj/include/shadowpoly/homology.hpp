#pragma once

// Exact integral homology of the encoded polyhedron, acyclicity, Euler
// characteristic and the edge-cut split classification.
//
// For a complex of free abelian groups, b_k = n_k - rank d_k - rank d_{k+1}
// and the torsion of H_k is given by the nontrivial elementary divisors of
// d_{k+1}; both follow from Smith normal form.

#include <array>
#include <vector>

#include "shadowpoly/complex.hpp"
#include "shadowpoly/graph.hpp"
#include "shadowpoly/snf.hpp"

namespace shadowpoly {

struct HomologyProfile {
  std::array<long long, 3> betti{0, 0, 0};
  std::vector<long long> torsion1;  // elementary divisors > 1 of H1
  long long euler = 0;
  bool acyclic = false;  // reduced integral homology vanishes

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) =
      default;
};

namespace detail {

inline HomologyProfile profile_from_ranks(long long n0, long long n1,
                                          long long n2,
                                          const SmithInvariants& s1,
                                          const SmithInvariants& s2) {
  HomologyProfile p;
  p.betti[0] = n0 - s1.rank;
  p.betti[1] = n1 - s1.rank - s2.rank;
  p.betti[2] = n2 - s2.rank;
  p.torsion1 = s2.torsion;
  // H0 of a CW complex is free; d1 of the expanded complex is an incidence
  // matrix, so its divisors are all 1.
  require(s1.torsion.empty(), Errc::Internal, "torsion in H0");
  p.euler = n0 - n1 + n2;
  p.acyclic = p.betti == std::array<long long, 3>{1, 0, 0} &&
              p.torsion1.empty();
  return p;
}

}  // namespace detail

// Trusted path: full expanded complex.
inline HomologyProfile homology_profile(const MartelliGraph& g) {
  ChainComplex cc = build_chain_complex(g);
  if (checked_mode().load())
    require(boundary_square_is_zero(cc), Errc::Internal, "d1*d2 != 0");
  SmithInvariants s1 = sparse_invariants(static_cast<int>(cc.c0.size()),
                                         static_cast<int>(cc.c1.size()),
                                         cc.d1);
  SmithInvariants s2 = sparse_invariants(static_cast<int>(cc.c1.size()),
                                         static_cast<int>(cc.c2.size()),
                                         cc.d2);
  HomologyProfile p = detail::profile_from_ranks(
      static_cast<long long>(cc.c0.size()), static_cast<long long>(cc.c1.size()),
      static_cast<long long>(cc.c2.size()), s1, s2);
  long long disks = static_cast<long long>(g.count_kind(VertexKind::D));
  long long pants = static_cast<long long>(g.count_kind(VertexKind::P));
  require(p.euler == disks - pants, Errc::Internal,
          "Euler characteristic disagrees with piece count");
  return p;
}

// Oracle path: reduced complex + component count + graph cycle rank.
inline HomologyProfile reduced_profile(const MartelliGraph& g) {
  ReducedComplex rc = build_reduced_complex(g);
  SmithInvariants s2 = sparse_invariants(static_cast<int>(rc.circles.size()),
                                         static_cast<int>(rc.faces.size()),
                                         rc.d2);
  HomologyProfile p;
  p.betti[0] = static_cast<long long>(rc.component_count);
  p.betti[1] = static_cast<long long>(rc.circles.size()) +
               static_cast<long long>(rc.graph_cycle_rank) - s2.rank;
  p.betti[2] = static_cast<long long>(rc.faces.size()) - s2.rank;
  p.torsion1 = s2.torsion;
  p.euler = p.betti[0] - p.betti[1] + p.betti[2];
  p.acyclic = p.betti == std::array<long long, 3>{1, 0, 0} &&
              p.torsion1.empty();
  return p;
}

inline bool is_acyclic(const MartelliGraph& g) {
  return homology_profile(g).acyclic;
}

// chi = #D - #P; the alternating cell-count sum is asserted against it
// whenever homology_profile runs.
inline long long euler_characteristic(const MartelliGraph& g) {
  require_well_formed(g);
  long long chi = static_cast<long long>(g.count_kind(VertexKind::D)) -
                  static_cast<long long>(g.count_kind(VertexKind::P));
  if (checked_mode().load())
    require(homology_profile(g).euler == chi, Errc::Internal,
            "euler mismatch");
  return chi;
}

// ---------------------------------------------------------------------------
// Split classification (the edge-cut dichotomy for acyclic polyhedra)

struct SplitReport {
  bool separating = false;
  int acyclic_side = 0;  // 1 or 2; 0 = none
  int s1_side = 0;       // side with H1 = Z
  bool generator_ok = false;  // cut circle generates H1 of the s1 side
};

namespace detail {

inline bool is_homology_s1(const HomologyProfile& p) {
  return p.betti == std::array<long long, 3>{1, 1, 0} && p.torsion1.empty();
}

// H1(side) / <marker circle> computed by adjoining one relation.
inline bool marker_generates_h1(const MartelliGraph& side, EdgeId marker) {
  ChainComplex cc = build_chain_complex(side);
  std::vector<SparseEntry> d2 = cc.d2;
  int extra = static_cast<int>(cc.c2.size());
  d2.push_back({cc.circle_row.at(marker), extra, 1});
  SmithInvariants s1 = sparse_invariants(static_cast<int>(cc.c0.size()),
                                         static_cast<int>(cc.c1.size()),
                                         cc.d1);
  SmithInvariants s2 = sparse_invariants(static_cast<int>(cc.c1.size()),
                                         extra + 1, d2);
  long long b1 = static_cast<long long>(cc.c1.size()) - s1.rank - s2.rank;
  return b1 == 0 && s2.torsion.empty();
}

}  // namespace detail

inline SplitReport split_classification(const MartelliGraph& g, EdgeId e) {
  require_well_formed(g);
  if (!is_acyclic(g))
    fail(Errc::NotAcyclicAmbient, "split classification needs acyclic input");
  CutResult cut = cut_edge(g, e);
  require(cut.separating, Errc::Internal,
          "edge of an acyclic graph failed to separate");

  SplitReport rep;
  rep.separating = true;
  std::array<HomologyProfile, 2> prof{homology_profile(cut.pieces[0].graph),
                                      homology_profile(cut.pieces[1].graph)};
  for (int i = 0; i < 2; ++i) {
    if (prof[i].acyclic && rep.acyclic_side == 0) rep.acyclic_side = i + 1;
    if (detail::is_homology_s1(prof[i]) && rep.s1_side == 0)
      rep.s1_side = i + 1;
  }
  require(rep.acyclic_side != 0 && rep.s1_side != 0 &&
              rep.acyclic_side != rep.s1_side,
          Errc::Internal, "cut sides do not realize the acyclic/S1 split");
  const CutPiece& s1p = cut.pieces[rep.s1_side - 1];
  rep.generator_ok = detail::marker_generates_h1(s1p.graph, s1p.marker_edge);
  return rep;
}

inline bool is_disk_graph(const MartelliGraph& g) {
  return g.vertices.size() == 2 && g.edges.size() == 1 &&
         g.count_kind(VertexKind::B) == 1 && g.count_kind(VertexKind::D) == 1;
}

}  // namespace shadowpoly
