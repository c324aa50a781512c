#pragma once

// Randomized cross-checks between the independent computation paths:
// expanded vs reduced complexes, dense vs sparse Smith normal form, the two
// Euler characteristic routes, move invariance and the edge-cut dichotomy on
// acyclic instances. A deliberate fault can be injected to prove the harness
// actually detects disagreement.

#include <random>
#include <string>
#include <vector>

#include "shadowpoly/generate.hpp"
#include "shadowpoly/homology.hpp"
#include "shadowpoly/moves.hpp"
#include "shadowpoly/snf.hpp"

namespace shadowpoly {

struct SelfTestReport {
  int graphs_checked = 0;
  int checks_run = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

inline SelfTestReport oracle_selftest(std::uint64_t seed, int count,
                                      bool inject_fault = false) {
  SelfTestReport rep;
  std::mt19937_64 rng(seed ^ 0xabcdef1234567890ull);

  for (int i = 0; i < count; ++i) {
    GenConstraints c;
    int flavor = i % 3;
    if (flavor == 0) c.require_acyclic = true;
    if (flavor == 1) c.require_tree = true;
    int n = 2 + static_cast<int>(rng() % 18);
    MartelliGraph g = random_graph(rng(), n, c);
    ++rep.graphs_checked;

    auto flag = [&](const std::string& what) {
      rep.failures.push_back("graph " + std::to_string(i) + ": " + what);
    };

    // Expanded vs reduced complex.
    HomologyProfile expanded = homology_profile(g);
    HomologyProfile reduced = reduced_profile(g);
    ++rep.checks_run;
    if (inject_fault && i == 0) {
      ChainComplex cc = build_chain_complex(g);
      cc.d2.push_back({cc.circle_row.begin()->second,
                       static_cast<int>(cc.c2.size()), 1});
      cc.c2.push_back({"fault"});
      SmithInvariants s1 = sparse_invariants(
          static_cast<int>(cc.c0.size()), static_cast<int>(cc.c1.size()),
          cc.d1);
      SmithInvariants s2 = sparse_invariants(
          static_cast<int>(cc.c1.size()), static_cast<int>(cc.c2.size()),
          cc.d2);
      HomologyProfile tampered = detail::profile_from_ranks(
          static_cast<long long>(cc.c0.size()),
          static_cast<long long>(cc.c1.size()),
          static_cast<long long>(cc.c2.size()), s1, s2);
      if (tampered.betti == reduced.betti && tampered.torsion1 == reduced.torsion1)
        flag("fault injection went undetected");
      else
        flag("injected fault detected (expected failure)");
    }
    if (expanded.betti != reduced.betti ||
        expanded.torsion1 != reduced.torsion1 ||
        expanded.euler != reduced.euler)
      flag("expanded and reduced complexes disagree");

    // Euler characteristic double count.
    ++rep.checks_run;
    long long chi = static_cast<long long>(g.count_kind(VertexKind::D)) -
                    static_cast<long long>(g.count_kind(VertexKind::P));
    if (expanded.euler != chi) flag("euler != #D - #P");

    // Dense SNF postconditions (checked internally) + engine agreement.
    {
      ++rep.checks_run;
      Matrix m(2 + static_cast<int>(rng() % 4), 2 + static_cast<int>(rng() % 4));
      for (auto& x : m.a)
        x = static_cast<long long>(rng() % 13) - 6;
      auto s = smith_normal_form(m);
      std::vector<SparseEntry> es;
      for (int r = 0; r < m.rows; ++r)
        for (int cidx = 0; cidx < m.cols; ++cidx)
          if (m.at(r, cidx) != 0) es.push_back({r, cidx, m.at(r, cidx)});
      auto inv = sparse_invariants(m.rows, m.cols, es);
      int rank = 0;
      std::vector<long long> tor;
      for (int d = 0; d < std::min(s.d.rows, s.d.cols); ++d)
        if (s.d.at(d, d) != 0) {
          ++rank;
          if (s.d.at(d, d) > 1)
            tor.push_back(static_cast<long long>(s.d.at(d, d)));
        }
      if (rank != inv.rank || tor != inv.torsion)
        flag("dense and sparse SNF disagree");
    }

    // Moves preserve the homology profile (checked inside apply_move).
    {
      auto moves = applicable_moves(g);
      int tried = 0;
      for (const MoveInstance& m : moves) {
        if (tried++ >= 3) break;
        ++rep.checks_run;
        try {
          apply_move(g, m);
        } catch (const Error& e) {
          flag(std::string("move ") + move_spec(m) + " failed: " + e.what());
        }
      }
    }

    // Edge-cut dichotomy on acyclic instances.
    if (flavor == 0) {
      for (const auto& [eid, e] : g.edges) {
        ++rep.checks_run;
        try {
          SplitReport r = split_classification(g, eid);
          if (!r.separating || r.acyclic_side == 0 || r.s1_side == 0 ||
              !r.generator_ok)
            flag("split of edge " + std::to_string(eid) +
                 " violates the dichotomy");
        } catch (const Error& e) {
          flag("split of edge " + std::to_string(eid) + ": " + e.what());
        }
      }
    }
  }
  return rep;
}

}  // namespace shadowpoly
