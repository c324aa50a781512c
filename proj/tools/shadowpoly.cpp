// Command-line front end: validation, homology, regions, cuts, moves,
// Theorem-B reduction, instance generation, enumeration and oracle
// self-tests over the graph file format.
//
// Exit codes: 0 ok, 2 not acyclic, 3 validation failure, 64 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "shadowpoly/generate.hpp"
#include "shadowpoly/homology.hpp"
#include "shadowpoly/jsonio.hpp"
#include "shadowpoly/reducer.hpp"
#include "shadowpoly/selftest.hpp"

namespace sp = shadowpoly;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotAcyclic = 2;
constexpr int kExitValidation = 3;
constexpr int kExitUsage = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) sp::fail(sp::Errc::SyntaxError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

sp::GraphFile load(const std::string& path) {
  return sp::parse_graph_file(read_file(path));
}

std::uint64_t default_seed(std::uint64_t cli_seed, bool seed_given) {
  if (seed_given) return cli_seed;
  if (const char* env = std::getenv("SHADOW_REDUCE_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 1;
}

std::vector<sp::GleamAssignment> gleams_of(const sp::GraphFile& f) {
  std::vector<sp::GleamAssignment> out;
  for (const auto& d : f.gleams)
    out.push_back({{d.region_vertex, d.region_sheet}, d.gleam2});
  return out;
}

sp::MoveInstance parse_move_spec(const std::vector<std::string>& words) {
  if (words.empty()) sp::fail(sp::Errc::SyntaxError, "empty move spec");
  sp::MoveInstance m;
  std::string kind = words[0];
  if (kind == "IH")
    m.kind = sp::MoveKind::IH;
  else if (kind == "YV")
    m.kind = sp::MoveKind::YV;
  else if (kind == "A")
    m.kind = sp::MoveKind::A;
  else if (kind == "B")
    m.kind = sp::MoveKind::B;
  else if (kind == "C")
    m.kind = sp::MoveKind::C;
  else
    sp::fail(sp::Errc::SyntaxError, "unknown move kind " + kind);
  for (std::size_t i = 1; i < words.size(); ++i) {
    auto eq = words[i].find('=');
    if (eq == std::string::npos)
      sp::fail(sp::Errc::SyntaxError, "expected key=value: " + words[i]);
    std::string key = words[i].substr(0, eq);
    long long value = std::stoll(words[i].substr(eq + 1));
    if (key == "e")
      m.edge = value;
    else if (key == "variant")
      m.variant = static_cast<int>(value);
    else if (key == "b")
      m.b = value;
    else if (key == "v")
      m.v = value;
    else if (key == "p")
      m.p = value;
    else if (key == "d")
      m.d = value;
    else if (key == "t")
      m.t = value;
    else
      sp::fail(sp::Errc::SyntaxError, "unknown move parameter " + key);
  }
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph calculus for simple polyhedra with circle singular set"};
  app.require_subcommand(1);

  std::string file, trace_path;
  std::vector<std::string> move_words;
  std::uint64_t seed = 1;
  int size = 8, enum_n = 2, count = 200;
  long long edge_id = 0;
  bool json_out = false, acyclic_flag = false, tree_flag = false;
  bool check_invariants = false, seed_gleams = false, inject = false;

  auto add_file = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "graph file")->required();
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "check well-formedness");
  add_file(validate_cmd);
  validate_cmd->add_flag("--json", json_out);

  CLI::App* homology_cmd = app.add_subcommand("homology", "integral homology profile");
  add_file(homology_cmd);

  CLI::App* euler_cmd = app.add_subcommand("euler", "Euler characteristic");
  add_file(euler_cmd);

  CLI::App* regions_cmd = app.add_subcommand("regions", "list regions and sheets");
  add_file(regions_cmd);
  regions_cmd->add_flag("--json", json_out);

  CLI::App* cut_cmd = app.add_subcommand("cut", "cut along an edge circle");
  add_file(cut_cmd);
  cut_cmd->add_option("edge", edge_id, "edge id")->required();

  CLI::App* apply_cmd = app.add_subcommand("apply", "apply one move");
  add_file(apply_cmd);
  apply_cmd->add_option("move", move_words, "move spec, e.g.  A b=5 v=2")
      ->required()
      ->expected(-1);

  CLI::App* reduce_cmd = app.add_subcommand("reduce", "collapse to the disk graph");
  add_file(reduce_cmd);
  reduce_cmd->add_option("--trace", trace_path, "write certificate JSON");
  reduce_cmd->add_flag("--check-invariants", check_invariants);
  reduce_cmd->add_flag("--seed-gleams", seed_gleams,
                       "random gleams on unassigned internal regions");
  reduce_cmd->add_option("--seed", seed);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--size", size, "vertex bound");
  gen_cmd->add_flag("--acyclic", acyclic_flag);
  gen_cmd->add_flag("--tree", tree_flag);

  CLI::App* enum_cmd = app.add_subcommand("enumerate", "all graphs up to n vertices");
  enum_cmd->add_option("n", enum_n, "max vertices")->required();
  enum_cmd->add_flag("--acyclic", acyclic_flag, "only acyclic classes");

  CLI::App* selftest_cmd = app.add_subcommand("oracle-selftest", "cross-check oracles");
  selftest_cmd->add_option("--seed", seed);
  selftest_cmd->add_option("--count", count);
  selftest_cmd->add_flag("--inject-fault", inject, "prove failure detection");

  CLI::App* dot_cmd = app.add_subcommand("export-dot", "DOT rendering");
  add_file(dot_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  bool gen_seed_given = gen_cmd->count("--seed") > 0;
  bool selftest_seed_given = selftest_cmd->count("--seed") > 0;

  try {
    if (*validate_cmd) {
      sp::GraphFile f = load(file);
      sp::ValidationReport rep = sp::validate(f.graph);
      if (json_out) {
        std::cout << sp::to_json(rep).dump(2) << "\n";
      } else if (rep.well_formed) {
        std::cout << "well-formed: " << f.graph.vertices.size()
                  << " vertices, " << f.graph.edges.size() << " edges\n";
      } else {
        for (const auto& v : rep.violations)
          std::cout << v.code << " at " << v.location << "\n";
      }
      return rep.well_formed ? kExitOk : kExitValidation;
    }

    if (*homology_cmd) {
      sp::GraphFile f = load(file);
      sp::require_well_formed(f.graph);
      std::cout << sp::to_json(sp::homology_profile(f.graph)).dump() << "\n";
      return kExitOk;
    }

    if (*euler_cmd) {
      sp::GraphFile f = load(file);
      std::cout << sp::euler_characteristic(f.graph) << "\n";
      return kExitOk;
    }

    if (*regions_cmd) {
      sp::GraphFile f = load(file);
      sp::RegionMap rm = sp::extract_regions(f.graph);
      if (json_out) {
        std::cout << sp::to_json(rm).dump(2) << "\n";
      } else {
        for (const sp::Region& r : rm.regions) {
          std::cout << "region " << sp::sheet_name(r.id) << " "
                    << (r.boundary ? "boundary" : "internal") << " sheets=[";
          for (std::size_t i = 0; i < r.sheets.size(); ++i)
            std::cout << (i ? " " : "") << sp::sheet_name(r.sheets[i]);
          std::cout << "]\n";
        }
      }
      return kExitOk;
    }

    if (*cut_cmd) {
      sp::GraphFile f = load(file);
      sp::require_well_formed(f.graph);
      sp::CutResult cut = sp::cut_edge(f.graph, edge_id);
      sp::Json j{{"separating", cut.separating}};
      sp::Json pieces = sp::Json::array();
      for (const sp::CutPiece& p : cut.pieces) {
        sp::Json pj{{"graph", sp::serialize(p.graph)}};
        if (cut.separating) {
          pj["marker_vertex"] = p.marker_vertex;
          pj["marker_edge"] = p.marker_edge;
        } else {
          sp::Json ms = sp::Json::array();
          for (auto [mv, me] : cut.open_markers)
            ms.push_back(sp::Json{{"vertex", mv}, {"edge", me}});
          pj["markers"] = ms;
        }
        pieces.push_back(pj);
      }
      j["pieces"] = pieces;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*apply_cmd) {
      sp::GraphFile f = load(file);
      sp::require_well_formed(f.graph);
      sp::MoveInstance m = parse_move_spec(move_words);
      auto [after, rec] = sp::apply_move(f.graph, m);
      sp::Json j{{"after_graph", sp::serialize(after)},
                 {"record", sp::to_json(rec)}};
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*reduce_cmd) {
      sp::GraphFile f = load(file);
      sp::require_well_formed(f.graph);
      sp::CheckedModeGuard guard(check_invariants);
      std::vector<sp::GleamAssignment> assignments = gleams_of(f);
      if (seed_gleams) {
        std::mt19937_64 rng(default_seed(seed, reduce_cmd->count("--seed")));
        sp::RegionMap rm = sp::extract_regions(f.graph);
        std::set<sp::SheetId> assigned;
        for (const auto& a : assignments) assigned.insert(a.region);
        for (const sp::Region& r : rm.regions)
          if (!r.boundary && !assigned.count(r.id))
            assignments.push_back(
                {r.id, static_cast<long long>(rng() % 13) - 6});
      }
      sp::GleamLedger ledger = sp::init_gleams(f.graph, assignments);
      sp::ReduceResult res = sp::reduce_to_disk(f.graph, ledger);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        out << sp::to_json(res.certificate).dump(2) << "\n";
      }
      sp::Json j{{"steps", res.certificate.steps.size()},
                 {"final_graph", sp::serialize(res.certificate.final_graph)},
                 {"ledger", sp::to_json(res.final_ledger)}};
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*gen_cmd) {
      sp::GenConstraints c;
      c.require_acyclic = acyclic_flag;
      c.require_tree = tree_flag;
      sp::MartelliGraph g =
          sp::random_graph(default_seed(seed, gen_seed_given), size, c);
      std::cout << sp::serialize(g);
      return kExitOk;
    }

    if (*enum_cmd) {
      auto all = sp::enumerate_graphs(enum_n);
      int index = 0;
      for (const sp::MartelliGraph& g : all) {
        sp::HomologyProfile p = sp::homology_profile(g);
        if (acyclic_flag && !p.acyclic) continue;
        std::cout << "# graph " << index++ << " profile "
                  << sp::to_json(p).dump() << "\n"
                  << sp::serialize(g) << "\n";
      }
      std::cout << "# total " << index << "\n";
      return kExitOk;
    }

    if (*selftest_cmd) {
      sp::SelfTestReport rep = sp::oracle_selftest(
          default_seed(seed, selftest_seed_given), count, inject);
      std::cout << "graphs checked: " << rep.graphs_checked << "\n"
                << "checks run: " << rep.checks_run << "\n"
                << "failures: " << rep.failures.size() << "\n";
      for (const std::string& s : rep.failures) std::cout << "  " << s << "\n";
      return rep.ok() ? kExitOk : kExitValidation;
    }

    if (*dot_cmd) {
      sp::GraphFile f = load(file);
      std::cout << sp::export_dot(f.graph);
      return kExitOk;
    }
  } catch (const sp::Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == sp::Errc::NotAcyclic ||
        e.code() == sp::Errc::NotAcyclicAmbient)
      return kExitNotAcyclic;
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
