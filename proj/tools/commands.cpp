#include "commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cdia/c4_graph.hpp"
#include "cdia/cycle_finder.hpp"
#include "cdia/edge_list.hpp"
#include "cdia/error.hpp"
#include "cdia/expander.hpp"
#include "cdia/experiment.hpp"
#include "cdia/generators.hpp"
#include "cdia/navigator.hpp"
#include "cdia/oracle.hpp"
#include "cdia/params.hpp"

namespace cdia::cli {
namespace {

using nlohmann::json;

struct ParamFlags {
  std::string file;
  std::optional<double> tau, t_nice, C1, C, D, delta;
  std::optional<std::size_t> L_max;
  std::optional<std::uint64_t> direct_budget;

  void attach(CLI::App* app) {
    app->add_option("--params", file, "JSON parameter file");
    app->add_option("--tau", tau, "thickness threshold");
    app->add_option("--t-nice", t_nice, "fan niceness cap");
    app->add_option("--l-max-path", L_max, "fan path length cap");
    app->add_option("--C1", C1);
    app->add_option("--C", C);
    app->add_option("--D", D);
    app->add_option("--delta", delta);
    app->add_option("--direct-budget", direct_budget, "direct search expansion budget");
  }

  ParameterSet resolve() const {
    ParameterSet p;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw IoError("cannot read " + file);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw ArgumentError("bad parameter file " + file + ": " + e.what());
      }
      p = params_from_json(j);
    }
    if (tau) p.tau = *tau;
    if (t_nice) p.t_nice = *t_nice;
    if (L_max) p.L_max = *L_max;
    if (C1) p.C1 = *C1;
    if (C) p.C = *C;
    if (D) p.D = *D;
    if (delta) p.delta = *delta;
    if (direct_budget) p.direct_budget = *direct_budget;
    p.validate();
    return p;
  }
};

struct InputFlags {
  std::string path;
  bool compact = false;

  void attach(CLI::App* app) {
    app->add_option("-i,--input", path, "edge-list file")->required();
    app->add_flag("--compact-ids", compact, "remap sparse vertex ids");
  }

  LoadResult load() const {
    LoadOptions o;
    o.compact_ids = compact;
    return load_edge_list_file(path, o);
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::size_t default_threads() {
  if (const char* env = std::getenv("CDIA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

BipartiteSubgraph bipartite_host(const Graph& g, bool reduce, std::uint64_t seed) {
  if (auto sides = two_coloring(g)) return {g, std::move(*sides)};
  if (!reduce) throw ArgumentError("input graph is not bipartite (pass --reduce to use a max-cut subgraph)");
  return max_bipartite_subgraph(g, seed);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycles with all diagonals: C4-graph tooling, search pipeline and oracles"};
  app.require_subcommand(1);
  std::function<void()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string gen_kind, gen_out, gen_sidecar;
  std::vector<std::string> gen_params;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "random-bipartite | incidence-pg2 | polarity | cdia | prism")->required();
  gen->add_option("-p,--param", gen_params, "kind parameter as key=value (repeatable)");
  gen->add_option("--seed", gen_seed);
  gen->add_option("-o,--output", gen_out, "edge-list output")->required();
  gen->add_option("--sidecar", gen_sidecar, "JSON provenance (default: <output>.json)");
  gen->callback([&] {
    action = [&] {
      GeneratorSpec spec;
      spec.kind = generator_kind_from_string(gen_kind);
      spec.seed = gen_seed;
      for (const auto& kv : gen_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ArgumentError("parameter '" + kv + "' is not key=value");
        try {
          spec.params[kv.substr(0, eq)] = std::stoll(kv.substr(eq + 1));
        } catch (const std::exception&) {
          throw ArgumentError("parameter '" + kv + "' needs an integer value");
        }
      }
      auto graph = generate(spec);
      auto file = open_out(gen_out);
      store_edge_list(graph.graph, file);
      if (!file) throw IoError("failed writing " + gen_out);
      const json summary = {{"generator", to_json(spec)}, {"graph", to_json(summarize(graph.graph))}};
      auto side = open_out(gen_sidecar.empty() ? gen_out + ".json" : gen_sidecar);
      emit(side, summary);
      emit(out, summary);
    };
  });

  // c4graph
  auto* c4cmd = app.add_subcommand("c4graph", "build the C4-graph and report its size");
  InputFlags c4_in;
  ParamFlags c4_params;
  std::string c4_dump;
  bool c4_reduce = false;
  std::uint64_t c4_seed = 0;
  c4_in.attach(c4cmd);
  c4_params.attach(c4cmd);
  c4cmd->add_option("--dump", c4_dump, "write Gamma_0 edges as 'a b thin|thick'");
  c4cmd->add_flag("--reduce", c4_reduce, "reduce a non-bipartite input to a max-cut subgraph");
  c4cmd->add_option("--seed", c4_seed);
  c4cmd->callback([&] {
    action = [&] {
      const auto params = c4_params.resolve();
      const auto loaded = c4_in.load();
      const auto host = bipartite_host(loaded.graph, c4_reduce, c4_seed);
      const auto c4 = C4Graph::build(host.graph, host.sides, params.tau, {params.max_gamma_edges, false});
      if (!c4_dump.empty()) {
        auto file = open_out(c4_dump);
        c4.write_edge_list(file);
        if (!file) throw IoError("failed writing " + c4_dump);
      }
      emit(out, to_json(summarize(c4)));
    };
  });

  // expand
  auto* expand = app.add_subcommand("expand", "peel, apply the degree cap and check P1-P4");
  InputFlags ex_in;
  ParamFlags ex_params;
  std::string ex_out;
  std::uint64_t ex_seed = 0;
  ex_in.attach(expand);
  ex_params.attach(expand);
  expand->add_option("-o,--output", ex_out, "capped subgraph edge list (input vertex ids)");
  expand->add_option("--seed", ex_seed);
  expand->callback([&] {
    action = [&] {
      const auto params = ex_params.resolve();
      const auto loaded = ex_in.load();
      const auto peel = peel_half_maximal(loaded.graph);
      PropertyCheckOptions check;
      check.seed = ex_seed;
      const auto capped = degree_cap(peel.subgraph, params.C1, params.D, check);
      if (!ex_out.empty()) {
        std::vector<Edge> edges;
        for (const auto& e : capped.graph.edges()) edges.push_back({peel.original[e.u], peel.original[e.v]});
        auto file = open_out(ex_out);
        store_edge_list(Graph::from_edges(loaded.graph.num_vertices(), edges), file);
        if (!file) throw IoError("failed writing " + ex_out);
      }
      const auto& best = peel.trace.steps[peel.trace.argmax];
      emit(out, {{"peel", {{"vertices", best.vertices}, {"edges", best.edges}, {"ratio", best.ratio},
                           {"argmax", peel.trace.argmax}}},
                 {"report", to_json(capped.report)}});
    };
  });

  // navigate
  auto* nav = app.add_subcommand("navigate", "extract the expander and build a fan");
  InputFlags nav_in;
  ParamFlags nav_params;
  std::optional<std::uint32_t> nav_root;
  std::uint64_t nav_seed = 0;
  nav_in.attach(nav);
  nav_params.attach(nav);
  nav->add_option("--root", nav_root, "fan root (Gamma-vertex = host edge id of the reduced graph)");
  nav->add_option("--seed", nav_seed);
  nav->callback([&] {
    action = [&] {
      const auto params = nav_params.resolve();
      const auto loaded = nav_in.load();
      const auto host = bipartite_host(loaded.graph, true, nav_seed);
      const auto c4 = C4Graph::build(host.graph, host.sides, params.tau, {params.max_gamma_edges, false});
      const auto thin = GammaGraph::from_c4(c4, EdgeFilter::ThinOnly);
      const auto ext = extract_expander(thin, params, nav_seed);
      json j = {{"gamma0", to_json(summarize(c4))}, {"expander", to_json(ext)}};
      GammaVertex root = kNoVertex;
      if (nav_root) {
        root = *nav_root;
        if (root >= ext.gamma.num_vertices() || !ext.gamma.alive(root)) {
          throw ArgumentError("root " + std::to_string(root) + " is not a vertex of the extracted expander");
        }
      } else {
        for (GammaVertex v : ext.gamma.alive_vertices()) {
          if (root == kNoVertex || ext.gamma.degree(v) > ext.gamma.degree(root)) root = v;
        }
      }
      if (root == kNoVertex) {
        j["fan"] = nullptr;
      } else {
        const auto fan = build_fan(ext.gamma, root, {}, fan_options(params, ext.gamma.num_alive()));
        const auto eo = even_odd_paths(ext.gamma, fan, params.even_odd_min_degree);
        auto fj = to_json(summarize(ext.gamma, fan, eo));
        fj["root"] = root;
        fj["valid"] = fan_problems(ext.gamma, fan).empty();
        j["fan"] = fj;
      }
      emit(out, j);
    };
  });

  // find
  auto* find = app.add_subcommand("find", "search for a cycle with all diagonals");
  InputFlags find_in;
  ParamFlags find_params;
  std::uint64_t find_seed = 0;
  find_in.attach(find);
  find_params.attach(find);
  find->add_option("--seed", find_seed);
  find->callback([&] {
    action = [&] {
      const auto params = find_params.resolve();
      const auto loaded = find_in.load();
      const auto start = std::chrono::steady_clock::now();
      auto outcome = find_cdia(loaded.graph, params, find_seed);
      const auto elapsed =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      auto j = to_json(outcome);
      if (outcome.witness && find_in.compact) {
        auto ids = json::array();
        for (Vertex v : outcome.witness->w) ids.push_back(loaded.original_ids[v]);
        j["witness_input_ids"] = ids;
      }
      j["elapsed_ms"] = elapsed;
      j["params"] = to_json(params);
      j["seed"] = find_seed;
      emit(out, j);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check a C^dia witness");
  InputFlags ver_in;
  std::vector<std::uint32_t> ver_w;
  ver_in.attach(verify);
  verify->add_option("-w,--witness", ver_w, "vertex sequence w1..w2l")->required()->delimiter(',');
  verify->callback([&] {
    action = [&] {
      const auto loaded = ver_in.load();
      emit(out, oracle::to_json(oracle::verify_cdia(loaded.graph, ver_w)));
    };
  });

  // oracle
  auto* orc = app.add_subcommand("oracle", "brute-force C^dia search");
  InputFlags orc_in;
  std::size_t orc_lmax = 7;
  std::uint64_t orc_budget = 50'000'000;
  orc_in.attach(orc);
  orc->add_option("--l-max", orc_lmax, "largest half-length searched");
  orc->add_option("--budget", orc_budget, "node-expansion budget");
  orc->callback([&] {
    action = [&] {
      const auto loaded = orc_in.load();
      const auto r = oracle::brute_force_cdia(loaded.graph, orc_lmax, orc_budget);
      json j = {{"found", r.witness.has_value()}, {"exhaustive", r.exhaustive}, {"expansions", r.expansions}};
      j["l"] = r.witness ? json(r.witness->l) : json(nullptr);
      j["witness"] = r.witness ? json(r.witness->w) : json::array();
      emit(out, j);
    };
  });

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a seeded experiment spec");
  std::string exp_spec, exp_csv, exp_json;
  std::size_t exp_threads = default_threads();
  exp->add_option("--spec", exp_spec, "experiment JSON")->required();
  exp->add_option("--threads", exp_threads, "worker threads (default: CDIA_THREADS or 1)");
  exp->add_option("--csv", exp_csv, "override outputs.csv");
  exp->add_option("--json", exp_json, "override outputs.json");
  exp->callback([&] {
    action = [&] {
      std::ifstream in(exp_spec);
      if (!in) throw IoError("cannot read " + exp_spec);
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw ArgumentError("bad experiment spec " + exp_spec + ": " + e.what());
      }
      auto spec = experiment_spec_from_json(j);
      if (!exp_csv.empty()) spec.csv_path = exp_csv;
      if (!exp_json.empty()) spec.json_path = exp_json;
      const auto result = run_experiment(spec, exp_threads);
      write_csv(out, result);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (action) action();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace cdia::cli
