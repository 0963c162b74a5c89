#include "cdia/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cdia/cycle_finder.hpp"
#include "cdia/error.hpp"
#include "cdia/oracle.hpp"
#include "cdia/random.hpp"

namespace cdia {

void ExperimentSpec::validate() const {
  if (cells.empty()) throw ArgumentError("experiment has no cells");
  if (trials == 0) throw ArgumentError("trials must be positive");
  if (cells.size() * trials > max_total_trials) {
    throw ArgumentError("experiment needs " + std::to_string(cells.size() * trials) + " trials, above the cap of " +
                        std::to_string(max_total_trials));
  }
  for (const auto& c : cells) c.generator.validate();
  params.validate();
}

namespace {

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ArgumentError("unknown key '" + key + "' in " + where);
    }
  }
}

}  // namespace

ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("experiment spec must be a JSON object");
  reject_unknown(j, {"name", "root_seed", "trials", "max_total_trials", "cells", "sweep", "params", "oracle", "outputs"},
                 "experiment spec");
  ExperimentSpec s;
  try {
    s.name = j.value("name", s.name);
    s.root_seed = j.value("root_seed", s.root_seed);
    s.trials = j.value("trials", s.trials);
    s.max_total_trials = j.value("max_total_trials", s.max_total_trials);
    if (j.contains("params")) s.params = params_from_json(j.at("params"));
    if (j.contains("cells")) {
      for (const auto& c : j.at("cells")) {
        reject_unknown(c, {"generator", "label"}, "cell");
        ExperimentCell cell;
        cell.generator = generator_spec_from_json(c.at("generator"));
        cell.label = c.value("label", describe(cell.generator));
        s.cells.push_back(std::move(cell));
      }
    }
    if (j.contains("sweep")) {
      const auto& sw = j.at("sweep");
      reject_unknown(sw, {"n", "c"}, "sweep");
      const auto n = sw.at("n").get<std::int64_t>();
      if (n < 2 || n % 2 != 0) throw ArgumentError("sweep n must be even and at least 2");
      for (double c : sw.at("c").get<std::vector<double>>()) {
        ExperimentCell cell;
        cell.generator.kind = GeneratorKind::RandomBipartite;
        cell.generator.params = {{"nx", n / 2},
                                 {"ny", n / 2},
                                 {"m", std::llround(c * std::pow(static_cast<double>(n), 1.5))}};
        std::ostringstream label;
        label << describe(cell.generator) << ";c=" << c;
        cell.label = label.str();
        s.cells.push_back(std::move(cell));
      }
    }
    if (j.contains("oracle")) {
      const auto& o = j.at("oracle");
      reject_unknown(o, {"max_vertices", "l_max", "budget"}, "oracle");
      s.oracle.max_vertices = o.value("max_vertices", s.oracle.max_vertices);
      s.oracle.l_max = o.value("l_max", s.oracle.l_max);
      s.oracle.budget = o.value("budget", s.oracle.budget);
    }
    if (j.contains("outputs")) {
      const auto& o = j.at("outputs");
      reject_unknown(o, {"csv", "json"}, "outputs");
      s.csv_path = o.value("csv", "");
      s.json_path = o.value("json", "");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad experiment spec: ") + e.what());
  }
  s.validate();
  return s;
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  auto cells = nlohmann::json::array();
  for (const auto& c : spec.cells) cells.push_back({{"generator", to_json(c.generator)}, {"label", c.label}});
  return {{"name", spec.name},
          {"root_seed", spec.root_seed},
          {"trials", spec.trials},
          {"max_total_trials", spec.max_total_trials},
          {"cells", cells},
          {"params", to_json(spec.params)},
          {"oracle",
           {{"max_vertices", spec.oracle.max_vertices}, {"l_max", spec.oracle.l_max}, {"budget", spec.oracle.budget}}},
          {"outputs", {{"csv", spec.csv_path}, {"json", spec.json_path}}}};
}

namespace {

TrialResult run_trial(const ExperimentSpec& spec, std::size_t cell, std::size_t trial) {
  TrialResult t;
  t.seed = derive_seed({spec.root_seed, cell, trial});
  GeneratorSpec gen = spec.cells[cell].generator;
  gen.seed = derive_seed({t.seed, 0});
  const Graph g = generate(gen).graph;
  t.n = g.num_vertices();
  t.m = g.num_edges();
  const auto outcome = find_cdia(g, spec.params, derive_seed({t.seed, 1}));
  if (outcome.witness) {
    t.found = true;
    t.l = outcome.witness->l;
  }
  t.route = to_string(outcome.route);
  if (g.num_vertices() <= spec.oracle.max_vertices) {
    const auto r = oracle::brute_force_cdia(g, spec.oracle.l_max, spec.oracle.budget);
    t.oracle_ran = true;
    t.oracle_found = r.witness.has_value();
    t.oracle_exhaustive = r.exhaustive;
    if (r.witness) t.oracle_l = r.witness->l;
  }
  return t;
}

CellResult aggregate(const ExperimentSpec& spec, std::size_t cell, std::vector<TrialResult> trials) {
  CellResult c;
  c.cell = cell;
  c.generator = spec.cells[cell].label;
  c.trials = trials.size();
  std::vector<std::size_t> lengths;
  for (const auto& t : trials) {
    if (t.found) {
      ++c.successes;
      lengths.push_back(t.l);
    }
    c.route_k33 += t.route == "k33-thick";
    c.route_fan += t.route == "fan-closure";
    c.route_direct += t.route == "direct-search";
    if (t.oracle_ran && (t.oracle_found || t.oracle_exhaustive)) {
      // Only witnesses the oracle could have seen are comparable.
      const bool pipeline = t.found && t.l <= spec.oracle.l_max;
      ++c.oracle_checked;
      c.oracle_agree += pipeline == t.oracle_found;
      c.oracle_positive += t.oracle_found;
      c.soundness_violations += pipeline && !t.oracle_found;
    }
  }
  if (!lengths.empty()) {
    std::sort(lengths.begin(), lengths.end());
    const std::size_t k = lengths.size();
    c.median_l = k % 2 == 1 ? static_cast<double>(lengths[k / 2])
                            : (static_cast<double>(lengths[k / 2 - 1]) + static_cast<double>(lengths[k / 2])) / 2.0;
  }
  c.details = std::move(trials);
  return c;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec, std::size_t threads) {
  spec.validate();
  std::optional<std::ofstream> csv, json;
  if (!spec.csv_path.empty()) csv = open_output(spec.csv_path);
  if (!spec.json_path.empty()) json = open_output(spec.json_path);

  const std::size_t total = spec.cells.size() * spec.trials;
  std::vector<TrialResult> rows(total);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    while (!failed) {
      const std::size_t i = next++;
      if (i >= total) return;
      try {
        rows[i] = run_trial(spec, i / spec.trials, i % spec.trials);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.spec = spec;
  for (std::size_t c = 0; c < spec.cells.size(); ++c) {
    auto first = rows.begin() + static_cast<std::ptrdiff_t>(c * spec.trials);
    result.cells.push_back(aggregate(spec, c, {first, first + static_cast<std::ptrdiff_t>(spec.trials)}));
  }
  if (csv) {
    write_csv(*csv, result);
    if (!*csv) throw IoError("failed writing " + spec.csv_path);
  }
  if (json) {
    *json << to_json(result).dump(2) << '\n';
    if (!*json) throw IoError("failed writing " + spec.json_path);
  }
  return result;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << "cell,generator,trials,successes,median_l,route_fan,route_direct,oracle_checked,oracle_agree\n";
  for (const auto& c : result.cells) {
    out << c.cell << ',' << csv_field(c.generator) << ',' << c.trials << ',' << c.successes << ','
        << (c.median_l ? format_number(*c.median_l) : "") << ',' << c.route_fan + c.route_k33 << ','
        << c.route_direct << ',' << c.oracle_checked << ',' << c.oracle_agree << '\n';
  }
}

nlohmann::json to_json(const ExperimentResult& result) {
  auto cells = nlohmann::json::array();
  for (const auto& c : result.cells) {
    auto trials = nlohmann::json::array();
    for (std::size_t i = 0; i < c.details.size(); ++i) {
      const auto& t = c.details[i];
      nlohmann::json row = {{"trial", i}, {"seed", t.seed}, {"n", t.n},         {"m", t.m},
                            {"found", t.found}, {"l", t.found ? nlohmann::json(t.l) : nlohmann::json(nullptr)},
                            {"route", t.route}};
      if (t.oracle_ran) {
        row["oracle"] = {{"found", t.oracle_found},
                         {"exhaustive", t.oracle_exhaustive},
                         {"l", t.oracle_found ? nlohmann::json(t.oracle_l) : nlohmann::json(nullptr)}};
      }
      trials.push_back(std::move(row));
    }
    cells.push_back({{"cell", c.cell},
                     {"generator", c.generator},
                     {"trials", c.trials},
                     {"successes", c.successes},
                     {"success_rate", static_cast<double>(c.successes) / static_cast<double>(c.trials)},
                     {"median_l", c.median_l ? nlohmann::json(*c.median_l) : nlohmann::json(nullptr)},
                     {"routes", {{"k33-thick", c.route_k33}, {"fan-closure", c.route_fan}, {"direct-search", c.route_direct}}},
                     {"oracle_checked", c.oracle_checked},
                     {"oracle_agree", c.oracle_agree},
                     {"oracle_positive", c.oracle_positive},
                     {"soundness_violations", c.soundness_violations},
                     {"details", trials}});
  }
  return {{"spec", to_json(result.spec)}, {"cells", cells}};
}

}  // namespace cdia
