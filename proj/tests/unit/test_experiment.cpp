#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cdia/error.hpp"
#include "cdia/experiment.hpp"

namespace cdia {
namespace {

using nlohmann::json;

ExperimentSpec spec_from(const std::string& text) { return experiment_spec_from_json(json::parse(text)); }

TEST(ExperimentSpec, ExplicitCells) {
  const auto s = spec_from(R"({
    "name": "k33", "root_seed": 3, "trials": 2,
    "cells": [{"generator": {"kind": "random-bipartite", "params": {"nx": 3, "ny": 3, "m": 9}, "seed": 0}}]
  })");
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].label, "random-bipartite:m=9,nx=3,ny=3");
  EXPECT_EQ(s.trials, 2u);
}

TEST(ExperimentSpec, SweepExpandsCells) {
  const auto s = spec_from(R"({"trials": 1, "sweep": {"n": 40, "c": [0.5, 1.0]}})");
  ASSERT_EQ(s.cells.size(), 2u);
  EXPECT_EQ(s.cells[0].generator.params.at("nx"), 20);
  EXPECT_EQ(s.cells[0].generator.params.at("m"), 126);  // round(0.5 * 40^1.5)
  EXPECT_EQ(s.cells[1].generator.params.at("m"), 253);
}

TEST(ExperimentSpec, Rejections) {
  EXPECT_THROW(spec_from(R"({"trials": 1, "bogus": 1, "sweep": {"n": 10, "c": [0.5]}})"), ArgumentError);
  EXPECT_THROW(spec_from(R"({"trials": 1, "sweep": {"n": 10, "c": [0.5], "x": 2}})"), ArgumentError);
  EXPECT_THROW(spec_from(R"({"trials": 1})"), ArgumentError);
  EXPECT_THROW(spec_from(R"({"trials": 0, "sweep": {"n": 10, "c": [0.5]}})"), ArgumentError);
  EXPECT_THROW(spec_from(R"({"trials": 10, "max_total_trials": 5, "sweep": {"n": 10, "c": [0.5]}})"), ArgumentError);
  EXPECT_THROW(spec_from(R"({"trials": 1, "sweep": {"n": 11, "c": [0.5]}})"), ArgumentError);
}

TEST(Experiment, K33CellAlwaysSucceeds) {
  const auto s = spec_from(R"({
    "trials": 3,
    "cells": [{"generator": {"kind": "random-bipartite", "params": {"nx": 3, "ny": 3, "m": 9}}, "label": "k33"}]
  })");
  const auto r = run_experiment(s, 2);
  ASSERT_EQ(r.cells.size(), 1u);
  const auto& c = r.cells[0];
  EXPECT_EQ(c.successes, 3u);
  EXPECT_EQ(c.median_l, 3.0);
  EXPECT_EQ(c.oracle_checked, 3u);
  EXPECT_EQ(c.oracle_agree, 3u);
  EXPECT_EQ(c.soundness_violations, 0u);
}

TEST(Experiment, ProjectivePlaneCellsNeverSucceed) {
  const auto s = spec_from(R"({
    "trials": 2,
    "cells": [{"generator": {"kind": "incidence-pg2", "params": {"q": 2}}},
              {"generator": {"kind": "polarity", "params": {"q": 3}}}]
  })");
  const auto r = run_experiment(s, 1);
  for (const auto& c : r.cells) {
    EXPECT_EQ(c.successes, 0u);
    EXPECT_FALSE(c.median_l.has_value());
    EXPECT_EQ(c.oracle_agree, c.oracle_checked);
  }
}

TEST(Experiment, CsvIsDeterministicAcrossThreadCounts) {
  const auto s = spec_from(R"({"root_seed": 9, "trials": 3, "sweep": {"n": 24, "c": [0.6, 1.0]}})");
  std::ostringstream a, b;
  write_csv(a, run_experiment(s, 1));
  write_csv(b, run_experiment(s, 4));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "cell,generator,trials,successes,median_l,route_fan,route_direct,oracle_checked,oracle_agree");
}

TEST(Experiment, JsonCarriesSpecAndDetails) {
  const auto s = spec_from(R"({"trials": 2, "sweep": {"n": 12, "c": [0.5]}})");
  const auto j = to_json(run_experiment(s, 1));
  EXPECT_EQ(j["spec"]["trials"], 2);
  EXPECT_EQ(j["cells"][0]["details"].size(), 2u);
  EXPECT_TRUE(j["cells"][0]["routes"].contains("k33-thick"));
}

TEST(Experiment, UnwritableOutputFailsBeforeTrials) {
  auto s = spec_from(R"({"trials": 1, "max_total_trials": 1,
    "cells": [{"generator": {"kind": "polarity", "params": {"q": 101}}}]})");
  s.csv_path = "/nonexistent-dir/out.csv";
  // The cell alone would take far longer than this test if it ran.
  EXPECT_THROW(run_experiment(s, 1), IoError);
}

TEST(Experiment, WritesOutputs) {
  const auto dir = std::filesystem::temp_directory_path() / "cdia_experiment_test";
  std::filesystem::create_directories(dir);
  auto s = spec_from(R"({"trials": 1, "sweep": {"n": 10, "c": [0.5]}})");
  s.csv_path = (dir / "out.csv").string();
  s.json_path = (dir / "out.json").string();
  run_experiment(s, 1);
  EXPECT_GT(std::filesystem::file_size(s.csv_path), 0u);
  EXPECT_GT(std::filesystem::file_size(s.json_path), 0u);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace cdia
