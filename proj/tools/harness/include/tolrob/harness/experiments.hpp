#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tolrob/harness/config.hpp"

namespace tolrob::harness {

struct Column {
  std::string name;
  std::string description;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<json>> rows;
};

struct Outcome {
  Table table;
  json summary = json::object();
  std::vector<std::string> failures;  // one entry per failed embedded assertion
  bool passed() const { return failures.empty(); }
};

struct Experiment {
  std::string name;
  std::string description;
  // Fills defaults and validates; throws UsageError.
  std::function<json(const json& params)> resolve;
  std::function<Outcome(const json& resolved, std::uint64_t seed)> run;
};

const std::vector<Experiment>& experiments();
const Experiment* find_experiment(std::string_view name);

struct RunRecord {
  ExperimentConfig config;  // params resolved
  Outcome outcome;
  double wall_clock_seconds = 0.0;
};

/// The config with params resolved against the experiment's defaults.
ExperimentConfig validate(const ExperimentConfig& cfg);

RunRecord run(const ExperimentConfig& cfg);

/// Convenience for tests: resolve and run by name.
Outcome run_experiment(std::string_view name, const json& params, std::uint64_t seed);

std::string library_version();

}  // namespace tolrob::harness
