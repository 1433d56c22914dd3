#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tolrob/harness/config.hpp"
#include "tolrob/harness/experiments.hpp"
#include "tolrob/harness/output.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using namespace tolrob::harness;

ExperimentConfig load_with_overrides(const std::string& path, const std::vector<std::string>& overrides) {
  ExperimentConfig cfg = load_config(path);
  for (const auto& o : overrides) apply_override(cfg, o);
  return validate(cfg);
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides) {
  const ExperimentConfig cfg = load_with_overrides(path, overrides);
  const auto out_path = resolve_output_path(cfg);
  const RunRecord rec = run(cfg);
  write_record(rec, out_path);
  std::cerr << cfg.experiment << ": wrote " << out_path.string() << " in " << rec.wall_clock_seconds << " s\n";
  for (const auto& f : rec.outcome.failures) std::cerr << "  assertion failed: " << f << "\n";
  std::cerr << (rec.outcome.passed() ? "PASS" : "FAIL") << "\n";
  return rec.outcome.passed() ? kExitPass : kExitAssertion;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& overrides) {
  const ExperimentConfig cfg = load_with_overrides(path, overrides);
  std::cout << to_json(cfg).dump(2) << "\n";
  return kExitPass;
}

int cmd_list() {
  for (const auto& e : experiments()) std::cout << e.name << "\t" << e.description << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tolerant robust learning experiment harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  std::string config_path;
  std::vector<std::string> overrides;

  auto* run_cmd = app.add_subcommand("run", "Run one experiment and write its table");
  run_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  run_cmd->add_option("--set", overrides, "Override a config value, key=value (repeatable)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config and print it with defaults filled in");
  validate_cmd->add_option("--config", config_path, "JSON experiment config")->required();
  validate_cmd->add_option("--set", overrides, "Override a config value, key=value (repeatable)");

  auto* list_cmd = app.add_subcommand("list-experiments", "List experiment names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, overrides);
    if (validate_cmd->parsed()) return cmd_validate(config_path, overrides);
    if (list_cmd->parsed()) return cmd_list();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
