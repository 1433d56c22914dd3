#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tolrob::harness {

using nlohmann::json;

/// Invalid configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written; maps to exit status 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kCsv, kJson };

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::string output_path;  // empty: <TOLROB_OUTPUT_DIR or .>/<experiment>.<format>
  Format format = Format::kCsv;
  json params = json::object();
};

inline constexpr std::string_view kOutputDirEnv = "TOLROB_OUTPUT_DIR";

/// Strict parse: unknown top-level keys and wrong types are rejected.
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
json to_json(const ExperimentConfig& cfg);

/// Applies `key=value`. Top-level keys (seed, format, output_path, experiment)
/// are set directly; anything else goes into params, with dots addressing
/// nested objects. The value is parsed as JSON and falls back to a string.
void apply_override(ExperimentConfig& cfg, std::string_view assignment);

std::filesystem::path resolve_output_path(const ExperimentConfig& cfg);

std::string format_name(Format f);

/// Typed access to experiment params with defaults. Every read key is
/// recorded; finish() rejects unread keys.
class ParamReader {
 public:
  explicit ParamReader(const json& params);

  double real(const std::string& key, double fallback);
  std::size_t count(const std::string& key, std::size_t fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback);
  std::vector<std::size_t> counts(const std::string& key, const std::vector<std::size_t>& fallback);
  json raw(const std::string& key, const json& fallback);

  /// The params with defaults filled in. Throws UsageError on unknown keys.
  json finish() const;

 private:
  const json& lookup(const std::string& key, const json& fallback);

  json params_;
  json resolved_ = json::object();
  std::set<std::string> used_;
};

/// Throws UsageError(message) unless cond.
void require(bool cond, const std::string& message);

}  // namespace tolrob::harness
