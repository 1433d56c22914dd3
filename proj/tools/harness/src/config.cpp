#include "tolrob/harness/config.hpp"

#include <cstdlib>
#include <fstream>

#include "tolrob/harness/experiments.hpp"

namespace tolrob::harness {

void require(bool cond, const std::string& message) {
  if (!cond) throw UsageError(message);
}

std::string format_name(Format f) { return f == Format::kCsv ? "csv" : "json"; }

namespace {

Format parse_format(const json& j) {
  require(j.is_string(), "format must be a string");
  const auto s = j.get<std::string>();
  if (s == "csv") return Format::kCsv;
  if (s == "json") return Format::kJson;
  throw UsageError("format must be csv or json, got " + s);
}

std::uint64_t parse_seed(const json& j) {
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0),
          "seed must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

void set_top_level(ExperimentConfig& cfg, const std::string& key, const json& value) {
  if (key == "experiment") {
    require(value.is_string(), "experiment must be a string");
    cfg.experiment = value.get<std::string>();
    require(find_experiment(cfg.experiment) != nullptr, "unknown experiment: " + cfg.experiment);
  } else if (key == "seed") {
    cfg.seed = parse_seed(value);
  } else if (key == "output_path") {
    require(value.is_string(), "output_path must be a string");
    cfg.output_path = value.get<std::string>();
  } else if (key == "format") {
    cfg.format = parse_format(value);
  } else if (key == "params") {
    require(value.is_object(), "params must be an object");
    cfg.params = value;
  } else {
    throw UsageError("unknown config key: " + key);
  }
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
  require(j.is_object(), "config must be a JSON object");
  require(j.contains("experiment"), "config needs an experiment");
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) set_top_level(cfg, key, value);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  return json{{"experiment", cfg.experiment},
              {"seed", cfg.seed},
              {"output_path", cfg.output_path},
              {"format", format_name(cfg.format)},
              {"params", cfg.params}};
}

void apply_override(ExperimentConfig& cfg, std::string_view assignment) {
  const auto eq = assignment.find('=');
  require(eq != std::string_view::npos && eq > 0, "override must look like key=value: " + std::string(assignment));
  const std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  if (key == "experiment" || key == "seed" || key == "output_path" || key == "format" || key == "params") {
    if ((key == "experiment" || key == "output_path" || key == "format") && !value.is_string()) value = text;
    set_top_level(cfg, key, value);
    return;
  }
  json* node = &cfg.params;
  std::string_view rest = key;
  for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
    json& child = (*node)[std::string(rest.substr(0, dot))];
    if (!child.is_object()) child = json::object();
    node = &child;
    rest.remove_prefix(dot + 1);
  }
  (*node)[std::string(rest)] = std::move(value);
}

std::filesystem::path resolve_output_path(const ExperimentConfig& cfg) {
  if (!cfg.output_path.empty()) return cfg.output_path;
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv(std::string(kOutputDirEnv).c_str()); env && *env) dir = env;
  return dir / (cfg.experiment + "." + format_name(cfg.format));
}

ParamReader::ParamReader(const json& params) : params_(params) {
  require(params_.is_object(), "params must be an object");
}

const json& ParamReader::lookup(const std::string& key, const json& fallback) {
  used_.insert(key);
  resolved_[key] = params_.contains(key) ? params_.at(key) : fallback;
  return resolved_[key];
}

double ParamReader::real(const std::string& key, double fallback) {
  const json& v = lookup(key, fallback);
  require(v.is_number(), "param " + key + " must be a number");
  return v.get<double>();
}

std::size_t ParamReader::count(const std::string& key, std::size_t fallback) {
  const json& v = lookup(key, fallback);
  require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
          "param " + key + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::string ParamReader::text(const std::string& key, const std::string& fallback) {
  const json& v = lookup(key, fallback);
  require(v.is_string(), "param " + key + " must be a string");
  return v.get<std::string>();
}

std::vector<double> ParamReader::reals(const std::string& key, const std::vector<double>& fallback) {
  const json& v = lookup(key, fallback);
  require(v.is_array(), "param " + key + " must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    require(e.is_number(), "param " + key + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<std::size_t> ParamReader::counts(const std::string& key, const std::vector<std::size_t>& fallback) {
  const json& v = lookup(key, fallback);
  require(v.is_array(), "param " + key + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& e : v) {
    require(e.is_number_unsigned() || (e.is_number_integer() && e.get<std::int64_t>() >= 0),
            "param " + key + " must hold nonnegative integers");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

json ParamReader::raw(const std::string& key, const json& fallback) { return lookup(key, fallback); }

json ParamReader::finish() const {
  for (const auto& [key, value] : params_.items()) {
    require(used_.count(key) == 1, "unknown param: " + key);
  }
  return resolved_;
}

}  // namespace tolrob::harness
