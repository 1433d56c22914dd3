#include "tolrob/harness/output.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#ifdef __unix__
#include <unistd.h>
#endif

namespace tolrob::harness {

namespace {

std::string cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.get<double>());
    return std::string(buf, res.ptr);
  }
  return v.dump();
}

std::string schema_name(const RunRecord& rec) { return "tolrob." + rec.config.experiment + ".v1"; }

json summary_json(const RunRecord& rec) {
  json s = rec.outcome.summary;
  s["failures"] = rec.outcome.failures;
  s["passed"] = rec.outcome.passed();
  return s;
}

}  // namespace

std::string render_csv(const RunRecord& rec) {
  const auto& t = rec.outcome.table;
  std::string out;
  out += "# schema: " + schema_name(rec) + "\n";
  for (const auto& c : t.columns) out += "# column " + c.name + ": " + c.description + "\n";
  out += "# version: " + library_version() + "\n";
  // The destination is left out so reruns to different paths compare equal.
  json cfg = to_json(rec.config);
  cfg.erase("output_path");
  out += "# config: " + cfg.dump() + "\n";
  out += "# summary: " + summary_json(rec).dump() + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i].name;
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + cell(row[i]);
    out += "\n";
  }
  return out;
}

std::string render_json(const RunRecord& rec) {
  const auto& t = rec.outcome.table;
  json columns = json::array();
  for (const auto& c : t.columns) columns.push_back({{"name", c.name}, {"description", c.description}});
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i].name] = row[i];
    rows.push_back(std::move(r));
  }
  json doc{{"schema", {{"name", schema_name(rec)}, {"columns", columns}}},
           {"version", library_version()},
           {"config", to_json(rec.config)},
           {"rows", rows},
           {"summary", summary_json(rec)},
           {"wall_clock_seconds", rec.wall_clock_seconds}};
  return doc.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  std::filesystem::path tmp = path;
#ifdef __unix__
  tmp += ".tmp." + std::to_string(::getpid());
#else
  tmp += ".tmp";
#endif
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move output into " + path.string() + ": " + ec.message());
  }
}

void write_record(const RunRecord& rec, const std::filesystem::path& path) {
  write_atomic(path, rec.config.format == Format::kCsv ? render_csv(rec) : render_json(rec));
}

}  // namespace tolrob::harness
