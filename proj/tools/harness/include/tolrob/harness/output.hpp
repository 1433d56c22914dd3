#pragma once

#include <filesystem>
#include <string>

#include "tolrob/harness/experiments.hpp"

namespace tolrob::harness {

/// `#`-prefixed schema, config and summary lines, then a header row and the
/// rows. Contains nothing run-dependent, so identical configs give identical
/// bytes.
std::string render_csv(const RunRecord& rec);

/// Same content as JSON with a "schema" field, plus wall-clock time.
std::string render_json(const RunRecord& rec);

/// Writes to a sibling temporary file and renames it into place. Throws
/// IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void write_record(const RunRecord& rec, const std::filesystem::path& path);

}  // namespace tolrob::harness
