#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cnls/csv.hpp"

namespace cnls::app {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Create `dir` if needed and check that a file can be written into it.
void ensure_output_dir(const std::filesystem::path& dir);

/// Write `content` to `path.tmp`, then rename over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// CSV with `meta` as a comment header, or JSON lines with a leading
/// {"meta": ...} record followed by one object per row.
std::string render_table(const csv::Table& table, const std::string& format,
                         const nlohmann::json& meta);

/// ".csv" or ".jsonl".
std::string table_extension(const std::string& format);

}  // namespace cnls::app
