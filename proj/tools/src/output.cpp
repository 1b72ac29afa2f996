#include "cnls_app/output.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

namespace cnls::app {

void ensure_output_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
  const auto probe = dir / ".cnls_write_probe";
  {
    std::ofstream f(probe);
    if (!f || !(f << "x")) throw IoError("output directory is not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw IoError("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + ": " + ec.message());
}

std::string render_table(const csv::Table& table, const std::string& format,
                         const nlohmann::json& meta) {
  std::ostringstream os;
  if (format == "json-lines") {
    os << nlohmann::json{{"meta", meta}}.dump() << '\n';
    for (const auto& row : table.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
      os << obj.dump() << '\n';
    }
  } else {
    csv::write(os, table, "meta: " + meta.dump());
  }
  return os.str();
}

std::string table_extension(const std::string& format) {
  return format == "json-lines" ? ".jsonl" : ".csv";
}

}  // namespace cnls::app
