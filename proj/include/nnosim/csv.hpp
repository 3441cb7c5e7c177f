#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nnosim {

// Shortest exact decimal representation of a double ("%.17g"), so every CSV
// round-trips bit-identically and reruns produce byte-identical files.
std::string fmt_double(double v);

// Write a numeric table. `header` may be empty (no header row).
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows);

// Read a numeric table, skipping `skip_rows` leading rows (header lines).
// Throws IngestError naming file and line on ragged rows or non-numeric cells.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path,
                                          int skip_rows = 0);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace nnosim
