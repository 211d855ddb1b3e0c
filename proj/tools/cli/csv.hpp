#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace casimir::cli {

/// Comma-separated output with a timestamped comment line ahead of the
/// header. Numbers are written with round-trip precision.
class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& path, std::string_view comment,
            const std::vector<std::string>& columns);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(unsigned long long value);
  CsvWriter& empty() { return cell(std::string_view{}); }
  void end_row();
  void row(const std::vector<std::string>& cells);

private:
  std::ofstream out_;
  std::size_t columns_;
  std::vector<std::string> row_;
  std::filesystem::path path_;
};

/// Round-trip text for a double.
std::string num(double value);

/// UTC time in ISO 8601.
std::string timestamp();

}  // namespace casimir::cli
