#include "csv.hpp"

#include "casimir/errors.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <chrono>
#include <ctime>

namespace casimir::cli {

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view comment,
                     const std::vector<std::string>& columns)
    : out_(path), columns_(columns.size()), path_(path) {
  if (!out_) throw ConfigError("cannot write " + path.string());
  out_ << "# " << comment << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  row_.emplace_back(text);
  return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(std::string_view(num(value))); }
CsvWriter& CsvWriter::cell(long long value) { return cell(std::string_view(fmt::format("{}", value))); }
CsvWriter& CsvWriter::cell(unsigned long long value) {
  return cell(std::string_view(fmt::format("{}", value)));
}

void CsvWriter::end_row() {
  if (row_.size() != columns_) {
    throw std::logic_error(path_.string() + ": row has " + std::to_string(row_.size()) + " cells, expected " +
                           std::to_string(columns_));
  }
  for (std::size_t i = 0; i < row_.size(); ++i) out_ << (i ? "," : "") << row_[i];
  out_ << '\n';
  row_.clear();
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (const auto& c : cells) cell(std::string_view(c));
  end_row();
}

std::string num(double value) { return fmt::format("{}", value); }

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

}  // namespace casimir::cli
