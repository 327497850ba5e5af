#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace astroinfer::io {

/// Numeric CSV with a fixed header. Blank lines and lines starting with '#'
/// are skipped; every other line must hold exactly one finite number per
/// column.
struct NumericTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lines; // 1-based source line of each row
};

/// Throws InvalidInput naming `source` and the offending line.
[[nodiscard]] NumericTable read_numeric_csv(std::istream &in, std::span<const std::string_view> header,
                                            std::string_view source);

[[nodiscard]] NumericTable read_numeric_csv(const std::filesystem::path &path,
                                            std::span<const std::string_view> header);

/// Reads the first header line of a CSV file (comments skipped).
[[nodiscard]] std::vector<std::string> peek_header(const std::filesystem::path &path);

/// Throws InvalidInput when the file cannot be opened.
[[nodiscard]] std::string read_text(const std::filesystem::path &path);

} // namespace astroinfer::io
