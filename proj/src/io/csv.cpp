#include "astroinfer/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "astroinfer/core/errors.hpp"

namespace astroinfer::io {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::string where(std::string_view source, std::size_t line) {
  std::ostringstream os;
  os << source << ":" << line;
  return os.str();
}

} // namespace

NumericTable read_numeric_csv(std::istream &in, std::span<const std::string_view> header,
                              std::string_view source) {
  NumericTable table;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (skippable(line)) continue;
    const auto fields = split(line);
    if (!have_header) {
      bool ok = fields.size() == header.size();
      for (std::size_t k = 0; ok && k < fields.size(); ++k) ok = fields[k] == header[k];
      if (!ok) {
        std::string expected;
        for (std::size_t k = 0; k < header.size(); ++k) expected += (k ? "," : "") + std::string(header[k]);
        throw InvalidInput(where(source, lineno) + ": expected header '" + expected + "', got '" +
                           std::string(trim(line)) + "'");
      }
      for (auto h : header) table.columns.emplace_back(h);
      have_header = true;
      continue;
    }
    if (fields.size() != header.size())
      throw InvalidInput(where(source, lineno) + ": expected " + std::to_string(header.size()) +
                         " fields, got " + std::to_string(fields.size()));
    std::vector<double> row(fields.size());
    for (std::size_t k = 0; k < fields.size(); ++k) {
      const auto f = fields[k];
      const auto r = std::from_chars(f.data(), f.data() + f.size(), row[k]);
      if (f.empty() || r.ec != std::errc{} || r.ptr != f.data() + f.size())
        throw InvalidInput(where(source, lineno) + ": column '" + std::string(header[k]) +
                           "' is not a number: '" + std::string(f) + "'");
      if (!std::isfinite(row[k]))
        throw InvalidInput(where(source, lineno) + ": column '" + std::string(header[k]) +
                           "' is not finite: '" + std::string(f) + "'");
    }
    table.rows.push_back(std::move(row));
    table.lines.push_back(lineno);
  }
  if (!have_header) throw InvalidInput(std::string(source) + ": empty file");
  return table;
}

NumericTable read_numeric_csv(const std::filesystem::path &path, std::span<const std::string_view> header) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return read_numeric_csv(in, header, path.string());
}

std::vector<std::string> peek_header(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    std::vector<std::string> out;
    for (auto f : split(line)) out.emplace_back(f);
    return out;
  }
  throw InvalidInput(path.string() + ": empty file");
}

std::string read_text(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

} // namespace astroinfer::io
