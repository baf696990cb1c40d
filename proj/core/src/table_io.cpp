#include "permrow/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <string_view>
#include <unordered_map>

namespace permrow {

namespace {

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<CsvRow> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    CsvRow row;
    row.line = number;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const auto field = std::string_view(line).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      row.fields.emplace_back(trim(field));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvParseError(1, 1, "missing header row");
  return rows;
}

double parse_decimal(const std::string& text, std::size_t row, std::size_t column) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw CsvParseError(row, column, "cannot parse '" + text + "' as a decimal");
  }
  if (!std::isfinite(value)) throw CsvParseError(row, column, "non-finite value '" + text + "'");
  return value;
}

std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

CsvParseError::CsvParseError(std::size_t row, std::size_t column, const std::string& reason)
    : Error(ErrorCode::ParseError,
            "row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + reason),
      row_(row),
      column_(column) {}

CoverageTable load_coverage_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  const std::size_t width = rows.front().fields.size();
  if (width < 3) {
    throw Error(ErrorCode::DimensionMismatch, "need a sample ID column and at least two positions");
  }
  const std::size_t n = rows.size() - 1;
  const std::size_t p = width - 1;
  Matrix values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const CsvRow& row = rows[i + 1];
    if (row.fields.size() != width) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(row.line) + " has " + std::to_string(row.fields.size()) +
                      " fields, header has " + std::to_string(width));
    }
    if (row.fields[0].empty()) throw CsvParseError(row.line, 1, "empty sample ID");
    if (!seen.insert(row.fields[0]).second) {
      throw Error(ErrorCode::DuplicateSampleId, "sample ID '" + row.fields[0] + "' repeats");
    }
    ids.push_back(row.fields[0]);
    for (std::size_t j = 0; j < p; ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_decimal(row.fields[j + 1], row.line, j + 2);
    }
  }
  return CoverageTable{std::move(ids), ObservationMatrix(std::move(values))};
}

void write_estimates_csv(const std::filesystem::path& path, const ExtremeEstimates& estimates,
                         const std::vector<std::string>& sampleIds, bool emitPtr) {
  const auto n = static_cast<Eigen::Index>(sampleIds.size());
  if (estimates.thetaR.size() != n || estimates.thetaL.size() != n || estimates.range.size() != n) {
    throw Error(ErrorCode::LengthMismatch, "estimates and sample IDs differ in length");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << "sampleId,thetaR,thetaL,range,method";
  if (emitPtr) out << ",ePTR";
  out << '\n';
  const std::string method(to_string(estimates.method));
  for (Eigen::Index i = 0; i < n; ++i) {
    out << sampleIds[static_cast<std::size_t>(i)] << ',' << format12(estimates.thetaR[i]) << ','
        << format12(estimates.thetaL[i]) << ',' << format12(estimates.range[i]) << ',' << method;
    if (emitPtr) out << ',' << format12(std::exp(estimates.range[i]));
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

EstimatesTable read_estimates_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  const auto& header = rows.front().fields;
  if (header.size() < 5 || header[0] != "sampleId" || header[1] != "thetaR" ||
      header[2] != "thetaL" || header[3] != "range" || header[4] != "method") {
    throw CsvParseError(1, 1, "expected header sampleId,thetaR,thetaL,range,method");
  }
  EstimatesTable table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(row.line) + " is ragged");
    }
    table.sampleIds.push_back(row.fields[0]);
    table.thetaR.push_back(parse_decimal(row.fields[1], row.line, 2));
    table.thetaL.push_back(parse_decimal(row.fields[2], row.line, 3));
    table.range.push_back(parse_decimal(row.fields[3], row.line, 4));
    table.method.push_back(row.fields[4]);
  }
  return table;
}

GroupedValues load_grouped_csv(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  const auto& header = rows.front().fields;
  if (header.size() != 3 || header[0] != "sampleId" || header[1] != "group" ||
      header[2] != "value") {
    throw CsvParseError(1, 1, "expected header sampleId,group,value");
  }
  GroupedValues grouped;
  std::unordered_map<std::string, std::size_t> index;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const CsvRow& row = rows[r];
    if (row.fields.size() != 3) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(row.line) + " is ragged");
    }
    if (!seen.insert(row.fields[0]).second) {
      throw Error(ErrorCode::DuplicateSampleId, "sample ID '" + row.fields[0] + "' repeats");
    }
    if (row.fields[1].empty()) throw CsvParseError(row.line, 2, "empty group label");
    const double value = parse_decimal(row.fields[2], row.line, 3);
    auto [it, inserted] = index.try_emplace(row.fields[1], grouped.groups.size());
    if (inserted) grouped.groups.push_back(Group{row.fields[1], {}});
    grouped.groups[it->second].values.push_back(value);
  }
  return grouped;
}

}  // namespace permrow
