#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "permrow/errors.hpp"
#include "permrow/estimators.hpp"
#include "permrow/matrix_core.hpp"
#include "permrow/stats.hpp"

namespace permrow {

/// Parse failure at a 1-based (row, column) cell of a CSV file; row 1 is
/// the header.
class CsvParseError : public Error {
 public:
  CsvParseError(std::size_t row, std::size_t column, const std::string& reason);

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

struct CoverageTable {
  std::vector<std::string> sampleIds;
  ObservationMatrix values;
};

/// Header row required (position labels are ignored); first column is the
/// sample ID, the rest are decimal coverages.
CoverageTable load_coverage_csv(const std::filesystem::path& path);

/// Columns sampleId,thetaR,thetaL,range,method with 12 significant digits.
/// With emitPtr, an extra ePTR = exp(range) column is appended.
void write_estimates_csv(const std::filesystem::path& path, const ExtremeEstimates& estimates,
                         const std::vector<std::string>& sampleIds, bool emitPtr = false);

struct EstimatesTable {
  std::vector<std::string> sampleIds;
  std::vector<double> thetaR;
  std::vector<double> thetaL;
  std::vector<double> range;
  std::vector<std::string> method;
};

EstimatesTable read_estimates_csv(const std::filesystem::path& path);

/// Rows of sampleId,group,value under a header; groups keep the order in
/// which their labels first appear.
GroupedValues load_grouped_csv(const std::filesystem::path& path);

}  // namespace permrow
