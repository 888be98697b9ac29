#pragma once

#include <string>
#include <vector>

#include "kp/analysis.hpp"
#include "kp/field.hpp"

namespace kp {

/// Formats a double with 17 significant digits (round-trips exactly).
std::string format_double(double v);

/// Writes a field as CSV: '#'-prefixed header lines (config echo), then
/// x,y,value rows in row-major y-outer order.
void write_field_csv(const std::string& path, const SolutionField& field,
                     const std::vector<std::string>& header_lines);

struct CsvRow {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

/// Reads back x,y,value rows, skipping '#' comment lines.
std::vector<CsvRow> read_csv_rows(const std::string& path);

/// Writes a convergence report as CSV, one row per M.
void write_report_csv(const std::string& path, const ConvergenceReport& report,
                      const std::vector<std::string>& header_lines);

}  // namespace kp
