#include "kp/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace kp {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_field_csv(const std::string& path, const SolutionField& field,
                     const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& line : header_lines) out << "# " << line << "\n";
  out << "# columns: x,y,value\n";
  const Grid2D& g = field.grid;
  for (int iy = 0; iy < g.Ny; ++iy)
    for (int ix = 0; ix < g.Nx; ++ix)
      out << format_double(g.x(ix)) << ',' << format_double(g.y(iy)) << ','
          << format_double(field.at(ix, iy)) << "\n";
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

std::vector<CsvRow> read_csv_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<CsvRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    CsvRow row;
    const char* p = line.c_str();
    char* end = nullptr;
    row.x = std::strtod(p, &end);
    if (end == p || *end != ',') throw std::runtime_error("bad CSV row: " + line);
    p = end + 1;
    row.y = std::strtod(p, &end);
    if (end == p || *end != ',') throw std::runtime_error("bad CSV row: " + line);
    p = end + 1;
    row.value = std::strtod(p, &end);
    if (end == p) throw std::runtime_error("bad CSV row: " + line);
    rows.push_back(row);
  }
  return rows;
}

void write_report_csv(const std::string& path, const ConvergenceReport& report,
                      const std::vector<std::string>& header_lines) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& line : header_lines) out << "# " << line << "\n";
  out << "# method=" << to_string(report.method)
      << " quantity=" << to_string(report.quantity)
      << " reference_M=" << report.reference_M
      << " probe=(" << format_double(report.probe_x) << ","
      << format_double(report.probe_y) << ")\n";
  out << "M,rms,max_full,max_mod,max_mod2,pointwise,cpu_seconds\n";
  for (const auto& r : report.records)
    out << r.M << ',' << format_double(r.rms) << ','
        << format_double(r.max_full) << ',' << format_double(r.max_mod) << ','
        << format_double(r.max_mod2) << ',' << format_double(r.pointwise)
        << ',' << format_double(r.cpu_seconds) << "\n";
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace kp
