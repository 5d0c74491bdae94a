#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace zetalab {

// Ordered name/value pairs describing a run; order is preserved in output.
using ParamList = std::vector<std::pair<std::string, double>>;

struct ScanRow {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = false;
  double allowance = 0.0;  // numerical slack: holds <=> margin >= -allowance
};

struct ScanSummary {
  std::size_t n_holds = 0;
  std::size_t n_total = 0;
  double min_margin = 0.0;
};

struct ScanReport {
  std::string kind;
  ParamList params;
  std::vector<ScanRow> rows;
  ScanSummary summary;

  // Appends a row, deriving margin and holds from lhs, rhs and allowance.
  void add(double t, double lhs, double rhs, double allowance = 0.0);
  // Recomputes summary from rows.
  void finalize();
  bool all_hold() const { return summary.n_holds == summary.n_total; }
};

// A named-column numeric table (n,value / T,value,quad_err / ...), with an
// ordered summary block.
struct Table {
  std::string kind;
  ParamList params;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  ParamList summary;
};

enum class Format { csv, json };

// Shortest-free, round-trip decimal: 17 significant digits.
std::string format_real(double v);

void write_csv(std::ostream& os, const ScanReport& r);
void write_csv(std::ostream& os, const Table& t);
std::string to_json(const ScanReport& r);
std::string to_json(const Table& t);
ScanReport scan_report_from_json(const std::string& text);
Table table_from_json(const std::string& text);

// Writes the report to path in the given format. Throws zetalab::Error on IO
// failure.
void emit_report(const ScanReport& r, const std::string& path, Format format);
void emit_report(const Table& t, const std::string& path, Format format);

}  // namespace zetalab
