#include "zetalab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

using ojson = nlohmann::ordered_json;

// JSON has no inf/nan; they travel as strings.
ojson real_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double real_from_json(const ojson& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw Error("report JSON: unexpected real value '" + s + "'");
}

ojson params_to_json(const ParamList& params) {
  ojson out = ojson::object();
  for (const auto& [name, value] : params) out[name] = real_to_json(value);
  return out;
}

ParamList params_from_json(const ojson& j) {
  ParamList out;
  for (const auto& [name, value] : j.items()) out.emplace_back(name, real_from_json(value));
  return out;
}

template <typename Report>
void write_file(const Report& r, const std::string& path, Format format) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  if (format == Format::csv)
    write_csv(os, r);
  else
    os << to_json(r) << '\n';
  os.flush();
  if (!os) throw Error("write to '" + path + "' failed");
}

}  // namespace

void ScanReport::add(double t, double lhs, double rhs, double allowance) {
  ScanRow row{t, lhs, rhs, rhs - lhs, false, allowance};
  // An infinite-negative lhs (e.g. log|xi| at a zero) always holds.
  if (std::isinf(lhs) && lhs < 0) row.margin = std::numeric_limits<double>::infinity();
  row.holds = row.margin >= -allowance;
  rows.push_back(row);
}

void ScanReport::finalize() {
  summary.n_total = rows.size();
  summary.n_holds = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ScanRow& r) { return r.holds; }));
  summary.min_margin = rows.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& r : rows) summary.min_margin = std::min(summary.min_margin, r.margin);
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const ScanReport& r) {
  os << "t,lhs,rhs,margin,holds\n";
  for (const auto& row : r.rows) {
    os << format_real(row.t) << ',' << format_real(row.lhs) << ',' << format_real(row.rhs) << ','
       << format_real(row.margin) << ',' << (row.holds ? "true" : "false") << '\n';
  }
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
    os << '\n';
  }
}

std::string to_json(const ScanReport& r) {
  ojson j;
  j["kind"] = r.kind;
  j["params"] = params_to_json(r.params);
  ojson rows = ojson::array();
  for (const auto& row : r.rows) {
    ojson o;
    o["t"] = real_to_json(row.t);
    o["lhs"] = real_to_json(row.lhs);
    o["rhs"] = real_to_json(row.rhs);
    o["margin"] = real_to_json(row.margin);
    o["holds"] = row.holds;
    o["allowance"] = real_to_json(row.allowance);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  j["summary"] = {{"n_holds", r.summary.n_holds},
                  {"n_total", r.summary.n_total},
                  {"min_margin", real_to_json(r.summary.min_margin)}};
  return j.dump(2);
}

std::string to_json(const Table& t) {
  ojson j;
  j["kind"] = t.kind;
  j["params"] = params_to_json(t.params);
  j["columns"] = t.columns;
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson o = ojson::array();
    for (double v : row) o.push_back(real_to_json(v));
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  j["summary"] = params_to_json(t.summary);
  return j.dump(2);
}

ScanReport scan_report_from_json(const std::string& text) {
  const ojson j = ojson::parse(text);
  ScanReport r;
  r.kind = j.at("kind").get<std::string>();
  r.params = params_from_json(j.at("params"));
  for (const auto& o : j.at("rows")) {
    r.rows.push_back({real_from_json(o.at("t")), real_from_json(o.at("lhs")), real_from_json(o.at("rhs")),
                      real_from_json(o.at("margin")), o.at("holds").get<bool>(), real_from_json(o.at("allowance"))});
  }
  const auto& s = j.at("summary");
  r.summary = {s.at("n_holds").get<std::size_t>(), s.at("n_total").get<std::size_t>(),
               real_from_json(s.at("min_margin"))};
  return r;
}

Table table_from_json(const std::string& text) {
  const ojson j = ojson::parse(text);
  Table t;
  t.kind = j.at("kind").get<std::string>();
  t.params = params_from_json(j.at("params"));
  t.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& o : j.at("rows")) {
    std::vector<double> row;
    for (const auto& v : o) row.push_back(real_from_json(v));
    t.rows.push_back(std::move(row));
  }
  t.summary = params_from_json(j.at("summary"));
  return t;
}

void emit_report(const ScanReport& r, const std::string& path, Format format) { write_file(r, path, format); }

void emit_report(const Table& t, const std::string& path, Format format) { write_file(t, path, format); }

}  // namespace zetalab
