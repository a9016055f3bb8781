#include <cstdio>

#include "weylwalk/io.hpp"

namespace weylwalk::io {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

void append_field(std::string& out, const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) {
    out += field;
    return;
  }
  out += '"';
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    append_field(out, row[i]);
  }
  out += "\r\n";
}

std::vector<std::string> numbered(const std::string& stem, int count) {
  std::vector<std::string> names;
  for (int i = 1; i <= count; ++i) names.push_back(stem + std::to_string(i));
  return names;
}

void extend(std::vector<std::string>& dst, const std::vector<std::string>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace

std::string emit_csv(const CsvTable& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) append_row(out, row);
  return out;
}

CsvTable to_table(const DispersionTable& table) {
  CsvTable csv;
  csv.header.push_back("s");
  extend(csv.header, numbered("p", table.dim));
  extend(csv.header, numbered("theta_over_dt_", table.internal_dim));
  extend(csv.header, numbered("energy_", table.internal_dim));
  for (const auto& r : table.rows) {
    std::vector<std::string> row{format_double(r.s)};
    for (Eigen::Index i = 0; i < r.p.size(); ++i) row.push_back(format_double(r.p(i)));
    for (double v : r.discrete) row.push_back(format_double(v));
    for (double v : r.continuum) row.push_back(format_double(v));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

CsvTable to_table(const BoundReport& report) {
  CsvTable csv;
  csv.header = {"measured", "analytic", "K", "qmax", "lambda", "a", "satisfied"};
  csv.rows.push_back({format_double(report.measured), format_double(report.analytic),
                      std::to_string(report.coin_count), format_double(report.max_q),
                      format_double(report.lambda), format_double(report.a),
                      report.satisfied ? "true" : "false"});
  return csv;
}

CsvTable to_table(const PacketTrace& trace) {
  CsvTable csv;
  csv.header = {"step", "time"};
  extend(csv.header, numbered("mean_discrete_", trace.dim));
  extend(csv.header, numbered("mean_continuum_", trace.dim));
  extend(csv.header, {"spread_discrete", "spread_continuum", "norm_discrete", "norm_continuum"});
  for (const auto& s : trace.steps) {
    std::vector<std::string> row{std::to_string(s.step), format_double(s.time)};
    for (Eigen::Index i = 0; i < s.mean_discrete.size(); ++i) row.push_back(format_double(s.mean_discrete(i)));
    for (Eigen::Index i = 0; i < s.mean_continuum.size(); ++i) row.push_back(format_double(s.mean_continuum(i)));
    row.push_back(format_double(s.spread_discrete));
    row.push_back(format_double(s.spread_continuum));
    row.push_back(format_double(s.norm_discrete));
    row.push_back(format_double(s.norm_continuum));
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

CsvTable to_table(const ScalingFit& fit) {
  CsvTable csv;
  csv.header = {"a", "dt", "one_step_norm"};
  for (const auto& p : fit.points) {
    csv.rows.push_back({format_double(p.a), format_double(p.dt), format_double(p.norm)});
  }
  return csv;
}

std::string emit_csv(const DispersionTable& table) { return emit_csv(to_table(table)); }
std::string emit_csv(const BoundReport& report) { return emit_csv(to_table(report)); }
std::string emit_csv(const PacketTrace& trace) { return emit_csv(to_table(trace)); }
std::string emit_csv(const ScalingFit& fit) { return emit_csv(to_table(fit)); }

}  // namespace weylwalk::io
