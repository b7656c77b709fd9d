#include "irp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "irp/errors.hpp"
#include "irp/format.hpp"

namespace irp {

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

double parse_field(const std::string& text, const std::filesystem::path& path, long line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

std::vector<SnapshotRow> snapshot_rows(const FieldState& field, const Grid1D& grid, const Eos& eos,
                                       const InvariantRegion& region) {
  std::vector<SnapshotRow> rows;
  rows.reserve(field.cells.size());
  for (std::size_t i = 0; i < field.cells.size(); ++i) {
    const Conserved1d& w = field.cells[i];
    const auto prim = primitives(w);
    SnapshotRow r;
    r.x = grid.center(static_cast<int>(i));
    r.rho = density(w);
    r.u = prim.velocity(0);
    r.e = prim.e;
    const double s = eos.entropy_from_ev(prim.e, prim.v);
    r.s = s;
    r.P = pressure(eos, {s, prim.v});
    r.q = r.rho * (region.s0 - s);
    r.in_sigma = in_invariant_region(w, eos, region).member;
    rows.push_back(r);
  }
  return rows;
}

void write_snapshot(const FieldState& field, const Grid1D& grid, const Eos& eos,
                    const InvariantRegion& region, const std::filesystem::path& path) {
  const auto rows = snapshot_rows(field, grid, eos, region);
  std::ofstream out = open_for_writing(path);
  out << snapshot_header << '\n';
  for (const SnapshotRow& r : rows) {
    out << format_real(r.x) << ',' << format_real(r.rho) << ',' << format_real(r.u) << ','
        << format_real(r.P) << ',' << format_real(r.e) << ',' << format_real(r.s) << ','
        << format_real(r.q) << ',' << (r.in_sigma ? '1' : '0') << '\n';
  }
  close_checked(out, path);
}

std::vector<SnapshotRow> read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != snapshot_header) {
    throw IoError(path.string() + ": missing snapshot header");
  }
  std::vector<SnapshotRow> rows;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() != 8) throw IoError(path.string() + ":" + std::to_string(lineno) + ": expected 8 columns");
    SnapshotRow r;
    r.x = parse_field(cols[0], path, lineno);
    r.rho = parse_field(cols[1], path, lineno);
    r.u = parse_field(cols[2], path, lineno);
    r.P = parse_field(cols[3], path, lineno);
    r.e = parse_field(cols[4], path, lineno);
    r.s = parse_field(cols[5], path, lineno);
    r.q = parse_field(cols[6], path, lineno);
    r.in_sigma = parse_field(cols[7], path, lineno) != 0.0;
    rows.push_back(r);
  }
  return rows;
}

void write_diagnostics(std::span<const StepDiagnostics> diagnostics,
                       const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  out << "step,time,dt,rejections,min_entropy,min_rho,min_R,mass,momentum,energy,min_theta,"
         "limited_fraction,min_fundamental_derivative,interface_violations\n";
  for (const StepDiagnostics& d : diagnostics) {
    out << d.step << ',' << format_real(d.time) << ',' << format_real(d.dt) << ',' << d.rejections
        << ',' << format_real(d.min_entropy) << ',' << format_real(d.min_rho) << ','
        << format_real(d.min_R) << ',' << format_real(d.totals(0)) << ','
        << format_real(d.totals(1)) << ',' << format_real(d.totals(2)) << ','
        << format_real(d.min_theta) << ',' << format_real(d.limited_fraction) << ','
        << format_real(d.min_fundamental_derivative) << ',' << d.interface_violations << '\n';
  }
  close_checked(out, path);
}

std::string snapshot_filename(const std::string& prefix, double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "_t%.6f.csv", time);
  return prefix + buf;
}

std::string diagnostics_filename(const std::string& prefix) { return prefix + "_diag.csv"; }

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out = open_for_writing(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  close_checked(out, path);
}

}  // namespace irp
