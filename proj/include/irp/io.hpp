#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "irp/eos.hpp"
#include "irp/region.hpp"
#include "irp/solver.hpp"

namespace irp {

struct SnapshotRow {
  double x = 0.0;
  double rho = 0.0;
  double u = 0.0;
  double P = 0.0;
  double e = 0.0;
  double s = 0.0;
  double q = 0.0;
  bool in_sigma = false;
};

inline constexpr const char* snapshot_header = "x,rho,u,P,e,s,q,in_sigma";

std::vector<SnapshotRow> snapshot_rows(const FieldState& field, const Grid1D& grid, const Eos& eos,
                                       const InvariantRegion& region);

/// CSV with header `x,rho,u,P,e,s,q,in_sigma`, one row per cell, 17
/// significant digits. Throws IoError.
void write_snapshot(const FieldState& field, const Grid1D& grid, const Eos& eos,
                    const InvariantRegion& region, const std::filesystem::path& path);

std::vector<SnapshotRow> read_snapshot(const std::filesystem::path& path);

void write_diagnostics(std::span<const StepDiagnostics> diagnostics,
                       const std::filesystem::path& path);

/// `<prefix>_t<time with 6 decimals>.csv`
std::string snapshot_filename(const std::string& prefix, double time);
std::string diagnostics_filename(const std::string& prefix);

/// Generic CSV writer used by the sweep and verification subcommands.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace irp
