#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "irp/eos.hpp"
#include "irp/limiter.hpp"
#include "irp/region.hpp"
#include "irp/state.hpp"

namespace irp {

enum class BoundaryKind { transmissive, periodic, reflective };

/// Uniform 1D grid on [x_min, x_max].
struct Grid1D {
  int n_cells = 100;
  double x_min = 0.0;
  double x_max = 1.0;
  BoundaryKind boundary = BoundaryKind::transmissive;

  double dx() const { return (x_max - x_min) / n_cells; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
  void validate() const;
};

enum class SchemeOrder { first, second };
enum class SlopeLimiter { minmod, none };

struct SolverConfig {
  double cfl = 0.5;
  SchemeOrder order = SchemeOrder::second;
  SlopeLimiter slope_limiter = SlopeLimiter::minmod;
  double t_final = 0.2;
  bool irp_enabled = true;
  long max_steps = 1000000;
  /// Re-check every limited interface value against the region (debug aid).
  bool check_interfaces = false;
  int max_halvings = 10;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

using InitialData = std::function<PrimitiveState(double x)>;

struct FieldState {
  std::vector<Conserved1d> cells;
  double time = 0.0;
  long step = 0;
};

/// Per-step record of the run-time invariants.
struct StepDiagnostics {
  long step = 0;
  double time = 0.0;
  double dt = 0.0;
  int rejections = 0;
  double min_entropy = 0.0;
  double min_rho = 0.0;
  double min_R = 0.0;
  Eigen::Vector3d totals = Eigen::Vector3d::Zero();  ///< dx * sum of (rho, m, E)
  double min_theta = 1.0;
  double limited_fraction = 0.0;
  double min_fundamental_derivative = 0.0;
  long interface_violations = 0;
};

struct RunReport {
  FieldState final_state;
  InvariantRegion region;
  std::vector<StepDiagnostics> diagnostics;
  std::vector<std::string> warnings;
};

using FluxVector = Eigen::Vector3d;

/// Cell averages by 3-point Gauss quadrature and the entropy floor s0: the
/// minimum of the entropy over all quadrature points and all resulting cell
/// averages, lowered by 1e-12 (|s_min| + s_ref) to absorb rounding.
/// Throws InadmissibleInitialData naming the first bad location.
std::pair<FieldState, InvariantRegion> initialize(const Grid1D& grid, const InitialData& initial_data,
                                                  const Eos& eos);

Conserved1d conserved_from_primitive(const PrimitiveState& p, const Eos& eos);

/// Pressure of a conserved state through the (e, v) closure.
double pressure_of(const Conserved1d& w, const Eos& eos);

/// |u| + a for a conserved state.
double wave_speed(const Conserved1d& w, const Eos& eos);

FluxVector physical_flux(const Conserved1d& w, const Eos& eos);

/// Local Lax-Friedrichs flux with alpha = max(|u| + a) over both states.
/// Throws NonphysicalState if either pressure is not positive.
FluxVector numerical_flux(const Conserved1d& wL, const Conserved1d& wR, const Eos& eos);

/// Ghost-padded copy of the averages, `layers` cells on each side.
std::vector<Conserved1d> with_ghosts(std::span<const Conserved1d> cells, BoundaryKind boundary,
                                     int layers);

/// Linear reconstructions for cells -1 .. n_cells (one ghost each side), so
/// result[i + 1] belongs to cell i. Slopes are minmod of the one-sided
/// differences, or the central difference for SlopeLimiter::none.
std::vector<CellPolynomial<1>> muscl_reconstruct(const FieldState& field, const Grid1D& grid,
                                                 SlopeLimiter limiter = SlopeLimiter::minmod);

/// One time step of size cfl dx / max(|u| + a), capped at dt_max. After each
/// full step every cell average must lie in the region (with the IRP limiter
/// on) or have rho > 0 and R > 0 (limiter off); otherwise the step is retried
/// with half the step size, up to config.max_halvings times.
FieldState step(const FieldState& field, const SolverConfig& config, const Grid1D& grid,
                const Eos& eos, const InvariantRegion& region, StepDiagnostics* diag = nullptr,
                double dt_max = std::numeric_limits<double>::infinity());

/// Field-wide invariants at the current time (dt, theta stats left at defaults).
StepDiagnostics measure(const FieldState& field, const Grid1D& grid, const Eos& eos);

using SnapshotObserver = std::function<void(const FieldState&)>;

/// Steps to config.t_final, landing exactly on each of `snapshot_times`
/// and handing those states to `observer`. diagnostics[0] describes the
/// initial state.
RunReport run(const SolverConfig& config, const Grid1D& grid, const InitialData& initial_data,
              const Eos& eos, std::span<const double> snapshot_times = {},
              const SnapshotObserver& observer = {});

}  // namespace irp
