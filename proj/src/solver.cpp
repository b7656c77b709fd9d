#include "irp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "irp/errors.hpp"

namespace irp {

namespace {

// Gauss-Legendre, 3 points on [-1/2, 1/2].
constexpr double kGaussOffset = 0.38729833462074168852;  // sqrt(3/5) / 2
constexpr std::array<double, 3> kGaussNodes{-kGaussOffset, 0.0, kGaussOffset};
constexpr std::array<double, 3> kGaussWeights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

// Relative margin between the initial entropy minimum and s0, so that states
// exactly at the minimum (uniform or isentropic regions) stay members under
// rounding.
constexpr double kEntropyFloorMargin = 1e-12;

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + c; }
};

struct StageStats {
  double min_theta = 1.0;
  long limited = 0;
  long applied = 0;
  long violations = 0;
};

std::vector<CellPolynomial<1>> reconstruct(std::span<const Conserved1d> cells, const Grid1D& grid,
                                           SlopeLimiter limiter) {
  const int n = static_cast<int>(cells.size());
  const std::vector<Conserved1d> padded = with_ghosts(cells, grid.boundary, 2);
  const double dx = grid.dx();
  std::vector<CellPolynomial<1>> polys(n + 2);
  for (int i = -1; i <= n; ++i) {
    const Conserved1d& wm = padded[i + 1];
    const Conserved1d& w0 = padded[i + 2];
    const Conserved1d& wp = padded[i + 3];
    CellPolynomial<1>& p = polys[i + 1];
    p.average = w0;
    p.dx = dx;
    for (int k = 0; k < 3; ++k) {
      const double back = w0(k) - wm(k);
      const double fwd = wp(k) - w0(k);
      const double delta = limiter == SlopeLimiter::minmod ? minmod(back, fwd) : 0.5 * (back + fwd);
      p.slope(k) = delta / dx;
    }
  }
  return polys;
}

// -(F_{i+1/2} - F_{i-1/2}) / dx for every cell.
std::vector<Conserved1d> residual(std::span<const Conserved1d> cells, const SolverConfig& config,
                                  const Grid1D& grid, const Eos& eos, const InvariantRegion& region,
                                  StageStats& stats) {
  const int n = static_cast<int>(cells.size());
  std::vector<Conserved1d> left_states(n + 1);
  std::vector<Conserved1d> right_states(n + 1);

  if (config.order == SchemeOrder::first) {
    const std::vector<Conserved1d> padded = with_ghosts(cells, grid.boundary, 1);
    for (int j = 0; j <= n; ++j) {
      left_states[j] = padded[j];
      right_states[j] = padded[j + 1];
    }
  } else {
    std::vector<CellPolynomial<1>> polys = reconstruct(cells, grid, config.slope_limiter);
    if (config.irp_enabled) {
      for (int i = 0; i < n + 2; ++i) {
        const LimiterOutcome<1> out = apply_irp_limiter(polys[i], eos, region);
        polys[i] = out.limited;
        const bool interior = i >= 1 && i <= n;
        if (!interior) continue;
        ++stats.applied;
        stats.min_theta = std::min(stats.min_theta, out.theta);
        if (out.activated) ++stats.limited;
        if (config.check_interfaces) {
          for (const auto& w : out.limited.test_values()) {
            if (!in_invariant_region(w, eos, region)) ++stats.violations;
          }
        }
      }
    }
    for (int j = 0; j <= n; ++j) {
      left_states[j] = polys[j].right();
      right_states[j] = polys[j + 1].left();
    }
  }

  std::vector<FluxVector> flux(n + 1);
  for (int j = 0; j <= n; ++j) flux[j] = numerical_flux(left_states[j], right_states[j], eos);

  const double inv_dx = 1.0 / grid.dx();
  std::vector<Conserved1d> dw(n);
  for (int i = 0; i < n; ++i) dw[i] = -(flux[i + 1] - flux[i]) * inv_dx;
  return dw;
}

// Empty string when all averages are acceptable.
std::string check_averages(std::span<const Conserved1d> cells, const SolverConfig& config,
                           const Eos& eos, const InvariantRegion& region) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Conserved1d& w = cells[i];
    if (config.irp_enabled) {
      const Membership m = in_invariant_region(w, eos, region);
      if (!m) return "cell " + std::to_string(i) + " violates " + std::string(to_string(m.violated));
    } else {
      const double rho = density(w);
      if (!(rho > 0.0) || !(total_energy(w) - momentum(w).squaredNorm() / (2.0 * rho) > 0.0)) {
        return "cell " + std::to_string(i) + " has non-positive density or internal energy";
      }
    }
  }
  return {};
}

}  // namespace

void Grid1D::validate() const {
  if (n_cells < 1) throw ConfigError("grid.n_cells", "must be a positive integer");
  if (!(x_max > x_min)) throw ConfigError("grid.x_max", "must exceed grid.x_min");
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("solver.cfl", "must lie in (0, 1]");
  if (order == SchemeOrder::second && cfl > 0.9) {
    throw ConfigError("solver.cfl", "must not exceed 0.9 for the second-order scheme");
  }
  if (!(t_final > 0.0)) throw ConfigError("solver.t_final", "must be positive");
  if (max_steps < 1) throw ConfigError("solver.max_steps", "must be a positive integer");
  if (max_halvings < 0) throw ConfigError("solver.max_halvings", "must be non-negative");
}

Conserved1d conserved_from_primitive(const PrimitiveState& p, const Eos& eos) {
  if (!(p.rho > 0.0)) throw DomainError("density must be positive");
  if (!(p.p > 0.0)) throw DomainError("pressure must be positive");
  const double v = 1.0 / p.rho;
  const double s = eos.entropy_from_pv(p.p, v);
  const double e = eos.energy({s, v});
  return make_conserved(p.rho, p.u, e);
}

double pressure_of(const Conserved1d& w, const Eos& eos) {
  const auto prim = primitives(w);
  return pressure_from_ev(eos, prim.e, prim.v);
}

double wave_speed(const Conserved1d& w, const Eos& eos) {
  const auto prim = primitives(w);
  const double s = eos.entropy_from_ev(prim.e, prim.v);
  return std::abs(prim.velocity(0)) + sound_speed(eos, {s, prim.v});
}

FluxVector physical_flux(const Conserved1d& w, const Eos& eos) {
  const double rho = density(w);
  const double m = w(1);
  const double E = total_energy(w);
  const double u = m / rho;
  const double p = pressure_of(w, eos);
  return {m, m * u + p, (E + p) * u};
}

FluxVector numerical_flux(const Conserved1d& wL, const Conserved1d& wR, const Eos& eos) {
  try {
    const double alpha = std::max(wave_speed(wL, eos), wave_speed(wR, eos));
    return 0.5 * (physical_flux(wL, eos) + physical_flux(wR, eos)) - 0.5 * alpha * (wR - wL);
  } catch (const DomainError& e) {
    throw NonphysicalState(std::string("numerical flux: no pressure for interface state: ") +
                           e.what());
  } catch (const InversionFailure& e) {
    throw NonphysicalState(std::string("numerical flux: no pressure for interface state: ") +
                           e.what());
  }
}

std::vector<Conserved1d> with_ghosts(std::span<const Conserved1d> cells, BoundaryKind boundary,
                                     int layers) {
  const int n = static_cast<int>(cells.size());
  std::vector<Conserved1d> out(n + 2 * layers);
  std::copy(cells.begin(), cells.end(), out.begin() + layers);
  for (int g = 0; g < layers; ++g) {
    Conserved1d& lo = out[layers - 1 - g];
    Conserved1d& hi = out[layers + n + g];
    switch (boundary) {
      case BoundaryKind::periodic:
        lo = cells[((n - 1 - g) % n + n) % n];
        hi = cells[g % n];
        break;
      case BoundaryKind::transmissive:
        lo = cells[0];
        hi = cells[n - 1];
        break;
      case BoundaryKind::reflective:
        lo = cells[std::min(g, n - 1)];
        hi = cells[std::max(n - 1 - g, 0)];
        lo(1) = -lo(1);
        hi(1) = -hi(1);
        break;
    }
  }
  return out;
}

std::vector<CellPolynomial<1>> muscl_reconstruct(const FieldState& field, const Grid1D& grid,
                                                 SlopeLimiter limiter) {
  return reconstruct(field.cells, grid, limiter);
}

std::pair<FieldState, InvariantRegion> initialize(const Grid1D& grid, const InitialData& initial_data,
                                                  const Eos& eos) {
  grid.validate();
  FieldState field;
  field.cells.resize(grid.n_cells);
  double s0 = std::numeric_limits<double>::infinity();
  const double dx = grid.dx();
  for (int i = 0; i < grid.n_cells; ++i) {
    Conserved1d avg = Conserved1d::Zero();
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
      const double x = grid.center(i) + kGaussNodes[k] * dx;
      const PrimitiveState p = initial_data(x);
      Conserved1d w;
      double s;
      try {
        w = conserved_from_primitive(p, eos);
        s = eos.entropy_from_pv(p.p, 1.0 / p.rho);
      } catch (const Error& err) {
        std::ostringstream msg;
        msg << "initial data inadmissible at x=" << x << ": " << err.what();
        throw InadmissibleInitialData(msg.str());
      }
      s0 = std::min(s0, s);
      avg += kGaussWeights[k] * w;
    }
    field.cells[i] = avg;
  }
  // The scheme evolves the projected data, so its entropies bound s0 too.
  for (int i = 0; i < grid.n_cells; ++i) {
    try {
      s0 = std::min(s0, specific_entropy(field.cells[i], eos));
    } catch (const Error& err) {
      std::ostringstream msg;
      msg << "initial cell average inadmissible at x=" << grid.center(i) << ": " << err.what();
      throw InadmissibleInitialData(msg.str());
    }
  }
  InvariantRegion region;
  region.s0 = s0 - kEntropyFloorMargin * (std::abs(s0) + eos.reference_scales().s);
  return {std::move(field), region};
}

StepDiagnostics measure(const FieldState& field, const Grid1D& grid, const Eos& eos) {
  StepDiagnostics d;
  d.step = field.step;
  d.time = field.time;
  d.min_entropy = std::numeric_limits<double>::infinity();
  d.min_rho = std::numeric_limits<double>::infinity();
  d.min_R = std::numeric_limits<double>::infinity();
  d.min_fundamental_derivative = std::numeric_limits<double>::infinity();
  std::array<CompensatedSum, 3> totals;
  for (const Conserved1d& w : field.cells) {
    d.min_rho = std::min(d.min_rho, density(w));
    d.min_R = std::min(d.min_R, internal_energy_density(w));
    const auto prim = primitives(w);
    const double s = eos.entropy_from_ev(prim.e, prim.v);
    d.min_entropy = std::min(d.min_entropy, s);
    const EnergyDerivatives der = eos.derivatives({s, prim.v});
    d.min_fundamental_derivative =
        std::min(d.min_fundamental_derivative, -0.5 * prim.v * der.F_vvv / der.F_vv);
    for (int k = 0; k < 3; ++k) totals[k].add(w(k));
  }
  for (int k = 0; k < 3; ++k) d.totals(k) = grid.dx() * totals[k].value();
  return d;
}

FieldState step(const FieldState& field, const SolverConfig& config, const Grid1D& grid,
                const Eos& eos, const InvariantRegion& region, StepDiagnostics* diag,
                double dt_max) {
  const int n = static_cast<int>(field.cells.size());
  double max_speed = 0.0;
  for (const Conserved1d& w : field.cells) max_speed = std::max(max_speed, wave_speed(w, eos));
  const double dt_cfl = config.cfl * grid.dx() / max_speed;
  const double dt0 = std::min(dt_cfl, dt_max);

  std::string last_failure;
  for (int attempt = 0; attempt <= config.max_halvings; ++attempt) {
    const double dt = std::ldexp(dt0, -attempt);
    StageStats stats;
    FieldState next;
    try {
      std::vector<Conserved1d> dw = residual(field.cells, config, grid, eos, region, stats);
      std::vector<Conserved1d> stage(n);
      for (int i = 0; i < n; ++i) stage[i] = field.cells[i] + dt * dw[i];

      if (config.order == SchemeOrder::second) {
        last_failure = check_averages(stage, config, eos, region);
        if (!last_failure.empty()) continue;
        dw = residual(stage, config, grid, eos, region, stats);
        for (int i = 0; i < n; ++i) {
          stage[i] = 0.5 * field.cells[i] + 0.5 * (stage[i] + dt * dw[i]);
        }
      }
      last_failure = check_averages(stage, config, eos, region);
      if (!last_failure.empty()) continue;
      next.cells = std::move(stage);
    } catch (const AverageOutsideRegion& e) {
      last_failure = e.what();
      continue;
    } catch (const NonphysicalState& e) {
      last_failure = e.what();
      continue;
    } catch (const NonhyperbolicState& e) {
      last_failure = e.what();
      continue;
    } catch (const InversionFailure& e) {
      last_failure = e.what();
      continue;
    } catch (const DomainError& e) {
      last_failure = e.what();
      continue;
    }

    next.step = field.step + 1;
    next.time = dt == dt_max ? field.time + dt_max : field.time + dt;
    if (diag != nullptr) {
      *diag = measure(next, grid, eos);
      diag->dt = dt;
      diag->rejections = attempt;
      diag->min_theta = stats.min_theta;
      diag->limited_fraction =
          stats.applied > 0 ? static_cast<double>(stats.limited) / static_cast<double>(stats.applied)
                            : 0.0;
      diag->interface_violations = stats.violations;
    }
    return next;
  }
  std::ostringstream msg;
  msg << "step " << field.step + 1 << " at t=" << field.time << " failed after "
      << config.max_halvings << " halvings: " << last_failure;
  throw StepFailure(msg.str());
}

RunReport run(const SolverConfig& config, const Grid1D& grid, const InitialData& initial_data,
              const Eos& eos, std::span<const double> snapshot_times,
              const SnapshotObserver& observer) {
  config.validate();
  auto [field, region] = initialize(grid, initial_data, eos);

  std::vector<double> snaps(snapshot_times.begin(), snapshot_times.end());
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::remove_if(snaps.begin(), snaps.end(),
                             [&](double t) { return t < 0.0 || t > config.t_final; }),
              snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  std::size_t next_snap = 0;
  if (next_snap < snaps.size() && snaps[next_snap] == 0.0) {
    if (observer) observer(field);
    ++next_snap;
  }

  RunReport report;
  report.region = region;
  report.diagnostics.push_back(measure(field, grid, eos));
  bool warned_G = false;

  while (field.time < config.t_final) {
    if (field.step >= config.max_steps) {
      throw MaxStepsExceeded("reached max_steps=" + std::to_string(config.max_steps) +
                             " at t=" + std::to_string(field.time));
    }
    const double target = next_snap < snaps.size() ? snaps[next_snap] : config.t_final;
    StepDiagnostics d;
    field = step(field, config, grid, eos, region, &d, target - field.time);
    if (field.time >= target) field.time = target;
    d.time = field.time;
    report.diagnostics.push_back(d);
    if (d.min_fundamental_derivative <= 0.0 && !warned_G) {
      report.warnings.push_back("fundamental derivative <= 0 at step " + std::to_string(d.step));
      warned_G = true;
    }
    if (next_snap < snaps.size() && field.time == snaps[next_snap]) {
      if (observer) observer(field);
      ++next_snap;
    }
  }
  report.final_state = std::move(field);
  return report;
}

}  // namespace irp
