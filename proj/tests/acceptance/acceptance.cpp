// Acceptance checks, one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "irp/config.hpp"
#include "irp/eos.hpp"
#include "irp/limiter.hpp"
#include "irp/polytropic.hpp"
#include "irp/region.hpp"
#include "irp/riemann_exact.hpp"
#include "irp/solver.hpp"
#include "irp/tait.hpp"
#include "irp/verification.hpp"

using namespace irp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, double budget_s, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("criterion %d: %s  %s  [%s; %.2f s, budget %.0f s]\n", id, pass ? "PASS" : "FAIL",
              title.c_str(), o.detail.c_str(), secs, budget_s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

TaitParams tait_params(double nu) {
  TaitParams p;
  p.nu = nu;
  return p;
}

std::vector<std::unique_ptr<Eos>> both_models() {
  std::vector<std::unique_ptr<Eos>> out;
  out.push_back(std::make_unique<PolytropicGas>(PolytropicParams{1.4, 1.0}));
  out.push_back(std::make_unique<TaitEos>(tait_params(1.0)));
  out.push_back(std::make_unique<TaitEos>(tait_params(2.0)));
  return out;
}

// Exact cell average of the Sod density by midpoint subsampling.
double l1_density_error_sod(const FieldState& f, const Grid1D& grid, double t) {
  const oracle::GasState L{1.0, 0.0, 1.0};
  const oracle::GasState R{0.125, 0.0, 0.1};
  const int sub = 20;
  double err = 0.0;
  for (int i = 0; i < grid.n_cells; ++i) {
    double exact = 0.0;
    for (int k = 0; k < sub; ++k) {
      const double x = grid.x_min + (i + (k + 0.5) / sub) * grid.dx();
      exact += oracle::exact_riemann_polytropic(L, R, 1.4, (x - 0.5) / t).rho / sub;
    }
    err += std::abs(f.cells[i](0) - exact) * grid.dx();
  }
  return err;
}

struct RunCheck {
  long steps = 0;
  long out_of_region = 0;
  double worst_entropy_drop = 0.0;     ///< largest step-to-step decrease of min s
  double worst_floor_deficit = 0.0;    ///< largest min_s(0) - min_s(t)
  bool boundary_cells_intact = true;
  Eigen::Vector3d max_drift = Eigen::Vector3d::Zero();
};

// Steps a problem by hand so every intermediate field is inspected. Totals
// are compared against the initial totals plus the time-integrated boundary
// fluxes; with transmissive boundaries and untouched boundary cells those
// fluxes are the physical fluxes of the boundary states. Drift is relative to
// max(|initial total|, dx sum |w_k|).
RunCheck checked_run(const SolverConfig& cfg, const Grid1D& grid, const InitialData& ic,
                     const Eos& eos, long max_steps = -1) {
  auto [field, region] = initialize(grid, ic, eos);
  RunCheck rc;
  const StepDiagnostics d0 = measure(field, grid, eos);
  const Conserved1d first = field.cells.front();
  const Conserved1d last = field.cells.back();
  const bool open = grid.boundary == BoundaryKind::transmissive;
  const Eigen::Vector3d boundary_flux =
      open ? Eigen::Vector3d(physical_flux(first, eos) - physical_flux(last, eos)) : Eigen::Vector3d::Zero();
  Eigen::Vector3d inflow = Eigen::Vector3d::Zero();
  double prev_min_s = d0.min_entropy;
  while ((max_steps < 0 && field.time < cfg.t_final) || (max_steps >= 0 && rc.steps < max_steps)) {
    const double dt_max = max_steps < 0 ? cfg.t_final - field.time : HUGE_VAL;
    StepDiagnostics d;
    field = step(field, cfg, grid, eos, region, &d, dt_max);
    ++rc.steps;
    inflow += d.dt * boundary_flux;
    Eigen::Vector3d magnitude = Eigen::Vector3d::Zero();
    for (const auto& w : field.cells) {
      if (!in_invariant_region(w, eos, region)) ++rc.out_of_region;
      magnitude += w.cwiseAbs() * grid.dx();
    }
    if (open && (field.cells.front() != first || field.cells.back() != last)) rc.boundary_cells_intact = false;
    rc.worst_entropy_drop = std::max(rc.worst_entropy_drop, prev_min_s - d.min_entropy);
    rc.worst_floor_deficit = std::max(rc.worst_floor_deficit, d0.min_entropy - d.min_entropy);
    prev_min_s = d.min_entropy;
    for (int k = 0; k < 3; ++k) {
      const double scale = std::max(std::abs(d0.totals(k)), magnitude(k));
      rc.max_drift(k) = std::max(rc.max_drift(k), std::abs(d.totals(k) - d0.totals(k) - inflow(k)) / scale);
    }
  }
  return rc;
}

InitialData smooth_wave() {
  return [](double x) { return PrimitiveState{1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x), 1.0, 1.0}; };
}

}  // namespace

int main() {
  report(1, "polytropic dimensionless quantities", 1.0, [] {
    double worst = 0.0;
    for (double g0 : {1.1, 1.4, 5.0 / 3.0, 3.0}) {
      const PolytropicGas gas({g0, 1.0});
      const double expected[4] = {g0, g0 - 1.0, g0 - 1.0, 0.5 * (g0 + 1.0)};
      for (double s : {-2.0, 0.0, 1.5}) {
        for (double v : {0.1, 1.0, 7.0}) {
          const DimensionlessQuantities d = dimensionless_quantities(gas, {s, v});
          const double got[4] = {d.gamma, d.grueneisen, d.g, d.fundamental_derivative};
          for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(got[k] - expected[k]) / std::abs(expected[k]));
          }
        }
      }
    }
    return Outcome{worst <= 1e-12, fmt("max rel err %.2e (tol 1e-12)", worst)};
  });

  report(2, "convexity criterion on 1e4 admissible samples per model", 5.0, [] {
    long violations = 0;
    long checked = 0;
    for (const auto& eos : both_models()) {
      for (const ThermoState& ts : sample_thermo_states(*eos, 10000, 2)) {
        const DimensionlessQuantities d = dimensionless_quantities(*eos, ts);
        const double P = pressure(*eos, ts);
        const double e = eos->energy(ts);
        const bool ok = d.g >= 0.0 && d.gamma >= 0.0 && d.g * d.gamma >= d.grueneisen * d.grueneisen &&
                        d.fundamental_derivative > 0.0 && P * ts.v / e < 2.0 * d.gamma;
        if (!ok) ++violations;
        ++checked;
      }
    }
    return Outcome{violations == 0,
                   std::to_string(violations) + " violations in " + std::to_string(checked) + " samples"};
  });

  report(3, "closed-form q Hessian minors vs finite differences", 30.0, [] {
    long bad_sign = 0, bad_agree = 0, bad_eig = 0, n = 0;
    double worst_rel = 0.0;
    for (const auto& eos : both_models()) {
      for (const Conserved1d& w : sample_region_states(*eos, 10000, 3)) {
        const RegionCheck c = verify_region_at(w, *eos);
        bad_sign += !c.minors_positive;
        bad_agree += !c.agree;
        bad_eig += !c.eigenvalue_ok;
        worst_rel = std::max(worst_rel, c.rel_error.maxCoeff());
        ++n;
      }
    }
    std::string detail = std::to_string(n) + " states; non-positive " + std::to_string(bad_sign) +
                         ", disagree " + std::to_string(bad_agree) + ", eig " + std::to_string(bad_eig) +
                         fmt(", worst rel %.2e (tol 1e-5)", worst_rel);
    return Outcome{bad_sign == 0 && bad_agree == 0 && bad_eig == 0, detail};
  });

  report(4, "limiter properties on 1e4 cells and L1 order of the limited scheme", 60.0, [] {
    const PolytropicGas gas({1.4, 1.0});
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_u = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };
    long bad_avg = 0, bad_member = 0, bad_distortion = 0, activated = 0;
    for (int c = 0; c < 10000; ++c) {
      const double rho = log_u(0.1, 10.0);
      const double u = -5.0 + 10.0 * unit(rng);
      const double e = log_u(0.1, 10.0);
      CellPolynomial<1> poly;
      poly.average = make_conserved(rho, u, e);
      poly.dx = log_u(1e-3, 1.0);
      for (int k = 0; k < 3; ++k) {
        poly.slope(k) = (2.0 * unit(rng) - 1.0) * 3.0 * std::abs(poly.average(k) + (k == 1 ? rho : 0.0)) / poly.dx;
      }
      InvariantRegion region;
      region.s0 = specific_entropy(poly.average, gas) - log_u(1e-6, 1.0);

      const LimiterOutcome<1> out = apply_irp_limiter(poly, gas, region);
      activated += out.activated;
      const Conserved1d davg = out.limited.average - poly.average;
      if (davg.cwiseAbs().maxCoeff() > 1e-13 * poly.average.cwiseAbs().maxCoeff()) ++bad_avg;
      for (const auto& w : out.limited.test_values()) {
        if (!in_invariant_region(w, gas, region)) ++bad_member;
      }
      const double lhs = limiter_distortion(poly, out.limited);
      const double rhs = (1.0 - out.theta) * oscillation(poly);
      if (std::abs(lhs - rhs) > 1e-13 * std::max(rhs, oscillation(poly))) ++bad_distortion;
    }

    SolverConfig cfg;
    cfg.order = SchemeOrder::second;
    cfg.slope_limiter = SlopeLimiter::none;
    cfg.cfl = 0.4;
    cfg.t_final = 0.5;
    std::vector<double> logn, loge;
    double min_theta = 1.0;
    std::string errs;
    for (int n : {32, 64, 128, 256}) {
      Grid1D grid{n, 0.0, 1.0, BoundaryKind::periodic};
      const RunReport r = run(cfg, grid, smooth_wave(), gas);
      for (const auto& d : r.diagnostics) min_theta = std::min(min_theta, d.min_theta);
      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        const double a = grid.x_min + i * grid.dx() - cfg.t_final;
        const double b = a + grid.dx();
        const double exact =
            1.0 + 0.2 * (std::cos(2.0 * std::numbers::pi * a) - std::cos(2.0 * std::numbers::pi * b)) /
                      (2.0 * std::numbers::pi * grid.dx());
        err += std::abs(r.final_state.cells[i](0) - exact) * grid.dx();
      }
      logn.push_back(std::log(static_cast<double>(n)));
      loge.push_back(std::log(err));
      errs += fmt(" %.3e", err);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
      mx += logn[i] / logn.size();
      my += loge[i] / loge.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
      sxy += (logn[i] - mx) * (loge[i] - my);
      sxx += (logn[i] - mx) * (logn[i] - mx);
    }
    const double order = -sxy / sxx;
    const double finest = (loge[2] - loge[3]) / std::log(2.0);

    std::string detail = "avg " + std::to_string(bad_avg) + ", membership " + std::to_string(bad_member) +
                         ", distortion " + std::to_string(bad_distortion) + " failures; " +
                         std::to_string(activated) + " cells limited; L1 errors" + errs +
                         fmt(", fitted order %.3f", order) + fmt(", finest-pair order %.3f", finest) +
                         fmt(", min theta %.3f", min_theta);
    return Outcome{bad_avg == 0 && bad_member == 0 && bad_distortion == 0 && order >= 1.9 && finest >= 1.9,
                   detail};
  });

  report(5, "minimum entropy principle and region membership every step", 30.0, [] {
    const PolytropicGas gas({1.4, 1.0});
    SolverConfig cfg;
    cfg.order = SchemeOrder::second;
    cfg.cfl = 0.5;
    std::string detail;
    bool ok = true;
    struct Case {
      const char* name;
      double t;
    };
    for (const Case& c : {Case{"sod", 0.2}, Case{"double_shock", 0.035}}) {
      cfg.t_final = c.t;
      const Grid1D grid{400, 0.0, 1.0, BoundaryKind::transmissive};
      const RunCheck rc = checked_run(cfg, grid, make_initial_data(*riemann_preset(c.name)), gas);
      ok = ok && rc.out_of_region == 0 && rc.worst_entropy_drop <= 1e-10;
      detail += std::string(c.name) + ": " + std::to_string(rc.steps) + " steps, " +
                std::to_string(rc.out_of_region) + " states outside" +
                fmt(", worst min-entropy drop %.2e; ", rc.worst_entropy_drop);
    }
    return Outcome{ok, detail + "(tol 1e-10)"};
  });

  report(6, "Sod L1 density error vs exact solution", 30.0, [] {
    const PolytropicGas gas({1.4, 1.0});
    const Grid1D grid{400, 0.0, 1.0, BoundaryKind::transmissive};
    const InitialData ic = make_initial_data(*riemann_preset("sod"));
    SolverConfig cfg;
    cfg.t_final = 0.2;
    cfg.order = SchemeOrder::first;
    cfg.cfl = 0.5;
    const double e1 = l1_density_error_sod(run(cfg, grid, ic, gas).final_state, grid, 0.2);
    cfg.order = SchemeOrder::second;
    const double e2 = l1_density_error_sod(run(cfg, grid, ic, gas).final_state, grid, 0.2);
    return Outcome{e1 < 0.02 && e2 < e1,
                   fmt("first-order %.4e (tol 0.02)", e1) + fmt(", second-order %.4e", e2)};
  });

  report(7, "conservation over 1000 periodic steps", 30.0, [] {
    const PolytropicGas gas({1.4, 1.0});
    const Grid1D grid{200, 0.0, 1.0, BoundaryKind::periodic};
    double worst = 0.0;
    std::string detail;
    for (SchemeOrder order : {SchemeOrder::first, SchemeOrder::second}) {
      SolverConfig cfg;
      cfg.order = order;
      cfg.t_final = HUGE_VAL;
      const RunCheck rc = checked_run(cfg, grid, smooth_wave(), gas, 1000);
      worst = std::max(worst, rc.max_drift.maxCoeff());
      detail += std::string(order == SchemeOrder::first ? "first" : "second") +
                fmt(" drift %.2e; ", rc.max_drift.maxCoeff());
    }
    return Outcome{worst < 1e-12, detail + "(tol 1e-12)"};
  });

  report(8, "Tait Riemann problem: membership, entropy floor, conservation", 30.0, [] {
    bool ok = true;
    std::string detail;
    const InitialData ic = make_initial_data(*riemann_preset("tait_shock"));
    for (double nu : {1.0, 2.0}) {
      const TaitEos tait(tait_params(nu));
      SolverConfig cfg;
      // Open tube, stopped before the waves reach the ends.
      cfg.t_final = 0.05;
      const RunCheck open = checked_run(cfg, {400, 0.0, 1.0, BoundaryKind::transmissive}, ic, tait);
      // Periodic tube, run through the wave interactions.
      cfg.t_final = 0.1;
      const RunCheck closed = checked_run(cfg, {400, 0.0, 1.0, BoundaryKind::periodic}, ic, tait);
      const double drift = std::max(open.max_drift.maxCoeff(), closed.max_drift.maxCoeff());
      ok = ok && open.boundary_cells_intact && open.out_of_region == 0 && closed.out_of_region == 0 &&
           open.worst_entropy_drop <= 1e-10 && closed.worst_floor_deficit <= 1e-10 && drift < 1e-12;
      detail += fmt("nu=%g: ", nu) + std::to_string(open.steps + closed.steps) + " steps, " +
                std::to_string(open.out_of_region + closed.out_of_region) + " outside" +
                fmt(", open-tube min-entropy drop %.2e", open.worst_entropy_drop) +
                fmt(", periodic floor deficit %.2e", closed.worst_floor_deficit) +
                fmt(", drift %.2e; ", drift);
    }
    return Outcome{ok, detail + "(tol 1e-10, 1e-12)"};
  });

  report(9, "entropy inversion: closed form vs Newton", 5.0, [] {
    double worst = 0.0;
    long n = 0;
    for (const auto& eos : both_models()) {
      const double s_ref = eos->reference_scales().s;
      for (const ThermoState& ts : sample_thermo_states(*eos, 10000, 9)) {
        const double e = eos->energy(ts);
        const double closed = eos->entropy_from_ev(e, ts.v);
        const double newton = generic_entropy_from_ev(*eos, e, ts.v).s;
        const double scale = std::max(std::abs(closed), s_ref);
        worst = std::max(worst, std::abs(closed - newton) / scale);
        worst = std::max(worst, std::abs(closed - ts.s) / scale);
        ++n;
      }
    }
    return Outcome{worst <= 1e-11, std::to_string(n) + fmt(" samples, max rel diff %.2e (tol 1e-11)", worst)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
