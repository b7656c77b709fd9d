#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"

#include "irp/config.hpp"
#include "irp/errors.hpp"
#include "irp/format.hpp"
#include "irp/io.hpp"
#include "irp/riemann_exact.hpp"
#include "irp/solver.hpp"
#include "irp/verification.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kConfigExit = 1;
constexpr int kRuntimeExit = 2;

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + '"';
}

std::string error_type(const irp::Error& e) {
  using namespace irp;
  if (dynamic_cast<const StepFailure*>(&e)) return "StepFailure";
  if (dynamic_cast<const MaxStepsExceeded*>(&e)) return "MaxStepsExceeded";
  if (dynamic_cast<const InadmissibleInitialData*>(&e)) return "InadmissibleInitialData";
  if (dynamic_cast<const VacuumFormation*>(&e)) return "VacuumFormation";
  if (dynamic_cast<const AverageOutsideRegion*>(&e)) return "AverageOutsideRegion";
  if (dynamic_cast<const NoPhysicalRoot*>(&e)) return "NoPhysicalRoot";
  if (dynamic_cast<const InversionFailure*>(&e)) return "InversionFailure";
  if (dynamic_cast<const NonphysicalState*>(&e)) return "NonphysicalState";
  if (dynamic_cast<const NonhyperbolicState*>(&e)) return "NonhyperbolicState";
  if (dynamic_cast<const DivisionByZero*>(&e)) return "DivisionByZero";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  return "Error";
}

int config_failure(const std::string& key, std::string_view message) {
  std::cerr << "error kind=config key=" << (key.empty() ? "-" : key) << " msg=" << quoted(message)
            << '\n';
  return kConfigExit;
}

int runtime_failure(const std::string& type, std::string_view message) {
  std::cerr << "error kind=runtime type=" << type << " msg=" << quoted(message) << '\n';
  return kRuntimeExit;
}

struct Paths {
  fs::path directory;
  std::string prefix;
};

Paths output_paths(const irp::RunConfig& cfg, const fs::path& config_path) {
  Paths p{".", config_path.stem().string()};
  if (cfg.output) {
    p.directory = cfg.output->directory;
    if (!cfg.output->prefix.empty()) p.prefix = cfg.output->prefix;
  }
  return p;
}

std::string flag(bool b) { return b ? "1" : "0"; }

int cmd_solve(const fs::path& config_path) {
  const irp::RunConfig cfg = irp::load_config(config_path);
  const auto eos = irp::make_eos(cfg.require_eos());
  const irp::Grid1D& grid = cfg.require_grid();
  const irp::SolverConfig& solver = cfg.require_solver();
  const irp::InitialData initial = irp::make_initial_data(cfg.require_initial_condition());
  const Paths out = output_paths(cfg, config_path);

  std::vector<double> times = cfg.output ? cfg.output->times : std::vector<double>{};
  if (times.empty()) times.push_back(solver.t_final);
  for (double t : times) {
    if (!(t > 0.0) || t > solver.t_final) {
      return config_failure("output.times", "snapshot times must lie in (0, solver.t_final]");
    }
  }

  // The region is fixed by the initial data, so it is known before the first snapshot.
  const irp::InvariantRegion region = irp::initialize(grid, initial, *eos).second;
  std::vector<fs::path> written;
  auto observer = [&](const irp::FieldState& field) {
    const fs::path path = out.directory / irp::snapshot_filename(out.prefix, field.time);
    irp::write_snapshot(field, grid, *eos, region, path);
    written.push_back(path);
  };
  const irp::RunReport report = irp::run(solver, grid, initial, *eos, times, observer);
  const fs::path diag = out.directory / irp::diagnostics_filename(out.prefix);
  irp::write_diagnostics(report.diagnostics, diag);
  written.push_back(diag);

  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "steps " << report.final_state.step << " time "
            << irp::format_real(report.final_state.time) << " s0 "
            << irp::format_real(report.region.s0) << '\n';
  for (const auto& p : written) std::cout << "wrote " << p.string() << '\n';
  return 0;
}

int cmd_eos_check(const fs::path& config_path) {
  const irp::RunConfig cfg = irp::load_config(config_path);
  const auto eos = irp::make_eos(cfg.require_eos());
  const Paths out = output_paths(cfg, config_path);

  irp::PhaseBox box = irp::default_phase_box(*eos);
  irp::SweepConfig sweep = cfg.sweep.value_or(irp::SweepConfig{});
  box.s_min = sweep.s_min.value_or(box.s_min);
  box.s_max = sweep.s_max.value_or(box.s_max);
  box.v_min = sweep.v_min.value_or(box.v_min);
  box.v_max = sweep.v_max.value_or(box.v_max);
  if (!(box.s_min < box.s_max)) return config_failure("sweep.s_max", "must exceed sweep.s_min");
  if (!(box.v_min > 0.0)) return config_failure("sweep.v_min", "must be positive");
  if (!(box.v_min < box.v_max)) return config_failure("sweep.v_max", "must exceed sweep.v_min");

  std::vector<std::vector<std::string>> rows;
  long skipped = 0;
  long convexity_failures = 0;
  long other_failures = 0;
  for (int i = 0; i < sweep.n_s; ++i) {
    const double s =
        sweep.n_s == 1 ? box.s_min : box.s_min + (box.s_max - box.s_min) * i / (sweep.n_s - 1);
    for (int j = 0; j < sweep.n_v; ++j) {
      const double v = sweep.n_v == 1
                           ? box.v_min
                           : box.v_min * std::pow(box.v_max / box.v_min,
                                                  static_cast<double>(j) / (sweep.n_v - 1));
      const irp::ThermoState ts{s, v};
      if (!eos->admissible(ts)) {
        ++skipped;
        continue;
      }
      irp::StabilityReport r;
      try {
        r = irp::check_thermo_stability(*eos, ts);
      } catch (const irp::Error&) {
        ++skipped;
        continue;
      }
      if (!r.convexity_ok) ++convexity_failures;
      if (!(r.hyperbolic_ok && r.genuinely_nonlinear_ok && r.pve_bound_ok &&
            r.temperature_positive)) {
        ++other_failures;
      }
      rows.push_back({irp::format_real(s), irp::format_real(v), irp::format_real(r.gamma),
                      irp::format_real(r.grueneisen), irp::format_real(r.g),
                      irp::format_real(r.fundamental_derivative), flag(r.convexity_ok),
                      flag(r.hyperbolic_ok), flag(r.genuinely_nonlinear_ok), flag(r.pve_bound_ok),
                      flag(r.temperature_positive)});
    }
  }
  const fs::path path = out.directory / (out.prefix + "_eos_check.csv");
  irp::write_csv(path,
                 {"s", "v", "gamma", "grueneisen", "g", "fundamental_derivative", "convexity_ok",
                  "hyperbolic_ok", "genuinely_nonlinear_ok", "pve_bound_ok",
                  "temperature_positive"},
                 rows);
  std::cout << "states " << rows.size() << " skipped " << skipped << " convexity_failures "
            << convexity_failures << " other_failures " << other_failures << '\n';
  std::cout << "wrote " << path.string() << '\n';
  return 0;
}

int cmd_verify_region(const fs::path& config_path) {
  const irp::RunConfig cfg = irp::load_config(config_path);
  const auto eos = irp::make_eos(cfg.require_eos());
  const Paths out = output_paths(cfg, config_path);
  const irp::VerifyConfig vc = cfg.verify.value_or(irp::VerifyConfig{});

  const auto states = irp::sample_region_states(*eos, vc.samples, vc.seed);
  std::vector<std::vector<std::string>> rows;
  long failures = 0;
  double worst = 0.0;
  for (const auto& w : states) {
    const irp::RegionCheck c = irp::verify_region_at(w, *eos, vc.h);
    if (!c.ok()) ++failures;
    worst = std::max(worst, c.rel_error.maxCoeff());
    const double rho = w(0);
    const double u = w(1) / rho;
    const double e = w(2) / rho - 0.5 * u * u;
    rows.push_back({irp::format_real(rho), irp::format_real(u), irp::format_real(e),
                    irp::format_real(c.closed.q_rr), irp::format_real(c.closed.A),
                    irp::format_real(c.closed.B), irp::format_real(c.fd_minors(0)),
                    irp::format_real(c.fd_minors(1)), irp::format_real(c.fd_minors(2)),
                    irp::format_real(c.rel_error(0)), irp::format_real(c.rel_error(1)),
                    irp::format_real(c.rel_error(2)), irp::format_real(c.fd_min_eigenvalue),
                    flag(c.ok())});
  }
  const fs::path path = out.directory / (out.prefix + "_verify_region.csv");
  irp::write_csv(path,
                 {"rho", "u", "e", "q_rr", "A", "B", "fd_q_rr", "fd_A", "fd_B", "rel_q_rr",
                  "rel_A", "rel_B", "fd_min_eigenvalue", "ok"},
                 rows);
  std::cout << "states " << rows.size() << " failures " << failures << " worst_rel_error "
            << irp::format_real(worst) << '\n';
  std::cout << "wrote " << path.string() << '\n';
  if (failures > 0) {
    return runtime_failure("VerificationFailure",
                           std::to_string(failures) + " of " + std::to_string(rows.size()) +
                               " states failed the region check");
  }
  return 0;
}

struct RiemannArgs {
  std::vector<double> left{1.0, 0.0, 1.0};
  std::vector<double> right{0.125, 0.0, 0.1};
  double gamma = 1.4;
  double t = 0.2;
  double x0 = 0.5;
  int n = 400;
  std::vector<double> range{0.0, 1.0};
  std::string output = "-";
};

int cmd_riemann_exact(const RiemannArgs& a) {
  if (!(a.gamma > 1.0)) return config_failure("gamma", "must exceed 1");
  if (!(a.t > 0.0)) return config_failure("t", "must be positive");
  if (a.n < 1) return config_failure("n", "must be at least 1");
  if (!(a.range[0] < a.range[1])) return config_failure("range", "must be increasing");
  const irp::oracle::GasState L{a.left[0], a.left[1], a.left[2]};
  const irp::oracle::GasState R{a.right[0], a.right[1], a.right[2]};
  if (!(L.rho > 0.0 && L.p > 0.0)) return config_failure("left", "rho and p must be positive");
  if (!(R.rho > 0.0 && R.p > 0.0)) return config_failure("right", "rho and p must be positive");

  const double dx = (a.range[1] - a.range[0]) / a.n;
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < a.n; ++i) {
    const double x = a.range[0] + (i + 0.5) * dx;
    const auto g = irp::oracle::exact_riemann_polytropic(L, R, a.gamma, (x - a.x0) / a.t);
    rows.push_back({irp::format_real(x), irp::format_real(g.rho), irp::format_real(g.u),
                    irp::format_real(g.p)});
  }
  const std::vector<std::string> header{"x", "rho", "u", "P"};
  if (a.output == "-") {
    auto join = [](const std::vector<std::string>& r) {
      std::string line;
      for (std::size_t k = 0; k < r.size(); ++k) line += (k ? "," : "") + r[k];
      return line;
    };
    std::cout << join(header) << '\n';
    for (const auto& r : rows) std::cout << join(r) << '\n';
  } else {
    irp::write_csv(a.output, header, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume Euler solver with an invariant-region-preserving limiter"};
  app.require_subcommand(1);

  std::string config;
  auto* solve = app.add_subcommand("solve", "run a configuration, write snapshots and diagnostics");
  solve->add_option("config", config, "configuration file")->required();
  auto* eos_check = app.add_subcommand("eos-check", "sweep an (s, v) box and report stability");
  eos_check->add_option("config", config, "configuration file")->required();
  auto* verify = app.add_subcommand("verify-region",
                                    "compare closed-form Hessian minors of q with finite differences");
  verify->add_option("config", config, "configuration file")->required();

  RiemannArgs ra;
  auto* riemann = app.add_subcommand("riemann-exact", "exact polytropic Riemann solution profile");
  riemann->add_option("--left", ra.left, "left state rho u p")->expected(3)->delimiter(',');
  riemann->add_option("--right", ra.right, "right state rho u p")->expected(3)->delimiter(',');
  riemann->add_option("--gamma", ra.gamma, "polytropic exponent")->capture_default_str();
  riemann->add_option("--t", ra.t, "sample time")->capture_default_str();
  riemann->add_option("--x0", ra.x0, "interface position")->capture_default_str();
  riemann->add_option("--n", ra.n, "number of sample points")->capture_default_str();
  riemann->add_option("--range", ra.range, "x interval")->expected(2)->delimiter(',');
  riemann->add_option("-o,--output", ra.output, "CSV file, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return config_failure("-", e.what());
  }

  try {
    if (*solve) return cmd_solve(config);
    if (*eos_check) return cmd_eos_check(config);
    if (*verify) return cmd_verify_region(config);
    return cmd_riemann_exact(ra);
  } catch (const irp::ConfigError& e) {
    std::string msg = e.what();
    if (!e.key().empty() && msg.rfind(e.key() + ": ", 0) == 0) msg.erase(0, e.key().size() + 2);
    return config_failure(e.key(), msg);
  } catch (const irp::Error& e) {
    return runtime_failure(error_type(e), e.what());
  } catch (const std::exception& e) {
    return runtime_failure("std::exception", e.what());
  }
}
