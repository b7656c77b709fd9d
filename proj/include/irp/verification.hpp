#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "irp/eos.hpp"
#include "irp/region.hpp"
#include "irp/state.hpp"

namespace irp {

/// Rectangle in the (s, v) plane swept by eos-check.
struct PhaseBox {
  double s_min = -3.0;
  double s_max = 3.0;
  double v_min = 0.05;
  double v_max = 20.0;
};

/// Polytropic: s in [-3, 3], v in [0.05, 20]. Tait: v in [0.5, 2] v_r and
/// s spanning theta in [0.05, 10] theta_r at v = v_r.
PhaseBox default_phase_box(const Eos& eos);

/// `n` admissible (s, v) states drawn deterministically from `seed`.
/// Polytropic states are uniform in s and log-uniform in v over the default
/// box. Tait states are uniform in v and log-uniform in temperature, with
/// P <= 0 rejected.
std::vector<ThermoState> sample_thermo_states(const Eos& eos, int n, std::uint64_t seed);

/// `n` conserved states with rho log-uniform in [0.01, 100], u uniform in
/// [-10, 10] and e > 0. Polytropic e is log-uniform in [0.01, 100]; Tait
/// states take a log-uniform temperature in [0.05, 10] theta_r.
std::vector<Conserved1d> sample_region_states(const Eos& eos, int n, std::uint64_t seed);

struct RegionCheck {
  HessianMinors closed;
  Eigen::Vector3d fd_minors = Eigen::Vector3d::Zero();
  Eigen::Vector3d rel_error = Eigen::Vector3d::Zero();
  double fd_min_eigenvalue = 0.0;
  double fd_scale = 0.0;  ///< max |H_ij|
  bool minors_positive = false;
  bool agree = false;
  bool eigenvalue_ok = false;

  bool ok() const { return minors_positive && agree && eigenvalue_ok; }
};

/// Closed-form minors of the Hessian of q against a finite-difference
/// Hessian of -rho s(w). Agreement is relative, per minor, within `rel_tol`;
/// the FD eigenvalue check allows -1e-8 max |H_ij|.
RegionCheck verify_region_at(const Conserved1d& w, const Eos& eos, double h = 3e-2,
                             double rel_tol = 1e-5);

}  // namespace irp
