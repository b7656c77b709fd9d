#include "irp/verification.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "irp/fd_hessian.hpp"
#include "irp/tait.hpp"

namespace irp {

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Entropy of a Tait state at temperature theta and volume v.
double tait_entropy(const TaitParams& p, double theta, double v) {
  return p.s_r + p.D * (v - p.v_r) + p.C * (theta - p.theta_r);
}

// Stencil frame for -rho s: the density step is isothermal and the energy
// step moves the temperature by about h theta.
oracle::FdFrame thermal_frame(const Conserved1d& w, const Eos& eos) {
  const auto prim = primitives(w);
  const double rho = density(w);
  const double R = internal_energy_density(w);
  const double s = eos.entropy_from_ev(prim.e, prim.v);
  const EnergyDerivatives d = eos.derivatives({s, prim.v});
  const double theta = d.F_s;
  const double eps = std::min(R, rho * theta * theta / d.F_ss);
  oracle::FdFrame frame;
  frame.density_step_energy = prim.e - d.F_v * prim.v + prim.v * theta * d.F_sv / d.F_ss;
  frame.step_scale = Eigen::Vector3d(rho, std::sqrt(rho * eps), eps);
  return frame;
}

}  // namespace

PhaseBox default_phase_box(const Eos& eos) {
  if (const auto* tait = dynamic_cast<const TaitEos*>(&eos)) {
    const TaitParams& p = tait->params();
    return {tait_entropy(p, 0.05 * p.theta_r, p.v_r), tait_entropy(p, 10.0 * p.theta_r, p.v_r),
            0.5 * p.v_r, 2.0 * p.v_r};
  }
  return {};
}

std::vector<ThermoState> sample_thermo_states(const Eos& eos, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ThermoState> out;
  out.reserve(n);
  const auto* tait = dynamic_cast<const TaitEos*>(&eos);
  const PhaseBox box = default_phase_box(eos);
  while (static_cast<int>(out.size()) < n) {
    ThermoState ts;
    if (tait) {
      const TaitParams& p = tait->params();
      ts.v = uniform(rng, box.v_min, box.v_max);
      ts.s = tait_entropy(p, log_uniform(rng, 0.05 * p.theta_r, 10.0 * p.theta_r), ts.v);
    } else {
      ts.s = uniform(rng, box.s_min, box.s_max);
      ts.v = log_uniform(rng, box.v_min, box.v_max);
    }
    if (eos.admissible(ts)) out.push_back(ts);
  }
  return out;
}

std::vector<Conserved1d> sample_region_states(const Eos& eos, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Conserved1d> out;
  out.reserve(n);
  const auto* tait = dynamic_cast<const TaitEos*>(&eos);
  while (static_cast<int>(out.size()) < n) {
    const double rho = log_uniform(rng, 0.01, 100.0);
    const double u = uniform(rng, -10.0, 10.0);
    double e = 0.0;
    if (tait) {
      const TaitParams& p = tait->params();
      const double v = 1.0 / rho;
      e = tait->energy({tait_entropy(p, log_uniform(rng, 0.05 * p.theta_r, 10.0 * p.theta_r), v), v});
    } else {
      e = log_uniform(rng, 0.01, 100.0);
    }
    if (e > 0.0) out.push_back(make_conserved(rho, u, e));
  }
  return out;
}

RegionCheck verify_region_at(const Conserved1d& w, const Eos& eos, double h, double rel_tol) {
  RegionCheck c;
  c.closed = q_hessian_minors(w, eos);
  const Eigen::Vector3d closed(c.closed.q_rr, c.closed.A, c.closed.B);
  c.minors_positive = (closed.array() > 0.0).all();

  auto neg_entropy = [&eos](const Eigen::Vector3d& x) {
    const double rho = x(0);
    const double e = (x(2) - x(1) * x(1) / (2.0 * rho)) / rho;
    return -rho * eos.entropy_from_ev(e, 1.0 / rho);
  };
  const Eigen::Vector3d reduced(w(0), std::abs(w(1)), w(2));
  const oracle::FdHessian fd = oracle::fd_hessian_with_minors(neg_entropy, reduced, h, thermal_frame(w, eos));
  const Eigen::Matrix3d& H = fd.hessian;
  c.fd_minors = fd.minors;
  c.rel_error = ((c.fd_minors - closed).array().abs() / closed.array().abs()).matrix();
  c.agree = (c.rel_error.array() <= rel_tol).all();

  c.fd_scale = H.cwiseAbs().maxCoeff();
  c.fd_min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(H).eigenvalues().minCoeff();
  c.eigenvalue_ok = c.fd_min_eigenvalue >= -1e-8 * c.fd_scale;
  return c;
}

}  // namespace irp
