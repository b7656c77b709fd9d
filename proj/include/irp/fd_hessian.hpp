#pragma once

#include <functional>
#include <optional>

#include <Eigen/Core>

namespace irp::oracle {

struct FdHessian {
  Eigen::Matrix3d hessian;  ///< in (rho, m, E)
  Eigen::Vector3d minors;   ///< leading principal minors of `hessian`
};

/// Coordinates and steps of the difference stencil.
struct FdFrame {
  /// Internal energy added per unit of density along the density step.
  /// e + P v + v theta F_sv / F_ss makes the step isothermal, which
  /// decouples it from the energy step for an entropy function.
  double density_step_energy = 0.0;
  /// Steps in y are h times these; default (rho, sqrt(rho R), R).
  std::optional<Eigen::Vector3d> step_scale;
};

/// Finite-difference Hessian of a scalar function of (rho, m, E).
///
/// Differences are taken in the rest-frame coordinates y = (rho, mu, eps),
/// m = u rho + mu, E = (u^2 / 2 + H) rho + u mu + eps, with u = m / rho
/// frozen at the point and H = frame.density_step_energy. Then
/// R = H rho + eps - mu^2 / (2 rho) independently of u, which keeps the
/// stencil well conditioned when kinetic energy dominates R. Steps are h
/// times frame.step_scale; a step is halved until f is defined at both
/// ends, which keeps the stencil clear of an edge such as zero temperature.
/// Central second differences at steps h, 2h and 4h are combined by Richardson
/// extrapolation and symmetrized, then mapped back to (rho, m, E) exactly.
/// The minors are computed from the y-Hessian through the unit-triangular
/// change of variables, which avoids cancellation in the (rho, m, E) entries.
/// Throws DomainError if a stencil point leaves {rho > 0, R > 0}.
FdHessian fd_hessian_with_minors(const std::function<double(const Eigen::Vector3d&)>& f,
                                 const Eigen::Vector3d& w, double h = 3e-2,
                                 const FdFrame& frame = {});

Eigen::Matrix3d fd_hessian(const std::function<double(const Eigen::Vector3d&)>& f,
                           const Eigen::Vector3d& w, double h = 3e-2);

/// Leading principal minors (H00, H00 H11 - H01^2, det H).
Eigen::Vector3d leading_minors(const Eigen::Matrix3d& H);

}  // namespace irp::oracle
