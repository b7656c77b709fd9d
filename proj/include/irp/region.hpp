#pragma once

#include <cmath>
#include <string_view>

#include <Eigen/Core>

#include "irp/eos.hpp"
#include "irp/errors.hpp"
#include "irp/state.hpp"

namespace irp {

/// The convex set {rho > 0, R > 0, q < 0} with q = rho (s0 - s), made
/// numerically closed by relative floors:
///   rho >= eps_rho rho_ref,  R >= eps_R e_ref rho,  q <= -eps_q.
/// rho_ref = 1 / v_ref and e_ref come from the equation of state.
struct InvariantRegion {
  double s0 = 0.0;  ///< entropy floor
  double eps_rho = 1e-13;
  double eps_R = 1e-13;
  double eps_q = 0.0;

  double density_floor(const Eos& eos) const { return eps_rho / eos.reference_scales().v; }
  double internal_energy_floor(const Eos& eos, double rho) const {
    return eps_R * eos.reference_scales().e * rho;
  }
};

enum class Constraint { none, rho, R, q };

std::string_view to_string(Constraint c);

struct Membership {
  bool member = false;
  Constraint violated = Constraint::none;

  explicit operator bool() const { return member; }
};

/// Leading principal minors of the Hessian of q in (rho, |m|, E).
struct HessianMinors {
  double q_rr = 0.0;
  double A = 0.0;
  double B = 0.0;
};

template <typename Derived>
double specific_entropy(const Eigen::MatrixBase<Derived>& w, const Eos& eos) {
  const auto p = primitives(w);
  return eos.entropy_from_ev(p.e, p.v);
}

/// q = rho (s0 - s). Requires rho > 0 and R > 0.
template <typename Derived>
double q_value(const Eigen::MatrixBase<Derived>& w, const Eos& eos, const InvariantRegion& region) {
  const double rho = density(w);
  if (!(rho > 0.0)) throw DomainError("q: density must be positive");
  if (!(internal_energy_density(w) > 0.0)) throw DomainError("q: internal energy must be positive");
  return rho * (region.s0 - specific_entropy(w, eos));
}

/// Classifies any state, checking rho, then R, then q; q is only evaluated
/// when the first two pass. A failed entropy inversion counts as a q
/// violation.
template <typename Derived>
Membership in_invariant_region(const Eigen::MatrixBase<Derived>& w, const Eos& eos,
                               const InvariantRegion& region) {
  const double rho = density(w);
  if (!(rho >= region.density_floor(eos))) return {false, Constraint::rho};
  const double R = total_energy(w) - momentum(w).squaredNorm() / (2.0 * rho);
  if (!(R >= region.internal_energy_floor(eos, rho)) || R <= 0.0) return {false, Constraint::R};
  double q = 0.0;
  try {
    q = rho * (region.s0 - eos.entropy_from_ev(R / rho, 1.0 / rho));
  } catch (const Error&) {
    return {false, Constraint::q};
  }
  if (!(q <= -region.eps_q)) return {false, Constraint::q};
  return {true, Constraint::none};
}

namespace detail {

struct ReducedState {
  double rho;
  double m;  // |m|
  double E;
  double v;
  EntropyDerivatives G;
};

template <typename Derived>
ReducedState reduce(const Eigen::MatrixBase<Derived>& w, const Eos& eos) {
  const auto p = primitives(w);
  if (!(p.e > 0.0)) throw DomainError("q Hessian: internal energy must be positive");
  const double s = eos.entropy_from_ev(p.e, p.v);
  return {density(w), momentum(w).norm(), total_energy(w), p.v, entropy_derivatives(eos, {s, p.v})};
}

}  // namespace detail

/// Hessian of q in the reduced variables (rho, |m|, E), entry by entry from
/// the G-derivatives. Independent of s0.
template <typename Derived>
Eigen::Matrix3d q_hessian(const Eigen::MatrixBase<Derived>& w, const Eos& eos) {
  const detail::ReducedState r = detail::reduce(w, eos);
  const auto& G = r.G;
  const double v = r.v, m = r.m;
  const double v2 = v * v, v3 = v2 * v;
  const double xi = r.E - v * m * m;

  Eigen::Matrix3d H;
  H(0, 0) = -v3 * (G.G_vv + G.G_ee * xi * xi + 2.0 * xi * G.G_ev - m * m * G.G_e);
  H(0, 1) = -m * v2 * G.G_e - G.G_ee * v3 * m * xi - m * v3 * G.G_ev;
  H(0, 2) = v2 * xi * G.G_ee + v2 * G.G_ev;
  H(1, 1) = v * G.G_e - v3 * m * m * G.G_ee;
  H(1, 2) = v2 * m * G.G_ee;
  H(2, 2) = -v * G.G_ee;
  H(1, 0) = H(0, 1);
  H(2, 0) = H(0, 2);
  H(2, 1) = H(1, 2);
  return H;
}

/// Closed forms of the three leading minors:
///   q_rr = -v^3 (G_vv + G_ee xi^2 + 2 xi G_ev - m^2 G_e),   xi = E - v m^2
///   A    = -v^4 [G_e (E^2 G_ee + 2 E G_ev + G_vv) + v^2 m^2 (G_ev^2 - G_ee G_vv)]
///   B    =  v^5 G_e (G_vv G_ee - G_ev^2)
template <typename Derived>
HessianMinors q_hessian_minors(const Eigen::MatrixBase<Derived>& w, const Eos& eos) {
  const detail::ReducedState r = detail::reduce(w, eos);
  const auto& G = r.G;
  const double v = r.v, m = r.m, E = r.E;
  const double v2 = v * v, v3 = v2 * v, v4 = v2 * v2;
  const double xi = E - v * m * m;
  const double det_G = G.G_vv * G.G_ee - G.G_ev * G.G_ev;

  HessianMinors h;
  h.q_rr = -v3 * (G.G_vv + G.G_ee * xi * xi + 2.0 * xi * G.G_ev - m * m * G.G_e);
  h.A = -v4 * (G.G_e * (E * E * G.G_ee + 2.0 * E * G.G_ev + G.G_vv) - v2 * m * m * det_G);
  h.B = v4 * v * G.G_e * det_G;
  return h;
}

}  // namespace irp
