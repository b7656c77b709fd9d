#include "irp/tait.hpp"

#include <algorithm>
#include <cmath>

#include "irp/errors.hpp"

namespace irp {

double TaitParams::B() const { return K_r * std::pow(v_r, nu); }

TaitEos::TaitEos(TaitParams params) : params_(params), A_(params.A()), B_(params.B()) {
  if (!(params_.C > 0.0)) throw DomainError("tait: C must be positive");
  if (!(params_.K_r > 0.0)) throw DomainError("tait: K_r must be positive");
  if (!(params_.v_r > 0.0)) throw DomainError("tait: v_r must be positive");
  if (!(params_.theta_r > 0.0)) throw DomainError("tait: theta_r must be positive");
  if (!(params_.nu >= 1.0)) throw DomainError("tait: nu must be >= 1");
}

double TaitEos::phi(double v) const {
  const double nu = params_.nu;
  if (nu == 1.0) return std::log(params_.v_r / v);
  return (std::pow(params_.v_r, 1.0 - nu) - std::pow(v, 1.0 - nu)) / (1.0 - nu);
}

double TaitEos::energy(const ThermoState& ts) const {
  if (!(ts.v > 0.0)) throw DomainError("tait: v must be positive");
  const TaitParams& p = params_;
  const double x = (ts.s - p.s_r) - p.D * (ts.v - p.v_r);
  return A_ * (ts.v - p.v_r) + B_ * phi(ts.v) + x * x / (2.0 * p.C) +
         p.theta_r * (x + p.C * p.theta_r) + p.e_r;
}

EnergyDerivatives TaitEos::derivatives(const ThermoState& ts) const {
  const TaitParams& p = params_;
  const double v = ts.v;
  const double x = (ts.s - p.s_r) - p.D * (v - p.v_r);
  // Phi'(v) = -v^-nu, Phi'' = nu v^-(nu+1), Phi''' = -nu (nu+1) v^-(nu+2)
  const double v_nu = std::pow(v, -p.nu);
  const double dphi = -v_nu;
  const double d2phi = p.nu * v_nu / v;
  const double d3phi = -p.nu * (p.nu + 1.0) * v_nu / (v * v);

  EnergyDerivatives d;
  d.F = energy(ts);
  d.F_s = x / p.C + p.theta_r;
  d.F_ss = 1.0 / p.C;
  d.F_v = A_ + B_ * dphi - p.D * d.F_s;
  d.F_sv = -p.D / p.C;
  d.F_vv = B_ * d2phi + p.D * p.D / p.C;
  d.F_vvv = B_ * d3phi;
  return d;
}

double TaitEos::temperature_at(const ThermoState& ts) const {
  return ((ts.s - params_.s_r) - params_.D * (ts.v - params_.v_r)) / params_.C + params_.theta_r;
}

double TaitEos::entropy_from_ev(double e, double v) const {
  if (!(v > 0.0)) throw DomainError("tait: v must be positive");
  const TaitParams& p = params_;
  // x^2/(2C) + theta_r x + c0 = 0; the temperature of a root is x/C + theta_r
  // = +-sqrt(theta_r^2 - 2 c0 / C), so only the + branch can be physical.
  const double c0 = A_ * (v - p.v_r) + B_ * phi(v) + p.C * p.theta_r * p.theta_r + p.e_r - e;
  const double disc = p.theta_r * p.theta_r - 2.0 * c0 / p.C;
  if (!(disc > 0.0)) {
    throw NoPhysicalRoot("tait: no entropy with positive temperature for e=" + std::to_string(e) +
                         ", v=" + std::to_string(v));
  }
  const double theta = std::sqrt(disc);
  // x = C (theta - theta_r), rewritten to avoid cancellation near theta_r.
  const double x = -2.0 * c0 / (theta + p.theta_r);
  return x + p.s_r + p.D * (v - p.v_r);
}

double TaitEos::entropy_from_pv(double pressure, double v) const {
  if (!(v > 0.0)) throw DomainError("tait: v must be positive");
  const TaitParams& p = params_;
  if (p.D == 0.0) throw InversionFailure("tait: pressure does not determine entropy when D = 0");
  const double theta =
      p.theta_r + (pressure - p.p_r - p.K_r * (std::pow(p.v_r / v, p.nu) - 1.0)) / p.D;
  if (!(theta > 0.0)) throw NoPhysicalRoot("tait: (p, v) implies non-positive temperature");
  return p.C * (theta - p.theta_r) + p.s_r + p.D * (v - p.v_r);
}

bool TaitEos::admissible(const ThermoState& ts) const {
  if (!(ts.v > 0.0)) return false;
  const EnergyDerivatives d = derivatives(ts);
  return d.F_s > 0.0 && -d.F_v > 0.0;
}

ReferenceScales TaitEos::reference_scales() const {
  const TaitParams& p = params_;
  const double e_scale = std::max({p.K_r * p.v_r, p.C * p.theta_r * p.theta_r, std::abs(p.e_r)});
  return {e_scale, p.v_r, p.C * p.theta_r, p.theta_r};
}

}  // namespace irp
