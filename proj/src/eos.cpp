#include "irp/eos.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "irp/errors.hpp"
#include "monotone_root.hpp"

namespace irp {

namespace {

std::string describe(const ThermoState& ts) {
  return "(s=" + std::to_string(ts.s) + ", v=" + std::to_string(ts.v) + ")";
}

void require_admissible(const Eos& eos, const ThermoState& ts) {
  if (!(ts.v > 0.0) || !eos.admissible(ts)) {
    throw DomainError(std::string(eos.name()) + ": state outside admissible domain " + describe(ts));
  }
}

}  // namespace

double Eos::entropy_from_ev(double e, double v) const {
  return generic_entropy_from_ev(*this, e, v).s;
}

double Eos::entropy_from_pv(double p, double v) const {
  if (!(v > 0.0)) throw DomainError("entropy_from_pv: v must be positive");
  const ReferenceScales ref = reference_scales();
  const double tol = 1e-12 * std::max(std::abs(p), ref.e / ref.v);
  auto eval = [&](double s) {
    const EnergyDerivatives d = derivatives({s, v});
    return detail::RootEval{-d.F_v - p, -d.F_sv};
  };
  return detail::solve_monotone(eval, 0.0, ref.s, tol, "entropy_from_pv").root;
}

InversionResult generic_entropy_from_ev(const Eos& eos, double e, double v,
                                        std::optional<double> guess) {
  if (!(v > 0.0)) throw DomainError("entropy_from_ev: v must be positive");
  const ReferenceScales ref = eos.reference_scales();
  const double tol = 1e-12 * std::max(std::abs(e), ref.e);
  auto eval = [&](double s) {
    const EnergyDerivatives d = eos.derivatives({s, v});
    return detail::RootEval{d.F - e, d.F_s};
  };
  const detail::RootResult r =
      detail::solve_monotone(eval, guess.value_or(0.0), ref.s, tol, "entropy_from_ev");
  return {r.root, r.evaluations};
}

double pressure(const Eos& eos, const ThermoState& ts) {
  if (!(ts.v > 0.0)) throw DomainError("pressure: v must be positive " + describe(ts));
  const double p = -eos.derivatives(ts).F_v;
  if (!(p > 0.0)) throw NonphysicalState("pressure: non-positive pressure at " + describe(ts));
  return p;
}

double temperature(const Eos& eos, const ThermoState& ts) {
  if (!(ts.v > 0.0)) throw DomainError("temperature: v must be positive " + describe(ts));
  const double theta = eos.derivatives(ts).F_s;
  if (!(theta > 0.0)) {
    throw NonphysicalState("temperature: non-positive temperature at " + describe(ts));
  }
  return theta;
}

double pressure_from_ev(const Eos& eos, double e, double v) {
  return pressure(eos, {eos.entropy_from_ev(e, v), v});
}

double sound_speed(const Eos& eos, const ThermoState& ts) {
  if (!(ts.v > 0.0)) throw DomainError("sound_speed: v must be positive " + describe(ts));
  const double f_vv = eos.derivatives(ts).F_vv;
  if (!(f_vv > 0.0)) throw NonhyperbolicState("sound_speed: F_vv <= 0 at " + describe(ts));
  return ts.v * std::sqrt(f_vv);
}

DimensionlessQuantities dimensionless_quantities(const Eos& eos, const ThermoState& ts) {
  require_admissible(eos, ts);
  const EnergyDerivatives d = eos.derivatives(ts);
  const double p = -d.F_v;
  const double theta = d.F_s;
  if (p == 0.0 || theta == 0.0 || d.F_vv == 0.0) {
    if (auto closed = eos.closed_form_dimensionless(ts)) return *closed;
    throw DivisionByZero("dimensionless_quantities: P, theta or F_vv vanishes at " + describe(ts));
  }
  const double v = ts.v;
  DimensionlessQuantities q;
  q.gamma = v / p * d.F_vv;
  q.grueneisen = -v / theta * d.F_sv;
  q.g = p * v / (theta * theta) * d.F_ss;
  q.fundamental_derivative = -0.5 * v * d.F_vvv / d.F_vv;
  return q;
}

StabilityReport check_thermo_stability(const Eos& eos, const ThermoState& ts) {
  require_admissible(eos, ts);
  const EnergyDerivatives d = eos.derivatives(ts);

  StabilityReport r;
  r.temperature_positive = d.F_s > 0.0;

  DimensionlessQuantities q;
  try {
    q = dimensionless_quantities(eos, ts);
  } catch (const DivisionByZero&) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    r.gamma = r.grueneisen = r.g = r.fundamental_derivative = nan;
    return r;
  }
  r.gamma = q.gamma;
  r.grueneisen = q.grueneisen;
  r.g = q.g;
  r.fundamental_derivative = q.fundamental_derivative;

  r.convexity_ok = q.g >= 0.0 && q.gamma >= 0.0 && q.g * q.gamma >= q.grueneisen * q.grueneisen;
  r.hyperbolic_ok = q.gamma > 0.0;
  r.genuinely_nonlinear_ok = q.fundamental_derivative > 0.0;

  const double p = -d.F_v;
  if (d.F != 0.0) {
    r.pve_bound_ok = p * ts.v / d.F < 2.0 * q.gamma;
  } else {
    r.pve_bound_ok = p == 0.0 && q.gamma > 0.0;
  }
  return r;
}

EntropyDerivatives entropy_derivatives(const Eos& eos, const ThermoState& ts) {
  const EnergyDerivatives d = eos.derivatives(ts);
  if (!(d.F_s > 0.0)) {
    throw NonphysicalState("entropy_derivatives: temperature must be positive at " + describe(ts));
  }
  // Differentiate F(G(e, v), v) = e once and twice in e and v.
  EntropyDerivatives g;
  g.G_e = 1.0 / d.F_s;
  g.G_v = -d.F_v / d.F_s;
  g.G_ee = -d.F_ss * g.G_e * g.G_e / d.F_s;
  g.G_ev = -(d.F_ss * g.G_v + d.F_sv) * g.G_e / d.F_s;
  g.G_vv = -(d.F_ss * g.G_v * g.G_v + 2.0 * d.F_sv * g.G_v + d.F_vv) / d.F_s;
  return g;
}

}  // namespace irp
