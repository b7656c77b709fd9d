#include "irp/polytropic.hpp"

#include <cmath>
#include <string>

#include "irp/errors.hpp"

namespace irp {

PolytropicGas::PolytropicGas(PolytropicParams params) : params_(params) {
  if (!(params_.gamma0 >= 1.0)) throw DomainError("polytropic: gamma0 must be >= 1");
  if (!(params_.k > 0.0)) throw DomainError("polytropic: k must be positive");
}

double PolytropicGas::energy(const ThermoState& ts) const {
  if (!(ts.v > 0.0)) throw DomainError("polytropic: v must be positive");
  return params_.k * std::exp(ts.s) * std::pow(ts.v, 1.0 - params_.gamma0);
}

EnergyDerivatives PolytropicGas::derivatives(const ThermoState& ts) const {
  const double g = params_.gamma0;
  const double v = ts.v;
  const double f = energy(ts);
  EnergyDerivatives d;
  d.F = f;
  d.F_s = f;
  d.F_ss = f;
  d.F_v = (1.0 - g) * f / v;
  d.F_sv = d.F_v;
  d.F_vv = g * (g - 1.0) * f / (v * v);
  d.F_vvv = -(g + 1.0) * d.F_vv / v;
  return d;
}

double PolytropicGas::entropy_from_ev(double e, double v) const {
  if (!(v > 0.0)) throw DomainError("polytropic: v must be positive");
  if (!(e > 0.0)) throw DomainError("polytropic: internal energy must be positive");
  return std::log(e / params_.k) + (params_.gamma0 - 1.0) * std::log(v);
}

double PolytropicGas::entropy_from_pv(double p, double v) const {
  if (!(params_.gamma0 > 1.0)) {
    throw DomainError("polytropic: pressure does not determine entropy for gamma0 = 1");
  }
  if (!(p > 0.0)) throw DomainError("polytropic: pressure must be positive");
  return entropy_from_ev(p * v / (params_.gamma0 - 1.0), v);
}

ReferenceScales PolytropicGas::reference_scales() const {
  return {params_.k, 1.0, 1.0, params_.k};
}

std::optional<DimensionlessQuantities> PolytropicGas::closed_form_dimensionless(
    const ThermoState&) const {
  const double g = params_.gamma0;
  return DimensionlessQuantities{g, g - 1.0, g - 1.0, 0.5 * (g + 1.0)};
}

}  // namespace irp
