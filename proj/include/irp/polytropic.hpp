#pragma once

#include "irp/eos.hpp"

namespace irp {

struct PolytropicParams {
  double gamma0 = 1.4;  ///< adiabatic coefficient
  double k = 1.0;       ///< entropy normalization

  /// c = k (gamma0 - 1) in s = log(P / (c rho^gamma0)).
  double c() const { return k * (gamma0 - 1.0); }
};

/// Polytropic ideal gas, F(s, v) = k exp(s) v^(1 - gamma0).
///
/// gamma0 = 1 is accepted as the degenerate limit of the family (P = 0,
/// dimensionless quantities from their closed forms); flow computations
/// need gamma0 > 1, which the run configuration enforces.
class PolytropicGas final : public Eos {
 public:
  explicit PolytropicGas(PolytropicParams params);

  const PolytropicParams& params() const { return params_; }

  std::string_view name() const override { return "polytropic"; }
  EnergyDerivatives derivatives(const ThermoState& ts) const override;
  double energy(const ThermoState& ts) const override;
  /// s = log(e v^(gamma0 - 1) / k). Throws DomainError for e <= 0.
  double entropy_from_ev(double e, double v) const override;
  double entropy_from_pv(double p, double v) const override;
  bool admissible(const ThermoState& ts) const override { return ts.v > 0.0; }
  ReferenceScales reference_scales() const override;
  std::optional<DimensionlessQuantities> closed_form_dimensionless(
      const ThermoState& ts) const override;

 private:
  PolytropicParams params_;
};

}  // namespace irp
