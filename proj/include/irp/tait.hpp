#pragma once

#include "irp/eos.hpp"

namespace irp {

/// Parameters of the nonlinear Tait fundamental equation
///
///   e = A (v - v_r) + B Phi(v) + x^2 / (2C) + theta_r (x + C theta_r) + e_r,
///   x = (s - s_r) - D (v - v_r),
///
/// with B = K_r v_r^nu and Phi(v) = log(v_r / v) for nu == 1, otherwise
/// (v_r^(1-nu) - v^(1-nu)) / (1 - nu). A is fixed so that the thermal form
/// P = p_r + D (theta - theta_r) + K_r ((v_r / v)^nu - 1) holds.
struct TaitParams {
  double K_r = 20.0;     ///< reference modulus of compression
  double v_r = 1.0;
  double p_r = 1.0;
  double s_r = 0.0;
  double e_r = 10.0;
  double theta_r = 1.0;
  double nu = 2.0;       ///< exponent, nu >= 1; nu == 1 selects the logarithmic branch
  double C = 1.0;        ///< c_{v,r} / theta_r
  double D = 1.0;        ///< saturation-curve slope dp/dtheta

  double A() const { return K_r - p_r + D * theta_r; }
  double B() const;
};

class TaitEos final : public Eos {
 public:
  /// Throws DomainError unless C > 0, K_r > 0, v_r > 0, theta_r > 0, nu >= 1.
  explicit TaitEos(TaitParams params);

  const TaitParams& params() const { return params_; }

  std::string_view name() const override { return "tait"; }
  EnergyDerivatives derivatives(const ThermoState& ts) const override;
  double energy(const ThermoState& ts) const override;
  /// Root of the quadratic in x with positive temperature.
  /// Throws NoPhysicalRoot when no such root exists.
  double entropy_from_ev(double e, double v) const override;
  /// Requires D != 0; otherwise pressure does not fix the entropy.
  double entropy_from_pv(double p, double v) const override;
  /// v > 0, theta > 0 and P > 0.
  bool admissible(const ThermoState& ts) const override;
  ReferenceScales reference_scales() const override;

  double phi(double v) const;
  double temperature_at(const ThermoState& ts) const;

 private:
  TaitParams params_;
  double A_;
  double B_;
};

}  // namespace irp
