#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace irp {

/// A point (s, v) of the thermodynamic phase plane: specific entropy and
/// specific volume.
struct ThermoState {
  double s = 0.0;
  double v = 1.0;
};

/// The fundamental equation e = F(s, v) and the partial derivatives the
/// library needs. Third derivatives in s are never used.
struct EnergyDerivatives {
  double F = 0.0;
  double F_s = 0.0;
  double F_v = 0.0;
  double F_ss = 0.0;
  double F_sv = 0.0;
  double F_vv = 0.0;
  double F_vvv = 0.0;
};

/// Derivatives of the entropy function s = G(e, v), obtained from F by the
/// inverse function rule.
struct EntropyDerivatives {
  double G_e = 0.0;
  double G_v = 0.0;
  double G_ee = 0.0;
  double G_ev = 0.0;
  double G_vv = 0.0;
};

/// Positive magnitudes used to turn relative tolerances into absolute ones.
struct ReferenceScales {
  double e = 1.0;
  double v = 1.0;
  double s = 1.0;
  double temperature = 1.0;
};

struct DimensionlessQuantities {
  double gamma = 0.0;                   ///< adiabatic exponent (v/P) F_vv
  double grueneisen = 0.0;              ///< -(v/theta) F_sv
  double g = 0.0;                       ///< dimensionless specific heat (Pv/theta^2) F_ss
  double fundamental_derivative = 0.0;  ///< -(v/2) F_vvv / F_vv
};

struct StabilityReport {
  double gamma = 0.0;
  double grueneisen = 0.0;
  double g = 0.0;
  double fundamental_derivative = 0.0;
  bool convexity_ok = false;
  bool hyperbolic_ok = false;
  bool genuinely_nonlinear_ok = false;
  bool pve_bound_ok = false;
  bool temperature_positive = false;
};

struct InversionResult {
  double s = 0.0;
  int iterations = 0;
};

/// Equation-of-state contract. Implementations are immutable after
/// construction and all members are pure, so one instance may be shared by
/// any number of threads.
class Eos {
 public:
  virtual ~Eos() = default;

  virtual std::string_view name() const = 0;

  /// F and its partials. Throws DomainError when v <= 0.
  virtual EnergyDerivatives derivatives(const ThermoState& ts) const = 0;

  virtual double energy(const ThermoState& ts) const { return derivatives(ts).F; }

  /// Inverse of F in its first argument. The default is the safeguarded
  /// Newton solve; models with a closed form override it.
  virtual double entropy_from_ev(double e, double v) const;

  /// Entropy of the state with pressure p at specific volume v. Default is a
  /// safeguarded root solve of -F_v(s, v) = p, which needs F_sv < 0.
  virtual double entropy_from_pv(double p, double v) const;

  /// Physically admissible part of the phase plane.
  virtual bool admissible(const ThermoState& ts) const = 0;

  virtual ReferenceScales reference_scales() const = 0;

  /// Models may supply the dimensionless quantities in closed form; this is
  /// only consulted where the generic ratios are singular (P = 0).
  virtual std::optional<DimensionlessQuantities> closed_form_dimensionless(
      const ThermoState&) const {
    return std::nullopt;
  }
};

double pressure(const Eos& eos, const ThermoState& ts);
double temperature(const Eos& eos, const ThermoState& ts);

/// Closure used by the solver: P from (e, v) through the entropy inversion.
double pressure_from_ev(const Eos& eos, double e, double v);

/// a = v sqrt(F_vv).
double sound_speed(const Eos& eos, const ThermoState& ts);

DimensionlessQuantities dimensionless_quantities(const Eos& eos, const ThermoState& ts);

/// Evaluates the thermodynamic stability conditions at one state. Physics
/// failures are reported in the flags, only DomainError is thrown.
StabilityReport check_thermo_stability(const Eos& eos, const ThermoState& ts);

EntropyDerivatives entropy_derivatives(const Eos& eos, const ThermoState& ts);

/// Newton iteration on F(s, v) - e = 0 with a bisection safeguard. Converges
/// to |F(s, v) - e| <= 1e-12 max(|e|, e_ref); throws InversionFailure after
/// 100 iterations. The iteration starts from `guess` (default 0).
InversionResult generic_entropy_from_ev(const Eos& eos, double e, double v,
                                        std::optional<double> guess = std::nullopt);

}  // namespace irp
