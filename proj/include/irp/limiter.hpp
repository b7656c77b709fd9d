#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include <Eigen/Core>

#include "irp/eos.hpp"
#include "irp/errors.hpp"
#include "irp/region.hpp"
#include "irp/state.hpp"

namespace irp {

/// Piecewise-linear reconstruction over one cell of width dx, centred at
/// the cell midpoint. The test set is {left face, midpoint, right face}.
template <int Dim>
struct CellPolynomial {
  using State = Conserved<double, Dim>;

  static constexpr std::array<double, 3> test_offsets{-0.5, 0.0, 0.5};

  State average = State::Zero();
  State slope = State::Zero();  ///< dw/dx, componentwise
  double dx = 1.0;

  /// Value at x = centre + xi dx, xi in [-1/2, 1/2].
  State value_at(double xi) const { return average + (xi * dx) * slope; }
  State left() const { return value_at(-0.5); }
  State right() const { return value_at(0.5); }

  std::array<State, 3> test_values() const {
    return {value_at(test_offsets[0]), value_at(test_offsets[1]), value_at(test_offsets[2])};
  }

  /// theta w_h + (1 - theta) w_bar, i.e. the slope scaled by theta.
  CellPolynomial scaled(double theta) const { return {average, theta * slope, dx}; }
};

/// A convex constraint U(w) <= 0 defining one face of the region, plus the
/// absolute slack the limiter keeps from U = 0.
template <int Dim>
struct ConstraintFunction {
  using State = Conserved<double, Dim>;
  Constraint id = Constraint::none;
  std::function<double(const State&)> value;
  std::function<double(const State&)> tolerance;  ///< as a function of the cell average
};

/// U_1 = rho_floor - rho, U_2 = R_floor(rho) - R, U_3 = q + eps_q, so that
/// {U_i <= 0} is exactly the membership test of `in_invariant_region`.
/// U_2 is +inf for rho <= 0 and U_3 requires rho > 0 and R > 0.
template <int Dim>
std::array<ConstraintFunction<Dim>, 3> constraint_functions(const InvariantRegion& region,
                                                            const Eos& eos) {
  using State = Conserved<double, Dim>;
  const double rho_floor = region.density_floor(eos);
  const ReferenceScales ref = eos.reference_scales();
  const double e_floor = region.eps_R * ref.e;
  const double q_rel = 1e-12 * (ref.s + std::abs(region.s0));

  ConstraintFunction<Dim> u_rho{
      Constraint::rho, [rho_floor](const State& w) { return rho_floor - density(w); },
      [rho_floor](const State&) { return rho_floor; }};
  ConstraintFunction<Dim> u_R{Constraint::R,
                              [e_floor](const State& w) {
                                const double rho = density(w);
                                if (!(rho > 0.0)) return HUGE_VAL;
                                return e_floor * rho - internal_energy_density(w);
                              },
                              [e_floor](const State& avg) { return e_floor * density(avg); }};
  ConstraintFunction<Dim> u_q{Constraint::q,
                              [&eos, region](const State& w) {
                                return q_value(w, eos, region) + region.eps_q;
                              },
                              [q_rel](const State& avg) { return q_rel * density(avg); }};
  return {u_rho, u_R, u_q};
}

/// theta_1 = U(avg) / (U(avg) - U_max) for one convex constraint, aiming at
/// the level U = -tol at the test points.
///
///  - U(avg) > 0 throws AverageOutsideRegion.
///  - U_max <= -tol/2 gives 1 (limiter inactive).
///  - An average within tol of the boundary gives 1 when the test values are
///    already inside and 0 otherwise; 0 means the slope must be dropped.
template <typename State, typename U, typename Range>
double theta_for_constraint(const U& constraint, const State& avg, const Range& test_values,
                            double tol = 0.0) {
  const double u_avg = constraint(avg);
  if (!(u_avg <= 0.0)) {
    throw AverageOutsideRegion("limiter: cell average violates constraint (U = " +
                               std::to_string(u_avg) + ")");
  }
  double u_max = -HUGE_VAL;
  for (const auto& w : test_values) u_max = std::max(u_max, constraint(w));
  if (u_max <= -0.5 * tol) return 1.0;
  if (u_avg >= -tol) return u_max <= 0.0 ? 1.0 : 0.0;
  return (u_avg + tol) / (u_avg - u_max);
}

template <int Dim>
struct LimiterOutcome {
  double theta = 1.0;
  std::array<double, 3> per_constraint_thetas{1.0, 1.0, 1.0};  ///< (rho, R, q)
  CellPolynomial<Dim> limited;
  bool activated = false;
};

/// Scales the reconstruction toward its average so that every test value
/// lies in the region. theta = min(1, theta_rho, theta_R, theta_q).
///
/// A constraint whose function is undefined at some test value (R needs
/// rho > 0; q needs rho > 0, R > 0 and an entropy, which a model such as
/// Tait lacks below its zero-temperature curve) is evaluated on the
/// polynomial pre-scaled by the thetas already found, halved further until
/// q is defined; its reported theta is then the product, so the min rule
/// still holds.
template <int Dim>
LimiterOutcome<Dim> apply_irp_limiter(const CellPolynomial<Dim>& poly, const Eos& eos,
                                      const InvariantRegion& region) {
  LimiterOutcome<Dim> out;
  out.limited = poly;

  const Membership avg_in = in_invariant_region(poly.average, eos, region);
  if (!avg_in) {
    throw AverageOutsideRegion("limiter: cell average violates constraint " +
                               std::string(to_string(avg_in.violated)));
  }
  if (poly.slope.isZero(0.0)) return out;

  const auto constraints = constraint_functions<Dim>(region, eos);
  auto defined_for = [&](Constraint id, const CellPolynomial<Dim>& p) {
    for (const auto& w : p.test_values()) {
      const double rho = density(w);
      if (!(rho > 0.0)) return false;
      if (id != Constraint::q) continue;
      if (!(internal_energy_density(w) > 0.0)) return false;
      try {
        specific_entropy(w, eos);
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  };

  double theta = 1.0;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    const double tol = c.tolerance(poly.average);
    double theta_i;
    if (c.id == Constraint::rho || defined_for(c.id, poly)) {
      theta_i = theta_for_constraint(c.value, poly.average, poly.test_values(), tol);
    } else {
      double pre_theta = theta;
      int halvings = 0;
      while (!defined_for(c.id, poly.scaled(pre_theta)) && halvings < 64) {
        pre_theta *= 0.5;
        ++halvings;
      }
      if (halvings == 64) {
        theta_i = 0.0;
      } else {
        const CellPolynomial<Dim> pre = poly.scaled(pre_theta);
        theta_i = pre_theta * theta_for_constraint(c.value, pre.average, pre.test_values(), tol);
      }
    }
    out.per_constraint_thetas[i] = theta_i;
    theta = std::min(theta, theta_i);
  }

  out.theta = theta;
  out.activated = theta < 1.0;
  if (out.activated) out.limited = poly.scaled(theta);
  return out;
}

/// max over test points of |w_i - avg|, componentwise max norm.
template <int Dim>
double oscillation(const CellPolynomial<Dim>& poly) {
  double r = 0.0;
  for (const auto& w : poly.test_values()) {
    r = std::max(r, (w - poly.average).template lpNorm<Eigen::Infinity>());
  }
  return r;
}

/// max over test points of |limited - original|; equals (1 - theta) times
/// the oscillation of the original.
template <int Dim>
double limiter_distortion(const CellPolynomial<Dim>& original, const CellPolynomial<Dim>& limited) {
  const auto a = original.test_values();
  const auto b = limited.test_values();
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r = std::max(r, (b[i] - a[i]).template lpNorm<Eigen::Infinity>());
  }
  return r;
}

}  // namespace irp
