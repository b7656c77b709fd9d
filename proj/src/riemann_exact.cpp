#include "irp/riemann_exact.hpp"

#include <algorithm>
#include <cmath>

#include "irp/errors.hpp"

namespace irp::oracle {

namespace {

struct Branch {
  double f;
  double df;
};

// Pressure function of one side: shock branch for p > p_k, rarefaction otherwise.
Branch side_function(double p, const GasState& k, double gamma) {
  const double a = std::sqrt(gamma * k.p / k.rho);
  if (p > k.p) {
    const double A = 2.0 / ((gamma + 1.0) * k.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * k.p;
    const double root = std::sqrt(A / (p + B));
    return {(p - k.p) * root, root * (1.0 - 0.5 * (p - k.p) / (B + p))};
  }
  const double ratio = p / k.p;
  return {2.0 * a / (gamma - 1.0) * (std::pow(ratio, (gamma - 1.0) / (2.0 * gamma)) - 1.0),
          std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (k.rho * a)};
}

}  // namespace

StarRegion star_region(const GasState& left, const GasState& right, double gamma) {
  if (!(left.rho > 0.0 && right.rho > 0.0 && left.p > 0.0 && right.p > 0.0)) {
    throw DomainError("exact Riemann: density and pressure must be positive");
  }
  if (!(gamma > 1.0)) throw DomainError("exact Riemann: gamma must exceed 1");
  const double aL = std::sqrt(gamma * left.p / left.rho);
  const double aR = std::sqrt(gamma * right.p / right.rho);
  const double du = right.u - left.u;
  if (2.0 * (aL + aR) / (gamma - 1.0) <= du) {
    throw VacuumFormation("exact Riemann: initial data generate vacuum");
  }

  auto f = [&](double p) {
    const Branch l = side_function(p, left, gamma);
    const Branch r = side_function(p, right, gamma);
    return Branch{l.f + r.f + du, l.df + r.df};
  };

  // f is increasing and concave in p, negative at p = 0 when no vacuum forms.
  double lo = 0.0;
  double hi = std::max(left.p, right.p);
  while (f(hi).f < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  const double p_pv =
      0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (aL + aR);
  double p = std::clamp(p_pv, lo + 0.5 * (hi - lo) * 1e-6, hi);

  StarRegion star;
  for (int it = 1; it <= 200; ++it) {
    const Branch b = f(p);
    star.iterations = it;
    if (b.f == 0.0) break;
    if (b.f < 0.0) {
      lo = p;
    } else {
      hi = p;
    }
    double next = p - b.f / b.df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double change = std::abs(next - p) / (0.5 * (next + p));
    p = next;
    if (change < 1e-14) break;
  }
  star.p = p;
  star.u = 0.5 * (left.u + right.u) +
           0.5 * (side_function(p, right, gamma).f - side_function(p, left, gamma).f);
  return star;
}

GasState exact_riemann_polytropic(const GasState& left, const GasState& right, double gamma,
                                  double xi) {
  const StarRegion star = star_region(left, right, gamma);
  const double g1 = (gamma - 1.0) / (gamma + 1.0);
  const double g2 = (gamma - 1.0) / (2.0 * gamma);

  if (xi <= star.u) {
    const GasState& k = left;
    const double a = std::sqrt(gamma * k.p / k.rho);
    if (star.p > k.p) {
      const double ratio = star.p / k.p;
      const double speed = k.u - a * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ratio + g2);
      if (xi <= speed) return k;
      return {k.rho * (ratio + g1) / (g1 * ratio + 1.0), star.u, star.p};
    }
    const double a_star = a * std::pow(star.p / k.p, g2);
    if (xi <= k.u - a) return k;
    if (xi >= star.u - a_star) return {k.rho * std::pow(star.p / k.p, 1.0 / gamma), star.u, star.p};
    const double c = 2.0 / (gamma + 1.0) + g1 / a * (k.u - xi);
    const double rho = k.rho * std::pow(c, 2.0 / (gamma - 1.0));
    const double u = 2.0 / (gamma + 1.0) * (a + 0.5 * (gamma - 1.0) * k.u + xi);
    return {rho, u, k.p * std::pow(c, 2.0 * gamma / (gamma - 1.0))};
  }

  const GasState& k = right;
  const double a = std::sqrt(gamma * k.p / k.rho);
  if (star.p > k.p) {
    const double ratio = star.p / k.p;
    const double speed = k.u + a * std::sqrt((gamma + 1.0) / (2.0 * gamma) * ratio + g2);
    if (xi >= speed) return k;
    return {k.rho * (ratio + g1) / (g1 * ratio + 1.0), star.u, star.p};
  }
  const double a_star = a * std::pow(star.p / k.p, g2);
  if (xi >= k.u + a) return k;
  if (xi <= star.u + a_star) return {k.rho * std::pow(star.p / k.p, 1.0 / gamma), star.u, star.p};
  const double c = 2.0 / (gamma + 1.0) - g1 / a * (k.u - xi);
  const double rho = k.rho * std::pow(c, 2.0 / (gamma - 1.0));
  const double u = 2.0 / (gamma + 1.0) * (-a + 0.5 * (gamma - 1.0) * k.u + xi);
  return {rho, u, k.p * std::pow(c, 2.0 * gamma / (gamma - 1.0))};
}

}  // namespace irp::oracle
