#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

namespace irp::test {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

 private:
  std::mt19937_64 gen_;
};

/// Second-order central difference of a scalar function of one variable.
template <typename F>
double central_diff(const F& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Hand-coded polytropic fundamental equation e = k exp(s) v^(1 - gamma0).
struct PolytropicOracle {
  double gamma0 = 1.4;
  double k = 1.0;

  double F(double s, double v) const { return k * std::exp(s) * std::pow(v, 1.0 - gamma0); }
  double P(double s, double v) const { return (gamma0 - 1.0) * F(s, v) / v; }
  double entropy(double rho, double p) const {
    return std::log(p / (k * (gamma0 - 1.0) * std::pow(rho, gamma0)));
  }
};

/// Tait fundamental equation written out from its defining formulas.
struct TaitOracle {
  double K_r = 20.0, v_r = 1.0, p_r = 1.0, s_r = 0.0, e_r = 10.0, theta_r = 1.0, nu = 2.0,
         C = 1.0, D = 1.0;

  double phi(double v) const {
    if (nu == 1.0) return std::log(v_r / v);
    return (std::pow(v_r, 1.0 - nu) - std::pow(v, 1.0 - nu)) / (1.0 - nu);
  }
  double A() const { return K_r - p_r + D * theta_r; }
  double B() const { return K_r * std::pow(v_r, nu); }
  double F(double s, double v) const {
    const double x = (s - s_r) - D * (v - v_r);
    return A() * (v - v_r) + B() * phi(v) + x * x / (2.0 * C) + theta_r * (x + C * theta_r) + e_r;
  }
  double theta(double s, double v) const { return ((s - s_r) - D * (v - v_r)) / C + theta_r; }
  /// Entropy of the state at temperature theta and volume v.
  double entropy_at(double theta, double v) const {
    return s_r + D * (v - v_r) + C * (theta - theta_r);
  }
  /// P = p_r + D (theta - theta_r) + K_r ((v_r / v)^nu - 1).
  double P_thermal(double theta, double v) const {
    return p_r + D * (theta - theta_r) + K_r * (std::pow(v_r / v, nu) - 1.0);
  }
};

}  // namespace irp::test
