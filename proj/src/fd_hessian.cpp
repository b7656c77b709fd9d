#include "irp/fd_hessian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/LU>

#include "irp/errors.hpp"

namespace irp::oracle {

namespace {

using Fn = std::function<double(const Eigen::Vector3d&)>;

double internal_energy(const Eigen::Vector3d& w) { return w(2) - w(1) * w(1) / (2.0 * w(0)); }

bool physical(const Eigen::Vector3d& w) { return w(0) > 0.0 && internal_energy(w) > 0.0; }

Eigen::Matrix3d central_hessian(const Fn& g, const Eigen::Vector3d& y, const Eigen::Vector3d& step) {
  const double g0 = g(y);
  Eigen::Matrix3d H;
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d e_i = step(i) * Eigen::Vector3d::Unit(i);
    H(i, i) = (g(y + e_i) - 2.0 * g0 + g(y - e_i)) / (step(i) * step(i));
    for (int j = i + 1; j < 3; ++j) {
      const Eigen::Vector3d e_j = step(j) * Eigen::Vector3d::Unit(j);
      H(i, j) = (g(y + e_i + e_j) - g(y + e_i - e_j) - g(y - e_i + e_j) + g(y - e_i - e_j)) /
                (4.0 * step(i) * step(j));
      H(j, i) = H(i, j);
    }
  }
  return H;
}

double minor2(const Eigen::Matrix3d& H, int a, int b, int c, int d) {
  return H(a, c) * H(b, d) - H(a, d) * H(b, c);
}

}  // namespace

FdHessian fd_hessian_with_minors(const Fn& f, const Eigen::Vector3d& w, double h,
                                 const FdFrame& frame) {
  if (!physical(w)) throw DomainError("fd_hessian: point outside {rho > 0, R > 0}");
  const double rho = w(0);
  const double u = w(1) / rho;
  const double R = internal_energy(w);

  // w = M y with M = [[1, 0, 0], [u, 1, 0], [u^2/2 + H, u, 1]]: the Galilean
  // boost by u, with R advancing by H per unit of y0.
  const double H = frame.density_step_energy;
  auto to_w = [u, H](const Eigen::Vector3d& y) {
    return Eigen::Vector3d(y(0), u * y(0) + y(1), (0.5 * u * u + H) * y(0) + u * y(1) + y(2));
  };
  auto g = [&](const Eigen::Vector3d& y) {
    const Eigen::Vector3d x = to_w(y);
    if (!physical(x)) throw DomainError("fd_hessian: stencil point leaves {rho > 0, R > 0}");
    return f(x);
  };
  auto evaluable = [&](const Eigen::Vector3d& y) {
    const Eigen::Vector3d x = to_w(y);
    if (!physical(x)) return false;
    try {
      return std::isfinite(f(x));
    } catch (const Error&) {
      return false;
    }
  };

  const Eigen::Vector3d y0(rho, 0.0, R - H * rho);
  Eigen::Vector3d scale = frame.step_scale.value_or(Eigen::Vector3d(rho, std::sqrt(rho * R), R));
  if (!(scale.array() > 0.0).all()) throw DomainError("fd_hessian: step scales must be positive");
  for (int i = 0; i < 3; ++i) {
    const Eigen::Vector3d e_i = Eigen::Vector3d::Unit(i);
    double t = scale(i);
    int halvings = 0;
    while (!evaluable(y0 + t * e_i) || !evaluable(y0 - t * e_i)) {
      t *= 0.5;
      if (++halvings > 200) throw DomainError("fd_hessian: f is not defined around the point");
    }
    scale(i) = t;
  }

  const Eigen::Matrix3d h1 = central_hessian(g, y0, h * scale);
  const Eigen::Matrix3d h2 = central_hessian(g, y0, 2.0 * h * scale);
  const Eigen::Matrix3d h4 = central_hessian(g, y0, 4.0 * h * scale);
  Eigen::Matrix3d Hy = (64.0 * h1 - 20.0 * h2 + h4) / 45.0;
  Hy = 0.5 * (Hy + Hy.transpose()).eval();

  Eigen::Matrix3d N = Eigen::Matrix3d::Identity();  // M^-T, exact
  N(0, 1) = -u;
  N(0, 2) = 0.5 * u * u - H;
  N(1, 2) = -u;

  FdHessian out;
  out.hessian = N * Hy * N.transpose();

  // Leading minors of N Hy N^T: the first is a quadratic form, the second
  // follows from Cauchy-Binet over the 2x2 minors of Hy, the third is det Hy.
  const Eigen::Vector3d n0 = N.row(0).transpose();
  const std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  const std::array<double, 3> c{1.0, -u, 0.5 * u * u + H};
  double m2 = 0.0;
  for (int I = 0; I < 3; ++I) {
    for (int J = 0; J < 3; ++J) {
      m2 += c[I] * c[J] * minor2(Hy, pairs[I][0], pairs[I][1], pairs[J][0], pairs[J][1]);
    }
  }
  out.minors = Eigen::Vector3d(n0.dot(Hy * n0), m2, Hy.determinant());
  return out;
}

Eigen::Matrix3d fd_hessian(const Fn& f, const Eigen::Vector3d& w, double h) {
  return fd_hessian_with_minors(f, w, h, FdFrame{}).hessian;
}

Eigen::Vector3d leading_minors(const Eigen::Matrix3d& H) {
  return {H(0, 0), H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0), H.determinant()};
}

}  // namespace irp::oracle
