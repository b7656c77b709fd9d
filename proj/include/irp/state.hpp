#pragma once

#include <Eigen/Core>

#include "irp/errors.hpp"

namespace irp {

/// Conserved Euler variables w = (rho, m_1..m_Dim, E).
template <typename Scalar, int Dim>
using Conserved = Eigen::Matrix<Scalar, Dim + 2, 1>;

using Conserved1d = Conserved<double, 1>;

template <typename Derived>
constexpr int spatial_dim_v = Eigen::MatrixBase<Derived>::RowsAtCompileTime - 2;

template <typename Derived>
typename Derived::Scalar density(const Eigen::MatrixBase<Derived>& w) {
  return w(0);
}

template <typename Derived>
auto momentum(const Eigen::MatrixBase<Derived>& w) {
  return w.template segment<spatial_dim_v<Derived>>(1);
}

template <typename Derived>
typename Derived::Scalar total_energy(const Eigen::MatrixBase<Derived>& w) {
  return w(w.size() - 1);
}

/// R = E - |m|^2 / (2 rho) = rho e, the internal energy density.
template <typename Derived>
typename Derived::Scalar internal_energy_density(const Eigen::MatrixBase<Derived>& w) {
  const auto rho = density(w);
  if (!(rho > 0)) throw DomainError("internal energy: density must be positive");
  return total_energy(w) - momentum(w).squaredNorm() / (2 * rho);
}

template <typename Scalar, int Dim>
struct Primitives {
  Eigen::Matrix<Scalar, Dim, 1> velocity;
  Scalar v;  ///< specific volume 1/rho
  Scalar e;  ///< specific internal energy
};

template <typename Derived>
auto primitives(const Eigen::MatrixBase<Derived>& w) {
  using Scalar = typename Derived::Scalar;
  constexpr int dim = spatial_dim_v<Derived>;
  const Scalar rho = density(w);
  if (!(rho > 0)) throw DomainError("primitives: density must be positive");
  Primitives<Scalar, dim> p;
  p.velocity = momentum(w) / rho;
  p.v = 1 / rho;
  p.e = internal_energy_density(w) / rho;
  return p;
}

/// Conserved state from density, velocity and specific internal energy.
template <typename Scalar, int Dim>
Conserved<Scalar, Dim> make_conserved(Scalar rho, const Eigen::Matrix<Scalar, Dim, 1>& velocity,
                                      Scalar e) {
  Conserved<Scalar, Dim> w;
  w(0) = rho;
  w.template segment<Dim>(1) = rho * velocity;
  w(Dim + 1) = rho * e + rho * velocity.squaredNorm() / 2;
  return w;
}

inline Conserved1d make_conserved(double rho, double u, double e) {
  return make_conserved<double, 1>(rho, Eigen::Matrix<double, 1, 1>(u), e);
}

}  // namespace irp
