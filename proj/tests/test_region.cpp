#include <cmath>
#include <memory>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "irp/errors.hpp"
#include "irp/fd_hessian.hpp"
#include "irp/polytropic.hpp"
#include "irp/region.hpp"
#include "irp/state.hpp"
#include "irp/tait.hpp"
#include "irp/verification.hpp"
#include "support.hpp"

using namespace irp;
using irp::test::rel_diff;

namespace {

std::vector<std::shared_ptr<Eos>> models() {
  TaitParams nu1;
  nu1.nu = 1.0;
  return {std::make_shared<PolytropicGas>(PolytropicParams{1.4, 1.0}),
          std::make_shared<TaitEos>(TaitParams{}), std::make_shared<TaitEos>(nu1)};
}

Conserved<double, 2> make2d(double rho, double ux, double uy, double e) {
  return make_conserved<double, 2>(rho, Eigen::Vector2d(ux, uy), e);
}

}  // namespace

TEST(ConservedState, Primitives) {
  const auto p = primitives(Conserved1d(1.0, 0.0, 2.5));
  EXPECT_EQ(p.velocity(0), 0.0);
  EXPECT_EQ(p.v, 1.0);
  EXPECT_EQ(p.e, 2.5);
  const auto q = primitives(Conserved1d(2.0, 2.0, 5.0));
  EXPECT_EQ(q.velocity(0), 1.0);
  EXPECT_EQ(q.v, 0.5);
  EXPECT_EQ(q.e, 2.0);
  EXPECT_THROW(primitives(Conserved1d(0.0, 1.0, 1.0)), DomainError);
}

TEST(ConservedState, MakeConservedRoundTrip) {
  irp::test::Sampler rng(101);
  for (int i = 0; i < 1000; ++i) {
    const double rho = rng.log_uniform(0.01, 100.0);
    const double u = rng.uniform(-10.0, 10.0);
    const double e = rng.log_uniform(0.01, 100.0);
    const auto p = primitives(make_conserved(rho, u, e));
    EXPECT_LT(rel_diff(p.velocity(0), u), 1e-14);
    EXPECT_LT(rel_diff(p.e, e), 1e-10);
    // Kinetic bound: e >= 0 exactly when E >= |m|^2 / (2 rho).
    const Conserved1d w = make_conserved(rho, u, e);
    EXPECT_GE(w(2), w(1) * w(1) / (2.0 * w(0)));
  }
  const auto w2 = make2d(2.0, 1.0, -1.0, 3.0);
  EXPECT_DOUBLE_EQ(w2(3), 2.0 * 3.0 + 0.5 * 2.0 * 2.0);
  EXPECT_DOUBLE_EQ(primitives(w2).e, 3.0);
}

TEST(ConservedState, InternalEnergyDensity) {
  EXPECT_EQ(internal_energy_density(Conserved1d(1.0, 0.0, 1.0)), 1.0);
  EXPECT_EQ(internal_energy_density(Conserved1d(0.125, 0.0, 0.25)), 0.25);
  EXPECT_EQ(internal_energy_density(Conserved1d(1.0, 1.0, 0.5)), 0.0);
  EXPECT_THROW(internal_energy_density(Conserved1d(-1.0, 0.0, 1.0)), DomainError);
}

TEST(QFunction, Examples) {
  PolytropicGas gas({1.4, 1.0});
  const Conserved1d w(1.0, 0.0, 2.5);  // rho = 1, P = 1
  InvariantRegion region;
  region.s0 = 0.0;
  EXPECT_NEAR(q_value(w, gas, region), -std::log(2.5), 1e-15);
  region.s0 = std::log(2.5);
  EXPECT_NEAR(q_value(w, gas, region), 0.0, 1e-15);
  const Conserved1d w2 = make_conserved(3.0, 1.5, 0.7);
  InvariantRegion a{0.2};
  InvariantRegion b{0.2 + 0.05};
  EXPECT_NEAR(q_value(w2, gas, b) - q_value(w2, gas, a), 3.0 * 0.05, 1e-14);
  EXPECT_THROW(q_value(Conserved1d(1.0, 2.0, 1.0), gas, region), DomainError);
  EXPECT_THROW(q_value(Conserved1d(0.0, 0.0, 1.0), gas, region), DomainError);
}

TEST(Membership, Examples) {
  PolytropicGas gas({1.4, 1.0});
  InvariantRegion region{-10.0};
  EXPECT_TRUE(in_invariant_region(Conserved1d(1.0, 0.0, 2.5), gas, region));
  const auto neg = in_invariant_region(Conserved1d(-1.0, 0.0, 1.0), gas, region);
  EXPECT_FALSE(neg);
  EXPECT_EQ(neg.violated, Constraint::rho);
  const auto cold = in_invariant_region(Conserved1d(1.0, 2.0, 1.0), gas, region);
  EXPECT_FALSE(cold);
  EXPECT_EQ(cold.violated, Constraint::R);
  InvariantRegion high{5.0};
  const auto low_s = in_invariant_region(Conserved1d(1.0, 0.0, 2.5), gas, high);
  EXPECT_FALSE(low_s);
  EXPECT_EQ(low_s.violated, Constraint::q);
  EXPECT_EQ(to_string(Constraint::q), "q");
  EXPECT_EQ(to_string(Constraint::rho), "rho");
  EXPECT_EQ(to_string(Constraint::R), "R");
}

TEST(Membership, FailedInversionCountsAsQ) {
  TaitEos tait(TaitParams{});
  // Internal energy below the zero-temperature curve at v = 1.
  const auto m = in_invariant_region(Conserved1d(1.0, 0.0, 5.0), tait, InvariantRegion{-100.0});
  EXPECT_FALSE(m);
  EXPECT_EQ(m.violated, Constraint::q);
}

TEST(Membership, TwoDimensionalMomentumUsesItsNorm) {
  PolytropicGas gas({1.4, 1.0});
  InvariantRegion region{0.0};
  const auto w2 = make2d(1.0, 0.6, 0.8, 2.5);
  const Conserved1d w1 = make_conserved(1.0, 1.0, 2.5);
  EXPECT_NEAR(q_value(w2, gas, region), q_value(w1, gas, region), 1e-15);
  EXPECT_EQ(bool(in_invariant_region(w2, gas, region)), bool(in_invariant_region(w1, gas, region)));
}

TEST(HessianMinors, EnergyEntryIsPositive) {
  for (const auto& eos : models()) {
    for (const auto& w : sample_region_states(*eos, 500, 103)) {
      const double v = 1.0 / w(0);
      const auto p = primitives(w);
      const auto G = entropy_derivatives(*eos, {eos->entropy_from_ev(p.e, p.v), p.v});
      EXPECT_GT(-v * G.G_ee, 0.0);
      EXPECT_LT(rel_diff(q_hessian(w, *eos)(2, 2), -v * G.G_ee), 1e-14);
    }
  }
}

TEST(HessianMinors, PolytropicStateAgreesWithFiniteDifferences) {
  PolytropicGas gas({1.4, 1.0});
  const Conserved1d w(1.0, 1.0, 2.0);
  InvariantRegion region{0.0};
  auto q = [&](const Eigen::Vector3d& x) { return q_value(Conserved1d(x), gas, region); };
  const auto fd = oracle::fd_hessian_with_minors(q, w);
  const auto closed = q_hessian_minors(w, gas);
  EXPECT_LT(rel_diff(fd.minors(0), closed.q_rr), 1e-6);
  EXPECT_LT(rel_diff(fd.minors(1), closed.A), 1e-6);
  EXPECT_LT(rel_diff(fd.minors(2), closed.B), 1e-6);
  const Eigen::Matrix3d H = q_hessian(w, gas);
  EXPECT_LE((H - fd.hessian).cwiseAbs().maxCoeff(), 1e-6 * H.cwiseAbs().maxCoeff());
}

TEST(HessianMinors, MatchTheHessianEntries) {
  for (const auto& eos : models()) {
    for (const auto& w : sample_region_states(*eos, 1000, 107)) {
      const Eigen::Matrix3d H = q_hessian(w, *eos);
      const auto m = q_hessian_minors(w, *eos);
      const double s = H.cwiseAbs().maxCoeff();
      EXPECT_LE(std::abs(m.q_rr - H(0, 0)), 1e-10 * s);
      EXPECT_LE(std::abs(m.A - (H(0, 0) * H(1, 1) - H(0, 1) * H(0, 1))), 1e-9 * s * s);
      EXPECT_LE(std::abs(m.B - H.determinant()), 1e-8 * s * s * s);
      EXPECT_GT(m.q_rr, 0.0);
      EXPECT_GT(m.A, 0.0);
      EXPECT_GT(m.B, 0.0);
    }
  }
}

TEST(HessianMinors, IndependentOfEntropyFloor) {
  PolytropicGas gas({1.4, 1.0});
  const Conserved1d w(1.3, -0.4, 3.0);
  for (double s0 : {-5.0, 0.0, 2.0}) {
    InvariantRegion region{s0};
    auto q = [&](const Eigen::Vector3d& x) { return q_value(Conserved1d(x), gas, region); };
    const auto fd = oracle::fd_hessian_with_minors(q, w);
    const auto closed = q_hessian_minors(w, gas);
    EXPECT_LT(rel_diff(fd.minors(2), closed.B), 1e-6) << s0;
  }
}

TEST(RegionVerification, ClosedFormsAgreeWithOracle) {
  for (const auto& eos : models()) {
    for (const auto& w : sample_region_states(*eos, 300, 109)) {
      const RegionCheck c = verify_region_at(w, *eos);
      EXPECT_TRUE(c.ok()) << eos->name() << " w=" << w.transpose()
                          << " rel=" << c.rel_error.transpose();
    }
  }
}

TEST(Concavity, EntropyFunctionIsStrictlyConcave) {
  for (const auto& eos : models()) {
    for (const auto& w : sample_region_states(*eos, 10000, 113)) {
      const auto p = primitives(w);
      const auto G = entropy_derivatives(*eos, {eos->entropy_from_ev(p.e, p.v), p.v});
      EXPECT_LT(G.G_ee, 0.0);
      EXPECT_LT(G.G_vv, 0.0);
      EXPECT_GT(G.G_vv * G.G_ee, G.G_ev * G.G_ev);
    }
  }
}

TEST(Concavity, MidpointInequalities) {
  for (const auto& eos : models()) {
    const auto states = sample_region_states(*eos, 2001, 127);
    InvariantRegion region{0.0};
    for (std::size_t i = 0; i + 1 < states.size(); i += 2) {
      const Conserved1d& a = states[i];
      const Conserved1d& b = states[i + 1];
      const Conserved1d mid = 0.5 * (a + b);
      const double Ra = internal_energy_density(a);
      const double Rb = internal_energy_density(b);
      const double Rm = internal_energy_density(mid);
      const double rscale = std::max({std::abs(Ra), std::abs(Rb), std::abs(Rm), 1.0});
      EXPECT_GE(Rm, 0.5 * (Ra + Rb) - 1e-12 * rscale);
      double qm;
      try {
        qm = q_value(mid, *eos, region);
      } catch (const Error&) {
        continue;  // midpoint outside the domain of the entropy function
      }
      const double qa = q_value(a, *eos, region);
      const double qb = q_value(b, *eos, region);
      const double qscale = std::max({std::abs(qa), std::abs(qb), 1.0});
      EXPECT_LE(qm, 0.5 * (qa + qb) + 1e-12 * qscale);
    }
  }
}

TEST(Concavity, FiniteDifferenceHessianIsPositiveSemidefinite) {
  for (const auto& eos : models()) {
    for (const auto& w : sample_region_states(*eos, 200, 131)) {
      const auto check = verify_region_at(w, *eos);
      EXPECT_GE(check.fd_min_eigenvalue, -1e-8 * check.fd_scale);
      const Eigen::Matrix3d H = q_hessian(w, *eos);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H);
      EXPECT_GT(es.eigenvalues().minCoeff(), -1e-8 * H.cwiseAbs().maxCoeff());
    }
  }
}
