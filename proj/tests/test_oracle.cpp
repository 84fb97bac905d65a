#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "dqgate/dynamics.hpp"
#include "dqgate/oracle.hpp"

using namespace dqgate;
using oracle::IntegratorConfig;

namespace {

ComplexMatrix4 random_hermitian(std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(nd(g), nd(g));
  return 0.5 * (m + m.adjoint());
}

// Smooth time-dependent Hamiltonian used for the convergence checks.
ComplexMatrix4 driven(double t) {
  return build_hamiltonian(Vec3(0.3 * std::cos(t), 0.0, 0.8),
                           Vec3(0.0, 0.4 * std::sin(2 * t), -0.2), 1.1 / std::cosh(t - 2));
}

}  // namespace

TEST(Oracle, ZeroHamiltonianIsIdentity) {
  const auto r = oracle::evolve_numeric<4>(
      [](double) { return ComplexMatrix4(ComplexMatrix4::Zero()); }, 0.0, 7.0, {});
  EXPECT_LE((r.propagator - ComplexMatrix4::Identity()).norm(), 1e-14);
}

TEST(Oracle, DiagonalHamiltonian) {
  const double b = 0.9, t = 5.0;
  const auto r = oracle::evolve_numeric<4>(
      [b](double) { return build_parallel_hamiltonian(b, 0.0, 0.0); }, 0.0, t, {});
  EXPECT_LE(std::abs(r.propagator(0, 0) - std::exp(-kI * b * t)), 1e-9);
  EXPECT_LE(std::abs(r.propagator(3, 3) - std::exp(kI * b * t)), 1e-9);
  EXPECT_LE(std::abs(r.propagator(1, 1) - 1.0), 1e-9);
}

TEST(Oracle, ConstantHamiltonianMatchesMatrixExponential) {
  std::mt19937_64 g(41);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix4 h = random_hermitian(g);
    const double t = 2.5;
    const ComplexMatrix4 want = ComplexMatrix4(-kI * t * h).exp();
    const auto r = oracle::evolve_numeric<4>([&h](double) { return h; }, 0.0, t, {});
    EXPECT_LE((r.propagator - want).norm(), 1e-9);
    EXPECT_LE(r.unitarity_defect, 1e-9);
  }
}

TEST(Oracle, FreeEvolutionQuarterPhase) {
  const double j = 0.5;
  const double t = (std::numbers::pi / 4) / j;
  const auto r = oracle::evolve_numeric<4>(
      [j](double) { return build_hamiltonian(Vec3::Zero(), Vec3::Zero(), j); }, 0.0, t, {});
  EXPECT_LE((r.propagator - free_evolution(std::numbers::pi / 4)).norm(), 1e-9);
}

TEST(Oracle, CompositionProperty) {
  // 5 times the 1e-9 global accuracy the default tolerances deliver.
  const IntegratorConfig cfg;
  const auto u20 = oracle::evolve_numeric<4>(driven, 0.0, 6.0, cfg).propagator;
  const auto u10 = oracle::evolve_numeric<4>(driven, 0.0, 2.3, cfg).propagator;
  const auto u21 = oracle::evolve_numeric<4>(driven, 2.3, 6.0, cfg).propagator;
  EXPECT_LE((u20 - u21 * u10).norm(), 5e-9);
}

TEST(Oracle, ErrorShrinksWithTolerance) {
  IntegratorConfig ref;
  ref.rel_tol = 1e-13;
  ref.abs_tol = 1e-15;
  const auto exact = oracle::evolve_numeric<4>(driven, 0.0, 6.0, ref).propagator;
  double previous = 1e300;
  for (double tol : {1e-5, 1e-7, 1e-9}) {
    IntegratorConfig cfg;
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-2;
    const double err =
        (oracle::evolve_numeric<4>(driven, 0.0, 6.0, cfg).propagator - exact).norm();
    EXPECT_LT(err, previous) << tol;
    previous = err;
  }
  EXPECT_LE(previous, 1e-8);
}

TEST(Oracle, SpinorNormPreserved) {
  Spinor4 psi(0.5, Complex(0.5, 0.1), Complex(-0.3, 0.4), 0.2);
  psi.normalize();
  const auto sol = oracle::integrate<4, 1>(driven, psi, 0.0, 20.0, {});
  EXPECT_NEAR(sol.state.norm(), 1.0, 1e-9);
  EXPECT_GT(sol.accepted_steps, 0);
}

TEST(Oracle, RenormalizedRunStaysUnitary) {
  IntegratorConfig cfg;
  cfg.renormalize = true;
  const auto r = oracle::evolve_numeric<4>(driven, 0.0, 6.0, cfg);
  EXPECT_LE(r.unitarity_defect, 1e-13);
}

TEST(Oracle, RejectsNonHermitian) {
  ComplexMatrix4 bad = ComplexMatrix4::Zero();
  bad(0, 1) = 1.0;
  EXPECT_THROW(oracle::evolve_numeric<4>([&bad](double) { return bad; }, 0.0, 1.0, {}),
               oracle::NotHermitianError);
}

TEST(Oracle, RejectsBadInputs) {
  const auto h = [](double) { return ComplexMatrix4(ComplexMatrix4::Zero()); };
  EXPECT_THROW(oracle::evolve_numeric<4>(h, 1.0, 1.0, {}), std::invalid_argument);
  IntegratorConfig cfg;
  cfg.rel_tol = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_THROW(oracle::evolve_numeric<4>(h, 0.0, 1.0, cfg), std::invalid_argument);
}

TEST(Oracle, StepBudgetExhaustion) {
  IntegratorConfig cfg;
  cfg.max_steps = 10;
  EXPECT_THROW(oracle::evolve_numeric<4>(driven, 0.0, 50.0, cfg), oracle::StiffnessError);
}

TEST(Oracle, SechTruncation) {
  for (double w : {0.1, 1.0, 3.0}) {
    const double t = oracle::sech_truncation_time(w);
    EXPECT_NEAR(1.0 / std::cosh(w * t), 1e-14, 1e-16) << w;
  }
}
