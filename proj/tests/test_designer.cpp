#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dqgate/designer.hpp"
#include "dqgate/dynamics.hpp"
#include "dqgate/units.hpp"

using namespace dqgate;
using namespace dqgate::designer;
using std::numbers::pi;

namespace {

ComplexMatrix4 diag4(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix4 m = ComplexMatrix4::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

const Waveform kShapes[] = {
    Waveform(ConstantWave{0.9}),
    Waveform(SechWave{4.0, 0.15}),
    Waveform(RampWave{1.2, 2.0}),
};

}  // namespace

TEST(XorTarget, DiagonalPhases) {
  const Complex up = std::exp(Complex(0, pi / 4));
  const ComplexMatrix4 want = diag4(std::exp(Complex(0, -3 * pi / 4)), up, up, up);
  EXPECT_LE((xor_target() - want).norm(), 1e-15);
  EXPECT_NEAR(fidelity_phase_invariant<4>(xor_target(), diag4(-1, 1, 1, 1)), 1.0, 1e-15);
}

TEST(XorTarget, LocallyEquivalentToCnot) {
  const double s = 1 / std::sqrt(2.0);
  ComplexMatrix2 h;
  h << s, s, s, -s;
  const ComplexMatrix4 x_x = kron(pauli(1), pauli(1));
  const ComplexMatrix4 local = kron(ComplexMatrix2::Identity(), h);
  ComplexMatrix4 cnot = ComplexMatrix4::Zero();
  cnot(0, 0) = cnot(1, 1) = 1;
  cnot(2, 3) = cnot(3, 2) = 1;
  const ComplexMatrix4 cz_form = x_x * xor_target() * x_x;
  EXPECT_NEAR(fidelity_phase_invariant<4>(local * cz_form * local, cnot), 1.0, 1e-14);
}

TEST(XorSequence, MatchesParallelTarget) {
  EXPECT_GE(fidelity_phase_invariant<4>(xor_sequence(), xor_target()), 1.0 - 1e-12);
  EXPECT_LE(unitarity_defect<4>(xor_sequence()), 1e-14);
}

TEST(XorSequence, InverseRootSwapIsNotXor) {
  const double f = fidelity_phase_invariant<4>(xor_sequence(free_evolution(-pi / 4)),
                                               xor_target());
  EXPECT_LT(f, 0.9);
}

TEST(FirstCrossing, MonotoneAndNonMonotone) {
  const auto mono = first_crossing([](double t) { return t * t; }, 4.0, 1e-3, 10.0);
  ASSERT_TRUE(mono.has_value());
  EXPECT_NEAR(mono->time, 2.0, 1e-12);
  EXPECT_FALSE(mono->non_monotone);

  const auto wiggle = first_crossing([](double t) { return t + 2 * std::sin(t); }, 5.0,
                                     1e-3, 20.0);
  ASSERT_TRUE(wiggle.has_value());
  EXPECT_NEAR(wiggle->time + 2 * std::sin(wiggle->time), 5.0, 1e-11);
  EXPECT_GT(wiggle->time, 4 * pi / 3);
  EXPECT_TRUE(wiggle->non_monotone);

  EXPECT_FALSE(first_crossing([](double t) { return std::tanh(t); }, 2.0, 1e-2, 50.0));
}

TEST(ProportionalDesign, XorForEveryIndexPair) {
  for (auto [n, m] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}, std::pair{3, 2}}) {
    for (const Waveform& q : kShapes) {
      const GateDesign g = design_proportional_xor(n, m, q);
      EXPECT_NEAR(std::sin(*g.lambda), (4.0 * m + 1) / (4.0 * n), 1e-15);
      EXPECT_NEAR(q.integral(g.gate_time), 2 * n * pi, 1e-9);
      EXPECT_GE(g.achieved_fidelity, 1.0 - 1e-8) << n << m << q.describe();
      ASSERT_TRUE(g.oracle_fidelity.has_value());
      EXPECT_GE(*g.oracle_fidelity, 1.0 - 1e-6) << n << m << q.describe();
      EXPECT_EQ(g.bplus_winding, 0);
      EXPECT_NEAR(g.bplus_level * g.gate_time, pi / 2, 1e-12);
    }
  }
}

TEST(ProportionalDesign, PropagatorIndependentOfShape) {
  DesignerOptions opt;
  opt.run_oracle = false;
  const ComplexMatrix4 ref = design_proportional_xor(2, 1, kShapes[0], opt).propagator;
  for (const Waveform& q : kShapes)
    EXPECT_LE((design_proportional_xor(2, 1, q, opt).propagator - ref).norm(), 1e-9)
        << q.describe();
}

TEST(ProportionalDesign, RejectsImpossibleRequests) {
  EXPECT_THROW(design_proportional_xor(0, 0, kShapes[0]), std::invalid_argument);
  EXPECT_THROW(design_proportional_xor(2, 2, kShapes[0]), std::invalid_argument);
  // Total area pi/2 cannot reach 2 pi.
  EXPECT_THROW(design_proportional_xor(1, 0, Waveform(SechWave{1.0, 1.0})),
               DesignInfeasible);
}

TEST(ProportionalDesign, HardwareCapNote) {
  DesignerOptions opt;
  opt.run_oracle = false;
  opt.hardware_cap_tesla = 1e-3;
  const GateDesign g = design_proportional_xor(1, 0, Waveform(ConstantWave{5.0}), opt);
  bool noted = false;
  for (const auto& s : g.notes) noted |= s.find("hardware cap") != std::string::npos;
  EXPECT_TRUE(noted);
  EXPECT_GE(g.achieved_fidelity, 1.0 - 1e-8);
}

TEST(ConstantDesign, GateTimeScalesWithN) {
  DesignerOptions opt;
  opt.run_oracle = false;
  const double t1 = design_constant_xor(0.3, 0.4, 1, opt).gate_time;
  EXPECT_NEAR(t1, 2 * pi / 0.5, 1e-12);
  for (int n = 2; n <= 4; ++n)
    EXPECT_NEAR(design_constant_xor(0.3, 0.4, n, opt).gate_time, n * t1, 1e-11);
  EXPECT_THROW(design_constant_xor(0.0, 0.0, 1, opt), DesignInfeasible);
}

TEST(ConstantDesign, ExactAngleGivesXor) {
  const double lam = std::asin(0.25);
  const GateDesign g = design_constant_xor(std::sin(lam), std::cos(lam), 1);
  EXPECT_GE(g.achieved_fidelity, 1.0 - 1e-12);
  ASSERT_TRUE(g.oracle_fidelity.has_value());
  EXPECT_GE(*g.oracle_fidelity, 1.0 - 1e-6);
}

TEST(ConstantDesign, GaasOrderOfMagnitude) {
  DesignerOptions opt;
  opt.run_oracle = false;
  const double j = units::mev_to_rad_per_ps(0.050);
  const double bm = std::abs(units::zeeman_rad_per_ps(-0.44, 0.010));
  const GateDesign g = design_constant_xor(j, bm, 1, opt);
  EXPECT_GE(g.gate_time, 1.0);
  EXPECT_LE(g.gate_time, 100.0);
}

TEST(Adcond, EqualFieldRoots) {
  // With c = 0 the residual reduces to sin(lambda pi / 2) for omega = 1.
  for (double lam : {0.5, 1.0, 2.0, 3.0, 4.0, 5.5}) {
    const Complex r = adcond_residual(lam, 0.0, 1.0);
    EXPECT_NEAR(r.real(), std::sin(lam * pi / 2), 1e-11) << lam;
    EXPECT_NEAR(r.imag(), 0.0, 1e-14);
  }
  EXPECT_THROW(adcond_residual(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST(Adcond, OmegaTRelation) {
  EXPECT_FALSE(omega_t_for_lambda(1.0, 0).has_value());
  EXPECT_FALSE(omega_t_for_lambda(5.0, 1).has_value());
  for (int m : {0, 1}) {
    for (double lam : {6.0, 9.0, 20.0}) {
      const double wt = *omega_t_for_lambda(lam, m);
      EXPECT_GT(wt, 0.0);
      EXPECT_NEAR(lam, pi * (1 + 4 * m) / (4 * std::atan(std::exp(wt)) - pi), 1e-10);
    }
  }
}

TEST(AdiabaticDesign, EqualFieldsInfeasibleWithTrace) {
  try {
    design_adiabatic_xor(0.0, 1, 0, 100.0);
    FAIL() << "expected DesignInfeasible";
  } catch (const DesignInfeasible& e) {
    bool has_phase = false;
    for (const auto& s : e.trace()) has_phase |= s.find("Phi") != std::string::npos;
    EXPECT_TRUE(has_phase);
  }
  EXPECT_THROW(design_adiabatic_xor(-1.0, 1, 0, 100.0), std::invalid_argument);
  EXPECT_THROW(design_adiabatic_xor(0.5, 0, 0, 100.0), std::invalid_argument);
}

TEST(AdiabaticDesign, WindowTooShortReported) {
  try {
    design_adiabatic_xor(0.01, 1, 0, 10.0);
    FAIL() << "expected DesignInfeasible";
  } catch (const DesignInfeasible& e) {
    ASSERT_FALSE(e.trace().empty());
    EXPECT_NE(e.trace().front().find("exceeds the window"), std::string::npos);
  }
}

TEST(SechIdentity, EvenRatioReturnsToIdentity) {
  for (int k : {1, 2}) {
    const SubBlockDesign s = design_sech_identity(k, 1.0, 20.0);
    EXPECT_GE(s.closed_form_fidelity, 1.0 - 1e-10) << k;
    ASSERT_TRUE(s.oracle_fidelity.has_value());
    EXPECT_GE(*s.oracle_fidelity, 1.0 - 1e-6) << k;
  }
  EXPECT_THROW(design_sech_identity(0, 1.0, 5.0), std::invalid_argument);
}
