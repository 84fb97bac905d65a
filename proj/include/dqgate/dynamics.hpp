#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqgate/algebra.hpp"
#include "dqgate/oracle.hpp"
#include "dqgate/pulse.hpp"

namespace dqgate {

/// Effective single-spin field K(t) = (J(t), 0, B-(t)) seen by the
/// |ud>, |du> block.
struct EffectiveField {
  std::function<Vec3(double)> field;
  Vec3 operator()(double t) const { return field(t); }
};

struct EvolutionResult {
  ComplexMatrix4 propagator;
  double gamma = 0.0;  // integral of B+ over the window, rad
  double phi = 0.0;    // integral of J over the window, rad
  double unitarity_defect = 0.0;
  std::optional<double> oracle_deviation;
};

class NoClosedFormError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class QConstraintError : public std::domain_error {
 public:
  QConstraintError(double max_residual, double at_time);
  double max_residual() const { return max_residual_; }
  double at_time() const { return at_time_; }

 private:
  double max_residual_;
  double at_time_;
};

/// H = first_spin . G + second_spin . F + (J/2) sum_i sigma_i (x) sigma_i.
ComplexMatrix4 build_hamiltonian(const Vec3& first_field,
                                 const Vec3& second_field, double exchange);

/// Parallel z-fields written through B+ and B-:
/// H = [(S3 + R3) B+ - (S3 - R3) B- - J] / 2 + swap * J.
ComplexMatrix4 build_parallel_hamiltonian(double bplus, double bminus,
                                          double exchange);

/// Pure exchange evolution exp(i phi/2) [cos(phi) - i swap sin(phi)], with
/// phi the accumulated exchange phase. phi = pi/4 gives sqrt-swap.
ComplexMatrix4 free_evolution(double phi);

EffectiveField effective_field(const PulseProfile& pulse);

/// Embeds the 2x2 block propagator in the 4x4 one and applies the diagonal
/// phases built from gamma = int B+ and phi = int J.
ComplexMatrix4 lift_two_level(const ComplexMatrix2& u, double gamma, double phi);

/// exp(-i t sigma.K) for constant K.
ComplexMatrix2 constant_field_propagator(const Vec3& field, double t);

/// Field proportional to a fixed unit vector (sin lambda, 0, cos lambda):
/// cos(angle) - i (sigma1 sin lambda + sigma3 cos lambda) sin(angle), with
/// angle = integral of q.
ComplexMatrix2 proportional_propagator(double lambda, double angle);

/// Closed-form block propagator for J = a sech(omega t), B- = c, built from
/// Gauss hypergeometric functions of z = (1 - tanh(omega t)) / 2.
ComplexMatrix2 sech_propagator(double a, double c, double omega, double t);

struct QEvolution {
  EffectiveField field;
  ComplexMatrix2 propagator;
};

/// Largest |q'_2 - (q_1 q'_3 - q_3 q'_1)| on `samples` evenly spaced points.
double q_constraint_residual(const QTrajectory& path, double t_end,
                             int samples = 257, double* worst_time = nullptr);

/// Field and propagator at time t generated by the path q. The constraint
/// is checked to 1e-8 on [0, t] before anything is evaluated.
QEvolution q_evolution(const QTrajectory& path, double t,
                       double constraint_tol = 1e-8);

/// |<du| R |ud>|^2 for the proportional family: sin^2(lambda) sin^2(angle).
double swap_probability(double lambda, double angle);

/// Block propagator from the family's closed form. Throws
/// NoClosedFormError for sampled pulses.
ComplexMatrix2 two_level_propagator(const PulseProfile& pulse, double t);

EvolutionResult evolve_closed_form(const PulseProfile& pulse, double t);

/// Direct 4x4 integration of the full Hamiltonian.
oracle::NumericPropagator<4> evolve_numeric_direct(
    const PulseProfile& pulse, double t, const oracle::IntegratorConfig& cfg);

/// 2x2 integration of sigma.K, lifted with quadrature phases.
EvolutionResult evolve_numeric_reduced(const PulseProfile& pulse, double t,
                                       const oracle::IntegratorConfig& cfg);

/// Closed form where one exists, numerical otherwise; the oracle deviation
/// is filled in when `check` is set.
EvolutionResult evolve(const PulseProfile& pulse, double t,
                       const oracle::IntegratorConfig& cfg, bool check);

struct TrajectorySample {
  double t = 0.0;
  ComplexMatrix4 propagator;
  double unitarity_defect = 0.0;
};

/// Propagator at steps + 1 evenly spaced times across the pulse window.
std::vector<TrajectorySample> propagate_trajectory(
    const PulseProfile& pulse, int steps, const oracle::IntegratorConfig& cfg);

}  // namespace dqgate
