#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "dqgate/algebra.hpp"

namespace dqgate::oracle {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Upper bound on the step size in ps; 0 means unbounded.
  double max_step = 0.0;
  /// Project the propagator back onto the unitary group after each step.
  bool renormalize = false;
  long max_steps = 20'000'000;

  void validate() const;
};

class StiffnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitianError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <int N>
using HamiltonianFn = std::function<ComplexMatrix<N>(double)>;

template <int N, int Cols>
struct NumericSolution {
  Eigen::Matrix<Complex, N, Cols> state;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

template <int N>
struct NumericPropagator {
  ComplexMatrix<N> propagator;
  double unitarity_defect = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// Solves i dY/dt = H(t) Y from t0 to t1 with the Dormand-Prince 5(4)
/// embedded pair. Y is N x Cols; every column is advanced together.
template <int N, int Cols>
NumericSolution<N, Cols> integrate(const HamiltonianFn<N>& h,
                                   const Eigen::Matrix<Complex, N, Cols>& y0,
                                   double t0, double t1,
                                   const IntegratorConfig& cfg);

/// Propagator U(t1, t0) of H(t); requires t1 > t0.
template <int N>
NumericPropagator<N> evolve_numeric(const HamiltonianFn<N>& h, double t0,
                                    double t1, const IntegratorConfig& cfg);

/// Time after which |a sech(omega t)| < 1e-14 |a|; the pulse tail beyond it
/// is dropped when integrating to "infinity".
double sech_truncation_time(double omega);

}  // namespace dqgate::oracle
