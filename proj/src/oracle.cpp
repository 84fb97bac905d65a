#include "dqgate/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dqgate::oracle {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

template <int N>
ComplexMatrix<N> checked_hamiltonian(const HamiltonianFn<N>& h, double t) {
  ComplexMatrix<N> m = h(t);
  const double scale = std::max(1.0, m.norm());
  if (!is_finite<N>(m)) {
    std::ostringstream os;
    os << "Hamiltonian is not finite at t = " << t;
    throw NotHermitianError(os.str());
  }
  if (hermiticity_defect<N>(m) > 1e-12 * scale) {
    std::ostringstream os;
    os << "Hamiltonian is not Hermitian at t = " << t
       << " (||H - H^dag|| = " << hermiticity_defect<N>(m) << ")";
    throw NotHermitianError(os.str());
  }
  return m;
}

template <int N, int Cols>
double error_norm(const Eigen::Matrix<Complex, N, Cols>& err,
                  const Eigen::Matrix<Complex, N, Cols>& y,
                  const Eigen::Matrix<Complex, N, Cols>& y_new,
                  const IntegratorConfig& cfg) {
  double acc = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < Cols; ++j) {
      const double sc =
          cfg.abs_tol +
          cfg.rel_tol * std::max(std::abs(y(i, j)), std::abs(y_new(i, j)));
      const double r = std::abs(err(i, j)) / sc;
      acc += r * r;
    }
  return std::sqrt(acc / (N * Cols));
}

// Nearest unitary (polar factor) of a square matrix.
template <int N>
ComplexMatrix<N> polar_unitary(const ComplexMatrix<N>& m) {
  Eigen::JacobiSVD<ComplexMatrix<N>> svd(m, Eigen::ComputeFullU |
                                                Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

void IntegratorConfig::validate() const {
  auto bad = [](double v) { return !(v > 0.0 && v <= 1e-2); };
  if (bad(rel_tol) || bad(abs_tol))
    throw std::invalid_argument(
        "IntegratorConfig: tolerances must lie in (0, 1e-2]");
  if (max_step < 0.0)
    throw std::invalid_argument("IntegratorConfig: max_step must be >= 0");
  if (max_steps <= 0)
    throw std::invalid_argument("IntegratorConfig: max_steps must be > 0");
}

template <int N, int Cols>
NumericSolution<N, Cols> integrate(const HamiltonianFn<N>& h,
                                   const Eigen::Matrix<Complex, N, Cols>& y0,
                                   double t0, double t1,
                                   const IntegratorConfig& cfg) {
  using State = Eigen::Matrix<Complex, N, Cols>;
  cfg.validate();
  if (!(t1 > t0))
    throw std::invalid_argument("integrate: require t1 > t0");

  const Complex minus_i{0.0, -1.0};
  auto rhs = [&](double t, const State& y, bool check) {
    const ComplexMatrix<N> m =
        check ? checked_hamiltonian<N>(h, t) : ComplexMatrix<N>(h(t));
    return State(minus_i * (m * y));
  };

  NumericSolution<N, Cols> out;
  State y = y0;
  double t = t0;
  const double span = t1 - t0;
  const double max_step = cfg.max_step > 0.0 ? cfg.max_step : span;

  State k1 = rhs(t, y, true);
  const double rate = std::max(1e-12, checked_hamiltonian<N>(h, t0).norm());
  double step = std::min({max_step, span, 0.01 / rate});

  while (t < t1) {
    if (out.accepted_steps + out.rejected_steps >= cfg.max_steps)
      throw StiffnessError("integrate: step budget exhausted at t = " +
                           std::to_string(t));
    const bool last = t + step >= t1;
    const double hstep = last ? t1 - t : step;
    if (hstep <= 1e-14 * std::max(1.0, std::abs(t)))
      throw StiffnessError("integrate: step size underflow at t = " +
                           std::to_string(t));

    const State k2 = rhs(t + c2 * hstep, y + hstep * (a21 * k1), false);
    const State k3 =
        rhs(t + c3 * hstep, y + hstep * (a31 * k1 + a32 * k2), false);
    const State k4 = rhs(t + c4 * hstep,
                         y + hstep * (a41 * k1 + a42 * k2 + a43 * k3), false);
    const State k5 =
        rhs(t + c5 * hstep,
            y + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), false);
    const State k6 = rhs(
        t + hstep,
        y + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5),
        false);
    const State y_new =
        y + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double t_new = last ? t1 : t + hstep;
    const State k7 = rhs(t_new, y_new, true);
    const State err = hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                               e6 * k6 + e7 * k7);

    const double en = error_norm<N, Cols>(err, y, y_new, cfg);
    const double factor =
        en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    if (en <= 1.0) {
      t = t_new;
      y = y_new;
      k1 = k7;
      if constexpr (N == Cols) {
        if (cfg.renormalize) {
          y = polar_unitary<N>(y);
          k1 = rhs(t, y, false);
        }
      }
      ++out.accepted_steps;
      if (!last) step = std::min(max_step, hstep * factor);
    } else {
      ++out.rejected_steps;
      step = hstep * std::min(1.0, factor);
    }
  }
  out.state = y;
  return out;
}

template <int N>
NumericPropagator<N> evolve_numeric(const HamiltonianFn<N>& h, double t0,
                                    double t1, const IntegratorConfig& cfg) {
  auto sol = integrate<N, N>(h, ComplexMatrix<N>::Identity(), t0, t1, cfg);
  NumericPropagator<N> out;
  out.propagator = sol.state;
  out.unitarity_defect = unitarity_defect<N>(sol.state);
  out.accepted_steps = sol.accepted_steps;
  out.rejected_steps = sol.rejected_steps;
  return out;
}

double sech_truncation_time(double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("sech_truncation_time: omega must be > 0");
  return std::acosh(1e14) / omega;
}

template NumericSolution<2, 2> integrate<2, 2>(const HamiltonianFn<2>&,
                                               const Eigen::Matrix<Complex, 2, 2>&,
                                               double, double,
                                               const IntegratorConfig&);
template NumericSolution<4, 4> integrate<4, 4>(const HamiltonianFn<4>&,
                                               const Eigen::Matrix<Complex, 4, 4>&,
                                               double, double,
                                               const IntegratorConfig&);
template NumericSolution<2, 1> integrate<2, 1>(const HamiltonianFn<2>&,
                                               const Eigen::Matrix<Complex, 2, 1>&,
                                               double, double,
                                               const IntegratorConfig&);
template NumericSolution<4, 1> integrate<4, 1>(const HamiltonianFn<4>&,
                                               const Eigen::Matrix<Complex, 4, 1>&,
                                               double, double,
                                               const IntegratorConfig&);
template NumericPropagator<2> evolve_numeric<2>(const HamiltonianFn<2>&, double,
                                                double, const IntegratorConfig&);
template NumericPropagator<4> evolve_numeric<4>(const HamiltonianFn<4>&, double,
                                                double, const IntegratorConfig&);

}  // namespace dqgate::oracle
