#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dqgate::specfun {

using Complex = std::complex<double>;

/// Parameters of 2F1(alpha, beta; gamma; z) for real z in [0, 1).
struct HyperParams {
  Complex alpha;
  Complex beta;
  Complex gamma;
  double z = 0.0;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Series failed to reach the requested accuracy within the term cap.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const { return achieved_bound_; }

 private:
  double achieved_bound_;
};

inline constexpr int kMaxSeriesTerms = 10000;

/// Gauss hypergeometric function. Sums the defining series directly for
/// z <= 1/2 and goes through the z -> 1 - z connection formula above that,
/// including the logarithmic form when gamma - alpha - beta is an integer.
Complex gauss_2f1(const HyperParams& p);

// Lanczos approximation (g = 7, 9 coefficients) with reflection for
// Re z < 1/2. Relative accuracy is about 1e-13 over the parameter ranges
// used here; the branch of the logarithm is not normalised.
Complex log_gamma(Complex z);
Complex gamma(Complex z);
/// 1/Gamma(z), exactly zero at the poles z = 0, -1, -2, ...
Complex rgamma(Complex z);
Complex digamma(Complex z);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);
/// exp(-x) I0(x); finite for every finite x >= 0.
double bessel_i0_scaled(double x);

// True when z lies within `tol` of one of 0, -1, -2, ...
bool is_nonpositive_integer(Complex z, double tol = 1e-12);

}  // namespace dqgate::specfun
