#include "dqgate/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dqgate::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286061;

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

std::string fmt_params(Complex a, Complex b, Complex c, double z) {
  std::ostringstream os;
  os.precision(10);
  os << "(alpha=" << a << ", beta=" << b << ", gamma=" << c << ", z=" << z
     << ")";
  return os.str();
}

// log(sin(pi z)) without overflow for large |Im z|.
Complex log_sin_pi(Complex z) {
  const Complex i{0.0, 1.0};
  if (z.imag() > 20.0)
    return -i * kPi * z - std::log(2.0 * i) +
           std::log(1.0 - std::exp(2.0 * i * kPi * z));
  if (z.imag() < -20.0)
    return i * kPi * z - std::log(-2.0 * i) +
           std::log(1.0 - std::exp(-2.0 * i * kPi * z));
  return std::log(std::sin(kPi * z));
}

// Whether the series with these upper/lower parameters is already in the
// regime where successive term ratios are below one.
bool ratio_below_one(Complex a, Complex b, Complex c, double z, int n) {
  const double r = std::abs((a + double(n)) * (b + double(n)) /
                            ((c + double(n)) * double(n + 1))) *
                   std::abs(z);
  return r < 1.0;
}

// Plain 2F1 power series; valid for |z| < 1 and best for |z| <= 1/2.
Complex series_2f1(Complex a, Complex b, Complex c, double z) {
  Complex term = 1.0;
  Complex sum = 1.0;
  int small_in_a_row = 0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) *
            z;
    sum += term;
    if (term == 0.0) return sum;
    const double scale = std::max(std::abs(sum), 1e-300);
    if (std::abs(term) <= kEps * scale && ratio_below_one(a, b, c, z, n + 1)) {
      if (++small_in_a_row >= 2) return sum;
    } else {
      small_in_a_row = 0;
    }
  }
  const double bound = std::abs(term) / std::max(std::abs(sum), 1e-300);
  throw AccuracyError("gauss_2f1: series did not converge in " +
                          std::to_string(kMaxSeriesTerms) + " terms for " +
                          fmt_params(a, b, c, z),
                      bound);
}

// Terminating series when alpha or beta is 0, -1, -2, ...
Complex polynomial_2f1(Complex a, Complex b, Complex c, double z) {
  const int degree = static_cast<int>(std::lround(
      -(is_nonpositive_integer(a) ? a.real() : b.real())));
  Complex term = 1.0;
  Complex sum = 1.0;
  for (int n = 0; n < degree; ++n) {
    term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) *
            z;
    sum += term;
  }
  return sum;
}

// z -> 1 - z connection when gamma - alpha - beta = m is a non-negative
// integer (logarithmic case).
Complex log_connection_2f1(Complex a, Complex b, Complex c, int m, double z) {
  const double w = 1.0 - z;
  const double log_w = std::log(w);

  Complex finite_part = 0.0;
  if (m > 0) {
    // Gamma(m) Gamma(c) / (Gamma(a + m) Gamma(b + m)) sum_{n<m} ...
    double gamma_m = 1.0;
    for (int k = 2; k < m; ++k) gamma_m *= k;
    const Complex pref = gamma_m * std::exp(log_gamma(c)) *
                         rgamma(a + double(m)) * rgamma(b + double(m));
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int n = 0; n + 1 < m; ++n) {
      term *= (a + double(n)) * (b + double(n)) /
              (double(n + 1) * double(1 - m + n)) * w;
      sum += term;
    }
    finite_part = pref * sum;
  }

  double m_factorial = 1.0;
  for (int k = 2; k <= m; ++k) m_factorial *= k;

  double psi_n1 = -kEulerGamma;  // psi(n + 1)
  double psi_nm1 = -kEulerGamma;  // psi(n + m + 1)
  for (int k = 1; k <= m; ++k) psi_nm1 += 1.0 / k;
  Complex psi_a = digamma(a + double(m));  // psi(a + n + m)
  Complex psi_b = digamma(b + double(m));  // psi(b + n + m)

  Complex coeff = 1.0 / m_factorial;
  Complex sum = 0.0;
  int small_in_a_row = 0;
  int n = 0;
  for (; n < kMaxSeriesTerms; ++n) {
    const Complex bracket = log_w - psi_n1 - psi_nm1 + psi_a + psi_b;
    const Complex contribution = coeff * bracket;
    sum += contribution;
    const double scale = std::max(std::abs(sum), 1e-300);
    if (std::abs(contribution) <= kEps * scale && n > 2 &&
        ratio_below_one(a + double(m), b + double(m), Complex(double(m)), w, n)) {
      if (++small_in_a_row >= 2) break;
    } else {
      small_in_a_row = 0;
    }
    coeff *= (a + double(m + n)) * (b + double(m + n)) /
             (double(n + 1) * double(n + m + 1)) * w;
    psi_n1 += 1.0 / double(n + 1);
    psi_nm1 += 1.0 / double(n + m + 1);
    psi_a += 1.0 / (a + double(m + n));
    psi_b += 1.0 / (b + double(m + n));
  }
  if (n == kMaxSeriesTerms)
    throw AccuracyError("gauss_2f1: logarithmic connection series did not "
                        "converge for " + fmt_params(a, b, c, z),
                        std::abs(coeff) / std::max(std::abs(sum), 1e-300));

  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  const Complex log_pref = std::exp(log_gamma(c)) * rgamma(a) * rgamma(b);
  return finite_part - sign * std::pow(w, m) * log_pref * sum;
}

// z -> 1 - z connection for non-integer gamma - alpha - beta.
Complex connection_2f1(Complex a, Complex b, Complex c, Complex s, double z) {
  const double w = 1.0 - z;
  const Complex lg_c = log_gamma(c);
  const Complex first = std::exp(lg_c + log_gamma(s)) * rgamma(c - a) *
                        rgamma(c - b) * series_2f1(a, b, 1.0 - s, w);
  const Complex second = std::exp(s * std::log(w) + lg_c + log_gamma(-s)) *
                         rgamma(a) * rgamma(b) *
                         series_2f1(c - a, c - b, 1.0 + s, w);
  return first + second;
}

Complex gauss_2f1_impl(Complex a, Complex b, Complex c, double z) {
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b))
    return polynomial_2f1(a, b, c, z);
  if (z <= 0.5) return series_2f1(a, b, c, z);

  const Complex s = c - a - b;
  const double s_round = std::round(s.real());
  const bool integer_s =
      std::abs(s.real() - s_round) < 1e-12 && std::abs(s.imag()) < 1e-12;
  if (!integer_s) return connection_2f1(a, b, c, s, z);

  const int m = static_cast<int>(s_round);
  if (m < 0) {
    // Euler: F(a,b;c;z) = (1-z)^(c-a-b) F(c-a, c-b; c; z), which flips the
    // sign of the integer offset.
    return std::pow(1.0 - z, m) * gauss_2f1_impl(c - a, c - b, c, z);
  }
  return log_connection_2f1(a, b, c, m, z);
}

}  // namespace

bool is_nonpositive_integer(Complex z, double tol) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

Complex log_gamma(Complex z) {
  if (is_nonpositive_integer(z, 0.0))
    throw DomainError("log_gamma: pole at non-positive integer");
  if (z.real() < 0.5)
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    x += kLanczos[i] / (z + double(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z, 0.0)) return 0.0;
  return std::exp(-log_gamma(z));
}

Complex digamma(Complex z) {
  if (is_nonpositive_integer(z, 0.0))
    throw DomainError("digamma: pole at non-positive integer");
  if (z.real() < 0.5) return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  Complex result = 0.0;
  while (z.real() < 12.0) {
    result -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  const Complex tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760))))));
  return result + std::log(z) - 0.5 * inv - tail;
}

Complex gauss_2f1(const HyperParams& p) {
  if (!(p.z >= 0.0 && p.z < 1.0))
    throw DomainError("gauss_2f1: z must lie in [0, 1), got " +
                      std::to_string(p.z));
  if (is_nonpositive_integer(p.gamma))
    throw DomainError("gauss_2f1: gamma is a non-positive integer " +
                      fmt_params(p.alpha, p.beta, p.gamma, p.z));
  return gauss_2f1_impl(p.alpha, p.beta, p.gamma, p.z);
}

double bessel_i0_scaled(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("bessel_i0: argument must be finite and >= 0");
  if (x <= 30.0) return std::exp(-x) * bessel_i0(x);
  // Hankel asymptotic expansion; truncated at its smallest term.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < kEps * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

double bessel_i0(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw DomainError("bessel_i0: argument must be finite and >= 0");
  if (x > 30.0) return std::exp(x) * bessel_i0_scaled(x);
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k));
    sum += term;
    if (term < 0.25 * kEps * sum) break;
  }
  return sum;
}

}  // namespace dqgate::specfun
