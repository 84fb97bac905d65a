#pragma once

// Independent SI-unit oracles for the exchange function, shared by the unit
// tests and the acceptance run.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace exchange_oracles {

using std::numbers::pi;

// CODATA 2018 values with exact h and e.
inline constexpr double kHbar = 6.62607015e-34 / (2 * pi);
inline constexpr double kMe = 9.1093837015e-31;
inline constexpr double kE = 1.602176634e-19;
inline constexpr double kEps0 = 8.8541878128e-12;
inline constexpr double kMass = 0.067 * kMe;
inline constexpr double kEnergy = 3e-3 * kE;  // hbar omega0 in joule
inline constexpr double kKappa = 13.1;

inline double si_bohr_radius() { return kHbar / std::sqrt(kMass * kEnergy); }

inline double si_coulomb_mev() {
  return kE * kE / (4 * pi * kEps0 * kKappa * si_bohr_radius()) / kE * 1e3;
}

// Equal-field Heitler-London exchange in meV, written from scratch in SI.
inline double equal_field_oracle(double tesla, double d) {
  const double omega0 = kEnergy / kHbar;
  const double larmor = kE * tesla / (2 * kMass);
  const double b = std::sqrt(1 + larmor * larmor / (omega0 * omega0));
  const double c = std::sqrt(pi / 2) * si_coulomb_mev() / 3.0;
  const double d2 = d * d;
  const double x = d2 * (b - 1 / b);
  const double bracket =
      c * std::sqrt(b) *
          (std::exp(-b * d2) * std::cyl_bessel_i(0.0, b * d2) -
           std::exp(x) * std::cyl_bessel_i(0.0, x)) +
      3.0 / (4 * b) * (1 + b * d2);
  return 3.0 / std::sinh(2 * d2 * (2 * b - 1 / b)) * bracket;
}

// E[1/|r|] for r ~ N(mu e_x, sigma^2 I) in the plane, by 2-D quadrature.
inline double inverse_distance_mean(double mu, double sigma) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double r_max = mu + 14 * sigma;
  auto radial = [&](double theta) {
    auto f = [&](double r) {
      const double e = (r * r - 2 * r * mu * std::cos(theta) + mu * mu) / (2 * sigma * sigma);
      return std::exp(-e) / (2 * pi * sigma * sigma);
    };
    return GK::integrate(f, 0.0, r_max, 12, 1e-13);
  };
  return 2.0 * GK::integrate(radial, 0.0, pi, 12, 1e-12);
}

// Coulomb matrix-element combination at zero field for GaAs: the direct
// term minus its zero-separation counterpart, in meV.
inline double zero_field_coulomb_mev(double d) {
  const double a0 = si_bohr_radius();
  return si_coulomb_mev() * a0 *
         (inverse_distance_mean(2 * d * a0, a0) - inverse_distance_mean(0.0, a0));
}

}  // namespace exchange_oracles
