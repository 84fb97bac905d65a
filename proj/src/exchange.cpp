#include "dqgate/exchange.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dqgate/specfun.hpp"
#include "dqgate/units.hpp"

namespace dqgate::exchange {

namespace {

std::string point_string(const ExchangeInputs& in) {
  std::ostringstream os;
  os.precision(17);
  os << "(b- = " << in.bminus << ", b+ = " << in.bplus << ", d = " << in.d
     << ", Delta = " << in.delta << ")";
  return os.str();
}

double overlap_factor_at(double m, double delta) {
  const double den = 2.0 * std::sinh(2.0 * m) +
                     delta * std::exp(-2.0 * m) * (2.0 - delta * delta * delta);
  if (!(std::abs(den) > 1e-300) || !std::isfinite(den))
    throw SingularConfigurationError(
        "overlap_factor: denominator vanishes or overflows");
  return (1.0 - delta * delta) / den;
}

// exp(x) I0(x) for x of either sign, through the scaled Bessel function.
double exp_i0(double x) {
  const double ax = std::abs(x);
  return std::exp(x + ax) * specfun::bessel_i0_scaled(ax);
}

}  // namespace

void DotParameters::validate() const {
  if (!(omega0 > 0.0) || !(a > 0.0) || !(kappa > 0.0) || !(mass > 0.0) ||
      !std::isfinite(omega0 + a + kappa + mass + g1 + g2))
    throw std::invalid_argument(
        "DotParameters: omega0, a, kappa and mass must be finite and > 0");
}

double DotParameters::hbar_omega0_mev() const {
  return units::rad_per_ps_to_mev(omega0);
}

double DotParameters::bohr_radius_nm() const {
  const double m_kg = mass * units::kElectronMassKg;
  return std::sqrt(units::kHbarJs / (m_kg * omega0 * 1e12)) * 1e9;
}

DotParameters gaas_preset(double d) {
  DotParameters p;
  p.omega0 = units::mev_to_rad_per_ps(3.0);
  p.kappa = 13.1;
  p.mass = 0.067;
  p.g1 = -0.44;
  p.g2 = -0.44;
  p.a = d * p.bohr_radius_nm();
  return p;
}

DotFrequencies dot_frequencies(const DotParameters& p, const FieldPair& f) {
  p.validate();
  if (!std::isfinite(f.b1) || !std::isfinite(f.b2))
    throw std::invalid_argument("FieldPair: fields must be finite");
  // omega_L = e B / (2 m), SI, converted to rad/ps.
  const double coef =
      units::kElementaryChargeC / (2.0 * p.mass * units::kElectronMassKg) * 1e-12;
  DotFrequencies out;
  out.larmor_minus = coef * f.b1;
  out.larmor_plus = coef * f.b2;
  out.bminus = std::hypot(1.0, out.larmor_minus / p.omega0);
  out.bplus = std::hypot(1.0, out.larmor_plus / p.omega0);
  out.d = p.a / p.bohr_radius_nm();
  return out;
}

double delta_closed_form(double bplus_prime, double bminus_prime,
                         double field_scale) {
  const double s = 4.0 * field_scale * field_scale + bplus_prime * bplus_prime +
                   bminus_prime * bminus_prime;
  const double cross = 2.0 * bplus_prime * bminus_prime;
  return bplus_prime * bminus_prime /
         (2.0 * (s + std::sqrt(s * s - cross * cross)));
}

double delta_from_fields(const DotParameters& p, double bplus_prime,
                         double bminus_prime) {
  p.validate();
  return delta_closed_form(bplus_prime, bminus_prime,
                           p.hbar_omega0_mev() / units::kBohrMagnetonMeVperT);
}

ExchangeInputs exchange_inputs(const DotParameters& p, const FieldPair& f) {
  const DotFrequencies fr = dot_frequencies(p, f);
  ExchangeInputs in;
  in.bminus = fr.bminus;
  in.bplus = fr.bplus;
  in.d = fr.d;
  in.delta = (fr.bminus - fr.bplus) / (fr.bminus + fr.bplus);
  in.larmor_sum_ratio = (fr.larmor_plus + fr.larmor_minus) / p.omega0;
  in.hbar_omega0 = p.hbar_omega0_mev();
  in.coulomb_scale = units::kCoulombMeVnm / (p.kappa * p.bohr_radius_nm());
  return in;
}

double overlap_exponent(const ExchangeInputs& in) {
  const double r = in.larmor_sum_ratio / 2.0;
  return 2.0 * in.d * in.d / (in.bplus + in.bminus) *
         (in.bminus * in.bplus + r * r);
}

double overlap_factor(const ExchangeInputs& in) {
  const double m = overlap_exponent(in);
  if (!(m > 0.0))
    throw SingularConfigurationError("overlap_factor: M must be > 0 at " +
                                     point_string(in));
  return overlap_factor_at(m, in.delta);
}

double w_matrix_elements(const ExchangeInputs& in) {
  const double d2 = in.d * in.d;
  const double dl2 = in.delta * in.delta;
  const double bs = in.bminus + in.bplus;
  const double one_m = 1.0 - dl2;
  return in.hbar_omega0 / 2.0 *
         (3.0 / (2.0 * d2 * bs * bs) * ((1.0 + dl2) / (one_m * one_m) - 1.0) -
          3.0 * ((dl2 - 1.0) / bs) -
          d2 / 2.0 * (dl2 * dl2 - 6.0 * dl2 - 3.0));
}

double c_matrix_elements(const ExchangeInputs& in) {
  const double d2 = in.d * in.d;
  const double dl2 = in.delta * in.delta;
  const double bbar = (in.bminus + in.bplus) / 2.0;

  double radicand = std::pow((1.0 - dl2) * bbar, 2) - 2.0 * (1.0 + dl2) +
                    1.0 / (bbar * bbar);
  if (radicand < 0.0) {
    // The radicand is exactly zero when one of the fields vanishes, so
    // rounding can push it slightly negative.
    if (radicand > -1e-12 * (bbar * bbar + 1.0))
      radicand = 0.0;
    else
      throw RadicandError("c_matrix_elements: negative radicand " +
                          std::to_string(radicand) + " in K at " +
                          point_string(in));
  }
  const double k = bbar * (1.0 + dl2) - 1.0 / bbar + std::sqrt(radicand);
  const double x1 = d2 * (1.0 - dl2) * bbar;
  const double x2 = d2 * k / 2.0;
  const double direct = std::sqrt(1.0 - dl2) * specfun::bessel_i0_scaled(x1);
  return in.coulomb_scale * std::sqrt(std::numbers::pi / 2.0 * bbar) *
         (direct - exp_i0(x2));
}

ExchangeBreakdown exchange_J(const DotParameters& p, const FieldPair& f) {
  const ExchangeInputs in = exchange_inputs(p, f);
  if (!(std::abs(in.delta) < 1.0))
    throw SingularConfigurationError("exchange_J: |Delta| must be < 1 at " +
                                     point_string(in));
  ExchangeBreakdown out;
  out.delta = in.delta;
  out.bplus = in.bplus;
  out.bminus = in.bminus;
  out.d = in.d;
  out.s2_factor = overlap_factor(in);
  out.w_term = w_matrix_elements(in);
  out.c_term = c_matrix_elements(in);
  out.extra_term = in.hbar_omega0 / 4.0 *
                   (in.bplus * in.bplus - in.bminus * in.bminus) *
                   (in.bminus - in.bplus) / (in.bplus * in.bminus);
  out.J = 2.0 * out.s2_factor * (out.w_term + out.c_term - out.extra_term);

  const double mirrored = overlap_factor_at(overlap_exponent(in), -in.delta);
  out.overlap_asymmetry = std::abs(out.s2_factor - mirrored) / out.s2_factor;

  if (in.d < 0.7 - 1e-12)
    out.warnings.push_back(
        "d < 0.7: Heitler-London approximation is unreliable");
  if (std::abs(out.J) > 0.1 * in.hbar_omega0)
    out.warnings.push_back(
        "|J| > 0.1 hbar omega0: Heitler-London approximation is unreliable");
  return out;
}

}  // namespace dqgate::exchange
