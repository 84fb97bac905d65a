#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dqgate::exchange {

struct DotParameters {
  double omega0 = 0.0;  // confinement frequency, rad/ps
  double a = 0.0;       // half the inter-dot distance, nm
  double kappa = 0.0;   // dielectric constant
  double mass = 0.0;    // effective mass in units of the bare electron mass
  double g1 = 0.0;
  double g2 = 0.0;

  void validate() const;
  double hbar_omega0_mev() const;
  /// sqrt(hbar / (m omega0)) in nm.
  double bohr_radius_nm() const;
};

/// GaAs: m = 0.067 m_e, hbar omega0 = 3 meV, kappa = 13.1, g = -0.44,
/// a = d * a0 with d = 0.7 unless overridden.
DotParameters gaas_preset(double d = 0.7);

/// Fields at the two dots along z, in tesla.
struct FieldPair {
  double b1 = 0.0;
  double b2 = 0.0;
};

struct DotFrequencies {
  double bminus = 1.0;  // omega_-/omega0, from B1
  double bplus = 1.0;   // omega_+/omega0, from B2
  double d = 0.0;       // a / a0
  double larmor_minus = 0.0;  // rad/ps
  double larmor_plus = 0.0;   // rad/ps
};

DotFrequencies dot_frequencies(const DotParameters& p, const FieldPair& f);

/// Field-only asymmetry Delta from B+' = B1 + B2 and B-' = B1 - B2 (tesla,
/// no g-factor), using the scale hbar omega0 / mu_B:
/// Delta = B+' B-' / (2 [(2 Bs)^2 + B+'^2 + B-'^2 + sqrt((...)^2 - (2 B+' B-')^2)]).
double delta_from_fields(const DotParameters& p, double bplus_prime,
                         double bminus_prime);

/// Same expression with an explicit field scale in tesla.
double delta_closed_form(double bplus_prime, double bminus_prime,
                         double field_scale);

/// Dimensionless inputs shared by the matrix-element formulas.
struct ExchangeInputs {
  double bminus = 1.0;
  double bplus = 1.0;
  double d = 0.0;
  double delta = 0.0;  // (b- - b+) / (b- + b+)
  double larmor_sum_ratio = 0.0;  // (omega_L+ + omega_L-) / omega0
  double hbar_omega0 = 0.0;       // meV
  double coulomb_scale = 0.0;     // e^2 / (kappa a0), meV
};

ExchangeInputs exchange_inputs(const DotParameters& p, const FieldPair& f);

class SingularConfigurationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RadicandError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double overlap_exponent(const ExchangeInputs& in);  // M
/// S^2 / (1 - S^4) = (1 - D^2) / (2 sinh 2M + D exp(-2M) (2 - D^3)).
double overlap_factor(const ExchangeInputs& in);
double w_matrix_elements(const ExchangeInputs& in);  // meV
double c_matrix_elements(const ExchangeInputs& in);  // meV

struct ExchangeBreakdown {
  double J = 0.0;          // meV
  double s2_factor = 0.0;  // S^2 / (1 - S^4)
  double w_term = 0.0;     // meV
  double c_term = 0.0;     // meV
  double extra_term = 0.0; // (hbar omega0 / 4)(b+^2 - b-^2)(b- - b+)/(b+ b-), meV
  double delta = 0.0;
  double bplus = 1.0;
  double bminus = 1.0;
  double d = 0.0;
  /// |f(Delta) - f(-Delta)| / f for the overlap factor f.
  double overlap_asymmetry = 0.0;
  std::vector<std::string> warnings;
};

ExchangeBreakdown exchange_J(const DotParameters& p, const FieldPair& f);

}  // namespace dqgate::exchange
