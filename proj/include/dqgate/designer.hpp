#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqgate/algebra.hpp"
#include "dqgate/oracle.hpp"
#include "dqgate/pulse.hpp"

namespace dqgate::designer {

enum class DesignFamily { Proportional, AdiabaticSech, ConstantPair };

std::string to_string(DesignFamily f);

struct DesignerOptions {
  /// Largest |B+| allowed, expressed as a field in tesla.
  double hardware_cap_tesla = 5.0;
  double g_factor = -0.44;
  bool run_oracle = true;
  oracle::IntegratorConfig oracle_config{};
};

struct GateDesign {
  DesignFamily family = DesignFamily::Proportional;
  std::optional<double> lambda;  // rad
  std::optional<double> a;       // rad/ps
  std::optional<double> c;       // rad/ps
  std::optional<double> omega;   // rad/ps
  double gate_time = 0.0;        // ps
  double bplus_level = 0.0;      // rad/ps
  int bplus_winding = 0;         // k in B+ = (pi/2 + 2 pi k) / T
  int n = 0;
  int m = 0;
  double achieved_fidelity = 0.0;
  std::optional<double> oracle_fidelity;
  PulseProfile pulse{ConstantPairPulse{}, 1.0};
  ComplexMatrix4 propagator = ComplexMatrix4::Identity();
  std::vector<std::string> notes;
};

class DesignInfeasible : public std::runtime_error {
 public:
  DesignInfeasible(const std::string& what, std::vector<std::string> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  std::vector<std::string> trace_;
};

/// exp(-i pi/4 (S3 R3 + S3 + R3)).
ComplexMatrix4 xor_target();

/// exp(i pi R3/4) exp(-i pi S3/4) V exp(i pi R3/2) V with V the supplied
/// square root of swap (free_evolution(pi/4) by default).
ComplexMatrix4 xor_sequence();
ComplexMatrix4 xor_sequence(const ComplexMatrix4& sqrt_swap);

struct Crossing {
  double time = 0.0;
  bool non_monotone = false;
};

/// First t in (0, t_max] with f(t) = target, for f continuous and f(0) = 0.
/// Scans with step dt, then bisects. non_monotone is set when f decreased
/// anywhere before the crossing.
std::optional<Crossing> first_crossing(const std::function<double(double)>& f,
                                       double target, double dt, double t_max);

/// B+ = (pi/2 + 2 pi k) / T with k = 0, plus a note when it exceeds the cap.
double bplus_for_gate(double gate_time, const DesignerOptions& opt, int& k,
                      std::vector<std::string>& notes);

GateDesign design_proportional_xor(int n, int m, const Waveform& q,
                                   const DesignerOptions& opt = {});

/// Constant J and B- (both rad/ps): T = 2 n pi / sqrt(J^2 + B-^2).
GateDesign design_constant_xor(double exchange, double bminus, int n,
                               const DesignerOptions& opt = {});

/// G2 at t = 0: a F(1 + lambda, 1 - lambda; gamma + 1; 1/2), lambda = |a|/omega.
Complex adcond_residual(double a, double c, double omega);

/// omega T from the tie between a and omega: a = omega pi (1 + 4m) /
/// (4 atan(exp(omega T)) - pi), expressed through lambda = a / omega.
/// Returns nullopt when lambda <= 1 + 4m (no positive solution).
std::optional<double> omega_t_for_lambda(double lambda, int m);

struct AdiabaticOptions {
  int grid_points = 400;
  double bisection_tol = 1e-12;
  double residual_tol = 1e-10;
  double imag_tol = 1e-8;
  DesignerOptions base{};
};

GateDesign design_adiabatic_xor(double c, int n, int m, double t_window,
                                const AdiabaticOptions& opt = {});

/// With equal fields (c = 0) and |a| = 2 k omega the block propagator tends
/// to the identity. Evaluates that sub-block gate at t_end.
struct SubBlockDesign {
  SechPulse pulse;
  double t_end = 0.0;
  double closed_form_fidelity = 0.0;
  std::optional<double> oracle_fidelity;
};

SubBlockDesign design_sech_identity(int k, double omega, double t_end,
                                    const DesignerOptions& opt = {});

}  // namespace dqgate::designer
