#include "dqgate/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "dqgate/specfun.hpp"

namespace dqgate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ComplexMatrix2 sigma_dot(const Vec3& v) {
  return v(0) * pauli(1) + v(1) * pauli(2) + v(2) * pauli(3);
}

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

std::string constraint_message(double residual, double t) {
  std::ostringstream os;
  os << "q_evolution: path violates q'_2 = q_1 q'_3 - q_3 q'_1; max residual "
     << residual << " at t = " << t;
  return os.str();
}

struct SechFunctions {
  Complex g1;
  Complex g2;
};

// G1, G2 at z(t) = (1 - tanh(omega t)) / 2, given log z and log(1 - z).
SechFunctions sech_functions(double a, double c, double omega, double log_z,
                             double log_1mz) {
  const Complex nu{0.0, -c / (2.0 * omega)};
  const Complex gam = 0.5 - 2.0 * nu;
  const double lam = std::abs(a) / omega;
  const double z = std::exp(log_z);
  const Complex f1 = specfun::gauss_2f1({lam, -lam, gam, z});
  const Complex f2 = specfun::gauss_2f1({1.0 + lam, 1.0 - lam, gam + 1.0, z});
  SechFunctions g;
  g.g1 = Complex(2.0 * c, -omega) * std::exp(-nu * log_z + nu * log_1mz) * f1;
  g.g2 = 2.0 * a *
         std::exp((0.5 - nu) * log_z + (0.5 + nu) * log_1mz) * f2;
  return g;
}

}  // namespace

QConstraintError::QConstraintError(double max_residual, double at_time)
    : std::domain_error(constraint_message(max_residual, at_time)),
      max_residual_(max_residual),
      at_time_(at_time) {}

ComplexMatrix4 build_hamiltonian(const Vec3& first_field,
                                 const Vec3& second_field, double exchange) {
  ComplexMatrix4 h = 0.5 * exchange * heisenberg_coupling();
  for (int i = 1; i <= 3; ++i)
    h += first_field(i - 1) * first_spin_pauli(i) +
         second_field(i - 1) * second_spin_pauli(i);
  return h;
}

ComplexMatrix4 build_parallel_hamiltonian(double bplus, double bminus,
                                          double exchange) {
  const ComplexMatrix4 s3 = second_spin_pauli(3);
  const ComplexMatrix4 r3 = first_spin_pauli(3);
  return 0.5 * ((s3 + r3) * bplus - (s3 - r3) * bminus -
                exchange * ComplexMatrix4::Identity()) +
         exchange * swap_operator();
}

ComplexMatrix4 free_evolution(double phi) {
  return std::exp(kI * (phi / 2.0)) *
         (std::cos(phi) * ComplexMatrix4::Identity() -
          kI * std::sin(phi) * swap_operator());
}

EffectiveField effective_field(const PulseProfile& pulse) {
  return EffectiveField{[pulse](double t) {
    return Vec3(pulse.exchange(t), 0.0, pulse.bminus(t));
  }};
}

ComplexMatrix4 lift_two_level(const ComplexMatrix2& u, double gamma,
                              double phi) {
  require_unitary<2>(u, "lift_two_level");
  // exp(-(i/2)[(S3 + R3) gamma + S3 R3 phi]) is diagonal with exponents
  // (2 gamma + phi, -phi, -phi, -2 gamma + phi).
  const Complex outer_up = std::exp(-kI * (gamma + phi / 2.0));
  const Complex middle = std::exp(kI * (phi / 2.0));
  const Complex outer_down = std::exp(-kI * (-gamma + phi / 2.0));
  ComplexMatrix4 r = ComplexMatrix4::Zero();
  r(0, 0) = outer_up;
  r.block<2, 2>(1, 1) = middle * u;
  r(3, 3) = outer_down;
  return r;
}

ComplexMatrix2 constant_field_propagator(const Vec3& field, double t) {
  const double k = field.norm();
  if (k == 0.0) return ComplexMatrix2::Identity();
  return std::cos(k * t) * ComplexMatrix2::Identity() -
         kI * std::sin(k * t) * sigma_dot(field / k);
}

ComplexMatrix2 proportional_propagator(double lambda, double angle) {
  return std::cos(angle) * ComplexMatrix2::Identity() -
         kI * (pauli(1) * std::sin(lambda) + pauli(3) * std::cos(lambda)) *
             std::sin(angle);
}

ComplexMatrix2 sech_propagator(double a, double c, double omega, double t) {
  if (!(omega > 0.0))
    throw std::invalid_argument("sech_propagator: omega must be > 0");
  if (t < 0.0)
    throw std::invalid_argument("sech_propagator: t must be >= 0");
  const double x = 2.0 * omega * t;
  const double log_half = -std::log(2.0);
  const SechFunctions g0 = sech_functions(a, c, omega, log_half, log_half);
  const SechFunctions g =
      x == 0.0 ? g0 : sech_functions(a, c, omega, -softplus(x), -softplus(-x));

  ComplexMatrix2 now;
  now << g.g1, -std::conj(g.g2), g.g2, std::conj(g.g1);
  ComplexMatrix2 start_inv;
  start_inv << std::conj(g0.g1), std::conj(g0.g2), -g0.g2, g0.g1;
  const double norm = std::norm(g0.g1) + std::norm(g0.g2);
  return now * start_inv / norm;
}

double q_constraint_residual(const QTrajectory& path, double t_end, int samples,
                             double* worst_time) {
  double worst = 0.0;
  double where = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = samples > 1 ? t_end * k / (samples - 1) : 0.0;
    const Vec3 q = path.q(t);
    const Vec3 dq = path.dq(t);
    const double r = std::abs(dq(1) - (q(0) * dq(2) - q(2) * dq(0)));
    if (!(r <= worst)) {
      worst = r;
      where = t;
    }
  }
  if (worst_time) *worst_time = where;
  return worst;
}

QEvolution q_evolution(const QTrajectory& path, double t,
                       double constraint_tol) {
  double where = 0.0;
  const double residual = q_constraint_residual(path, t, 257, &where);
  if (!(residual <= constraint_tol)) throw QConstraintError(residual, where);

  QEvolution out;
  out.field = EffectiveField{[path](double s) {
    const Vec3 q = path.q(s);
    const Vec3 dq = path.dq(s);
    return Vec3((dq + q.cross(dq)) / (1.0 + q.squaredNorm()));
  }};
  const Vec3 q0 = path.q(0.0);
  const Vec3 q = path.q(t);
  const Vec3 p = q - q0 + q0.cross(q);
  out.propagator = ((1.0 + q.dot(q0)) * ComplexMatrix2::Identity() -
                    kI * sigma_dot(p)) /
                   std::sqrt((1.0 + q.squaredNorm()) * (1.0 + q0.squaredNorm()));
  return out;
}

double swap_probability(double lambda, double angle) {
  const double s = std::sin(lambda) * std::sin(angle);
  return s * s;
}

ComplexMatrix2 two_level_propagator(const PulseProfile& pulse, double t) {
  return std::visit(
      overloaded{
          [&](const FreePulse&) {
            return constant_field_propagator(Vec3(1.0, 0.0, 0.0), pulse.phi(t));
          },
          [t](const ConstantPairPulse& p) {
            return constant_field_propagator(Vec3(p.exchange, 0.0, p.bminus), t);
          },
          [t](const ProportionalPulse& p) {
            return proportional_propagator(p.lambda, p.q.integral(t));
          },
          [t](const SechPulse& p) {
            return sech_propagator(p.a, p.c, p.omega, t);
          },
          [t](const QVectorPulse& p) {
            return q_evolution(p.path, t).propagator;
          },
          [](const SampledPulse&) -> ComplexMatrix2 {
            throw NoClosedFormError(
                "two_level_propagator: sampled pulses have no closed form");
          },
      },
      pulse.family());
}

EvolutionResult evolve_closed_form(const PulseProfile& pulse, double t) {
  EvolutionResult out;
  out.gamma = pulse.gamma(t);
  out.phi = pulse.phi(t);
  out.propagator = lift_two_level(two_level_propagator(pulse, t), out.gamma,
                                  out.phi);
  out.unitarity_defect = unitarity_defect<4>(out.propagator);
  return out;
}

oracle::NumericPropagator<4> evolve_numeric_direct(
    const PulseProfile& pulse, double t, const oracle::IntegratorConfig& cfg) {
  if (t == 0.0) return {ComplexMatrix4::Identity(), 0.0, 0, 0};
  return oracle::evolve_numeric<4>(
      [&pulse](double s) {
        return build_parallel_hamiltonian(pulse.bplus(s), pulse.bminus(s),
                                          pulse.exchange(s));
      },
      0.0, t, cfg);
}

EvolutionResult evolve_numeric_reduced(const PulseProfile& pulse, double t,
                                       const oracle::IntegratorConfig& cfg) {
  ComplexMatrix2 u = ComplexMatrix2::Identity();
  if (t > 0.0) {
    const auto k = effective_field(pulse);
    u = oracle::evolve_numeric<2>(
            [&k](double s) { return ComplexMatrix2(sigma_dot(k(s))); }, 0.0, t,
            cfg)
            .propagator;
  }
  EvolutionResult out;
  out.gamma = pulse.gamma(t);
  out.phi = pulse.phi(t);
  // The numerical block is unitary only to the integrator tolerance.
  const double defect2 = unitarity_defect<2>(u);
  if (defect2 > 1e-6) throw NotUnitaryError("evolve_numeric_reduced", defect2);
  ComplexMatrix4 r = lift_two_level(ComplexMatrix2::Identity(), out.gamma, out.phi);
  r.block<2, 2>(1, 1) = r(1, 1) * u;
  out.propagator = r;
  out.unitarity_defect = unitarity_defect<4>(r);
  return out;
}

EvolutionResult evolve(const PulseProfile& pulse, double t,
                       const oracle::IntegratorConfig& cfg, bool check) {
  if (pulse.family_tag() == PulseFamily::Sampled) {
    const auto num = evolve_numeric_direct(pulse, t, cfg);
    EvolutionResult out;
    out.propagator = num.propagator;
    out.gamma = pulse.gamma(t);
    out.phi = pulse.phi(t);
    out.unitarity_defect = num.unitarity_defect;
    return out;
  }
  EvolutionResult out = evolve_closed_form(pulse, t);
  if (check) {
    const auto num = evolve_numeric_direct(pulse, t, cfg);
    out.oracle_deviation = (out.propagator - num.propagator).norm();
  }
  return out;
}

std::vector<TrajectorySample> propagate_trajectory(
    const PulseProfile& pulse, int steps, const oracle::IntegratorConfig& cfg) {
  if (steps < 1)
    throw std::invalid_argument("propagate_trajectory: steps must be >= 1");
  std::vector<TrajectorySample> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  const bool numeric = pulse.family_tag() == PulseFamily::Sampled;
  ComplexMatrix4 running = ComplexMatrix4::Identity();
  double t_prev = 0.0;
  for (int k = 0; k <= steps; ++k) {
    const double t = pulse.duration() * k / steps;
    TrajectorySample s;
    s.t = t;
    if (numeric) {
      if (t > t_prev) {
        const auto piece = oracle::evolve_numeric<4>(
            [&pulse](double x) {
              return build_parallel_hamiltonian(pulse.bplus(x), pulse.bminus(x),
                                                pulse.exchange(x));
            },
            t_prev, t, cfg);
        running = piece.propagator * running;
      }
      s.propagator = running;
    } else {
      s.propagator = evolve_closed_form(pulse, t).propagator;
    }
    s.unitarity_defect = unitarity_defect<4>(s.propagator);
    out.push_back(s);
    t_prev = t;
  }
  return out;
}

}  // namespace dqgate
