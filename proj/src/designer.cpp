#include "dqgate/designer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dqgate/dynamics.hpp"
#include "dqgate/specfun.hpp"
#include "dqgate/units.hpp"

namespace dqgate::designer {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// exp(-i angle D) for a diagonal generator D.
ComplexMatrix4 diag_phase(const ComplexMatrix4& generator, double angle) {
  ComplexMatrix4 out = ComplexMatrix4::Zero();
  for (int k = 0; k < 4; ++k)
    out(k, k) = std::exp(-kI * angle * generator(k, k).real());
  return out;
}

double oracle_xor_fidelity(const PulseProfile& pulse,
                           const oracle::IntegratorConfig& cfg) {
  const auto num = evolve_numeric_direct(pulse, pulse.duration(), cfg);
  return fidelity_phase_invariant<4>(num.propagator, xor_target(), 1e-6);
}

struct RootCandidate {
  double lambda = 0.0;
  double omega = 0.0;
  Complex residual;
};

struct RootSearch {
  std::vector<RootCandidate> accepted;
  std::vector<std::string> trace;
};

// Scans lambda over (0, 4m + 6] and bisects sign changes of Re G2.
// residual_at returns nullopt where lambda has no admissible omega.
RootSearch scan_adcond(
    const std::function<std::optional<RootCandidate>(double)>& residual_at,
    int m, const AdiabaticOptions& opt) {
  RootSearch out;
  const double lambda_max = 4.0 * m + 6.0;
  std::optional<RootCandidate> prev;
  RootCandidate best;
  bool have_best = false;
  for (int i = 1; i <= opt.grid_points; ++i) {
    const double lam = lambda_max * i / opt.grid_points;
    const auto cur = residual_at(lam);
    if (!cur) {
      prev.reset();
      continue;
    }
    if (!have_best || std::abs(cur->residual) < std::abs(best.residual)) {
      best = *cur;
      have_best = true;
    }
    if (prev && (std::signbit(prev->residual.real()) !=
                 std::signbit(cur->residual.real()))) {
      double lo = prev->lambda, hi = lam;
      const bool lo_negative = std::signbit(prev->residual.real());
      while (hi - lo > opt.bisection_tol) {
        const double mid = 0.5 * (lo + hi);
        const auto r = residual_at(mid);
        if (!r) break;
        if (std::signbit(r->residual.real()) == lo_negative)
          lo = mid;
        else
          hi = mid;
      }
      const auto root = residual_at(0.5 * (lo + hi));
      if (root) {
        const bool ok = std::abs(root->residual) <= opt.residual_tol &&
                        std::abs(root->residual.imag()) <= opt.imag_tol;
        out.trace.push_back("Re G2 sign change at lambda = " + fmt(root->lambda) +
                            ", omega = " + fmt(root->omega) + ": |G2| = " +
                            fmt(std::abs(root->residual)) + ", Im G2 = " +
                            fmt(root->residual.imag()) +
                            (ok ? " (accepted)" : " (rejected)"));
        if (ok) out.accepted.push_back(*root);
      }
    }
    prev = cur;
  }
  if (have_best)
    out.trace.push_back("grid minimum |G2| = " + fmt(std::abs(best.residual)) +
                        " at lambda = " + fmt(best.lambda) +
                        ", omega = " + fmt(best.omega));
  else
    out.trace.push_back("no admissible grid point");
  return out;
}

}  // namespace

std::string to_string(DesignFamily f) {
  switch (f) {
    case DesignFamily::Proportional:
      return "proportional";
    case DesignFamily::AdiabaticSech:
      return "adiabatic_sech";
    case DesignFamily::ConstantPair:
      return "constant";
  }
  return "unknown";
}

ComplexMatrix4 xor_target() {
  const ComplexMatrix4 s3 = second_spin_pauli(3);
  const ComplexMatrix4 r3 = first_spin_pauli(3);
  return diag_phase(s3 * r3 + s3 + r3, kPi / 4.0);
}

ComplexMatrix4 xor_sequence() { return xor_sequence(free_evolution(kPi / 4.0)); }

ComplexMatrix4 xor_sequence(const ComplexMatrix4& sqrt_swap) {
  const ComplexMatrix4 r3 = first_spin_pauli(3);
  const ComplexMatrix4 s3 = second_spin_pauli(3);
  return diag_phase(r3, -kPi / 4.0) * diag_phase(s3, kPi / 4.0) * sqrt_swap *
         diag_phase(r3, -kPi / 2.0) * sqrt_swap;
}

std::optional<Crossing> first_crossing(const std::function<double(double)>& f,
                                       double target, double dt, double t_max) {
  if (!(dt > 0.0) || !(t_max > 0.0))
    throw std::invalid_argument("first_crossing: dt and t_max must be > 0");
  Crossing out;
  double t = 0.0;
  double prev = f(0.0);
  while (t < t_max) {
    const double t_next = std::min(t + dt, t_max);
    const double v = f(t_next);
    if (v < prev) out.non_monotone = true;
    if ((prev - target) * (v - target) <= 0.0 && v != prev) {
      double lo = t, hi = t_next;
      const bool lo_below = prev < target;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < target) == lo_below)
          lo = mid;
        else
          hi = mid;
      }
      out.time = 0.5 * (lo + hi);
      return out;
    }
    prev = v;
    t = t_next;
    dt *= 1.05;
  }
  return std::nullopt;
}

double bplus_for_gate(double gate_time, const DesignerOptions& opt, int& k,
                      std::vector<std::string>& notes) {
  k = 0;
  const double level = (kPi / 2.0) / gate_time;
  const double cap =
      std::abs(units::zeeman_rad_per_ps(opt.g_factor, opt.hardware_cap_tesla));
  if (level > cap)
    notes.push_back("B+ level " + fmt(level) + " rad/ps exceeds the " +
                    fmt(opt.hardware_cap_tesla) +
                    " T hardware cap; larger k only increases it");
  return level;
}

GateDesign design_proportional_xor(int n, int m, const Waveform& q,
                                   const DesignerOptions& opt) {
  if (n < 1) throw std::invalid_argument("design_proportional_xor: n >= 1");
  if (m < 0 || m >= n)
    throw std::invalid_argument(
        "design_proportional_xor: need 0 <= m < n for sin(lambda) < 1");
  GateDesign g;
  g.family = DesignFamily::Proportional;
  g.n = n;
  g.m = m;
  g.lambda = std::asin((4.0 * m + 1.0) / (4.0 * n));

  const double target = 2.0 * n * kPi;
  if (!(q.integral_limit() > target))
    throw DesignInfeasible(
        "design_proportional_xor: integral of q never reaches 2 n pi",
        {"q = " + q.describe(), "limit = " + fmt(q.integral_limit())});
  const auto cross = first_crossing([&q](double t) { return q.integral(t); },
                                    target, 1e-3, 1e7);
  if (!cross)
    throw DesignInfeasible(
        "design_proportional_xor: no crossing of 2 n pi below 1e7 ps",
        {"q = " + q.describe()});
  if (cross->non_monotone)
    g.notes.push_back(
        "integral of q is not monotone; first crossing of 2 n pi taken");
  g.gate_time = cross->time;
  g.bplus_level = bplus_for_gate(g.gate_time, opt, g.bplus_winding, g.notes);
  g.pulse = PulseProfile(ProportionalPulse{*g.lambda, q, g.bplus_level},
                         g.gate_time);
  g.propagator = evolve_closed_form(g.pulse, g.gate_time).propagator;
  g.achieved_fidelity = fidelity_phase_invariant<4>(g.propagator, xor_target());
  if (g.achieved_fidelity < 1.0 - 1e-8)
    g.notes.push_back("closed-form fidelity below 1 - 1e-8");
  if (opt.run_oracle) {
    g.oracle_fidelity = oracle_xor_fidelity(g.pulse, opt.oracle_config);
    if (*g.oracle_fidelity < 1.0 - 1e-6)
      g.notes.push_back("oracle fidelity below 1 - 1e-6");
  }
  return g;
}

GateDesign design_constant_xor(double exchange, double bminus, int n,
                               const DesignerOptions& opt) {
  if (n < 1) throw std::invalid_argument("design_constant_xor: n >= 1");
  const double k = std::hypot(exchange, bminus);
  if (!(k > 0.0))
    throw DesignInfeasible("design_constant_xor: J and B- both vanish", {});
  GateDesign g;
  g.family = DesignFamily::ConstantPair;
  g.n = n;
  g.lambda = std::atan2(exchange, bminus);
  g.gate_time = 2.0 * n * kPi / k;
  // Closest m for the record; the XOR condition needs sin(lambda) = (4m+1)/4n.
  g.m = std::max(0, static_cast<int>(std::lround((4.0 * n * std::sin(*g.lambda) - 1.0) / 4.0)));
  g.bplus_level = bplus_for_gate(g.gate_time, opt, g.bplus_winding, g.notes);
  g.pulse = PulseProfile(ConstantPairPulse{exchange, bminus, g.bplus_level},
                         g.gate_time);
  g.propagator = evolve_closed_form(g.pulse, g.gate_time).propagator;
  g.achieved_fidelity = fidelity_phase_invariant<4>(g.propagator, xor_target());
  const double mismatch =
      std::abs(std::sin(*g.lambda) - (4.0 * g.m + 1.0) / (4.0 * n));
  if (mismatch > 1e-12)
    g.notes.push_back("sin(lambda) differs from (4m+1)/(4n) by " +
                      fmt(mismatch) + "; the gate is only approximately XOR");
  if (opt.run_oracle)
    g.oracle_fidelity = oracle_xor_fidelity(g.pulse, opt.oracle_config);
  return g;
}

Complex adcond_residual(double a, double c, double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("adcond_residual: omega must be > 0");
  if (a == 0.0) return 0.0;
  const double lam = std::abs(a) / omega;
  const Complex gam1{1.5, c / omega};  // gamma + 1 with gamma = 1/2 + i c/omega
  return a * specfun::gauss_2f1({1.0 + lam, 1.0 - lam, gam1, 0.5});
}

std::optional<double> omega_t_for_lambda(double lambda, int m) {
  const double base = 1.0 + 4.0 * m;
  if (!(lambda > base)) return std::nullopt;
  return std::log(std::tan(kPi / 4.0 + kPi * base / (4.0 * lambda)));
}

GateDesign design_adiabatic_xor(double c, int n, int m, double t_window,
                                const AdiabaticOptions& opt) {
  if (n < 1 || m < 0)
    throw std::invalid_argument("design_adiabatic_xor: need n >= 1, m >= 0");
  if (!std::isfinite(c) || c < 0.0)
    throw std::invalid_argument("design_adiabatic_xor: c must be >= 0");

  if (c == 0.0) {
    // T is free; the roots sit at lambda = 2k and fix the exchange phase.
    auto at = [](double lam) -> std::optional<RootCandidate> {
      return RootCandidate{lam, 1.0, adcond_residual(lam, 0.0, 1.0)};
    };
    RootSearch rs = scan_adcond(at, m, opt);
    std::vector<std::string> trace = rs.trace;
    for (const auto& r : rs.accepted) {
      const double phi = r.lambda * kPi / 2.0;  // integral of a sech(omega t)
      trace.push_back("root lambda = " + fmt(r.lambda) + " gives Phi = " +
                      fmt(phi / kPi) + " pi, XOR needs Phi = pi/2 mod pi");
    }
    throw DesignInfeasible(
        "design_adiabatic_xor: with equal fields (c = 0) every root of G2 "
        "gives an exchange phase that is a multiple of pi, so XOR is "
        "unreachable",
        trace);
  }

  std::vector<std::string> trace;
  std::optional<GateDesign> best;
  std::vector<int> n_values{n, n + 1};
  if (n > 1) n_values.push_back(n - 1);
  for (int nn : n_values) {
    const double t_gate = nn * kPi / c;
    if (t_gate > t_window) {
      trace.push_back("n = " + std::to_string(nn) + ": T = " + fmt(t_gate) +
                      " ps exceeds the window " + fmt(t_window) + " ps");
      continue;
    }
    auto at = [&](double lam) -> std::optional<RootCandidate> {
      const auto wt = omega_t_for_lambda(lam, m);
      if (!wt) return std::nullopt;
      const double omega = *wt / t_gate;
      return RootCandidate{lam, omega, adcond_residual(lam * omega, c, omega)};
    };
    RootSearch rs = scan_adcond(at, m, opt);
    for (auto& line : rs.trace)
      trace.push_back("n = " + std::to_string(nn) + ": " + line);

    for (const auto& root : rs.accepted) {
      GateDesign g;
      g.family = DesignFamily::AdiabaticSech;
      g.n = nn;
      g.m = m;
      g.omega = root.omega;
      g.a = root.lambda * root.omega;
      g.c = c;
      g.gate_time = t_gate;
      if (root.omega * t_gate > 6.0 &&
          std::abs(root.lambda - (1.0 + 4.0 * m)) > 0.05 * (1.0 + 4.0 * m)) {
        trace.push_back("n = " + std::to_string(nn) + ": root lambda = " +
                        fmt(root.lambda) + " violates a ~ omega (1 + 4m)");
        continue;
      }
      g.bplus_level = bplus_for_gate(t_gate, opt.base, g.bplus_winding, g.notes);
      g.pulse = PulseProfile(SechPulse{*g.a, c, root.omega, g.bplus_level},
                             t_gate);
      g.propagator = evolve_closed_form(g.pulse, t_gate).propagator;
      g.achieved_fidelity =
          fidelity_phase_invariant<4>(g.propagator, xor_target());
      if (opt.base.run_oracle)
        g.oracle_fidelity = oracle_xor_fidelity(g.pulse, opt.base.oracle_config);
      if (nn != n)
        g.notes.push_back("requested n = " + std::to_string(n) +
                          " replaced by n = " + std::to_string(nn));
      trace.push_back("n = " + std::to_string(nn) + ": candidate fidelity " +
                      fmt(g.achieved_fidelity));
      if (!best || g.achieved_fidelity > best->achieved_fidelity)
        best = std::move(g);
    }
  }
  if (!best)
    throw DesignInfeasible(
        "design_adiabatic_xor: no admissible root of G2 for c = " + fmt(c),
        trace);
  best->notes.insert(best->notes.end(), trace.begin(), trace.end());
  return *best;
}

SubBlockDesign design_sech_identity(int k, double omega, double t_end,
                                    const DesignerOptions& opt) {
  if (k < 1) throw std::invalid_argument("design_sech_identity: k >= 1");
  if (!(omega > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument(
        "design_sech_identity: omega and t_end must be > 0");
  SubBlockDesign out;
  out.pulse = SechPulse{2.0 * k * omega, 0.0, omega, 0.0};
  out.t_end = t_end;
  const ComplexMatrix2 u = sech_propagator(out.pulse.a, 0.0, omega, t_end);
  out.closed_form_fidelity =
      fidelity_phase_invariant<2>(u, ComplexMatrix2::Identity());
  if (opt.run_oracle) {
    const PulseProfile p(out.pulse, t_end);
    const auto field = effective_field(p);
    const auto num = oracle::evolve_numeric<2>(
        [&field](double t) {
          const Vec3 kf = field(t);
          return ComplexMatrix2(kf(0) * pauli(1) + kf(2) * pauli(3));
        },
        0.0, t_end, opt.oracle_config);
    out.oracle_fidelity = fidelity_phase_invariant<2>(
        num.propagator, ComplexMatrix2::Identity(), 1e-6);
  }
  return out;
}

}  // namespace dqgate::designer
