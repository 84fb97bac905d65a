#include "dqgate/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dqgate/designer.hpp"
#include "dqgate/dynamics.hpp"
#include "dqgate/exchange.hpp"
#include "dqgate/output.hpp"
#include "dqgate/pulse_config.hpp"
#include "dqgate/specfun.hpp"
#include "dqgate/units.hpp"

namespace dqgate::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

using output::format_double;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sends the artifact to the file named in the config, or to `out`.
int emit(const RunConfig& cfg, const std::string& body, std::ostream& out,
         std::ostream& err) {
  if (cfg.output_path.empty()) {
    out << body;
    return 0;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f) {
    err << "error: cannot write '" << cfg.output_path << "'\n";
    return 1;
  }
  f << body;
  return f ? 0 : 1;
}

exchange::DotParameters preset_parameters(const RunConfig& cfg) {
  if (cfg.preset != "gaas")
    throw UsageError("unknown preset '" + cfg.preset + "' (gaas)");
  return cfg.d ? exchange::gaas_preset(*cfg.d) : exchange::gaas_preset();
}

std::string run_config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "preset=" << c.preset << ";sweep=" << c.sweep
     << ";dB=" << format_double(c.field_difference)
     << ";d=" << (c.d ? format_double(*c.d) : std::string("default"))
     << ";family=" << c.family << ";n=" << c.n << ";m=" << c.m
     << ";shape=" << c.shape << ";amplitude=" << format_double(c.amplitude)
     << ";rate=" << format_double(c.rate)
     << ";rise_time=" << format_double(c.rise_time)
     << ";c=" << format_double(c.c) << ";window=" << format_double(c.window)
     << ";J_ueV=" << format_double(c.exchange_uev)
     << ";bminus_mT=" << format_double(c.bminus_mt)
     << ";rel_tol=" << format_double(c.rel_tol)
     << ";abs_tol=" << format_double(c.abs_tol) << ";seed=" << c.seed;
  return os.str();
}

oracle::IntegratorConfig integrator(const RunConfig& cfg) {
  oracle::IntegratorConfig ic;
  ic.rel_tol = cfg.rel_tol;
  ic.abs_tol = cfg.abs_tol;
  try {
    ic.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return ic;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.config_path.empty()) throw UsageError("simulate needs --config");
  const config::PulseConfig pc = config::load_pulse_config(cfg.config_path);
  const ComplexMatrix4 target = config::target_gate(pc.target);
  const auto traj = propagate_trajectory(pc.pulse, pc.steps, integrator(cfg));

  std::ostringstream os;
  output::write_provenance(
      os, {"simulate", output::fnv1a_hex(pc.canonical + run_config_text(cfg))});
  std::vector<std::string> header{"t"};
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      const std::string base = "U" + std::to_string(i) + std::to_string(j);
      header.push_back(base + "_re");
      header.push_back(base + "_im");
    }
  header.push_back("unitarity_defect");
  header.push_back("fidelity_" + pc.target);
  output::write_csv_row(os, header);
  for (const auto& s : traj) {
    std::vector<double> row{s.t};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        row.push_back(s.propagator(i, j).real());
        row.push_back(s.propagator(i, j).imag());
      }
    row.push_back(s.unitarity_defect);
    row.push_back(fidelity_phase_invariant<4>(s.propagator, target, 1e-6));
    output::write_csv_row(os, row);
  }
  return emit(cfg, os.str(), out, err);
}

int cmd_exchange(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const exchange::DotParameters params = preset_parameters(cfg);
  const SweepGrid grid = parse_sweep(cfg.sweep);
  if (grid.name != "B") throw UsageError("exchange sweeps the field 'B'");

  const std::size_t count = grid.values.size();
  std::vector<exchange::ExchangeBreakdown> rows(count);
  std::vector<std::string> failures(count);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(thread_count(), static_cast<unsigned>(count)));
  auto work = [&](unsigned id) {
    for (std::size_t i = id; i < count; i += workers) {
      const double b = grid.values[i];
      const exchange::FieldPair f{b + cfg.field_difference / 2.0,
                                  b - cfg.field_difference / 2.0};
      try {
        rows[i] = exchange::exchange_J(params, f);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < workers; ++id) pool.emplace_back(work, id);
  work(0);
  for (auto& t : pool) t.join();

  std::ostringstream os;
  output::write_provenance(os,
                           {"exchange", output::fnv1a_hex(run_config_text(cfg))});
  output::write_csv_row(os, std::vector<std::string>{"B1", "B2", "d", "delta",
                                                     "J_meV", "S2factor",
                                                     "Wterm", "Cterm"});
  std::size_t warned = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double b = grid.values[i];
    if (!failures[i].empty()) {
      err << "error: B = " << format_double(b) << ": " << failures[i] << "\n";
      return 1;
    }
    const auto& r = rows[i];
    if (!r.warnings.empty()) ++warned;
    output::write_csv_row(
        os, std::vector<double>{b + cfg.field_difference / 2.0,
                                b - cfg.field_difference / 2.0, r.d, r.delta,
                                r.J, r.s2_factor, r.w_term, r.c_term});
  }
  if (warned)
    err << "warning: " << warned
        << " grid points are outside the Heitler-London comfort zone\n";
  return emit(cfg, os.str(), out, err);
}

nlohmann::json design_json(const designer::GateDesign& g) {
  nlohmann::json j;
  j["family"] = designer::to_string(g.family);
  j["n"] = g.n;
  j["m"] = g.m;
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  j["lambda"] = opt(g.lambda);
  j["a"] = opt(g.a);
  j["c"] = opt(g.c);
  j["omega"] = opt(g.omega);
  j["gate_time_ps"] = g.gate_time;
  j["bplus_level"] = g.bplus_level;
  j["bplus_winding"] = g.bplus_winding;
  j["achieved_fidelity"] = g.achieved_fidelity;
  j["oracle_fidelity"] = opt(g.oracle_fidelity);
  j["notes"] = g.notes;
  j["propagator"] = matrix_to_json<4>(g.propagator);
  return j;
}

int cmd_design(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  designer::DesignerOptions opt;
  opt.oracle_config = integrator(cfg);
  designer::GateDesign g;
  try {
    if (cfg.family == "proportional") {
      Waveform q;
      if (cfg.shape == "constant")
        q = Waveform(ConstantWave{cfg.amplitude});
      else if (cfg.shape == "sech")
        q = Waveform(SechWave{cfg.amplitude, cfg.rate});
      else if (cfg.shape == "ramp")
        q = Waveform(RampWave{cfg.amplitude, cfg.rise_time});
      else
        throw UsageError("unknown shape '" + cfg.shape + "'");
      g = designer::design_proportional_xor(cfg.n, cfg.m, q, opt);
    } else if (cfg.family == "constant") {
      preset_parameters(cfg);
      const double j = units::mev_to_rad_per_ps(cfg.exchange_uev * 1e-3);
      const double bm =
          std::abs(units::zeeman_rad_per_ps(opt.g_factor, cfg.bminus_mt * 1e-3));
      g = designer::design_constant_xor(j, bm, cfg.n, opt);
    } else if (cfg.family == "adiabatic") {
      designer::AdiabaticOptions ao;
      ao.base = opt;
      g = designer::design_adiabatic_xor(cfg.c, cfg.n, cfg.m, cfg.window, ao);
    } else {
      throw UsageError("unknown family '" + cfg.family +
                       "' (proportional, constant, adiabatic)");
    }
  } catch (const designer::DesignInfeasible& e) {
    err << "design infeasible: " << e.what() << "\n";
    for (const auto& line : e.trace()) err << "  " << line << "\n";
    return kExitInfeasible;
  }
  nlohmann::json j = design_json(g);
  j["provenance"] = {{"version", output::kVersion},
                     {"command", "design-xor"},
                     {"config_hash",
                      "fnv1a64:" + output::fnv1a_hex(run_config_text(cfg))},
                     {"units", output::kUnits}};
  return emit(cfg, j.dump(2) + "\n", out, err);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const VerifyOutcome v = run_verify(cfg.seed);
  const int status = emit(cfg, v.report, out, err);
  if (status != 0) return status;
  return v.all_passed ? 0 : 1;
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  double value;
  double limit;
  bool pass;
};

class Report {
 public:
  void check_max(const std::string& name, double value, double limit) {
    checks_.push_back({name, value, limit, value <= limit});
  }
  void info(const std::string& line) { info_.push_back(line); }

  VerifyOutcome finish(std::uint64_t seed) const {
    std::ostringstream os;
    output::write_provenance(os, {"verify", output::fnv1a_hex(std::to_string(seed))});
    bool all = true;
    for (const auto& c : checks_) {
      all = all && c.pass;
      os << (c.pass ? "PASS " : "FAIL ") << c.name
         << ": value = " << format_double(c.value)
         << ", limit = " << format_double(c.limit) << "\n";
    }
    for (const auto& line : info_) os << "INFO " << line << "\n";
    os << "SUMMARY " << (all ? "all checks passed" : "some checks failed")
       << "\n";
    return {os.str(), all};
  }

 private:
  std::vector<Check> checks_;
  std::vector<std::string> info_;
};

}  // namespace

SweepGrid parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError("sweep must look like NAME=start:stop:step");
  SweepGrid g;
  g.name = spec.substr(0, eq);
  std::vector<double> parts;
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(config::parse_value(item));
    } catch (const std::invalid_argument&) {
      throw UsageError("sweep: bad number '" + item + "'");
    }
  }
  if (parts.size() != 3) throw UsageError("sweep needs start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0.0) || stop < start)
    throw UsageError("sweep: need step > 0 and stop >= start");
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  if (n > 10'000'000) throw UsageError("sweep: grid too large");
  for (long i = 0; i <= n; ++i) g.values.push_back(start + step * i);
  return g;
}

unsigned thread_count() {
  if (const char* env = std::getenv("DQGATE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

PulseProfile random_pulse(PulseFamily family, SplitMix64& rng) {
  switch (family) {
    case PulseFamily::Free:
      return PulseProfile(FreePulse{Waveform(ConstantWave{rng.uniform(0.1, 2.0)})},
                          rng.uniform(0.5, 5.0));
    case PulseFamily::ConstantPair:
      return PulseProfile(ConstantPairPulse{rng.uniform(0.05, 2.0),
                                            rng.uniform(-1.0, 1.0),
                                            rng.uniform(-1.0, 1.0)},
                          rng.uniform(0.5, 10.0));
    case PulseFamily::Proportional: {
      const double lambda = rng.uniform(0.0, kPi);
      const double pick = rng.uniform(0.0, 3.0);
      const double amp = rng.uniform(0.2, 2.0);
      Waveform q;
      if (pick < 1.0)
        q = Waveform(ConstantWave{amp});
      else if (pick < 2.0)
        q = Waveform(SechWave{amp, rng.uniform(0.2, 2.0)});
      else
        q = Waveform(RampWave{amp, rng.uniform(0.5, 3.0)});
      return PulseProfile(ProportionalPulse{lambda, q, rng.uniform(-1.0, 1.0)},
                          rng.uniform(0.5, 10.0));
    }
    case PulseFamily::Sech: {
      const double a = rng.uniform(-3.0, 3.0);
      const double c = rng.uniform(-1.0, 1.0);
      const double omega = rng.uniform(0.2, 2.0);
      const double t = rng.uniform(0.05, 1.0) * std::min(20.0 / omega, 15.0);
      return PulseProfile(SechPulse{a, c, omega, rng.uniform(-1.0, 1.0)}, t);
    }
    case PulseFamily::QVector: {
      const Vec3 center(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0));
      const double amp1 = rng.uniform(0.1, 1.0);
      const double amp3 = rng.uniform(0.1, 1.0);
      const double rate = rng.uniform(0.2, 2.0);
      return PulseProfile(
          QVectorPulse{figure_eight_loop(center, amp1, amp3, rate),
                       rng.uniform(-1.0, 1.0)},
          rng.uniform(0.5, 10.0));
    }
    case PulseFamily::Sampled:
      break;
  }
  throw std::invalid_argument("random_pulse: no random generator for this family");
}

VerifyOutcome run_verify(std::uint64_t seed) {
  Report rep;
  SplitMix64 rng(seed);
  oracle::IntegratorConfig ic;  // rel 1e-10, abs 1e-12

  rep.check_max("xor sequence vs parallel target, 1 - fidelity",
                1.0 - fidelity_phase_invariant<4>(designer::xor_sequence(),
                                                  designer::xor_target()),
                1e-12);

  {
    const PulseProfile p(FreePulse{Waveform(ConstantWave{kPi / 4.0})}, 1.0);
    const auto num = evolve_numeric_direct(p, 1.0, ic);
    rep.check_max("free evolution sqrt-swap vs oracle, deviation",
                  (num.propagator - free_evolution(kPi / 4.0)).norm(), 1e-9);
  }

  const std::pair<PulseFamily, int> families[] = {
      {PulseFamily::ConstantPair, 8},
      {PulseFamily::Proportional, 8},
      {PulseFamily::Sech, 8},
      {PulseFamily::QVector, 8}};
  for (const auto& [fam, count] : families) {
    double worst = 0.0, worst_defect = 0.0;
    for (int k = 0; k < count; ++k) {
      const PulseProfile p = random_pulse(fam, rng);
      const auto r = evolve(p, p.duration(), ic, true);
      worst = std::max(worst, *r.oracle_deviation);
      worst_defect = std::max(worst_defect, r.unitarity_defect);
    }
    rep.check_max(to_string(fam) + " closed form vs oracle, max deviation",
                  worst, 1e-7);
    rep.check_max(to_string(fam) + " closed form, max unitarity defect",
                  worst_defect, 1e-10);
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
      const PulseProfile p = random_pulse(PulseFamily::ConstantPair, rng);
      const auto direct = evolve_numeric_direct(p, p.duration(), ic);
      const auto reduced = evolve_numeric_reduced(p, p.duration(), ic);
      worst = std::max(worst, (direct.propagator - reduced.propagator).norm());
    }
    rep.check_max("two-level reduction vs direct 4x4 oracle, max deviation",
                  worst, 1e-9);
  }

  const std::pair<int, int> nm[] = {{1, 0}, {2, 0}, {2, 1}, {3, 2}};
  for (const auto& [n, m] : nm) {
    designer::DesignerOptions opt;
    const auto g =
        designer::design_proportional_xor(n, m, Waveform(ConstantWave{1.0}), opt);
    const std::string tag =
        "proportional XOR (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")";
    rep.check_max(tag + " closed form, 1 - fidelity", 1.0 - g.achieved_fidelity,
                  1e-8);
    rep.check_max(tag + " oracle, 1 - fidelity", 1.0 - *g.oracle_fidelity, 1e-6);
  }

  {
    const double j = units::mev_to_rad_per_ps(0.050);
    const double bm = std::abs(units::zeeman_rad_per_ps(-0.44, 0.010));
    designer::DesignerOptions opt;
    opt.run_oracle = false;
    const auto g = designer::design_constant_xor(j, bm, 1, opt);
    rep.check_max("GaAs constant pulse gate time above 1 ps, 1 / T",
                  1.0 / g.gate_time, 1.0);
    rep.check_max("GaAs constant pulse gate time below 100 ps, T / 100",
                  g.gate_time / 100.0, 1.0);
    rep.info("GaAs constant pulse: J = 50 ueV = " + format_double(j) +
             " rad/ps, B- = 0.44 mu_B x 10 mT = " + format_double(bm) +
             " rad/ps, T = " + format_double(g.gate_time) + " ps");
  }

  {
    double worst = 0.0;
    for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0, 4.5}) {
      const Complex f = specfun::gauss_2f1({1.0 + lam, 1.0 - lam, 1.5, 0.5});
      worst = std::max(worst, std::abs(f - std::sin(lam * kPi / 2.0) / lam));
    }
    rep.check_max("2F1(1+l, 1-l; 3/2; 1/2) = sin(l pi/2)/l, max error", worst,
                  1e-11);
  }

  {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const double lam = rng.uniform(0.0, kPi);
      const double w = rng.uniform(0.0, 4.0 * kPi);
      const PulseProfile p(
          ProportionalPulse{lam, Waveform(ConstantWave{w}), rng.uniform(-1.0, 1.0)},
          1.0);
      const ComplexMatrix4 r = evolve_closed_form(p, 1.0).propagator;
      worst = std::max(worst, std::abs(std::norm(r(2, 1)) - swap_probability(lam, w)));
    }
    rep.check_max("swap probability |R32|^2 = sin^2 l sin^2 w, max error", worst,
                  1e-10);
  }

  {
    const auto gaas = exchange::gaas_preset();
    double odd = 0.0;
    for (double bp : {0.5, 2.0, 4.0})
      for (double bm : {0.01, 0.1, 0.5})
        odd = std::max(odd, std::abs(exchange::delta_from_fields(gaas, bp, bm) +
                                     exchange::delta_from_fields(gaas, bp, -bm)));
    rep.check_max("Delta(B-' = 0), absolute value",
                  std::abs(exchange::delta_from_fields(gaas, 2.0, 0.0)), 0.0);
    rep.check_max("Delta odd in B-', max |D(x) + D(-x)|", odd, 0.0);
    double worst_rel = 0.0;
    const double j0 = exchange::exchange_J(gaas, {1.0, 1.0}).J;
    for (double bm : {0.02, 0.05, 0.1, 0.2}) {
      const double j = exchange::exchange_J(gaas, {1.0 + bm / 2.0, 1.0 - bm / 2.0}).J;
      worst_rel = std::max(worst_rel, std::abs(j - j0) / std::abs(j0));
    }
    rep.check_max("J insensitivity to B-' <= 0.1 B+' at B+' = 2 T, max rel change",
                  worst_rel, 0.01);
    rep.info("GaAs equal-field J(B = 0) = " +
             format_double(exchange::exchange_J(gaas, {0.0, 0.0}).J) + " meV");
  }

  {
    designer::DesignerOptions opt;
    const auto s = designer::design_sech_identity(1, 1.0, 20.0, opt);
    rep.check_max("equal-field sech pulse |a| = 2 omega, block identity, 1 - fidelity",
                  1.0 - s.closed_form_fidelity, 1e-6);
    rep.check_max("equal-field sech pulse, oracle 1 - fidelity",
                  1.0 - *s.oracle_fidelity, 1e-6);
  }

  return rep.finish(seed);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Simulate:
        return cmd_simulate(config, out, err);
      case Command::Exchange:
        return cmd_exchange(config, out, err);
      case Command::DesignXor:
        return cmd_design(config, out, err);
      case Command::Verify:
        return cmd_verify(config, out, err);
    }
  } catch (const config::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace dqgate::cli
