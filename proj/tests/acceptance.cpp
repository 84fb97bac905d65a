// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Usage: dqgate_acceptance <path to dqgate executable>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dqgate/cli.hpp"
#include "dqgate/designer.hpp"
#include "dqgate/dynamics.hpp"
#include "dqgate/exchange.hpp"
#include "dqgate/specfun.hpp"
#include "dqgate/units.hpp"
#include "exchange_oracles.hpp"

using namespace dqgate;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Gate {
  int failures = 0;

  void line(int id, bool ok, const std::string& title, const std::string& detail) {
    if (!ok) ++failures;
    std::cout << "CRITERION " << id << ' ' << (ok ? "PASS" : "FAIL") << "  " << title
              << ": " << detail << '\n';
  }
  static void info(int id, const std::string& text) {
    std::cout << "  info " << id << ": " << text << '\n';
  }
};

void criterion_1(Gate& g) {
  const auto t0 = Clock::now();
  const double f = fidelity_phase_invariant<4>(designer::xor_sequence(), designer::xor_target());
  const double ms = ms_since(t0);
  g.line(1, f >= 1 - 1e-12 && ms < 1.0, "sequence/parallel XOR equivalence",
         "1 - F = " + num(1 - f) + " (<= 1e-12), runtime " + num(ms) + " ms (< 1 ms)");
}

void criterion_2(Gate& g) {
  const auto t0 = Clock::now();
  cli::SplitMix64 rng(2718281828);
  oracle::IntegratorConfig ic;
  ic.rel_tol = 1e-10;
  double worst = 0.0;
  std::string worst_family;
  int count = 0;
  for (auto fam : {PulseFamily::ConstantPair, PulseFamily::Proportional, PulseFamily::Sech,
                   PulseFamily::QVector}) {
    for (int k = 0; k < 50; ++k, ++count) {
      const PulseProfile p = cli::random_pulse(fam, rng);
      const auto r = evolve(p, p.duration(), ic, true);
      if (*r.oracle_deviation > worst) {
        worst = *r.oracle_deviation;
        worst_family = to_string(fam);
      }
    }
  }
  const double s = ms_since(t0) / 1000;
  g.line(2, worst <= 1e-7 && s < 60 && count == 200, "closed form vs numerical oracle",
         std::to_string(count) + " pulses, max Frobenius deviation " + num(worst) + " (" +
             worst_family + ", <= 1e-7), runtime " + num(s) + " s (< 60 s)");
}

void criterion_3(Gate& g) {
  const Waveform shapes[] = {Waveform(ConstantWave{1.0}), Waveform(SechWave{4.0, 0.15}),
                             Waveform(RampWave{1.2, 2.0})};
  double worst_closed = 0.0, worst_oracle = 0.0;
  for (auto [n, m] : {std::pair{1, 0}, std::pair{2, 0}, std::pair{2, 1}, std::pair{3, 2}}) {
    for (const auto& q : shapes) {
      const auto d = designer::design_proportional_xor(n, m, q);
      worst_closed = std::max(worst_closed, 1 - d.achieved_fidelity);
      worst_oracle = std::max(worst_oracle, 1 - d.oracle_fidelity.value_or(0.0));
    }
  }
  g.line(3, worst_closed <= 1e-8 && worst_oracle <= 1e-6, "proportional XOR designs",
         "(n,m) in {(1,0),(2,0),(2,1),(3,2)} x 3 shapes; worst 1 - F closed form " +
             num(worst_closed) + " (<= 1e-8), oracle " + num(worst_oracle) + " (<= 1e-6)");
}

void criterion_4(Gate& g) {
  designer::DesignerOptions opt;
  opt.run_oracle = false;
  const double j = units::mev_to_rad_per_ps(0.050);
  const double bm = std::abs(units::zeeman_rad_per_ps(-0.44, 0.010));
  const auto d = designer::design_constant_xor(j, bm, 1, opt);
  g.line(4, d.gate_time >= 1 && d.gate_time <= 100, "GaAs constant-pulse gate time",
         "J = 50 ueV, B- = 10 mT x |g| = 0.44: T = " + num(d.gate_time) + " ps (in [1, 100])");
}

void criterion_5(Gate& g) {
  double worst = 0.0;
  for (double lam : {0.5, 1.0, 1.5, 2.0, 3.0, 4.5}) {
    const Complex f = specfun::gauss_2f1({1 + lam, 1 - lam, 1.5, 0.5});
    worst = std::max(worst, std::abs(f - std::sin(lam * pi / 2) / lam));
  }
  g.line(5, worst <= 1e-11, "hypergeometric sine identity at z = 1/2",
         "max error " + num(worst) + " (<= 1e-11)");
}

void criterion_6(Gate& g) {
  struct Preset {
    double c;
    int n, m;
  };
  const Preset presets[] = {{0.5, 4, 0}, {0.2, 2, 0}, {1.0, 6, 1}};
  const double window = 100.0;
  int passed = 0;
  std::vector<std::string> notes;
  for (const auto& p : presets) {
    const std::string tag = "c = " + num(p.c) + ", n = " + std::to_string(p.n) +
                            ", m = " + std::to_string(p.m);
    try {
      const auto d = designer::design_adiabatic_xor(p.c, p.n, p.m, window);
      const double residual = std::abs(designer::adcond_residual(*d.a, p.c, *d.omega));
      const double wt = *d.omega * d.gate_time;
      const double ratio = *d.a / (*d.omega * (1 + 4 * p.m));
      const bool tie = wt <= 6 || std::abs(ratio - 1) <= 0.05;
      const double of = d.oracle_fidelity.value_or(0.0);
      const bool ok = residual <= 1e-10 && tie && of >= 1 - 1e-5;
      passed += ok;
      notes.push_back(tag + ": residual " + num(residual) + ", a/(omega(1+4m)) " +
                      num(ratio) + ", oracle 1 - F " + num(1 - of));
    } catch (const designer::DesignInfeasible& e) {
      std::string why = tag + ": infeasible";
      if (!e.trace().empty()) why += " (" + e.trace().front() + ")";
      notes.push_back(why);
    }
  }
  g.line(6, passed == 3, "adiabatic sech XOR for c > 0",
         std::to_string(passed) + "/3 presets designed (window " + num(window) + " ps)");
  for (const auto& s : notes) Gate::info(6, s);
}

void criterion_7(Gate& g) {
  // c = 0 with a = lambda omega, lambda even, satisfies the G2 condition;
  // the stated limit there is exp(-i sigma3 t c) = identity.
  double worst = 0.0, worst_signed = 0.0;
  std::vector<std::string> fails;
  for (int lam : {2, 4, 6, 8}) {
    for (double wt : {15.0, 20.0, 30.0}) {
      const ComplexMatrix2 u = sech_propagator(lam, 0.0, 1.0, wt);
      const double dev = (u - ComplexMatrix2::Identity()).norm();
      const double sign = (lam / 2) % 2 ? -1.0 : 1.0;
      worst_signed = std::max(worst_signed, (u - sign * ComplexMatrix2::Identity()).norm());
      if (dev > 1e-5 && wt == 15.0)
        fails.push_back("lambda = " + std::to_string(lam) + " deviation " + num(dev));
      worst = std::max(worst, dev);
    }
  }
  g.line(7, worst <= 1e-5, "long-time limit of the sech block",
         "max ||u_t - exp(-i sigma3 t c)|| = " + num(worst) +
             " over lambda in {2,4,6,8}, omega t in {15,20,30} (<= 1e-5)");
  for (const auto& s : fails) Gate::info(7, s);
  Gate::info(7, "against (-1)^(lambda/2) identity the max deviation is " + num(worst_signed));
}

void criterion_8(Gate& g) {
  using namespace exchange;
  const DotParameters p = gaas_preset();
  bool ok = true;
  std::ostringstream detail;

  const bool zero = delta_from_fields(p, 2.0, 0.0) == 0.0 && delta_from_fields(p, 7.5, 0.0) == 0.0;
  bool odd = true;
  for (double bm : {0.01, 0.1, 0.5, 3.0})
    odd &= delta_from_fields(p, 2.0, -bm) == -delta_from_fields(p, 2.0, bm);
  ok &= zero && odd;

  const double j0 = exchange_J(p, {1.0, 1.0}).J;
  double insens = 0.0;
  for (int k = 0; k <= 20; ++k) {
    const double bm = 0.01 * k;
    insens = std::max(insens, std::abs(exchange_J(p, {1 + bm / 2, 1 - bm / 2}).J - j0) / std::abs(j0));
  }
  ok &= insens <= 0.01;

  // Zero-field J assembled from the quadrature Coulomb term and the
  // equal-field overlap and kinetic terms.
  const double d = 0.7, m_exp = d * d;
  const double w = 3.0 * (0.75 + 0.75 * d * d);
  const double j_quad = (w + exchange_oracles::zero_field_coulomb_mev(d)) / std::sinh(2 * m_exp);
  const double j_code = exchange_J(p, {0, 0}).J;
  const double spot = std::abs(j_code / j_quad - 1);
  ok &= spot <= 0.01;

  double golden = 0.0;
  int rows = 0;
  std::ifstream in(std::string(DQGATE_TEST_DATA_DIR) + "/gaas_equal_field_golden.csv");
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    const double jb = exchange_J(p, {v[0], v[1]}).J;
    golden = std::max(golden, std::abs(jb - v[4]) / std::max(1.0, std::abs(v[4])));
    ++rows;
  }
  ok &= rows == 101 && golden <= 1e-12;

  detail << "Delta(B-'=0) = 0 " << (zero ? "yes" : "no") << ", odd " << (odd ? "yes" : "no")
         << ", J insensitivity " << num(insens) << " (<= 0.01), quadrature spot check "
         << num(spot) << " (<= 0.01), golden " << rows << " rows max dev " << num(golden)
         << " (<= 1e-12)";
  g.line(8, ok, "exchange sanity suite", detail.str());
}

void criterion_9(Gate& g) {
  cli::SplitMix64 rng(161803);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double lam = rng.uniform(0, pi), w = rng.uniform(0, 10), bp = rng.uniform(-1, 1);
    const PulseProfile p(ProportionalPulse{lam, Waveform(ConstantWave{w}), bp}, 1.0);
    const ComplexMatrix4 r = evolve_closed_form(p, 1.0).propagator;
    worst = std::max(worst, std::abs(std::norm(r(2, 1)) - swap_probability(lam, w)));
  }
  g.line(9, worst <= 1e-10, "swap probability",
         "1000 random (lambda, omega), max error " + num(worst) + " (<= 1e-10)");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void criterion_10(Gate& g, const std::string& exe) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "dqgate_verify_a.txt", b = dir / "dqgate_verify_b.txt";
  const std::string base = "\"" + exe + "\" verify --seed 20240601 -o ";
  const int ra = std::system((base + "\"" + a.string() + "\" > /dev/null 2>&1").c_str());
  const int rb = std::system((base + "\"" + b.string() + "\" > /dev/null 2>&1").c_str());
  const std::string sa = slurp(a), sb = slurp(b);
  const bool ok = ra == 0 && rb == 0 && !sa.empty() && sa == sb;
  g.line(10, ok, "verify determinism",
         "two runs, " + std::to_string(sa.size()) + " bytes, " +
             (sa == sb ? "identical" : "different") + ", exit codes " + std::to_string(ra) +
             "/" + std::to_string(rb));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: dqgate_acceptance <dqgate executable>\n";
    return 2;
  }
  Gate g;
  const std::function<void(Gate&)> checks[] = {criterion_1, criterion_2, criterion_3,
                                              criterion_4, criterion_5, criterion_6,
                                              criterion_7, criterion_8, criterion_9};
  int id = 1;
  for (const auto& c : checks) {
    try {
      c(g);
    } catch (const std::exception& e) {
      g.line(id, false, "unexpected exception", e.what());
    }
    ++id;
  }
  criterion_10(g, argv[1]);
  std::cout << "ACCEPTANCE " << (10 - g.failures) << "/10 criteria passed\n";
  return g.failures == 0 ? 0 : 1;
}
