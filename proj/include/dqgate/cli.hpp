#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dqgate/pulse.hpp"

namespace dqgate::cli {

enum class Command { Simulate, Exchange, DesignXor, Verify };

struct RunConfig {
  Command command = Command::Verify;
  std::string config_path;  // simulate
  std::string output_path;  // empty: standard output
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;

  // exchange
  std::string preset = "gaas";
  std::string sweep = "B=0:10:0.1";
  double field_difference = 0.0;  // B1 - B2 at every grid point, tesla
  std::optional<double> d;

  // design-xor
  std::string family = "proportional";
  int n = 1;
  int m = 0;
  std::string shape = "constant";
  double amplitude = 1.0;   // rad/ps
  double rate = 1.0;        // rad/ps
  double rise_time = 1.0;   // ps
  double c = 0.5;           // rad/ps
  double window = 100.0;    // ps
  double exchange_uev = 50.0;
  double bminus_mt = 10.0;

  // verify
  std::uint64_t seed = 20240601;
};

/// Executes one command. Returns the process exit status; diagnostics go to
/// `err`, artifacts to the output path or `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Grid "NAME=start:stop:step" with inclusive end.
struct SweepGrid {
  std::string name;
  std::vector<double> values;
};
SweepGrid parse_sweep(const std::string& spec);

/// Worker count from DQGATE_THREADS, else the hardware concurrency.
unsigned thread_count();

/// Deterministic generator, identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Random pulse of a closed-form family with moderate parameters.
PulseProfile random_pulse(PulseFamily family, SplitMix64& rng);

struct VerifyOutcome {
  std::string report;
  bool all_passed = false;
};

VerifyOutcome run_verify(std::uint64_t seed);

}  // namespace dqgate::cli
