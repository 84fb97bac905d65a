#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "dqgate/algebra.hpp"
#include "dqgate/pulse.hpp"

namespace dqgate::config {

/// Malformed pulse file. line() is 0 when the problem is not tied to one line.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct PulseConfig {
  PulseProfile pulse{ConstantPairPulse{}, 1.0};
  int steps = 100;
  std::string target = "xor";
  /// Sorted "key = value" lines; the input to the provenance hash.
  std::string canonical;
};

/// Parses a number, also accepting pi, k*pi, pi/k and k*pi/q.
double parse_value(const std::string& text);

/// `base_dir` resolves the relative path of a sampled-pulse table.
PulseConfig parse_pulse_config(const std::string& text,
                               const std::filesystem::path& base_dir = ".");
PulseConfig load_pulse_config(const std::filesystem::path& path);

/// Gate named by `target`: xor, sqrt_swap, swap or identity.
ComplexMatrix4 target_gate(const std::string& name);

}  // namespace dqgate::config
