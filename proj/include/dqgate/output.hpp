#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dqgate::output {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kUnits =
    "hbar = 1; energies in rad/ps; times in ps; exchange J in meV; fields in T";

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

struct Provenance {
  std::string command;
  std::string config_hash;
};

/// '#' comment lines with version, command, config hash and units.
void write_provenance(std::ostream& os, const Provenance& p);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);
void write_csv_row(std::ostream& os, const std::vector<double>& values);

}  // namespace dqgate::output
