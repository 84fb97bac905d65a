#include "dqgate/pulse_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "dqgate/designer.hpp"
#include "dqgate/dynamics.hpp"

namespace dqgate::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_plain(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Entries {
 public:
  void add(const std::string& key, Entry e) {
    if (map_.count(key))
      throw ConfigError(e.line, key, "duplicate key");
    map_[key] = std::move(e);
  }

  bool has(const std::string& key) const { return map_.count(key) != 0; }

  const Entry& raw(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) throw ConfigError(0, key, "required key is missing");
    used_.insert(key);
    return it->second;
  }

  std::string text(const std::string& key) { return raw(key).value; }

  double number(const std::string& key) {
    const Entry& e = raw(key);
    try {
      return parse_value(e.value);
    } catch (const std::invalid_argument&) {
      throw ConfigError(e.line, key, "not a number: '" + e.value + "'");
    }
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) {
    const Entry& e = raw(key);
    int v = 0;
    const auto res =
        std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (res.ec != std::errc{} || res.ptr != e.value.data() + e.value.size())
      throw ConfigError(e.line, key, "not an integer: '" + e.value + "'");
    return v;
  }

  void reject_unused(const std::string& family) const {
    for (const auto& [k, e] : map_)
      if (!used_.count(k))
        throw ConfigError(e.line, k, "key not valid for family '" + family + "'");
  }

  std::string canonical() const {
    std::string out;
    for (const auto& [k, e] : map_) out += k + " = " + e.value + "\n";
    return out;
  }

  int line_of(const std::string& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? 0 : it->second.line;
  }

 private:
  std::map<std::string, Entry> map_;
  std::set<std::string> used_;
};

Waveform read_waveform(Entries& e) {
  const std::string shape = e.has("shape") ? e.text("shape") : "constant";
  const double amp = e.number("amplitude");
  try {
    if (shape == "constant") return Waveform(ConstantWave{amp});
    if (shape == "sech") return Waveform(SechWave{amp, e.number("rate")});
    if (shape == "ramp") return Waveform(RampWave{amp, e.number("rise_time")});
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(e.line_of("shape"), "shape", ex.what());
  }
  throw ConfigError(e.line_of("shape"), "shape",
                    "unknown shape '" + shape + "' (constant, sech, ramp)");
}

SampledPulse read_samples(const std::filesystem::path& file, int line) {
  std::ifstream in(file);
  if (!in)
    throw ConfigError(line, "samples", "cannot open '" + file.string() + "'");
  std::vector<double> t, j, bm, bp;
  std::string row;
  bool header_seen = false;
  int row_no = 0;
  while (std::getline(in, row)) {
    ++row_no;
    row = trim(row);
    if (row.empty() || row[0] == '#') continue;
    if (!header_seen) {
      if (row != "t,J,bminus,bplus")
        throw ConfigError(line, "samples",
                          "sample table header must be 't,J,bminus,bplus'");
      header_seen = true;
      continue;
    }
    std::stringstream ss(row);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) {
      const auto v = parse_plain(trim(cell));
      if (!v)
        throw ConfigError(line, "samples",
                          "bad number in sample row " + std::to_string(row_no));
      vals.push_back(*v);
    }
    if (vals.size() != 4)
      throw ConfigError(line, "samples",
                        "sample row " + std::to_string(row_no) +
                            " needs 4 columns");
    t.push_back(vals[0]);
    j.push_back(vals[1]);
    bm.push_back(vals[2]);
    bp.push_back(vals[3]);
  }
  try {
    return SampledPulse{CubicSpline(t, j), CubicSpline(t, bm), CubicSpline(t, bp)};
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(line, "samples", ex.what());
  }
}

}  // namespace

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::invalid_argument(
          (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
          "field '" + field + "': " + message),
      line_(line),
      field_(std::move(field)) {}

double parse_value(const std::string& raw) {
  const std::string s = trim(raw);
  if (auto v = parse_plain(s)) return *v;
  // Forms with pi: [k*]pi[/q]
  const auto p = s.find("pi");
  if (p == std::string::npos) throw std::invalid_argument("not a number");
  double factor = 1.0;
  if (p > 0) {
    std::string head = trim(s.substr(0, p));
    if (head == "-") {
      factor = -1.0;
    } else {
      if (head.empty() || head.back() != '*')
        throw std::invalid_argument("not a number");
      head.pop_back();
      const auto k = parse_plain(trim(head));
      if (!k) throw std::invalid_argument("not a number");
      factor = *k;
    }
  }
  const std::string tail = trim(s.substr(p + 2));
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail[0] != '/') throw std::invalid_argument("not a number");
    const auto q = parse_plain(trim(tail.substr(1)));
    if (!q || *q == 0.0) throw std::invalid_argument("not a number");
    divisor = *q;
  }
  return factor * std::numbers::pi / divisor;
}

PulseConfig parse_pulse_config(const std::string& text,
                               const std::filesystem::path& base_dir) {
  Entries e;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, trim(line), "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    if (value.empty()) throw ConfigError(line_no, key, "empty value");
    e.add(key, Entry{value, line_no});
  }

  PulseConfig cfg;
  cfg.canonical = e.canonical();
  const std::string family = e.text("family");
  const double t_end = e.number("t_end");
  if (!(t_end > 0.0))
    throw ConfigError(e.line_of("t_end"), "t_end", "must be > 0");
  if (e.has("steps")) {
    cfg.steps = e.integer("steps");
    if (cfg.steps < 1)
      throw ConfigError(e.line_of("steps"), "steps", "must be >= 1");
  }
  if (e.has("target")) {
    cfg.target = e.text("target");
    try {
      target_gate(cfg.target);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(e.line_of("target"), "target", ex.what());
    }
  }

  PulseProfile::Family fam;
  if (family == "free") {
    fam = FreePulse{read_waveform(e)};
  } else if (family == "constant") {
    fam = ConstantPairPulse{e.number("J"), e.number_or("bminus", 0.0),
                            e.number_or("bplus", 0.0)};
  } else if (family == "proportional") {
    const double lambda = e.number("lambda");
    fam = ProportionalPulse{lambda, read_waveform(e), e.number_or("bplus", 0.0)};
  } else if (family == "sech") {
    const double omega = e.number("omega");
    if (!(omega > 0.0))
      throw ConfigError(e.line_of("omega"), "omega", "must be > 0");
    fam = SechPulse{e.number("a"), e.number_or("c", 0.0), omega,
                    e.number_or("bplus", 0.0)};
  } else if (family == "qvector") {
    const std::string loop = e.has("loop") ? e.text("loop") : "figure_eight";
    if (loop != "figure_eight")
      throw ConfigError(e.line_of("loop"), "loop",
                        "only 'figure_eight' is supported");
    const double rate = e.number("loop_rate");
    if (!(rate > 0.0))
      throw ConfigError(e.line_of("loop_rate"), "loop_rate", "must be > 0");
    const Vec3 center(e.number_or("center1", 0.0), e.number_or("center2", 0.0),
                      e.number_or("center3", 0.0));
    fam = QVectorPulse{
        figure_eight_loop(center, e.number("amp1"), e.number("amp3"), rate),
        e.number_or("bplus", 0.0)};
  } else if (family == "sampled") {
    const Entry& s = e.raw("samples");
    std::filesystem::path file = s.value;
    if (file.is_relative()) file = base_dir / file;
    fam = read_samples(file, s.line);
  } else {
    throw ConfigError(e.line_of("family"), "family",
                      "unknown family '" + family +
                          "' (free, constant, proportional, sech, qvector, "
                          "sampled)");
  }
  e.reject_unused(family);
  try {
    cfg.pulse = PulseProfile(std::move(fam), t_end);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(0, "family", ex.what());
  }
  return cfg;
}

PulseConfig load_pulse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "config", "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_pulse_config(ss.str(), path.parent_path());
}

ComplexMatrix4 target_gate(const std::string& name) {
  if (name == "xor") return designer::xor_target();
  if (name == "sqrt_swap") return free_evolution(std::numbers::pi / 4.0);
  if (name == "swap") return swap_operator();
  if (name == "identity") return ComplexMatrix4::Identity();
  throw std::invalid_argument("unknown target '" + name +
                              "' (xor, sqrt_swap, swap, identity)");
}

}  // namespace dqgate::config
