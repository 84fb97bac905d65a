#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dqgate/algebra.hpp"

namespace dqgate {

// Scalar control shapes. All carry a closed-form running integral from 0.

struct ConstantWave {
  double amplitude = 0.0;
};

/// amplitude * sech(rate * t)
struct SechWave {
  double amplitude = 0.0;
  double rate = 1.0;
};

/// amplitude * (1 - exp(-t / rise_time))
struct RampWave {
  double amplitude = 0.0;
  double rise_time = 1.0;
};

class Waveform {
 public:
  using Shape = std::variant<ConstantWave, SechWave, RampWave>;

  Waveform() = default;
  Waveform(Shape shape);  // NOLINT(google-explicit-constructor)

  double value(double t) const;
  /// Integral of value() over [0, t].
  double integral(double t) const;
  /// Supremum of integral(t) over t >= 0 (infinite for non-decaying shapes).
  double integral_limit() const;

  const Shape& shape() const { return shape_; }
  std::string describe() const;

 private:
  Shape shape_ = ConstantWave{};
};

/// Natural cubic spline through (t_i, y_i), with exact running integral.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> t, std::vector<double> y);

  double value(double t) const;
  double integral(double t) const;
  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  bool empty() const { return t_.empty(); }

 private:
  std::size_t segment(double t) const;
  double segment_integral(std::size_t i, double h) const;

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives
  std::vector<double> cumulative_;
};

/// Real three-vector path q(t) defining the effective field through
/// K = (q' + q x q') / (1 + q^2); q'_2 = q_1 q'_3 - q_3 q'_1 keeps K_2 = 0.
struct QTrajectory {
  std::function<Vec3(double)> q;
  std::function<Vec3(double)> dq;
  double period = 0.0;  // 0 when the path does not close
  std::string label;
};

/// Figure-eight path in the (q1, q3) plane with q2 following the constraint.
/// Zero signed area, so q(2 pi k / rate) = q(0) exactly.
QTrajectory figure_eight_loop(const Vec3& center, double amp1, double amp3,
                              double rate);

// Pulse families. Energies in rad/ps, times in ps. bminus/bplus already
// include mu_B g.

struct FreePulse {
  Waveform exchange;
};

struct ConstantPairPulse {
  double exchange = 0.0;
  double bminus = 0.0;
  double bplus = 0.0;
};

/// J = q sin(lambda), B- = q cos(lambda).
struct ProportionalPulse {
  double lambda = 0.0;
  Waveform q;
  double bplus = 0.0;
};

/// J = a sech(omega t), B- = c.
struct SechPulse {
  double a = 0.0;
  double c = 0.0;
  double omega = 1.0;
  double bplus = 0.0;
};

struct QVectorPulse {
  QTrajectory path;
  double bplus = 0.0;
};

struct SampledPulse {
  CubicSpline exchange;
  CubicSpline bminus;
  CubicSpline bplus;
};

enum class PulseFamily { Free, ConstantPair, Proportional, Sech, QVector, Sampled };

std::string to_string(PulseFamily f);

class PulseProfile {
 public:
  using Family = std::variant<FreePulse, ConstantPairPulse, ProportionalPulse,
                              SechPulse, QVectorPulse, SampledPulse>;

  PulseProfile(Family family, double duration);

  double exchange(double t) const;  // J(t)
  double bminus(double t) const;    // B-(t)
  double bplus(double t) const;     // B+(t)

  /// Integral of J over [0, t].
  double phi(double t) const;
  /// Integral of B+ over [0, t].
  double gamma(double t) const;

  double duration() const { return duration_; }
  PulseFamily family_tag() const;
  const Family& family() const { return family_; }

 private:
  Family family_;
  double duration_;
};

}  // namespace dqgate
