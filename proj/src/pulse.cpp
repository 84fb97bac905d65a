#include "dqgate/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace dqgate {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Gudermannian, gd(x) = 2 atan(tanh(x / 2)).
double gudermannian(double x) { return 2.0 * std::atan(std::tanh(0.5 * x)); }

Vec3 effective_field_from_path(const QTrajectory& path, double t) {
  const Vec3 q = path.q(t);
  const Vec3 dq = path.dq(t);
  return (dq + q.cross(dq)) / (1.0 + q.squaredNorm());
}

}  // namespace

Waveform::Waveform(Shape shape) : shape_(shape) {
  std::visit(overloaded{
                 [](const ConstantWave&) {},
                 [](const SechWave& s) {
                   if (!(s.rate > 0.0))
                     throw std::invalid_argument("SechWave: rate must be > 0");
                 },
                 [](const RampWave& r) {
                   if (!(r.rise_time > 0.0))
                     throw std::invalid_argument(
                         "RampWave: rise_time must be > 0");
                 },
             },
             shape_);
}

double Waveform::value(double t) const {
  return std::visit(
      overloaded{
          [](const ConstantWave& c) { return c.amplitude; },
          [t](const SechWave& s) { return s.amplitude / std::cosh(s.rate * t); },
          [t](const RampWave& r) {
            return -r.amplitude * std::expm1(-t / r.rise_time);
          },
      },
      shape_);
}

double Waveform::integral(double t) const {
  return std::visit(
      overloaded{
          [t](const ConstantWave& c) { return c.amplitude * t; },
          [t](const SechWave& s) {
            return s.amplitude / s.rate * gudermannian(s.rate * t);
          },
          [t](const RampWave& r) {
            return r.amplitude * (t + r.rise_time * std::expm1(-t / r.rise_time));
          },
      },
      shape_);
}

double Waveform::integral_limit() const {
  return std::visit(
      overloaded{
          [](const ConstantWave& c) {
            return c.amplitude == 0.0 ? 0.0
                                      : std::copysign(HUGE_VAL, c.amplitude);
          },
          [](const SechWave& s) {
            return s.amplitude * std::numbers::pi / (2.0 * s.rate);
          },
          [](const RampWave& r) {
            return r.amplitude == 0.0 ? 0.0
                                      : std::copysign(HUGE_VAL, r.amplitude);
          },
      },
      shape_);
}

std::string Waveform::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const ConstantWave& c) {
                   os << "constant(amplitude=" << c.amplitude << ")";
                 },
                 [&](const SechWave& s) {
                   os << "sech(amplitude=" << s.amplitude
                      << ", rate=" << s.rate << ")";
                 },
                 [&](const RampWave& r) {
                   os << "ramp(amplitude=" << r.amplitude
                      << ", rise_time=" << r.rise_time << ")";
                 },
             },
             shape_);
  return os.str();
}

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  const std::size_t n = t_.size();
  if (n < 2 || y_.size() != n)
    throw std::invalid_argument(
        "CubicSpline: need at least two samples and matching lengths");
  for (std::size_t i = 1; i < n; ++i)
    if (!(t_[i] > t_[i - 1]))
      throw std::invalid_argument("CubicSpline: sample times must increase");
  for (double v : y_)
    if (!std::isfinite(v))
      throw std::invalid_argument("CubicSpline: non-finite sample");

  // Natural spline: tridiagonal solve for interior second derivatives.
  m_.assign(n, 0.0);
  if (n > 2) {
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t_[i] - t_[i - 1];
      const double h1 = t_[i + 1] - t_[i];
      diag[i] = 2.0 * (h0 + h1);
      upper[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double lower = t_[i] - t_[i - 1];
      const double w = lower / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  cumulative_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    cumulative_[i + 1] =
        cumulative_[i] + segment_integral(i, t_[i + 1] - t_[i]);
}

std::size_t CubicSpline::segment(double t) const {
  if (t <= t_.front()) return 0;
  if (t >= t_.back()) return t_.size() - 2;
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  return static_cast<std::size_t>(it - t_.begin()) - 1;
}

double CubicSpline::value(double t) const {
  const std::size_t i = segment(t);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - t) / h;
  const double b = (t - t_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

// Integral of segment i from t_i to t_i + s.
double CubicSpline::segment_integral(std::size_t i, double s) const {
  const double h = t_[i + 1] - t_[i];
  const double y0 = y_[i], y1 = y_[i + 1], m0 = m_[i], m1 = m_[i + 1];
  // Antiderivative in terms of b = s/h, with a = 1 - b.
  const double b = s / h;
  const double a = 1.0 - b;
  auto prim = [&](double aa, double bb) {
    return h * (-0.5 * aa * aa * y0 + 0.5 * bb * bb * y1) +
           h * h * h / 6.0 *
               (-(0.25 * aa * aa * aa * aa - 0.5 * aa * aa) * m0 +
                (0.25 * bb * bb * bb * bb - 0.5 * bb * bb) * m1);
  };
  return prim(a, b) - prim(1.0, 0.0);
}

double CubicSpline::integral(double t) const {
  if (t <= t_.front()) return 0.0;
  const std::size_t i = segment(t);
  return cumulative_[i] + segment_integral(i, std::min(t, t_.back()) - t_[i]);
}

QTrajectory figure_eight_loop(const Vec3& center, double amp1, double amp3,
                              double rate) {
  if (!(rate > 0.0))
    throw std::invalid_argument("figure_eight_loop: rate must be > 0");
  QTrajectory path;
  const double c1 = center(0), c2 = center(1), c3 = center(2);
  path.q = [=](double t) {
    const double s = rate * t;
    const double q2 = c2 + c1 * amp3 * std::sin(2.0 * s) -
                      c3 * amp1 * std::sin(s) +
                      amp1 * amp3 *
                          ((1.0 - std::cos(3.0 * s)) / 6.0 -
                           1.5 * (1.0 - std::cos(s)));
    return Vec3(c1 + amp1 * std::sin(s), q2, c3 + amp3 * std::sin(2.0 * s));
  };
  path.dq = [=](double t) {
    const double s = rate * t;
    const double dq1 = amp1 * std::cos(s);
    const double dq3 = 2.0 * amp3 * std::cos(2.0 * s);
    const double q1 = c1 + amp1 * std::sin(s);
    const double q3 = c3 + amp3 * std::sin(2.0 * s);
    return Vec3(rate * dq1, rate * (q1 * dq3 - q3 * dq1), rate * dq3);
  };
  path.period = 2.0 * std::numbers::pi / rate;
  std::ostringstream os;
  os.precision(17);
  os << "figure_eight(center=(" << c1 << "," << c2 << "," << c3
     << "), amp1=" << amp1 << ", amp3=" << amp3 << ", rate=" << rate << ")";
  path.label = os.str();
  return path;
}

std::string to_string(PulseFamily f) {
  switch (f) {
    case PulseFamily::Free:
      return "free";
    case PulseFamily::ConstantPair:
      return "constant";
    case PulseFamily::Proportional:
      return "proportional";
    case PulseFamily::Sech:
      return "sech";
    case PulseFamily::QVector:
      return "qvector";
    case PulseFamily::Sampled:
      return "sampled";
  }
  return "unknown";
}

PulseProfile::PulseProfile(Family family, double duration)
    : family_(std::move(family)), duration_(duration) {
  if (!(duration_ > 0.0) || !std::isfinite(duration_))
    throw std::invalid_argument("PulseProfile: duration must be finite and > 0");
  std::visit(overloaded{
                 [](const FreePulse&) {},
                 [](const ConstantPairPulse&) {},
                 [](const ProportionalPulse&) {},
                 [](const SechPulse& s) {
                   if (!(s.omega > 0.0))
                     throw std::invalid_argument(
                         "PulseProfile: sech omega must be > 0");
                 },
                 [](const QVectorPulse& q) {
                   if (!q.path.q || !q.path.dq)
                     throw std::invalid_argument(
                         "PulseProfile: q-vector path is empty");
                 },
                 [this](const SampledPulse& s) {
                   for (const CubicSpline* sp : {&s.exchange, &s.bminus, &s.bplus})
                     if (sp->empty() || sp->t_begin() > 0.0 ||
                         sp->t_end() < duration_)
                       throw std::invalid_argument(
                           "PulseProfile: samples must cover [0, duration]");
                 },
             },
             family_);
  for (int k = 0; k <= 64; ++k) {
    const double t = duration_ * k / 64.0;
    if (!std::isfinite(exchange(t)) || !std::isfinite(bminus(t)) ||
        !std::isfinite(bplus(t)))
      throw std::invalid_argument("PulseProfile: non-finite control at t = " +
                                  std::to_string(t));
  }
}

double PulseProfile::exchange(double t) const {
  return std::visit(
      overloaded{
          [t](const FreePulse& p) { return p.exchange.value(t); },
          [](const ConstantPairPulse& p) { return p.exchange; },
          [t](const ProportionalPulse& p) {
            return p.q.value(t) * std::sin(p.lambda);
          },
          [t](const SechPulse& p) { return p.a / std::cosh(p.omega * t); },
          [t](const QVectorPulse& p) {
            return effective_field_from_path(p.path, t)(0);
          },
          [t](const SampledPulse& p) { return p.exchange.value(t); },
      },
      family_);
}

double PulseProfile::bminus(double t) const {
  return std::visit(
      overloaded{
          [](const FreePulse&) { return 0.0; },
          [](const ConstantPairPulse& p) { return p.bminus; },
          [t](const ProportionalPulse& p) {
            return p.q.value(t) * std::cos(p.lambda);
          },
          [](const SechPulse& p) { return p.c; },
          [t](const QVectorPulse& p) {
            return effective_field_from_path(p.path, t)(2);
          },
          [t](const SampledPulse& p) { return p.bminus.value(t); },
      },
      family_);
}

double PulseProfile::bplus(double t) const {
  return std::visit(
      overloaded{
          [](const FreePulse&) { return 0.0; },
          [](const ConstantPairPulse& p) { return p.bplus; },
          [](const ProportionalPulse& p) { return p.bplus; },
          [](const SechPulse& p) { return p.bplus; },
          [](const QVectorPulse& p) { return p.bplus; },
          [t](const SampledPulse& p) { return p.bplus.value(t); },
      },
      family_);
}

double PulseProfile::phi(double t) const {
  return std::visit(
      overloaded{
          [t](const FreePulse& p) { return p.exchange.integral(t); },
          [t](const ConstantPairPulse& p) { return p.exchange * t; },
          [t](const ProportionalPulse& p) {
            return p.q.integral(t) * std::sin(p.lambda);
          },
          [t](const SechPulse& p) {
            return p.a / p.omega * gudermannian(p.omega * t);
          },
          [t](const QVectorPulse& p) {
            if (t <= 0.0) return 0.0;
            auto k1 = [&p](double s) {
              return effective_field_from_path(p.path, s)(0);
            };
            return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                k1, 0.0, t, 15, 1e-13);
          },
          [t](const SampledPulse& p) { return p.exchange.integral(t); },
      },
      family_);
}

double PulseProfile::gamma(double t) const {
  return std::visit(
      overloaded{
          [](const FreePulse&) { return 0.0; },
          [t](const ConstantPairPulse& p) { return p.bplus * t; },
          [t](const ProportionalPulse& p) { return p.bplus * t; },
          [t](const SechPulse& p) { return p.bplus * t; },
          [t](const QVectorPulse& p) { return p.bplus * t; },
          [t](const SampledPulse& p) { return p.bplus.integral(t); },
      },
      family_);
}

PulseFamily PulseProfile::family_tag() const {
  return static_cast<PulseFamily>(family_.index());
}

}  // namespace dqgate
