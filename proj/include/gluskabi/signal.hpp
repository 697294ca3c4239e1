#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/rational.hpp"

namespace gluskabi {

namespace waveform {

/// A cos(2 pi t / tau + phase)
struct Cosine
{
  double amplitude{1.0};
  double phase{0.0};
};

/// Zero at phase 0, +A at a quarter period, -A at three quarters.
struct Triangle
{
  double amplitude{1.0};
};

/// +A on [0, tau/2), -A on [tau/2, tau).
struct Square
{
  double amplitude{1.0};
};

/// a0 + sum_k a_k cos(2 pi k t / tau) + b_k sin(2 pi k t / tau), k = 1, 2, ...
struct Fourier
{
  double a0{0.0};
  std::vector<double> a;
  std::vector<double> b;
};

/// Linear interpolation with wrap-around through (phase, value) knots.
/// Phases are fractions of the period in [0, 1), strictly increasing, first knot at 0.
struct Sampled
{
  std::vector<double> phases;
  std::vector<double> values;
};

using Shape = std::variant<Cosine, Triangle, Square, Fourier, Sampled>;

}  // namespace waveform

/// A scalar tau-periodic signal.
///
/// The waveform is drawn with its own native period.  The type period (the
/// tau used by the periodicity-defect operator) defaults to the native period
/// but may be relabelled to any integer multiple of it, which is how two
/// signals with commensurate rational periods are put into a common type.
class PeriodicTrajectory
{
public:
  PeriodicTrajectory(waveform::Shape shape, double period)
  : shape_{std::move(shape)}, native_period_{period}, period_{period}
  {
    validate();
  }

  PeriodicTrajectory(waveform::Shape shape, RationalPeriod period)
  : shape_{std::move(shape)}, native_period_{period.value()}, period_{period.value()},
    exact_period_{period}, exact_native_{period}
  {
    validate();
  }

  static PeriodicTrajectory cosine(double period, double amplitude = 1.0, double phase = 0.0)
  {
    return {waveform::Cosine{amplitude, phase}, period};
  }
  static PeriodicTrajectory triangle(double period, double amplitude = 1.0)
  {
    return {waveform::Triangle{amplitude}, period};
  }
  static PeriodicTrajectory square(double period, double amplitude = 1.0)
  {
    return {waveform::Square{amplitude}, period};
  }
  static PeriodicTrajectory constant(double value, double period = 1.0)
  {
    return {waveform::Fourier{value, {}, {}}, period};
  }

  const waveform::Shape & shape() const noexcept { return shape_; }

  /// Type period tau.
  double period() const noexcept { return period_; }
  /// Period the waveform is drawn with; period() is an integer multiple of it.
  double native_period() const noexcept { return native_period_; }
  const std::optional<RationalPeriod> & exact_period() const noexcept { return exact_period_; }

  /// Value at t; right-hand limit at jumps.
  double eval(double t) const { return value_at_phase(phase_right(t), false); }

  /// Left-hand limit at t.
  double eval_left(double t) const { return value_at_phase(phase_left(t), true); }

  /// Time derivative at t; right-hand derivative at kinks.
  double deriv(double t) const
  {
    const double p = phase_right(t);
    const double w = 1.0 / native_period_;
    return std::visit(
      [&](const auto & s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, waveform::Cosine>) {
          return -s.amplitude * kTwoPi * w * std::sin(kTwoPi * p + s.phase);
        } else if constexpr (std::is_same_v<S, waveform::Triangle>) {
          return (p < 0.25 || p >= 0.75 ? 4.0 : -4.0) * s.amplitude * w;
        } else if constexpr (std::is_same_v<S, waveform::Square>) {
          return 0.0;
        } else if constexpr (std::is_same_v<S, waveform::Fourier>) {
          double d = 0.0;
          for (std::size_t k = 0; k < s.a.size(); ++k) {
            const double kk = static_cast<double>(k + 1);
            d -= s.a[k] * kk * std::sin(kTwoPi * kk * p);
          }
          for (std::size_t k = 0; k < s.b.size(); ++k) {
            const double kk = static_cast<double>(k + 1);
            d += s.b[k] * kk * std::cos(kTwoPi * kk * p);
          }
          return d * kTwoPi * w;
        } else {
          const auto [i, j, lo, hi] = sampled_cell(s, p);
          return (s.values[j] - s.values[i]) / ((hi - lo) * native_period_);
        }
      },
      shape_);
  }

  /// Phases (fractions of the native period, in [0,1)) where value or slope is not smooth.
  std::vector<double> singular_phases() const
  {
    return std::visit(
      [](const auto & s) -> std::vector<double> {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, waveform::Triangle>) {
          return {0.25, 0.75};
        } else if constexpr (std::is_same_v<S, waveform::Square>) {
          return {0.0, 0.5};
        } else if constexpr (std::is_same_v<S, waveform::Sampled>) {
          return s.phases;
        } else {
          return {};
        }
      },
      shape_);
  }

  /// True when the signal has jump discontinuities.
  bool has_jumps() const noexcept { return std::holds_alternative<waveform::Square>(shape_); }

  /// Times in [lo, hi] at which value or slope is not smooth, sorted.
  std::vector<double> singular_times(double lo, double hi) const
  {
    return replicate(singular_phases(), lo, hi);
  }

  /// Times in [lo, hi] at which the value jumps, sorted.
  std::vector<double> jump_times(double lo, double hi) const
  {
    if (!has_jumps()) {
      return {};
    }
    return replicate({0.0, 0.5}, lo, hi);
  }

  /// Same signal with its type period relabelled to `period`, which must be an
  /// integer multiple of the native period.
  PeriodicTrajectory relabeled(const RationalPeriod & period) const
  {
    if (!exact_native_) {
      throw UnsupportedError("cannot relabel a signal whose period is not an exact rational");
    }
    if (!period.is_multiple_of(*exact_native_)) {
      throw PeriodError("relabelled period is not an integer multiple of the native period");
    }
    PeriodicTrajectory out = *this;
    out.period_ = period.value();
    out.exact_period_ = period;
    return out;
  }

private:
  static constexpr double kTwoPi = 2.0 * std::numbers::pi;

  void validate() const
  {
    if (!(native_period_ > 0.0) || !std::isfinite(native_period_)) {
      throw DomainError("period must be positive and finite");
    }
    if (const auto * f = std::get_if<waveform::Fourier>(&shape_)) {
      const auto finite = [](double v) { return std::isfinite(v); };
      if (!std::isfinite(f->a0) || !std::all_of(f->a.begin(), f->a.end(), finite) ||
        !std::all_of(f->b.begin(), f->b.end(), finite))
      {
        throw DomainError("fourier coefficients must be finite");
      }
    }
    if (const auto * s = std::get_if<waveform::Sampled>(&shape_)) {
      if (s->phases.size() < 2 || s->phases.size() != s->values.size()) {
        throw DomainError("sampled waveform needs at least 2 (phase, value) samples");
      }
      if (s->phases.front() != 0.0) {
        throw DomainError("sampled waveform must start at phase 0");
      }
      for (std::size_t i = 0; i < s->phases.size(); ++i) {
        if (!std::isfinite(s->values[i]) || s->phases[i] >= 1.0 ||
          (i > 0 && !(s->phases[i] > s->phases[i - 1])))
        {
          throw DomainError("sampled phases must be strictly increasing in [0, 1)");
        }
      }
    }
  }

  double phase_right(double t) const noexcept
  {
    const double q = t / native_period_;
    const double p = q - std::floor(q);
    return p < 1.0 ? p : 0.0;
  }

  // Phase in (0, 1].
  double phase_left(double t) const noexcept
  {
    const double q = t / native_period_;
    const double p = q - std::ceil(q) + 1.0;
    return p > 0.0 ? p : 1.0;
  }

  struct Cell
  {
    std::size_t i, j;
    double lo, hi;
  };

  static Cell sampled_cell(const waveform::Sampled & s, double p)
  {
    // Knot i is the last one with phase <= p (right-continuous cell choice).
    const auto it = std::upper_bound(s.phases.begin(), s.phases.end(), p);
    const std::size_t i = static_cast<std::size_t>(std::distance(s.phases.begin(), it)) - 1;
    const std::size_t j = (i + 1) % s.phases.size();
    const double hi = (j == 0) ? 1.0 : s.phases[j];
    return {i, j, s.phases[i], hi};
  }

  double value_at_phase(double p, bool left) const
  {
    return std::visit(
      [&](const auto & s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, waveform::Cosine>) {
          return s.amplitude * std::cos(kTwoPi * p + s.phase);
        } else if constexpr (std::is_same_v<S, waveform::Triangle>) {
          if (p < 0.25) {
            return s.amplitude * 4.0 * p;
          }
          if (p < 0.75) {
            return s.amplitude * (2.0 - 4.0 * p);
          }
          return s.amplitude * (4.0 * p - 4.0);
        } else if constexpr (std::is_same_v<S, waveform::Square>) {
          const bool upper = left ? p <= 0.5 : p < 0.5;
          return upper ? s.amplitude : -s.amplitude;
        } else if constexpr (std::is_same_v<S, waveform::Fourier>) {
          double v = s.a0;
          for (std::size_t k = 0; k < s.a.size(); ++k) {
            v += s.a[k] * std::cos(kTwoPi * static_cast<double>(k + 1) * p);
          }
          for (std::size_t k = 0; k < s.b.size(); ++k) {
            v += s.b[k] * std::sin(kTwoPi * static_cast<double>(k + 1) * p);
          }
          return v;
        } else {
          if (p >= 1.0) {
            return s.values.front();
          }
          const auto [i, j, lo, hi] = sampled_cell(s, p);
          const double w = (p - lo) / (hi - lo);
          return (1.0 - w) * s.values[i] + w * s.values[j];
        }
      },
      shape_);
  }

  std::vector<double> replicate(const std::vector<double> & phases, double lo, double hi) const
  {
    std::vector<double> out;
    if (phases.empty() || !(hi >= lo)) {
      return out;
    }
    const double P = native_period_;
    for (double c = std::floor(lo / P) - 1.0; c * P <= hi + P; c += 1.0) {
      for (const double ph : phases) {
        const double t = (c + ph) * P;
        if (t >= lo && t <= hi) {
          out.push_back(t);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  waveform::Shape shape_;
  double native_period_;
  double period_;
  std::optional<RationalPeriod> exact_period_;
  std::optional<RationalPeriod> exact_native_;
};

}  // namespace gluskabi
