#pragma once

#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/quadrature.hpp"
#include "gluskabi/trajectory.hpp"

namespace gluskabi {

/// Convention of the shift S_tau: lag f(t - tau) or advance f(t + tau).
enum class ShiftDirection { lag, advance };

/// The periodicity defect (I - S_tau) x, evaluated lazily.
///
/// lag:     u(t) = x(t) - x(t - tau)
/// advance: u(t) = x(t + tau) - x(t)
class DefectSignal
{
public:
  DefectSignal(Trajectory source, double lag, ShiftDirection direction)
  : source_{std::move(source)}, lag_{lag}, direction_{direction}
  {
    if (!(lag > 0.0)) {
      throw DomainError("defect lag must be positive");
    }
  }

  const Trajectory & source() const noexcept { return source_; }
  double lag() const noexcept { return lag_; }
  ShiftDirection direction() const noexcept { return direction_; }

  double operator()(double t) const
  {
    const double t0 = direction_ == ShiftDirection::lag ? t : t + lag_;
    return source_(t0) - source_(t0 - lag_);
  }
  double derivative(double t) const
  {
    const double t0 = direction_ == ShiftDirection::lag ? t : t + lag_;
    return source_.derivative(t0) - source_.derivative(t0 - lag_);
  }

  /// Points in [lo, hi] where the defect may fail to be smooth.
  std::vector<double> singularities(double lo, double hi) const
  {
    const double off = direction_ == ShiftDirection::lag ? 0.0 : lag_;
    auto pts = source_.singularities(lo + off - lag_, hi + off);
    std::vector<double> out;
    out.reserve(2 * pts.size());
    for (const double s : pts) {
      out.push_back(s - off);
      out.push_back(s - off + lag_);
    }
    return merge_points(std::move(out));
  }

private:
  Trajectory source_;
  double lag_;
  ShiftDirection direction_;
};

inline DefectSignal defect(
  const Trajectory & x, double tau, ShiftDirection direction = ShiftDirection::lag)
{
  return DefectSignal(x, tau, direction);
}

namespace detail {

inline void check_interval(double a, double b)
{
  if (!(b > a)) {
    throw IntervalError("cost interval requires b > a");
  }
}

// Support of the defect of a trajectory that equals periodic signals outside [a, b].
inline std::pair<double, double> defect_support(
  double a, double b, double tau, ShiftDirection direction)
{
  return direction == ShiftDirection::lag ? std::pair{a, b + tau} : std::pair{a - tau, b};
}

}  // namespace detail

/// Squared L2 norm of the defect over its support ([a, b + tau] for lag,
/// [a - tau, b] for advance).  The 1/2 factor of the variational cost is omitted.
inline double cost_l2(
  const Trajectory & x, double a, double b, double tau,
  ShiftDirection direction = ShiftDirection::lag, const QuadratureOptions & opts = {})
{
  detail::check_interval(a, b);
  const auto u = defect(x, tau, direction);
  const auto [lo, hi] = detail::defect_support(a, b, tau, direction);
  return integrate_piecewise(
    [&](double t) {
      const double v = u(t);
      return v * v;
    },
    lo, hi, u.singularities(lo, hi), opts);
}

/// Integral of u^2 + rho^2 (du/dt)^2 over the defect support.
inline double cost_sobolev(
  const Trajectory & x, double a, double b, double tau, double rho,
  ShiftDirection direction = ShiftDirection::lag, const QuadratureOptions & opts = {})
{
  detail::check_interval(a, b);
  if (!(rho > 0.0)) {
    throw DomainError("Sobolev weight rho must be positive");
  }
  const auto u = defect(x, tau, direction);
  const auto [lo, hi] = detail::defect_support(a, b, tau, direction);
  const double r2 = rho * rho;
  return integrate_piecewise(
    [&](double t) {
      const double v = u(t);
      const double dv = u.derivative(t);
      return v * v + r2 * dv * dv;
    },
    lo, hi, u.singularities(lo, hi), opts);
}

}  // namespace gluskabi
