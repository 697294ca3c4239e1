#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/signal.hpp"

namespace gluskabi {

/// Sort and merge points closer than a relative 1e-12.
inline std::vector<double> merge_points(std::vector<double> pts)
{
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  out.reserve(pts.size());
  for (const double p : pts) {
    if (out.empty() || p - out.back() > 1e-12 * std::max(1.0, std::abs(p))) {
      out.push_back(p);
    }
  }
  return out;
}

/// A scalar signal defined on the whole real line.
///
/// Values are right-continuous at jumps.  Besides its value the trajectory
/// exposes a right-hand derivative, the left-hand limit, and the locations
/// where it is not smooth; quadrature and breakpoint detection rely on the
/// latter being complete.
class Trajectory
{
public:
  using Scalar = std::function<double (double)>;
  using Points = std::function<std::vector<double>(double, double)>;

  struct Parts
  {
    Scalar value;
    Scalar derivative;
    Scalar left_limit;
    /// Kinks and jumps in [lo, hi].
    Points singularities;
    /// Jumps only (possibly including candidates of zero height) in [lo, hi].
    Points discontinuities;
  };

  explicit Trajectory(Parts parts)
  : parts_{std::make_shared<const Parts>(std::move(parts))}
  {}

  double operator()(double t) const { return parts_->value(t); }
  double derivative(double t) const { return parts_->derivative(t); }
  double left_limit(double t) const { return parts_->left_limit(t); }

  std::vector<double> singularities(double lo, double hi) const
  {
    return merge_points(parts_->singularities(lo, hi));
  }
  std::vector<double> discontinuities(double lo, double hi) const
  {
    return merge_points(parts_->discontinuities(lo, hi));
  }

  static Trajectory from_periodic(const PeriodicTrajectory & p)
  {
    return Trajectory(
      Parts{
        [p](double t) {return p.eval(t);},
        [p](double t) {return p.deriv(t);},
        [p](double t) {return p.eval_left(t);},
        [p](double lo, double hi) {return p.singular_times(lo, hi);},
        [p](double lo, double hi) {return p.jump_times(lo, hi);}});
  }

  /// t -> intercept + slope * t
  static Trajectory affine(double intercept, double slope)
  {
    const auto f = [=](double t) {return intercept + slope * t;};
    return Trajectory(
      Parts{f, [=](double) {return slope;}, f, no_points(), no_points()});
  }

  /// Continuous piecewise-linear interpolant through (knots, values); zero outside the knots.
  static Trajectory piecewise_linear(std::vector<double> knots, std::vector<double> values)
  {
    if (knots.size() < 2 || knots.size() != values.size()) {
      throw DomainError("piecewise_linear needs matching knot and value lists of length >= 2");
    }
    auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
      std::move(knots), std::move(values));
    const auto cell = [data](double t) -> std::ptrdiff_t {
        const auto & k = data->first;
        if (t < k.front() || t >= k.back()) {
          return -1;
        }
        return std::distance(k.begin(), std::upper_bound(k.begin(), k.end(), t)) - 1;
      };
    const auto value = [data, cell](double t) {
        const auto i = cell(t);
        if (i < 0) {
          return t == data->first.back() ? data->second.back() : 0.0;
        }
        const auto & [k, v] = *data;
        const auto j = static_cast<std::size_t>(i);
        const double w = (t - k[j]) / (k[j + 1] - k[j]);
        return (1.0 - w) * v[j] + w * v[j + 1];
      };
    const auto slope = [data, cell](double t) {
        const auto i = cell(t);
        if (i < 0) {
          return 0.0;
        }
        const auto & [k, v] = *data;
        const auto j = static_cast<std::size_t>(i);
        return (v[j + 1] - v[j]) / (k[j + 1] - k[j]);
      };
    const auto left = [data, value](double t) {
        const auto & [k, v] = *data;
        if (t <= k.front() || t > k.back()) {
          return 0.0;
        }
        return t == k.back() ? v.back() : value(t);
      };
    const auto kinks = [data](double lo, double hi) {
        std::vector<double> out;
        for (const double t : data->first) {
          if (t >= lo && t <= hi) {
            out.push_back(t);
          }
        }
        return out;
      };
    const auto ends = [data](double lo, double hi) {
        std::vector<double> out;
        for (const double t : {data->first.front(), data->first.back()}) {
          if (t >= lo && t <= hi) {
            out.push_back(t);
          }
        }
        return out;
      };
    return Trajectory(Parts{value, slope, left, kinks, ends});
  }

  /// Piecewise-constant: values[i] on [edges[i], edges[i+1]); zero outside.
  static Trajectory piecewise_constant(std::vector<double> edges, std::vector<double> values)
  {
    if (edges.size() != values.size() + 1 || values.empty()) {
      throw DomainError("piecewise_constant needs edges.size() == values.size() + 1");
    }
    auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(
      std::move(edges), std::move(values));
    const auto value = [data](double t) {
        const auto & [e, v] = *data;
        if (t < e.front() || t >= e.back()) {
          return 0.0;
        }
        const auto i = std::distance(e.begin(), std::upper_bound(e.begin(), e.end(), t)) - 1;
        return v[static_cast<std::size_t>(i)];
      };
    const auto left = [data](double t) {
        const auto & [e, v] = *data;
        if (t <= e.front() || t > e.back()) {
          return 0.0;
        }
        const auto i = std::distance(e.begin(), std::lower_bound(e.begin(), e.end(), t)) - 1;
        return v[static_cast<std::size_t>(i)];
      };
    const auto edges_in = [data](double lo, double hi) {
        std::vector<double> out;
        for (const double t : data->first) {
          if (t >= lo && t <= hi) {
            out.push_back(t);
          }
        }
        return out;
      };
    return Trajectory(Parts{value, [](double) {return 0.0;}, left, edges_in, edges_in});
  }

  /// t -> x(t - dt)
  Trajectory shifted(double dt) const
  {
    const auto p = parts_;
    return Trajectory(
      Parts{
        [p, dt](double t) {return p->value(t - dt);},
        [p, dt](double t) {return p->derivative(t - dt);},
        [p, dt](double t) {return p->left_limit(t - dt);},
        [p, dt](double lo, double hi) {return translate(p->singularities(lo - dt, hi - dt), dt);},
        [p, dt](double lo, double hi) {
          return translate(p->discontinuities(lo - dt, hi - dt), dt);
        }});
  }

  /// alpha * x + beta * y
  static Trajectory combine(double alpha, const Trajectory & x, double beta, const Trajectory & y)
  {
    const auto p = x.parts_;
    const auto q = y.parts_;
    return Trajectory(
      Parts{
        [=](double t) {return alpha * p->value(t) + beta * q->value(t);},
        [=](double t) {return alpha * p->derivative(t) + beta * q->derivative(t);},
        [=](double t) {return alpha * p->left_limit(t) + beta * q->left_limit(t);},
        [=](double lo, double hi) {return concat(p->singularities(lo, hi), q->singularities(lo, hi));},
        [=](double lo, double hi) {
          return concat(p->discontinuities(lo, hi), q->discontinuities(lo, hi));
        }});
  }

  friend Trajectory operator+(const Trajectory & x, const Trajectory & y)
  {
    return combine(1.0, x, 1.0, y);
  }
  friend Trajectory operator-(const Trajectory & x, const Trajectory & y)
  {
    return combine(1.0, x, -1.0, y);
  }
  friend Trajectory operator*(double s, const Trajectory & x)
  {
    const auto p = x.parts_;
    return Trajectory(
      Parts{
        [=](double t) {return s * p->value(t);},
        [=](double t) {return s * p->derivative(t);},
        [=](double t) {return s * p->left_limit(t);},
        p->singularities,
        p->discontinuities});
  }

private:
  static Points no_points()
  {
    return [](double, double) {return std::vector<double>{};};
  }
  static std::vector<double> translate(std::vector<double> v, double dt)
  {
    for (double & t : v) {
      t += dt;
    }
    return v;
  }
  static std::vector<double> concat(std::vector<double> a, const std::vector<double> & b)
  {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  std::shared_ptr<const Parts> parts_;
};

}  // namespace gluskabi
