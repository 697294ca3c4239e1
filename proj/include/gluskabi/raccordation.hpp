#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/rational.hpp"
#include "gluskabi/signal.hpp"
#include "gluskabi/trajectory.hpp"

namespace gluskabi {

struct L2Norm
{
};

/// Cost on u and rho * du/dt.
struct SobolevNorm
{
  double rho{1.0};
};

using Norm = std::variant<L2Norm, SobolevNorm>;

/// Connect xa (for t <= a) to xb (for t >= b) with a maximally persistent trajectory on (a, b).
class RaccordationProblem
{
public:
  RaccordationProblem(
    PeriodicTrajectory xa, PeriodicTrajectory xb, double a, double b, Norm norm = L2Norm{})
  : xa_{std::move(xa)}, xb_{std::move(xb)}, a_{a}, b_{b}, norm_{norm}
  {
    if (!std::isfinite(a) || !std::isfinite(b) || !(b > a)) {
      throw IntervalError("raccordation interval requires finite a < b");
    }
    if (const auto * s = std::get_if<SobolevNorm>(&norm_); s && !(s->rho > 0.0)) {
      throw DomainError("Sobolev weight rho must be positive");
    }
  }

  const PeriodicTrajectory & xa() const noexcept { return xa_; }
  const PeriodicTrajectory & xb() const noexcept { return xb_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  const Norm & norm() const noexcept { return norm_; }
  bool is_sobolev() const noexcept { return std::holds_alternative<SobolevNorm>(norm_); }
  double rho() const { return std::get<SobolevNorm>(norm_).rho; }

  bool same_period() const noexcept
  {
    const double ta = xa_.period();
    const double tb = xb_.period();
    return std::abs(ta - tb) <= 1e-12 * std::max(ta, tb);
  }

  /// Common type period; throws PeriodError when the signals disagree.
  double period() const
  {
    if (!same_period()) {
      std::ostringstream os;
      os.precision(17);
      os << "trajectories have different periods (" << xa_.period() << " vs " << xb_.period()
         << "); lift them to a common period first";
      throw PeriodError(os.str());
    }
    return xa_.period();
  }

private:
  PeriodicTrajectory xa_;
  PeriodicTrajectory xb_;
  double a_;
  double b_;
  Norm norm_;
};

/// b - a = n tau + remainder, remainder in [0, tau).  Lengths within 1e-9 of a
/// whole number of periods snap to remainder == 0.
struct PeriodCount
{
  long n{0};
  double remainder{0.0};
  bool exact_multiple{false};
};

inline PeriodCount count_periods(double a, double b, double tau)
{
  const double q = (b - a) / tau;
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-9) {
    return {static_cast<long>(r), 0.0, true};
  }
  const double n = std::floor(q);
  return {static_cast<long>(n), (b - a) - n * tau, false};
}

namespace detail {

// floor((t - a) / tau) with near-integers snapped, so breakpoints land on the right side.
inline long snapped_floor(double q)
{
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-11 * std::max(1.0, std::abs(q))) {
    return static_cast<long>(r);
  }
  return static_cast<long>(std::floor(q));
}

inline long snapped_ceil(double q)
{
  const double r = std::round(q);
  if (std::abs(q - r) <= 1e-11 * std::max(1.0, std::abs(q))) {
    return static_cast<long>(r);
  }
  return static_cast<long>(std::ceil(q));
}

inline bool nearly_equal(double x, double y)
{
  return std::abs(x - y) <= 1e-11 * std::max(1.0, std::max(std::abs(x), std::abs(y)));
}

}  // namespace detail

/// The L2-optimal (staircase) raccordation.
///
/// On [a, b) the solution is x(t) = xa(t) + (k + 1) u(theta) with
/// k = floor((t - a) / tau), theta = t - a - k tau and defect profile
/// u(theta) = (xb - xa)(a + theta) / (n + 2) for theta < remainder, and
/// (xb - xa)(a + theta) / (n + 1) otherwise.
class PiecewiseRaccordation
{
public:
  PiecewiseRaccordation(RaccordationProblem problem, double tau, PeriodCount count)
  : problem_{std::move(problem)}, tau_{tau}, count_{count}
  {}

  const RaccordationProblem & problem() const noexcept { return problem_; }
  double period() const noexcept { return tau_; }
  /// Whole periods in [a, b].
  long n() const noexcept { return count_.n; }
  /// Where the profile switches from the 1/(n+2) to the 1/(n+1) branch.
  double split() const noexcept { return count_.remainder; }

  /// Number of equal steps the defect is spread over at profile phase theta (right-continuous).
  long steps(double theta) const
  {
    return theta < split() && !detail::nearly_equal(theta, split()) ? n() + 2 : n() + 1;
  }

  /// u(theta) for theta in [0, tau).
  double defect_profile(double theta) const
  {
    const double t = problem_.a() + theta;
    return (problem_.xb().eval(t) - problem_.xa().eval(t)) / static_cast<double>(steps(theta));
  }

  /// Staircase multiplier (k + 1) / steps at t in [a, b).
  double weight(double t) const
  {
    const long k = detail::snapped_floor((t - problem_.a()) / tau_);
    const double theta = std::max(0.0, t - problem_.a() - static_cast<double>(k) * tau_);
    return static_cast<double>(k + 1) / static_cast<double>(steps(theta));
  }

  double value(double t) const
  {
    const auto & p = problem_;
    if (t < p.a()) {
      return p.xa().eval(t);
    }
    if (t >= p.b() || detail::nearly_equal(t, p.b())) {
      return p.xb().eval(t);
    }
    const double xa = p.xa().eval(t);
    return xa + scale_ * weight(t) * (p.xb().eval(t) - xa);
  }

  double left_limit(double t) const
  {
    const auto & p = problem_;
    if (t <= p.a() || detail::nearly_equal(t, p.a())) {
      return p.xa().eval_left(t);
    }
    if (t > p.b() && !detail::nearly_equal(t, p.b())) {
      return p.xb().eval_left(t);
    }
    const long k = detail::snapped_ceil((t - p.a()) / tau_) - 1;
    const double theta = std::min(tau_, t - p.a() - static_cast<double>(k) * tau_);
    const bool upper = split() > 0.0 && (theta < split() || detail::nearly_equal(theta, split()));
    const long steps = upper ? n() + 2 : n() + 1;
    const double xa = p.xa().eval_left(t);
    return xa + scale_ * static_cast<double>(k + 1) / static_cast<double>(steps) *
           (p.xb().eval_left(t) - xa);
  }

  double derivative(double t) const
  {
    const auto & p = problem_;
    if (t < p.a()) {
      return p.xa().deriv(t);
    }
    if (t >= p.b() || detail::nearly_equal(t, p.b())) {
      return p.xb().deriv(t);
    }
    const double da = p.xa().deriv(t);
    return da + scale_ * weight(t) * (p.xb().deriv(t) - da);
  }

  /// Candidate jump locations {a + k tau} and {a + k tau + remainder} inside [a, b].
  std::vector<double> candidate_breakpoints() const
  {
    const double a = problem_.a();
    const double b = problem_.b();
    std::vector<double> out;
    for (long k = 0; k <= n() + 1; ++k) {
      const double base = a + static_cast<double>(k) * tau_;
      for (const double t : {base, base + split()}) {
        if (t <= b || detail::nearly_equal(t, b)) {
          out.push_back(std::min(t, b));
        }
      }
    }
    out.push_back(b);
    return merge_points(std::move(out));
  }

  /// Copy whose staircase multiplier is scaled by `factor` (a deliberately
  /// non-optimal trajectory for exercising the verification checks).
  PiecewiseRaccordation corrupted(double factor) const
  {
    PiecewiseRaccordation out = *this;
    out.scale_ *= factor;
    return out;
  }

private:
  RaccordationProblem problem_;
  double tau_;
  PeriodCount count_;
  double scale_{1.0};
};

/// Sobolev-optimal continuous raccordation for b = a + n tau.
///
/// With segments x_k(theta) = x(a + k tau + theta), theta in [0, tau], the
/// solution satisfies for every theta the second-difference relation
///   rho (x_{k+1} + x_{k-1} - 2 x_k)(theta) = c1 e^{(theta + k tau)/rho} - c2 e^{-(theta + k tau)/rho}
/// with x_{-1}(theta) = xa(a - tau + theta) and x_n(theta) = xb(b + theta),
/// and (c1, c2) pinned by x_0(0) = xa(a), x_{n-1}(tau) = xb(b).
class ContinuousRaccordation
{
public:
  struct Coefficients
  {
    /// Growing-mode constant, stored relative to e^{(theta + k tau - (b - a)) / rho}.
    double growing{0.0};
    /// Decaying-mode constant c2.
    double decaying{0.0};
  };

  ContinuousRaccordation(
    RaccordationProblem problem, double tau, long n, Coefficients coeffs, std::size_t grid_points)
  : problem_{std::move(problem)}, tau_{tau}, rho_{problem_.rho()}, n_{n}, coeffs_{coeffs}
  {
    grid_.resize(std::max<std::size_t>(grid_points, 2));
    segments_.assign(static_cast<std::size_t>(n_), std::vector<double>(grid_.size()));
    const double step = tau_ / static_cast<double>(grid_.size() - 1);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      grid_[i] = i + 1 == grid_.size() ? tau_ : static_cast<double>(i) * step;
      const auto xs = solve_at(grid_[i], coeffs_);
      for (long k = 0; k < n_; ++k) {
        segments_[static_cast<std::size_t>(k)][i] = xs[static_cast<std::size_t>(k)];
      }
    }
  }

  const RaccordationProblem & problem() const noexcept { return problem_; }
  double period() const noexcept { return tau_; }
  double rho() const noexcept { return rho_; }
  long n() const noexcept { return n_; }

  /// Multiplier constants in the unscaled form c1 e^{t/rho} - c2 e^{-t/rho}, t = theta + k tau.
  double c1() const { return coeffs_.growing * std::exp(-length() / rho_); }
  double c2() const noexcept { return coeffs_.decaying; }
  const Coefficients & coefficients() const noexcept { return coeffs_; }

  /// theta-grid over [0, tau] and the segment samples x_k(theta_i).
  const std::vector<double> & grid() const noexcept { return grid_; }
  const std::vector<std::vector<double>> & segments() const noexcept { return segments_; }

  /// Boundary functions x_{-1} and x_n.
  double left_boundary(double theta) const { return problem_.xa().eval(problem_.a() - tau_ + theta); }
  double right_boundary(double theta) const { return problem_.xb().eval(problem_.b() + theta); }

  /// c1 e^{(theta + k tau)/rho} - c2 e^{-(theta + k tau)/rho}
  double forcing(long k, double theta) const
  {
    const double s = theta + static_cast<double>(k) * tau_;
    return coeffs_.growing * std::exp((s - length()) / rho_) -
           coeffs_.decaying * std::exp(-s / rho_);
  }

  /// Exact x_k(theta) from a fresh per-theta solve.
  double segment_value(long k, double theta) const
  {
    return solve_at(theta, coeffs_)[static_cast<std::size_t>(k)];
  }

  double value(double t) const
  {
    const auto & p = problem_;
    if (t <= p.a()) {
      return p.xa().eval(t);
    }
    if (t >= p.b()) {
      return p.xb().eval(t);
    }
    const auto [k, theta] = locate(t);
    return segment_value(k, theta);
  }

  double derivative(double t) const
  {
    const auto & p = problem_;
    if (t < p.a()) {
      return p.xa().deriv(t);
    }
    if (t >= p.b()) {
      return p.xb().deriv(t);
    }
    const auto [k, theta] = locate(t);
    // Differentiate the per-theta system: same matrix, differentiated data.
    std::vector<double> rhs(static_cast<std::size_t>(n_));
    for (long j = 0; j < n_; ++j) {
      const double s = theta + static_cast<double>(j) * tau_;
      const double df = (coeffs_.growing * std::exp((s - length()) / rho_) +
        coeffs_.decaying * std::exp(-s / rho_)) / rho_;
      rhs[static_cast<std::size_t>(j)] = df / rho_;
    }
    rhs.front() -= p.xa().deriv(p.a() - tau_ + theta);
    rhs.back() -= p.xb().deriv(p.b() + theta);
    return solve_second_difference(std::move(rhs))[static_cast<std::size_t>(k)];
  }

  double left_limit(double t) const
  {
    const auto & p = problem_;
    if (t <= p.a()) {
      return p.xa().eval_left(t);
    }
    if (t > p.b()) {
      return p.xb().eval_left(t);
    }
    return value(t);
  }

  /// Solve the tridiagonal system x_{k+1} - 2 x_k + x_{k-1} = rhs_k with zero
  /// Dirichlet data (boundary terms already folded into rhs).
  static std::vector<double> solve_second_difference(std::vector<double> rhs)
  {
    const std::size_t n = rhs.size();
    std::vector<double> c(n);
    // Thomas algorithm with diagonal -2 and unit off-diagonals.
    double denom = -2.0;
    c[0] = 1.0 / denom;
    rhs[0] /= denom;
    for (std::size_t i = 1; i < n; ++i) {
      denom = -2.0 - c[i - 1];
      c[i] = 1.0 / denom;
      rhs[i] = (rhs[i] - rhs[i - 1]) / denom;
    }
    for (std::size_t i = n - 1; i-- > 0; ) {
      rhs[i] -= c[i] * rhs[i + 1];
    }
    return rhs;
  }

  /// All segment values x_0..x_{n-1} at theta for given constants.
  std::vector<double> solve_at(double theta, const Coefficients & coeffs) const
  {
    return solve_at(theta, coeffs, true);
  }

  /// Same with the boundary data switched off (homogeneous Dirichlet).
  std::vector<double> solve_at(double theta, const Coefficients & coeffs, bool with_boundary) const
  {
    std::vector<double> rhs(static_cast<std::size_t>(n_));
    for (long k = 0; k < n_; ++k) {
      const double s = theta + static_cast<double>(k) * tau_;
      const double f = coeffs.growing * std::exp((s - length()) / rho_) -
        coeffs.decaying * std::exp(-s / rho_);
      rhs[static_cast<std::size_t>(k)] = f / rho_;
    }
    if (with_boundary) {
      rhs.front() -= left_boundary(theta);
      rhs.back() -= right_boundary(theta);
    }
    return solve_second_difference(std::move(rhs));
  }

  /// Segment index and phase of t in [a, b).
  std::pair<long, double> locate(double t) const
  {
    const double a = problem_.a();
    long k = detail::snapped_floor((t - a) / tau_);
    k = std::clamp<long>(k, 0, n_ - 1);
    const double theta = std::clamp(t - a - static_cast<double>(k) * tau_, 0.0, tau_);
    return {k, theta};
  }

private:
  double length() const noexcept { return static_cast<double>(n_) * tau_; }

  RaccordationProblem problem_;
  double tau_;
  double rho_;
  long n_;
  Coefficients coeffs_;
  std::vector<double> grid_;
  std::vector<std::vector<double>> segments_;
};

struct ContinuousOptions
{
  /// theta-grid points per period for the stored segment samples.
  std::size_t grid_points{513};
  /// Largest accepted condition number of the 2x2 endpoint system.
  double max_condition{1e12};
};

/// Staircase raccordation for the L2 norm.
inline PiecewiseRaccordation solve_step(const RaccordationProblem & problem)
{
  const double tau = problem.period();
  return PiecewiseRaccordation(problem, tau, count_periods(problem.a(), problem.b(), tau));
}

namespace detail {

// 2-norm condition number of [[p, q], [r, s]].
inline double condition_2x2(double p, double q, double r, double s)
{
  const double fro2 = p * p + q * q + r * r + s * s;
  const double det = std::abs(p * s - q * r);
  if (det == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  // sigma_max * sigma_min = det, sigma_max^2 + sigma_min^2 = fro2.
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * det * det));
  const double smax2 = 0.5 * (fro2 + disc);
  return smax2 / det;
}

}  // namespace detail

/// Continuous raccordation for the Sobolev norm; requires b - a = n tau, n >= 1.
inline ContinuousRaccordation solve_continuous(
  const RaccordationProblem & problem, const ContinuousOptions & opts = {})
{
  if (!problem.is_sobolev()) {
    throw DomainError("solve_continuous requires a Sobolev-norm problem");
  }
  const double tau = problem.period();
  const auto count = count_periods(problem.a(), problem.b(), tau);
  if (!count.exact_multiple || count.n < 1) {
    throw IntervalError("continuous raccordation requires b - a to be a positive multiple of the period");
  }

  // Probe object used only for its per-theta solver; the solution is affine in (c1, c2).
  const ContinuousRaccordation probe(problem, tau, count.n, {}, 2);
  const auto last = static_cast<std::size_t>(count.n - 1);
  const auto base0 = probe.solve_at(0.0, {0.0, 0.0}).front();
  const auto base1 = probe.solve_at(tau, {0.0, 0.0}).back();
  const auto g0 = probe.solve_at(0.0, {1.0, 0.0}, false);
  const auto g1 = probe.solve_at(tau, {1.0, 0.0}, false);
  const auto d0 = probe.solve_at(0.0, {0.0, 1.0}, false);
  const auto d1 = probe.solve_at(tau, {0.0, 1.0}, false);

  const double m11 = g0.front();
  const double m12 = d0.front();
  const double m21 = g1[last];
  const double m22 = d1[last];
  const double r1 = problem.xa().eval(problem.a()) - base0;
  const double r2 = problem.xb().eval(problem.b()) - base1;

  const double cond = detail::condition_2x2(m11, m12, m21, m22);
  if (!(cond <= opts.max_condition)) {
    std::ostringstream os;
    os << "endpoint system is ill-conditioned (condition number " << cond << ")";
    throw ConditioningError(os.str());
  }
  const double det = m11 * m22 - m12 * m21;
  const ContinuousRaccordation::Coefficients coeffs{
    (r1 * m22 - m12 * r2) / det,
    (m11 * r2 - r1 * m21) / det};
  return ContinuousRaccordation(problem, tau, count.n, coeffs, opts.grid_points);
}

/// Relabel two rational-period signals with the common period lcm(tau1, tau2).
inline RaccordationProblem lift_periods(
  const PeriodicTrajectory & xa, const PeriodicTrajectory & xb, double a, double b,
  Norm norm = L2Norm{}, double max_ratio = 1e6)
{
  if (!xa.exact_period() || !xb.exact_period()) {
    throw UnsupportedError(
      "connecting different periods needs both periods as exact rationals");
  }
  const auto tau = lcm_period(*xa.exact_period(), *xb.exact_period());
  if (tau.value() > max_ratio * std::max(xa.period(), xb.period())) {
    std::ostringstream os;
    os << "common period " << tau << " is more than " << max_ratio
       << " times the signal periods; the periods are not usefully commensurate";
    throw UnsupportedError(os.str());
  }
  return RaccordationProblem(xa.relabeled(tau), xb.relabeled(tau), a, b, norm);
}

using Solution = std::variant<PiecewiseRaccordation, ContinuousRaccordation>;

/// Dispatcher: lift differing rational periods, then use the solver matching the norm.
inline Solution solve(const RaccordationProblem & problem, const ContinuousOptions & opts = {})
{
  if (!problem.same_period()) {
    return solve(lift_periods(problem.xa(), problem.xb(), problem.a(), problem.b(), problem.norm()),
             opts);
  }
  if (problem.is_sobolev()) {
    return solve_continuous(problem, opts);
  }
  return solve_step(problem);
}

/// Full real-line trajectory: xa before a, the raccordation inside, xb after b.
inline Trajectory gluskabi_map(const PiecewiseRaccordation & r)
{
  auto sol = std::make_shared<const PiecewiseRaccordation>(r);
  const auto singular = [sol](double lo, double hi) {
      const auto & p = sol->problem();
      std::vector<double> out;
      for (const double t : sol->candidate_breakpoints()) {
        if (t >= lo && t <= hi) {
          out.push_back(t);
        }
      }
      auto sa = p.xa().singular_times(lo, std::min(hi, p.b()));
      auto sb = p.xb().singular_times(std::max(lo, p.a()), hi);
      out.insert(out.end(), sa.begin(), sa.end());
      out.insert(out.end(), sb.begin(), sb.end());
      return out;
    };
  const auto jumps = [sol](double lo, double hi) {
      const auto & p = sol->problem();
      std::vector<double> out;
      for (const double t : sol->candidate_breakpoints()) {
        if (t >= lo && t <= hi) {
          out.push_back(t);
        }
      }
      auto sa = p.xa().jump_times(lo, std::min(hi, p.b()));
      auto sb = p.xb().jump_times(std::max(lo, p.a()), hi);
      out.insert(out.end(), sa.begin(), sa.end());
      out.insert(out.end(), sb.begin(), sb.end());
      return out;
    };
  return Trajectory(
    Trajectory::Parts{
      [sol](double t) {return sol->value(t);},
      [sol](double t) {return sol->derivative(t);},
      [sol](double t) {return sol->left_limit(t);},
      singular,
      jumps});
}

inline Trajectory gluskabi_map(const ContinuousRaccordation & r)
{
  auto sol = std::make_shared<const ContinuousRaccordation>(r);
  const auto singular = [sol](double lo, double hi) {
      const auto & p = sol->problem();
      std::vector<double> out;
      for (long k = 0; k <= sol->n(); ++k) {
        const double t = p.a() + static_cast<double>(k) * sol->period();
        if (t >= lo && t <= hi) {
          out.push_back(t);
        }
      }
      auto sa = p.xa().singular_times(lo, std::min(hi, p.b()));
      auto sb = p.xb().singular_times(std::max(lo, p.a()), hi);
      out.insert(out.end(), sa.begin(), sa.end());
      out.insert(out.end(), sb.begin(), sb.end());
      return out;
    };
  const auto jumps = [sol](double lo, double hi) {
      const auto & p = sol->problem();
      auto out = p.xa().jump_times(lo, std::min(hi, p.b()));
      auto sb = p.xb().jump_times(std::max(lo, p.a()), hi);
      out.insert(out.end(), sb.begin(), sb.end());
      return out;
    };
  return Trajectory(
    Trajectory::Parts{
      [sol](double t) {return sol->value(t);},
      [sol](double t) {return sol->derivative(t);},
      [sol](double t) {return sol->left_limit(t);},
      singular,
      jumps});
}

inline Trajectory gluskabi_map(const Solution & s)
{
  return std::visit([](const auto & r) {return gluskabi_map(r);}, s);
}

inline Trajectory gluskabi_map(const RaccordationProblem &, const Solution & s)
{
  return gluskabi_map(s);
}

struct Breakpoint
{
  double time;
  /// Right limit minus left limit.
  double jump;
};

/// Discontinuities of the staircase raccordation inside [a, b].
inline std::vector<Breakpoint> breakpoints(const PiecewiseRaccordation & r)
{
  std::vector<Breakpoint> out;
  for (const double t : r.candidate_breakpoints()) {
    const double jump = r.value(t) - r.left_limit(t);
    if (std::abs(jump) > 1e-12) {
      out.push_back({t, jump});
    }
  }
  return out;
}

// --- checks on the continuous solution -------------------------------------

/// max_k |x_k(0) - x_{k-1}(tau)|
inline double junction_mismatch(const ContinuousRaccordation & r)
{
  double worst = 0.0;
  const auto & seg = r.segments();
  for (std::size_t k = 1; k < seg.size(); ++k) {
    worst = std::max(worst, std::abs(seg[k].front() - seg[k - 1].back()));
  }
  return worst;
}

/// max(|x_0(0) - xa(a)|, |x_{n-1}(tau) - xb(b)|)
inline double endpoint_mismatch(const ContinuousRaccordation & r)
{
  const auto & p = r.problem();
  return std::max(
    std::abs(r.segments().front().front() - p.xa().eval(p.a())),
    std::abs(r.segments().back().back() - p.xb().eval(p.b())));
}

/// Largest deviation from the Euler-Lagrange second-difference relation on the theta-grid.
inline double euler_lagrange_residual(const ContinuousRaccordation & r)
{
  double worst = 0.0;
  const auto & seg = r.segments();
  const auto n = static_cast<long>(seg.size());
  for (std::size_t i = 0; i < r.grid().size(); ++i) {
    const double theta = r.grid()[i];
    const auto at = [&](long k) {
        if (k < 0) {
          return r.left_boundary(theta);
        }
        if (k >= n) {
          return r.right_boundary(theta);
        }
        return seg[static_cast<std::size_t>(k)][i];
      };
    for (long k = 0; k < n; ++k) {
      const double lhs = r.rho() * (at(k + 1) + at(k - 1) - 2.0 * at(k));
      worst = std::max(worst, std::abs(lhs - r.forcing(k, theta)));
    }
  }
  return worst;
}

/// Per-segment multiplier constants (c_k^1, c_k^2), recovered by least-squares
/// fitting rho * (second difference of segment k) to A e^{theta/rho} - B e^{-theta/rho}.
inline std::vector<std::pair<double, double>> segment_multipliers(const ContinuousRaccordation & r)
{
  const auto & seg = r.segments();
  const auto n = static_cast<long>(seg.size());
  std::vector<std::pair<double, double>> out;
  for (long k = 0; k < n; ++k) {
    double s11 = 0.0, s12 = 0.0, s22 = 0.0, y1 = 0.0, y2 = 0.0;
    for (std::size_t i = 0; i < r.grid().size(); ++i) {
      const double theta = r.grid()[i];
      const auto at = [&](long j) {
          if (j < 0) {
            return r.left_boundary(theta);
          }
          if (j >= n) {
            return r.right_boundary(theta);
          }
          return seg[static_cast<std::size_t>(j)][i];
        };
      const double f = r.rho() * (at(k + 1) + at(k - 1) - 2.0 * at(k));
      const double p = std::exp(theta / r.rho());
      const double q = -std::exp(-theta / r.rho());
      s11 += p * p;
      s12 += p * q;
      s22 += q * q;
      y1 += p * f;
      y2 += q * f;
    }
    const double det = s11 * s22 - s12 * s12;
    out.emplace_back((y1 * s22 - s12 * y2) / det, (s11 * y2 - s12 * y1) / det);
  }
  return out;
}

}  // namespace gluskabi
