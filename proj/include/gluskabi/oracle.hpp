#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "gluskabi/banded.hpp"
#include "gluskabi/errors.hpp"
#include "gluskabi/operator.hpp"
#include "gluskabi/raccordation.hpp"
#include "gluskabi/trajectory.hpp"

// Brute-force reference: discretise the persistence cost on a uniform grid and
// minimise the resulting quadratic exactly.  Nothing here uses the closed-form
// solutions; the only inputs are the boundary signals and the cost definition.

namespace gluskabi {

/// Grid-sampled trajectory over [a, b] with its discrete cost.
struct SampledSolution
{
  std::vector<double> times;
  std::vector<double> values;
  double cost{0.0};
  double step{0.0};
};

/// Uniform-grid discretisation of a raccordation problem with m samples per period.
class DiscretizedProblem
{
public:
  DiscretizedProblem(RaccordationProblem problem, std::size_t samples_per_period)
  : problem_{std::move(problem)}, tau_{problem_.period()}, m_{samples_per_period}
  {
    if (m_ == 0) {
      throw DomainError("samples per period must be positive");
    }
    const double cells = (problem_.b() - problem_.a()) * static_cast<double>(m_) / tau_;
    const double rounded = std::round(cells);
    if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells) || rounded < 1.0) {
      std::ostringstream os;
      os << "interval length is not a whole number of grid steps tau/" << m_
         << " (" << cells << " steps)";
      throw AlignmentError(os.str());
    }
    cells_ = static_cast<long>(rounded);
    if (problem_.is_sobolev() && !count_periods(problem_.a(), problem_.b(), tau_).exact_multiple) {
      throw IntervalError("Sobolev oracle requires b - a to be a multiple of the period");
    }
  }

  const RaccordationProblem & problem() const noexcept { return problem_; }
  std::size_t samples_per_period() const noexcept { return m_; }
  double step() const noexcept { return tau_ / static_cast<double>(m_); }
  /// Number of grid steps in [a, b]; unknowns are indices 1 .. cells() - 1.
  long cells() const noexcept { return cells_; }
  long shift() const noexcept { return static_cast<long>(m_); }

  double time(long j) const
  {
    return problem_.a() + tau_ * static_cast<double>(j) / static_cast<double>(m_);
  }
  bool is_unknown(long j) const noexcept { return j > 0 && j < cells_; }
  /// Boundary sample for a fixed index (j <= 0 from xa, j >= cells() from xb).
  double fixed_value(long j) const
  {
    return j <= 0 ? problem_.xa().eval(time(j)) : problem_.xb().eval(time(j));
  }

private:
  RaccordationProblem problem_;
  double tau_;
  std::size_t m_;
  long cells_{0};
};

namespace detail {

// One squared term weight * (sum coeff_i x_{idx_i})^2 of the discrete cost.
struct CostTerm
{
  std::array<long, 4> index{};
  std::array<double, 4> coeff{};
  std::size_t count{0};
  double weight{0.0};
};

inline std::vector<CostTerm> cost_terms(const DiscretizedProblem & d, ShiftDirection direction)
{
  const long m = d.shift();
  const long N = d.cells();
  const double h = d.step();
  std::vector<CostTerm> terms;
  // Lag index j pairs with advance index j - m; both cover the defect support.
  const long lo = direction == ShiftDirection::lag ? 1 : 1 - m;
  const long hi = direction == ShiftDirection::lag ? N + m : N;
  const long off = direction == ShiftDirection::lag ? 0 : m;
  for (long j = lo; j <= hi; ++j) {
    const long top = j + off;
    terms.push_back({{top, top - m, 0, 0}, {1.0, -1.0, 0.0, 0.0}, 2, h});
  }
  if (d.problem().is_sobolev()) {
    const double rho = d.problem().rho();
    const double w = rho * rho / h;
    for (long j = lo; j <= hi; ++j) {
      const long top = j + off;
      terms.push_back({{top, top - m, top - 1, top - 1 - m}, {1.0, -1.0, -1.0, 1.0}, 4, w});
    }
  }
  return terms;
}

}  // namespace detail

/// Minimise the discretised cost exactly.
///
/// L2:      h * sum_j (x_j - x_{j-m})^2
/// Sobolev: adds rho^2 * h * sum_j ((x_j - x_{j-m}) - (x_{j-1} - x_{j-1-m}))^2 / h^2
/// with the sums covering the defect support for the chosen shift convention.
inline SampledSolution oracle_solve(
  const DiscretizedProblem & d, ShiftDirection direction = ShiftDirection::lag)
{
  const long N = d.cells();
  const long m = d.shift();
  const auto unknowns = static_cast<std::size_t>(N - 1);
  const auto terms = detail::cost_terms(d, direction);
  const std::size_t bw = static_cast<std::size_t>(d.problem().is_sobolev() ? m + 1 : m);

  std::vector<double> x(static_cast<std::size_t>(N + 1));
  x.front() = d.fixed_value(0);
  x.back() = d.fixed_value(N);

  if (unknowns > 0) {
    BandedSpdMatrix A(unknowns, std::min(bw, unknowns - 1));
    std::vector<double> rhs(unknowns, 0.0);
    for (const auto & term : terms) {
      double constant = 0.0;
      std::array<std::size_t, 4> col{};
      std::array<double, 4> c{};
      std::size_t free = 0;
      for (std::size_t i = 0; i < term.count; ++i) {
        const long j = term.index[i];
        if (d.is_unknown(j)) {
          col[free] = static_cast<std::size_t>(j - 1);
          c[free] = term.coeff[i];
          ++free;
        } else {
          constant += term.coeff[i] * d.fixed_value(j);
        }
      }
      for (std::size_t p = 0; p < free; ++p) {
        rhs[col[p]] -= term.weight * c[p] * constant;
        for (std::size_t q = 0; q < free; ++q) {
          if (col[q] <= col[p]) {
            A.add(col[p], col[q], term.weight * c[p] * c[q]);
          }
        }
      }
    }
    A.factorize();
    const auto sol = A.solve(rhs);
    std::copy(sol.begin(), sol.end(), x.begin() + 1);
  }

  SampledSolution out;
  out.step = d.step();
  out.times.resize(x.size());
  for (long j = 0; j <= N; ++j) {
    out.times[static_cast<std::size_t>(j)] = d.time(j);
  }
  out.values = x;
  for (const auto & term : terms) {
    double v = 0.0;
    for (std::size_t i = 0; i < term.count; ++i) {
      const long j = term.index[i];
      v += term.coeff[i] * (d.is_unknown(j) ? x[static_cast<std::size_t>(j)] : d.fixed_value(j));
    }
    out.cost += term.weight * v * v;
  }
  return out;
}

inline SampledSolution oracle_solve(
  const RaccordationProblem & problem, std::size_t samples_per_period,
  ShiftDirection direction = ShiftDirection::lag)
{
  return oracle_solve(DiscretizedProblem(problem, samples_per_period), direction);
}

/// Discrete cost of arbitrary grid values (same grid and terms as oracle_solve).
inline double discrete_cost(
  const DiscretizedProblem & d, const std::vector<double> & values,
  ShiftDirection direction = ShiftDirection::lag)
{
  if (values.size() != static_cast<std::size_t>(d.cells() + 1)) {
    throw DomainError("grid vector length does not match the discretisation");
  }
  double cost = 0.0;
  for (const auto & term : detail::cost_terms(d, direction)) {
    double v = 0.0;
    for (std::size_t i = 0; i < term.count; ++i) {
      const long j = term.index[i];
      v += term.coeff[i] *
        (d.is_unknown(j) ? values[static_cast<std::size_t>(j)] : d.fixed_value(j));
    }
    cost += term.weight * v * v;
  }
  return cost;
}

/// Smallest m' >= m for which the interval is a whole number of grid steps (0 if none nearby).
inline std::size_t suggest_samples_per_period(const RaccordationProblem & problem, std::size_t m)
{
  const double ratio = (problem.b() - problem.a()) / problem.period();
  for (std::size_t k = std::max<std::size_t>(m, 1); k < m + 10000; ++k) {
    const double cells = ratio * static_cast<double>(k);
    if (std::abs(cells - std::round(cells)) <= 1e-9 * std::max(1.0, cells)) {
      return k;
    }
  }
  return 0;
}

/// sup_j |closed(t_j) - value_j|, skipping grid points closer than one step to a jump of `closed`.
inline double compare(const Trajectory & closed, const SampledSolution & sampled)
{
  if (sampled.times.empty()) {
    return 0.0;
  }
  const double h = sampled.step;
  const auto jumps = closed.discontinuities(sampled.times.front() - h, sampled.times.back() + h);
  double worst = 0.0;
  for (std::size_t i = 0; i < sampled.times.size(); ++i) {
    const double t = sampled.times[i];
    const bool near_jump = std::any_of(
      jumps.begin(), jumps.end(),
      [&](double s) {return std::abs(t - s) < h * (1.0 - 1e-9);});
    if (!near_jump) {
      worst = std::max(worst, std::abs(closed(t) - sampled.values[i]));
    }
  }
  return worst;
}

}  // namespace gluskabi
