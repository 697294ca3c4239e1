#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gluskabi/operator.hpp"
#include "gluskabi/quadrature.hpp"
#include "gluskabi/oracle.hpp"
#include "gluskabi/raccordation.hpp"
#include "gluskabi/trajectory.hpp"

namespace gluskabi::cli {

struct CheckResult
{
  std::string name;
  bool passed{false};
  std::string detail;
};

/// Outcome of a `verify` run: problem echo, costs, oracle agreement and the check table.
struct RunReport
{
  std::string problem;
  std::string solver;
  double cost{0.0};
  std::optional<double> oracle_cost;
  std::optional<double> sup_discrepancy;
  std::vector<Breakpoint> breakpoints;
  std::vector<CheckResult> checks;

  bool all_passed() const
  {
    return std::all_of(checks.begin(), checks.end(), [](const auto & c) {return c.passed;});
  }

  void print(std::ostream & os) const
  {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(12);
    os << "problem: " << problem << '\n';
    os << "solver:  " << solver << '\n';
    os << "cost:    " << cost << '\n';
    if (oracle_cost) {
      os << "oracle cost: " << *oracle_cost << '\n';
    }
    if (sup_discrepancy) {
      os << "sup discrepancy vs oracle: " << *sup_discrepancy << '\n';
    }
    if (!breakpoints.empty()) {
      os << "breakpoints (t, jump):\n";
      for (const auto & bp : breakpoints) {
        os << "  " << bp.time << ", " << bp.jump << '\n';
      }
    }
    for (const auto & c : checks) {
      os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
      if (!c.detail.empty()) {
        os << " -- " << c.detail;
      }
      os << '\n';
    }
    os << (all_passed() ? "all checks passed" : "verification FAILED") << '\n';
    os.flags(flags);
    os.precision(prec);
  }
};

inline std::string describe(double v)
{
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

/// Largest |x(t) - xa(t)| for t <= a (left limit at a) and |x(t) - xb(t)| for t >= b.
inline double boundary_mismatch(
  const RaccordationProblem & p, const Trajectory & x, std::size_t samples = 100)
{
  const double span = 3.0 * p.period();
  double worst = std::abs(x.left_limit(p.a()) - p.xa().eval_left(p.a()));
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double tl = p.a() - (f + 1e-3) * span;
    const double tr = p.b() + f * span;
    worst = std::max(worst, std::abs(x(tl) - p.xa().eval(tl)));
    worst = std::max(worst, std::abs(x(tr) - p.xb().eval(tr)));
  }
  return worst;
}

/// Random feasible perturbations used as optimality certificates.
struct PerturbationOptions
{
  std::size_t count{100};
  /// Sup-norm of each perturbation.
  double amplitude{0.1};
  /// Each perturbation is also tried at these multiples of `amplitude`, both signs.
  std::vector<double> scales{1.0, 1e-2};
  std::uint64_t seed{20150601};
  QuadratureOptions quadrature{64};
};

/// Piecewise-constant perturbations on the staircase cells (each cell split in four).
inline std::vector<Trajectory> staircase_perturbations(
  const PiecewiseRaccordation & r, const PerturbationOptions & opts)
{
  std::vector<double> edges;
  const auto cand = r.candidate_breakpoints();
  for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
    for (int q = 0; q < 4; ++q) {
      edges.push_back(cand[i] + (cand[i + 1] - cand[i]) * q / 4.0);
    }
  }
  edges.push_back(cand.back());
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Trajectory> out;
  for (std::size_t k = 0; k < opts.count; ++k) {
    std::vector<double> v(edges.size() - 1);
    for (double & x : v) {
      x = dist(rng);
    }
    const double sup = std::abs(*std::max_element(
        v.begin(), v.end(), [](double p, double q) {return std::abs(p) < std::abs(q);}));
    for (double & x : v) {
      x *= opts.amplitude / sup;
    }
    out.push_back(Trajectory::piecewise_constant(edges, v));
  }
  return out;
}

/// Continuous piecewise-linear perturbations vanishing at a and b (8 knots per period).
inline std::vector<Trajectory> continuous_perturbations(
  const RaccordationProblem & p, const PerturbationOptions & opts)
{
  const double tau = p.period();
  const auto cells = std::max<long>(2, std::lround(8.0 * (p.b() - p.a()) / tau));
  std::vector<double> knots(static_cast<std::size_t>(cells + 1));
  for (long i = 0; i <= cells; ++i) {
    knots[static_cast<std::size_t>(i)] =
      i == cells ? p.b() : p.a() + (p.b() - p.a()) * static_cast<double>(i) / cells;
  }
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Trajectory> out;
  for (std::size_t k = 0; k < opts.count; ++k) {
    std::vector<double> v(knots.size(), 0.0);
    double sup = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      v[i] = dist(rng);
      sup = std::max(sup, std::abs(v[i]));
    }
    for (double & x : v) {
      x *= opts.amplitude / sup;
    }
    out.push_back(Trajectory::piecewise_linear(knots, v));
  }
  return out;
}

/// Largest cost reduction cost(x) - cost(x + s delta) over all perturbations, scales and signs.
///
/// The cost is a quadratic form, so cost(x + s delta) - cost(x) = s g + s^2 q with
/// g and q read off from the two evaluations at s = +1 and s = -1.
inline double worst_cost_decrease(
  const Trajectory & x, const std::vector<Trajectory> & perturbations,
  const std::vector<double> & scales, const std::function<double(const Trajectory &)> & cost)
{
  const double base = cost(x);
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto & delta : perturbations) {
    const double up = cost(Trajectory::combine(1.0, x, 1.0, delta));
    const double down = cost(Trajectory::combine(1.0, x, -1.0, delta));
    const double g = 0.5 * (up - down);
    const double q = 0.5 * (up + down) - base;
    for (const double s : scales) {
      for (const double sign : {1.0, -1.0}) {
        const double ds = sign * s;
        worst = std::max(worst, -(ds * g + ds * ds * q));
      }
    }
  }
  return worst;
}

/// Amplitude ratio max|x| on the middle third of [a, b] over max|x| on the first third.
struct PinchMetric
{
  double ratio{1.0};
  bool pinched{false};
};

inline PinchMetric pinch_metric(
  const Trajectory & x, double a, double b, std::size_t samples = 600, double threshold = 0.8)
{
  const double third = (b - a) / 3.0;
  const auto peak = [&](double lo) {
      double m = 0.0;
      for (std::size_t i = 0; i <= samples; ++i) {
        m = std::max(m, std::abs(x(lo + third * static_cast<double>(i) / samples)));
      }
      return m;
    };
  const double first = peak(a);
  const double ratio = first > 0.0 ? peak(a + third) / first : 1.0;
  return {ratio, ratio < threshold};
}

struct VerifyOptions
{
  std::size_t oracle_m{200};
  PerturbationOptions perturbations{};
  /// Test hook: scale the staircase multiplier to produce a non-optimal solution.
  double corrupt_scale{1.0};
};

inline std::string echo(const RaccordationProblem & p)
{
  std::ostringstream os;
  os << std::setprecision(12) << "tau=" << p.period() << " [a,b]=[" << p.a() << ", " << p.b()
     << "] norm=";
  if (p.is_sobolev()) {
    os << "sobolev(rho=" << p.rho() << ")";
  } else {
    os << "l2";
  }
  return os.str();
}

/// Run the invariant suite for an already period-lifted problem.
inline RunReport verify(const RaccordationProblem & problem, const VerifyOptions & opts = {})
{
  RunReport rep;
  rep.problem = echo(problem);
  const double tau = problem.period();
  const double a = problem.a();
  const double b = problem.b();
  const double m = static_cast<double>(opts.oracle_m);
  const auto & qp = opts.perturbations.quadrature;
  const auto cost_tol = [&](double c, double o) {
      // Rectangle-rule discretisation of the cost: first-order in h = tau/m.
      return 1.0 / m * std::max(std::abs(c), std::abs(o)) + 1e-12;
    };

  if (!problem.is_sobolev()) {
    auto r = solve_step(problem);
    if (opts.corrupt_scale != 1.0) {
      r = r.corrupted(opts.corrupt_scale);
    }
    const auto x = gluskabi_map(r);
    rep.solver = "staircase (L2)";
    rep.cost = cost_l2(x, a, b, tau);
    rep.breakpoints = breakpoints(r);

    const double bm = boundary_mismatch(problem, x);
    rep.checks.push_back({"boundary matching", bm == 0.0, "max deviation " + describe(bm)});

    const auto deltas = staircase_perturbations(r, opts.perturbations);
    const double dec = worst_cost_decrease(
      x, deltas, opts.perturbations.scales,
      [&](const Trajectory & y) {return cost_l2(y, a, b, tau, ShiftDirection::lag, qp);});
    rep.checks.push_back(
      {"optimality (piecewise-constant perturbations)", dec <= 1e-9,
        "largest cost decrease " + describe(dec)});

    const auto o = oracle_solve(problem, opts.oracle_m);
    rep.oracle_cost = o.cost;
    rep.sup_discrepancy = compare(x, o);
    rep.checks.push_back(
      {"oracle agreement (L2 exact chains)", *rep.sup_discrepancy <= 1e-9,
        "sup discrepancy " + describe(*rep.sup_discrepancy) + " at m=" + std::to_string(opts.oracle_m)});
    const double dc = std::abs(rep.cost - o.cost);
    rep.checks.push_back(
      {"cost agreement with oracle", dc <= cost_tol(rep.cost, o.cost),
        "|cost - oracle cost| " + describe(dc) + " (first-order tolerance " +
        describe(cost_tol(rep.cost, o.cost)) + ")"});

    const auto adv = oracle_solve(problem, opts.oracle_m, ShiftDirection::advance);
    double lag_adv = 0.0;
    for (std::size_t i = 0; i < o.values.size(); ++i) {
      lag_adv = std::max(lag_adv, std::abs(o.values[i] - adv.values[i]));
    }
    rep.checks.push_back(
      {"lag/advance oracle agreement", lag_adv <= 1e-9, "sup difference " + describe(lag_adv)});
    return rep;
  }

  const auto r = solve_continuous(problem);
  const auto x = gluskabi_map(r);
  rep.solver = "continuous (Sobolev, rho=" + describe(problem.rho()) + ")";
  rep.cost = cost_sobolev(x, a, b, tau, problem.rho());

  const double bm = boundary_mismatch(problem, x);
  rep.checks.push_back({"boundary matching", bm == 0.0, "max deviation " + describe(bm)});
  const double jm = junction_mismatch(r);
  rep.checks.push_back({"junction continuity", jm <= 1e-9, "max mismatch " + describe(jm)});
  const double em = endpoint_mismatch(r);
  rep.checks.push_back({"endpoint conditions", em <= 1e-9, "max mismatch " + describe(em)});
  const double el = euler_lagrange_residual(r);
  rep.checks.push_back({"Euler-Lagrange residual", el <= 1e-7, "max residual " + describe(el)});

  const auto deltas = continuous_perturbations(problem, opts.perturbations);
  const double dec = worst_cost_decrease(
    x, deltas, opts.perturbations.scales,
    [&](const Trajectory & y) {
      return cost_sobolev(y, a, b, tau, problem.rho(), ShiftDirection::lag, qp);
    });
  rep.checks.push_back(
    {"optimality (continuous piecewise-linear perturbations)", dec <= 1e-9,
      "largest cost decrease " + describe(dec)});

  const auto o1 = oracle_solve(problem, opts.oracle_m);
  const auto o2 = oracle_solve(problem, 2 * opts.oracle_m);
  rep.oracle_cost = o1.cost;
  rep.sup_discrepancy = compare(x, o1);
  const double e2 = compare(x, o2);
  rep.checks.push_back(
    {"oracle convergence", e2 <= *rep.sup_discrepancy / 1.5,
      "sup error " + describe(*rep.sup_discrepancy) + " at m=" + std::to_string(opts.oracle_m) +
      ", " + describe(e2) + " at m=" + std::to_string(2 * opts.oracle_m)});
  const double dc = std::abs(rep.cost - o1.cost);
  rep.checks.push_back(
    {"cost agreement with oracle", dc <= cost_tol(rep.cost, o1.cost),
      "|cost - oracle cost| " + describe(dc) + " (first-order tolerance " +
      describe(cost_tol(rep.cost, o1.cost)) + ")"});
  return rep;
}

}  // namespace gluskabi::cli
