// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Criterion 8's pinch diagnostic prints WARN instead of failing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gluskabi/cli/commands.hpp"
#include "gluskabi/gluskabi.hpp"

using namespace gluskabi;

namespace {

struct Outcome
{
  bool pass{true};
  bool warn{false};
  std::ostringstream detail;

  void require(bool ok, const std::string & what)
  {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RaccordationProblem constants(double b, Norm norm = L2Norm{})
{
  return {PeriodicTrajectory::constant(0.0), PeriodicTrajectory::constant(1.0), 0.0, b, norm};
}

RaccordationProblem cos_to_triangle(double b, Norm norm = L2Norm{})
{
  return {PeriodicTrajectory::cosine(1.0), PeriodicTrajectory::triangle(1.0), 0.0, b, norm};
}

// Sup distance between x and piecewise-constant levels on consecutive cells [edges_i, edges_i+1).
double staircase_error(
  const Trajectory & x, const std::vector<double> & edges, const std::vector<double> & levels)
{
  double worst = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (int k = 0; k < 50; ++k) {
      const double t = edges[i] + (edges[i + 1] - edges[i]) * k / 50.0;
      worst = std::max(worst, std::abs(x(t) - levels[i]));
    }
    worst = std::max(worst, std::abs(x.left_limit(edges[i + 1]) - levels[i]));
  }
  return worst;
}

double lag_advance_gap(const RaccordationProblem & p, std::size_t m)
{
  const auto lag = oracle_solve(p, m, ShiftDirection::lag);
  const auto adv = oracle_solve(p, m, ShiftDirection::advance);
  double worst = 0.0;
  for (std::size_t i = 0; i < lag.values.size(); ++i) {
    worst = std::max(worst, std::abs(lag.values[i] - adv.values[i]));
  }
  return worst;
}

void criterion1(Outcome & o)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto x = gluskabi_map(solve_step(constants(2.0)));
  const double err = staircase_error(x, {0.0, 1.0, 2.0}, {1.0 / 3.0, 2.0 / 3.0});
  const double cost = cost_l2(x, 0.0, 2.0, 1.0);
  const double dt = seconds_since(t0);
  o.detail << "staircase error " << err << ", cost " << cost << ", " << dt << " s";
  o.require(err <= 1e-12, "staircase {1/3, 2/3} within 1e-12");
  o.require(std::abs(cost - 1.0 / 3.0) <= 1e-12, "cost 1/3 within 1e-12");
  o.require(dt < 0.1, "runtime < 0.1 s");
}

void criterion2(Outcome & o)
{
  const auto r = solve_step(constants(2.5));
  const auto x = gluskabi_map(r);
  const double err = staircase_error(
    x, {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}, {0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75});
  const double cost = cost_l2(x, 0.0, 2.5, 1.0);
  const auto bps = breakpoints(r);
  const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  const std::vector<double> jumps{0.25, 1.0 / 12.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 12.0, 0.25};
  double bp_err = bps.size() == times.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < bps.size() && i < times.size(); ++i) {
    bp_err = std::max({bp_err, std::abs(bps[i].time - times[i]), std::abs(bps[i].jump - jumps[i])});
  }
  o.detail << "staircase error " << err << ", cost " << cost << ", breakpoint error " << bp_err;
  o.require(err <= 1e-12, "staircase {1/4, 1/3, 1/2, 2/3, 3/4} within 1e-12");
  o.require(std::abs(cost - 7.0 / 24.0) <= 1e-12, "cost 7/24 within 1e-12");
  o.require(bp_err <= 1e-12, "jumps {1/4, 1/12, 1/6, 1/6, 1/12, 1/4} at {0, .5, 1, 1.5, 2, 2.5}");
}

void criterion3(Outcome & o)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = cos_to_triangle(2.5);
  const auto x = gluskabi_map(solve_step(p));
  const double sup = compare(x, oracle_solve(p, 200));
  const double dt = seconds_since(t0);
  o.detail << "sup discrepancy " << sup << " at m=200, " << dt << " s";
  o.require(sup <= 1e-9, "sup discrepancy <= 1e-9");
  o.require(dt < 1.0, "runtime < 1 s");
}

void criterion4(Outcome & o)
{
  const auto t0 = std::chrono::steady_clock::now();
  const auto p = cos_to_triangle(4.0, SobolevNorm{1.0});
  const auto r = solve_continuous(p);
  const auto x = gluskabi_map(r);
  const double jm = junction_mismatch(r);
  const double em = endpoint_mismatch(r);
  const double el = euler_lagrange_residual(r);
  const double e200 = compare(x, oracle_solve(p, 200));
  const double e400 = compare(x, oracle_solve(p, 400));
  const double dt = seconds_since(t0);
  o.detail << "junction " << jm << ", endpoints " << em << ", EL residual " << el
           << ", oracle error " << e200 << " -> " << e400 << " (x" << e200 / e400 << "), " << dt
           << " s";
  o.require(jm <= 1e-9, "junction continuity <= 1e-9");
  o.require(em <= 1e-9, "endpoint conditions <= 1e-9");
  o.require(el <= 1e-7, "EL residual <= 1e-7");
  o.require(e400 * 1.5 <= e200, "oracle error shrinks by >= 1.5");
  o.require(dt < 5.0, "runtime < 5 s");
}

void criterion5(Outcome & o)
{
  cli::PerturbationOptions opts;
  const auto pl = cos_to_triangle(2.5);
  const auto rl = solve_step(pl);
  const double dl = cli::worst_cost_decrease(
    gluskabi_map(rl), cli::staircase_perturbations(rl, opts), opts.scales,
    [&](const Trajectory & y) {return cost_l2(y, 0.0, 2.5, 1.0, ShiftDirection::lag, opts.quadrature);});

  const auto ps = cos_to_triangle(4.0, SobolevNorm{1.0});
  const double ds = cli::worst_cost_decrease(
    gluskabi_map(solve_continuous(ps)), cli::continuous_perturbations(ps, opts), opts.scales,
    [&](const Trajectory & y) {
      return cost_sobolev(y, 0.0, 4.0, 1.0, 1.0, ShiftDirection::lag, opts.quadrature);
    });
  o.detail << opts.count << " perturbations each; largest decrease L2 " << dl << ", Sobolev " << ds;
  o.require(dl <= 1e-9, "L2 cost never decreases by more than 1e-9");
  o.require(ds <= 1e-9, "Sobolev cost never decreases by more than 1e-9");
}

void criterion6(Outcome & o)
{
  const double c2 = lag_advance_gap(constants(2.0), 200);
  const double c25 = lag_advance_gap(constants(2.5), 200);
  const double ct = lag_advance_gap(cos_to_triangle(2.5), 200);
  o.detail << "max |lag - advance|: constants [0,2] " << c2 << ", [0,2.5] " << c25
           << ", cos->triangle " << ct;
  o.require(std::max({c2, c25, ct}) <= 1e-9, "minimisers agree to 1e-9");
}

void criterion7(Outcome & o)
{
  const PeriodicTrajectory xa(waveform::Cosine{1.0, 0.0}, RationalPeriod(1, 2));
  const PeriodicTrajectory xb(waveform::Triangle{1.0}, RationalPeriod(1, 3));
  const auto lifted = lift_periods(xa, xb, 0.0, 2.0);
  const auto x = gluskabi_map(solve(RaccordationProblem(xa, xb, 0.0, 2.0)));
  const double sup = compare(x, oracle_solve(lifted, 200));
  o.detail << "tau = " << lifted.period() << ", sup discrepancy " << sup;
  o.require(lifted.period() == 1.0, "common period 1");
  o.require(sup <= 1e-9, "oracle agreement 1e-9");
}

void criterion8(Outcome & o)
{
  const auto d1 = cli::make_demo(1);
  const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0, 2.5};
  bool exact = d1.breakpoints.size() == times.size();
  for (std::size_t i = 0; exact && i < times.size(); ++i) {
    exact = d1.breakpoints[i].time == times[i];
  }
  const auto d2 = cli::make_demo(2);
  const auto jumps2 = d2.trajectory.discontinuities(-2.0, 6.0);
  const auto d3 = cli::make_demo(3);
  const auto d4 = cli::make_demo(4);
  o.detail << "demo 1 breakpoints " << (exact ? "{0, .5, 1, 1.5, 2, 2.5}" : "MISMATCH")
           << "; demo 2 junction " << d2.junction_mismatch << "; pinch ratio demo 3 "
           << d3.pinch.ratio << ", demo 4 " << d4.pinch.ratio << " (flag below 0.8)";
  o.require(exact, "demo 1 discontinuities at multiples of 1 and offset 0.5");
  o.require(d2.junction_mismatch <= 1e-9 && jumps2.empty(), "demo 2 continuous");
  if (!d3.pinch.pinched || d4.pinch.pinched) {
    o.warn = true;
    o.detail << " [pinch diagnostic: expected demo 3 flagged, demo 4 not]";
  }
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<void(Outcome &)>>> criteria{
    {"1 step solution, whole periods (constants on [0,2])", criterion1},
    {"2 step solution, fractional period (constants on [0,2.5])", criterion2},
    {"3 L2 oracle agreement (cos->triangle, m=200)", criterion3},
    {"4 continuous solution invariants (cos->triangle, [0,4], rho=1)", criterion4},
    {"5 optimality certificates (L2 and Sobolev)", criterion5},
    {"6 lag/advance equivalence", criterion6},
    {"7 rational-period lift (1/2 and 1/3 -> 1)", criterion7},
    {"8 worked examples (structural)", criterion8},
  };

  int failed = 0;
  for (const auto & [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception & e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const char * tag = !o.pass ? "FAIL" : o.warn ? "WARN" : "PASS";
    std::cout << tag << "  criterion " << name << ": " << o.detail.str() << '\n';
    failed += o.pass ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << '\n';
  return failed ? 1 : 0;
}
