#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "gluskabi/cli/output.hpp"
#include "gluskabi/cli/verify.hpp"
#include "gluskabi/cli/waveform_parser.hpp"
#include "gluskabi/errors.hpp"
#include "gluskabi/oracle.hpp"
#include "gluskabi/raccordation.hpp"

namespace gluskabi::cli {

enum ExitCode : int
{
  kOk = 0,
  kUsage = 1,
  kSolver = 2,
  kVerification = 3,
};

struct Args
{
  std::string xa;
  std::string xb;
  std::string a{"0"};
  std::string b;
  std::string norm{"l2"};
  double rho{1.0};
  std::size_t samples_per_period{100};
  std::size_t oracle_m{200};
  std::string csv;
  std::string svg;
  /// Relative `samples(file=...)` paths resolve here.
  std::filesystem::path base_dir;
  /// Test hook for `verify`: scale the staircase multiplier.
  double corrupt_scale{1.0};
};

/// Parse waveforms, interval and norm.
inline RaccordationProblem build_problem(const Args & args)
{
  const auto xa = parse_waveform(args.xa, args.base_dir);
  const auto xb = parse_waveform(args.xb, args.base_dir);
  const double a = parse_number(args.a).value;
  const double b = parse_number(args.b).value;
  Norm norm = L2Norm{};
  if (args.norm == "sobolev") {
    norm = SobolevNorm{args.rho};
  } else if (args.norm != "l2") {
    throw DomainError("unknown norm '" + args.norm + "' (expected l2 or sobolev)");
  }
  return {xa, xb, a, b, norm};
}

/// Same problem with differing rational periods lifted to their lcm.
inline RaccordationProblem common_period(const RaccordationProblem & p)
{
  return p.same_period() ? p : lift_periods(p.xa(), p.xb(), p.a(), p.b(), p.norm());
}

namespace detail {

template<class F>
int guarded(std::ostream & err, int phase_code, F && f)
{
  try {
    return f();
  } catch (const ParseError & e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error & e) {
    err << "error: " << e.what() << '\n';
    return phase_code;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return kSolver;
  }
}

inline std::ofstream open_output(const std::string & path)
{
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw Error("cannot open '" + path + "' for writing");
  }
  return os;
}

inline void write_outputs(
  const Args & args, const RaccordationProblem & p, const Trajectory & x, std::ostream & out,
  const std::string & title)
{
  const double tau = p.period();
  if (!args.csv.empty()) {
    auto os = open_output(args.csv);
    write_csv(os, sample(x, p.a(), p.b(), tau, args.samples_per_period));
  }
  if (!args.svg.empty()) {
    auto os = open_output(args.svg);
    write_svg(os, x, p.a(), p.b(), tau, {std::max<std::size_t>(args.samples_per_period, 200), title});
  }
  (void)out;
}

inline void print_breakpoints(std::ostream & os, const std::vector<Breakpoint> & bps)
{
  os << "breakpoints (t, jump):\n";
  for (const auto & bp : bps) {
    os << "  " << bp.time << ", " << bp.jump << '\n';
  }
}

}  // namespace detail

/// Solve and emit samples.  CSV goes to --csv or, when absent, to `out`; the
/// summary then moves to `err` so stdout stays machine-readable.
inline int run_connect(const Args & args, std::ostream & out, std::ostream & err)
{
  std::optional<RaccordationProblem> problem;
  if (const int rc = detail::guarded(err, kUsage, [&] {problem = build_problem(args); return 0;})) {
    return rc;
  }
  return detail::guarded(
    err, kSolver, [&] {
      const auto p = common_period(*problem);
      const auto sol = solve(p);
      const auto x = gluskabi_map(sol);
      const double tau = p.period();
      std::ostream & info = args.csv.empty() ? err : out;
      info << std::setprecision(12) << echo(p) << '\n';
      if (const auto * r = std::get_if<PiecewiseRaccordation>(&sol)) {
        info << "cost: " << cost_l2(x, p.a(), p.b(), tau) << '\n';
        detail::print_breakpoints(info, breakpoints(*r));
      } else {
        const auto & c = std::get<ContinuousRaccordation>(sol);
        info << "cost: " << cost_sobolev(x, p.a(), p.b(), tau, p.rho()) << '\n';
        info << "max junction mismatch: " << junction_mismatch(c) << '\n';
        info << "max endpoint mismatch: " << endpoint_mismatch(c) << '\n';
      }
      if (args.csv.empty()) {
        write_csv(out, sample(x, p.a(), p.b(), tau, args.samples_per_period));
      }
      detail::write_outputs(args, p, x, out, "raccordation");
      return static_cast<int>(kOk);
    });
}

inline int run_verify(const Args & args, std::ostream & out, std::ostream & err)
{
  std::optional<RaccordationProblem> problem;
  if (const int rc = detail::guarded(err, kUsage, [&] {problem = build_problem(args); return 0;})) {
    return rc;
  }
  return detail::guarded(
    err, kSolver, [&] {
      const auto p = common_period(*problem);
      VerifyOptions opts;
      opts.oracle_m = args.oracle_m;
      opts.corrupt_scale = args.corrupt_scale;
      try {
        const auto rep = verify(p, opts);
        rep.print(out);
        return static_cast<int>(rep.all_passed() ? kOk : kVerification);
      } catch (const AlignmentError & e) {
        err << "error: " << e.what() << '\n';
        if (const auto m = suggest_samples_per_period(p, args.oracle_m)) {
          err << "hint: try --oracle-m " << m << '\n';
        }
        return static_cast<int>(kSolver);
      }
    });
}

inline int run_breakpoints(const Args & args, std::ostream & out, std::ostream & err)
{
  std::optional<RaccordationProblem> problem;
  if (const int rc = detail::guarded(err, kUsage, [&] {problem = build_problem(args); return 0;})) {
    return rc;
  }
  return detail::guarded(
    err, kSolver, [&] {
      const auto sol = solve(*problem);
      out << std::setprecision(12);
      if (const auto * r = std::get_if<PiecewiseRaccordation>(&sol)) {
        detail::print_breakpoints(out, breakpoints(*r));
      } else {
        out << "continuous solution, max junction mismatch "
            << junction_mismatch(std::get<ContinuousRaccordation>(sol)) << '\n';
      }
      return static_cast<int>(kOk);
    });
}

/// The four worked examples: cosine before the interval, unit triangle wave after it.
struct Demo
{
  int example{0};
  std::string description;
  RaccordationProblem problem;
  Solution solution;
  Trajectory trajectory;
  std::vector<Breakpoint> breakpoints;
  double junction_mismatch{0.0};
  PinchMetric pinch;
};

inline Demo make_demo(int example)
{
  const PeriodicTrajectory tri(waveform::Triangle{1.0}, RationalPeriod(1));
  const auto cos_at = [](double phase) {
      return PeriodicTrajectory(waveform::Cosine{1.0, phase}, RationalPeriod(1));
    };
  const double half_pi = std::numbers::pi / 2.0;
  std::string what;
  std::optional<RaccordationProblem> p;
  switch (example) {
    case 1:
      what = "cos(2 pi t) -> triangle, L2, [0, 2.5]";
      p.emplace(cos_at(0.0), tri, 0.0, 2.5, L2Norm{});
      break;
    case 2:
      what = "cos(2 pi t) -> triangle, Sobolev rho=1, [0, 4]";
      p.emplace(cos_at(0.0), tri, 0.0, 4.0, SobolevNorm{1.0});
      break;
    case 3:
      what = "cos(2 pi t + pi/2) -> triangle, Sobolev rho=1, [0, 6]";
      p.emplace(cos_at(half_pi), tri, 0.0, 6.0, SobolevNorm{1.0});
      break;
    case 4:
      what = "cos(2 pi t - pi/2) -> triangle, Sobolev rho=1, [0, 6]";
      p.emplace(cos_at(-half_pi), tri, 0.0, 6.0, SobolevNorm{1.0});
      break;
    default:
      throw DomainError("demo example must be 1, 2, 3 or 4");
  }
  auto sol = solve(*p);
  auto x = gluskabi_map(sol);
  Demo d{example, what, *p, sol, x, {}, 0.0, pinch_metric(x, p->a(), p->b())};
  if (const auto * r = std::get_if<PiecewiseRaccordation>(&sol)) {
    d.breakpoints = gluskabi::breakpoints(*r);
  } else {
    d.junction_mismatch = gluskabi::junction_mismatch(std::get<ContinuousRaccordation>(sol));
  }
  return d;
}

inline int run_demo(int example, const Args & args, std::ostream & out, std::ostream & err)
{
  if (example < 1 || example > 4) {
    err << "error: demo example must be 1, 2, 3 or 4\n";
    return kUsage;
  }
  return detail::guarded(
    err, kSolver, [&] {
      const auto d = make_demo(example);
      const auto & p = d.problem;
      out << std::setprecision(12) << "demo " << example << ": " << d.description << '\n';
      if (p.is_sobolev()) {
        out << "cost: " << cost_sobolev(d.trajectory, p.a(), p.b(), p.period(), p.rho()) << '\n';
        out << "continuous: max junction mismatch " << d.junction_mismatch << '\n';
        out << "pinch ratio (middle/first third peak): " << d.pinch.ratio
            << (d.pinch.pinched ? "  [PINCHED]" : "") << '\n';
      } else {
        out << "cost: " << cost_l2(d.trajectory, p.a(), p.b(), p.period()) << '\n';
        detail::print_breakpoints(out, d.breakpoints);
      }
      detail::write_outputs(args, p, d.trajectory, out, "demo " + std::to_string(example));
      return static_cast<int>(kOk);
    });
}

}  // namespace gluskabi::cli
