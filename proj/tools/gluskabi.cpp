// gluskabi: connect two periodic trajectories with a maximally persistent transition.
//
//   gluskabi connect --xa "cos(period=1)" --xb "triangle(period=1)" --a 0 --b 2.5 --csv out.csv
//   gluskabi verify  --xa "cos(period=1)" --xb "triangle(period=1)" --a 0 --b 4 --norm sobolev
//   gluskabi demo 3 --svg demo3.svg
//   gluskabi breakpoints --xa "cos(period=1)" --xb "triangle(period=1)" --b 2.5

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "gluskabi/cli/commands.hpp"

namespace {

void add_problem_options(CLI::App & cmd, gluskabi::cli::Args & args)
{
  cmd.add_option("--xa", args.xa, "waveform before the interval, e.g. \"cos(period=1)\"")->required();
  cmd.add_option("--xb", args.xb, "waveform after the interval")->required();
  cmd.add_option("--a", args.a, "interval start (decimal or p/q)")->capture_default_str();
  cmd.add_option("--b", args.b, "interval end (decimal or p/q)")->required();
  cmd.add_option("--norm", args.norm, "cost norm")
  ->check(CLI::IsMember({"l2", "sobolev"}))->capture_default_str();
  cmd.add_option("--rho", args.rho, "Sobolev derivative weight")->capture_default_str();
}

void add_output_options(CLI::App & cmd, gluskabi::cli::Args & args)
{
  cmd.add_option("--samples-per-period", args.samples_per_period, "CSV samples per period")
  ->check(CLI::PositiveNumber)->capture_default_str();
  cmd.add_option("--csv", args.csv, "CSV output path (t,x,u)");
  cmd.add_option("--svg", args.svg, "SVG plot output path");
}

}  // namespace

int main(int argc, char ** argv)
{
  using namespace gluskabi::cli;

  CLI::App app{"Maximally persistent connections between periodic trajectories"};
  app.require_subcommand(1);
  Args args;
  args.base_dir = std::filesystem::current_path();
  int example = 0;

  auto * connect = app.add_subcommand("connect", "solve and write samples");
  add_problem_options(*connect, args);
  add_output_options(*connect, args);

  auto * verify = app.add_subcommand("verify", "solve and run the invariant suite");
  add_problem_options(*verify, args);
  verify->add_option("--oracle-m", args.oracle_m, "oracle samples per period")
  ->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--corrupt-scale", args.corrupt_scale, "scale the staircase (testing)")
  ->group("");

  auto * demo = app.add_subcommand("demo", "reproduce one of the four worked examples");
  demo->add_option("example", example, "example number")->required()->check(CLI::Range(1, 4));
  add_output_options(*demo, args);

  auto * bps = app.add_subcommand("breakpoints", "list discontinuities of the raccordation");
  add_problem_options(*bps, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (connect->parsed()) {
    return run_connect(args, std::cout, std::cerr);
  }
  if (verify->parsed()) {
    return run_verify(args, std::cout, std::cerr);
  }
  if (demo->parsed()) {
    return run_demo(example, args, std::cout, std::cerr);
  }
  return run_breakpoints(args, std::cout, std::cerr);
}
