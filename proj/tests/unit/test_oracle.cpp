#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gluskabi/banded.hpp"
#include "gluskabi/errors.hpp"
#include "gluskabi/oracle.hpp"
#include "gluskabi/raccordation.hpp"

using namespace gluskabi;

namespace {

RaccordationProblem constants(double b, Norm norm = L2Norm{})
{
  return {PeriodicTrajectory::constant(0.0), PeriodicTrajectory::constant(1.0), 0.0, b, norm};
}

RaccordationProblem cos_to_triangle(double b, Norm norm = L2Norm{})
{
  return {PeriodicTrajectory::cosine(1.0), PeriodicTrajectory::triangle(1.0), 0.0, b, norm};
}

}  // namespace

TEST(BandedSpdMatrix, SolvesTridiagonal)
{
  // 2 on the diagonal, -1 off it; solution of A x = e is x_i = i (n + 1 - i) / 2 (1-based).
  const std::size_t n = 9;
  BandedSpdMatrix A(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    A.add(i, i, 2.0);
    if (i > 0) {
      A.add(i, i - 1, -1.0);
    }
  }
  A.factorize();
  const std::vector<double> ones(n, 1.0);
  const auto x = A.solve(ones);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    EXPECT_NEAR(x[i], k * (static_cast<double>(n) + 1.0 - k) / 2.0, 1e-12);
  }
}

TEST(BandedSpdMatrix, RejectsIndefinite)
{
  BandedSpdMatrix A(2, 1);
  A.add(0, 0, 1.0);
  A.add(1, 1, 1.0);
  A.add(1, 0, 2.0);
  EXPECT_THROW(A.factorize(), ConditioningError);
}

TEST(Oracle, ConstantsStaircaseAwayFromBreakpoints)
{
  const auto o = oracle_solve(constants(2.0), 16);
  ASSERT_EQ(o.values.size(), 33u);
  for (std::size_t j = 1; j < 32; ++j) {
    if (j % 16 == 0) {
      continue;
    }
    EXPECT_NEAR(o.values[j], j < 16 ? 1.0 / 3.0 : 2.0 / 3.0, 1e-12) << j;
  }
  const auto x = gluskabi_map(solve_step(constants(2.0)));
  EXPECT_LE(compare(x, o), 1e-12);
}

TEST(Oracle, LagAndAdvanceAgree)
{
  for (const auto & p : {constants(2.5), cos_to_triangle(2.5), cos_to_triangle(3.0, SobolevNorm{1.0})}) {
    const auto lag = oracle_solve(p, 40, ShiftDirection::lag);
    const auto adv = oracle_solve(p, 40, ShiftDirection::advance);
    ASSERT_EQ(lag.values.size(), adv.values.size());
    for (std::size_t i = 0; i < lag.values.size(); ++i) {
      EXPECT_NEAR(lag.values[i], adv.values[i], 1e-9);
    }
    EXPECT_NEAR(lag.cost, adv.cost, 1e-12);
  }
}

TEST(Oracle, MinimisesDiscreteCost)
{
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (const auto & p : {cos_to_triangle(2.5), cos_to_triangle(2.0, SobolevNorm{0.5})}) {
    const DiscretizedProblem d(p, 24);
    const auto o = oracle_solve(d);
    EXPECT_NEAR(discrete_cost(d, o.values), o.cost, 1e-12);
    for (int trial = 0; trial < 50; ++trial) {
      auto v = o.values;
      for (std::size_t j = 1; j + 1 < v.size(); ++j) {
        v[j] += 1e-3 * nd(rng);
      }
      EXPECT_GE(discrete_cost(d, v), o.cost - 1e-14);
    }
  }
}

TEST(Oracle, MatchesStaircaseOnExactChains)
{
  const auto p = cos_to_triangle(2.5);
  const auto x = gluskabi_map(solve_step(p));
  EXPECT_LE(compare(x, oracle_solve(p, 200)), 1e-9);
}

TEST(Oracle, ConvergesToContinuousSolution)
{
  const auto p = cos_to_triangle(2.0, SobolevNorm{1.0});
  const auto x = gluskabi_map(solve_continuous(p));
  double prev = compare(x, oracle_solve(p, 50));
  for (const std::size_t m : {100u, 200u}) {
    const double err = compare(x, oracle_solve(p, m));
    EXPECT_LT(err, prev / 1.5) << m;
    prev = err;
  }
}

TEST(Oracle, AlignmentAndIntervalErrors)
{
  const auto p = cos_to_triangle(2.3);
  EXPECT_THROW((void)oracle_solve(p, 7), AlignmentError);
  EXPECT_EQ(suggest_samples_per_period(p, 7), 10u);
  EXPECT_NO_THROW((void)oracle_solve(p, 10));
  EXPECT_THROW((void)oracle_solve(cos_to_triangle(2.5, SobolevNorm{1.0}), 20), IntervalError);
  EXPECT_THROW((void)oracle_solve(p, 0), DomainError);
}
