#include <gtest/gtest.h>

#include <cmath>

#include "gluskabi/errors.hpp"
#include "gluskabi/operator.hpp"
#include "gluskabi/signal.hpp"
#include "gluskabi/trajectory.hpp"

using namespace gluskabi;

namespace {

// 0 before a, staircase levels on [a, b), 1 after b, step tau.
Trajectory staircase(double a, double tau, std::vector<double> levels)
{
  std::vector<double> edges{a - 10.0};
  std::vector<double> values{0.0};
  for (std::size_t k = 0; k < levels.size(); ++k) {
    edges.push_back(a + tau * static_cast<double>(k));
    values.push_back(levels[k]);
  }
  edges.push_back(a + tau * static_cast<double>(levels.size()));
  edges.push_back(a + tau * static_cast<double>(levels.size()) + 10.0);
  values.push_back(1.0);
  return Trajectory::piecewise_constant(edges, values);
}

}  // namespace

TEST(Defect, LagAndAdvance)
{
  const auto x = Trajectory::affine(1.0, 2.0);
  EXPECT_DOUBLE_EQ(defect(x, 0.5)(3.0), 1.0);
  EXPECT_DOUBLE_EQ(defect(x, 0.5, ShiftDirection::advance)(3.0), 1.0);
  EXPECT_DOUBLE_EQ(defect(x, 0.5).derivative(3.0), 0.0);
  EXPECT_THROW(defect(x, 0.0), DomainError);
}

TEST(Defect, VanishesOnPeriodicSignal)
{
  const auto x = Trajectory::from_periodic(PeriodicTrajectory::triangle(0.5));
  const auto u = defect(x, 1.0);
  for (int i = 0; i < 40; ++i) {
    EXPECT_NEAR(u(-1.0 + 0.077 * i), 0.0, 1e-12);
  }
}

TEST(CostL2, ThirdsStaircase)
{
  const auto x = staircase(0.0, 1.0, {1.0 / 3.0, 2.0 / 3.0});
  EXPECT_NEAR(cost_l2(x, 0.0, 2.0, 1.0), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(cost_l2(x, 0.0, 2.0, 1.0, ShiftDirection::advance), 1.0 / 3.0, 1e-12);
}

TEST(CostL2, NonOptimalStaircaseCostsMore)
{
  EXPECT_NEAR(cost_l2(staircase(0.0, 1.0, {0.5, 0.5}), 0.0, 2.0, 1.0), 0.5, 1e-12);
  EXPECT_NEAR(cost_l2(staircase(0.0, 1.0, {0.0, 1.0}), 0.0, 2.0, 1.0), 1.0, 1e-12);
}

TEST(CostSobolev, LinearRampBetweenConstants)
{
  // x = 0 for t <= 0, t/2 on [0, 2], 1 after: u = 1/2 on its support plus ramps.
  const auto ramp = Trajectory::piecewise_linear({-10.0, 0.0, 2.0, 12.0}, {0.0, 0.0, 1.0, 1.0});
  const double l2 = cost_l2(ramp, 0.0, 2.0, 1.0);
  // u(t) = t/2 on [0,1], 1/2 on [1,2], (3 - t)/2 on [2,3].
  EXPECT_NEAR(l2, 1.0 / 12.0 + 0.25 + 1.0 / 12.0, 1e-12);
  // u' = +-1/2 on [0,1] and [2,3]: derivative contribution 2 * 1/4 with rho = 2.
  EXPECT_NEAR(cost_sobolev(ramp, 0.0, 2.0, 1.0, 2.0), l2 + 4.0 * 0.5, 1e-12);
}

TEST(CostL2, QuadraticInTrajectory)
{
  const auto x = Trajectory::from_periodic(PeriodicTrajectory::cosine(1.0));
  const auto d = Trajectory::piecewise_linear({0.0, 0.7, 2.0}, {0.0, 1.0, 0.0});
  const auto cost = [](const Trajectory & y) {return cost_l2(y, 0.0, 2.0, 1.0);};
  // Parallelogram law for a quadratic form.
  const double lhs = cost(x + d) + cost(x - d);
  const double rhs = 2.0 * cost(x) + 2.0 * cost(d);
  EXPECT_NEAR(lhs, rhs, 1e-12);
  EXPECT_NEAR(cost(2.0 * d), 4.0 * cost(d), 1e-12);
}

TEST(CostL2, ZeroOnPeriodicAndSupportLimited)
{
  const auto x = Trajectory::from_periodic(PeriodicTrajectory::triangle(1.0));
  EXPECT_NEAR(cost_l2(x, 0.0, 3.0, 1.0), 0.0, 1e-14);
  // A bump inside [a, b] contributes regardless of which window is used.
  const auto bump = Trajectory::piecewise_linear({0.2, 0.5, 0.8}, {0.0, 1.0, 0.0});
  EXPECT_NEAR(cost_l2(bump, 0.0, 1.0, 1.0), 2.0 * 0.3 * 2.0 / 3.0, 1e-12);
}

TEST(CostL2, TranslationInvariant)
{
  const auto bump = Trajectory::piecewise_linear({0.2, 0.5, 0.8}, {0.0, 1.0, 0.0});
  const double c0 = cost_sobolev(bump, 0.0, 1.0, 1.0, 0.5);
  EXPECT_NEAR(cost_sobolev(bump.shifted(3.25), 3.25, 4.25, 1.0, 0.5), c0, 1e-12);
}

TEST(CostL2, RejectsEmptyInterval)
{
  const auto x = Trajectory::affine(0.0, 0.0);
  EXPECT_THROW(cost_l2(x, 1.0, 1.0, 1.0), IntervalError);
}
