#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gluskabi/errors.hpp"
#include "gluskabi/signal.hpp"

using gluskabi::PeriodicTrajectory;
using gluskabi::RationalPeriod;
namespace wf = gluskabi::waveform;

namespace {

std::vector<PeriodicTrajectory> zoo()
{
  return {
    PeriodicTrajectory::cosine(1.0),
    PeriodicTrajectory::cosine(0.7, 2.0, 0.3),
    PeriodicTrajectory::triangle(1.0),
    PeriodicTrajectory::triangle(1.0 / 3.0, 0.5),
    PeriodicTrajectory::square(2.0),
    PeriodicTrajectory(wf::Fourier{0.5, {1.0, 0.0, 0.25}, {0.0, -0.5}}, 1.5),
    PeriodicTrajectory(wf::Sampled{{0.0, 0.25, 0.5}, {0.0, 1.0, -1.0}}, 1.0),
  };
}

}  // namespace

TEST(PeriodicTrajectory, Periodic)
{
  for (const auto & s : zoo()) {
    const double T = s.period();
    for (int i = 0; i < 97; ++i) {
      const double t = -3.0 + 0.0731 * i;
      for (int k : {-2, 1, 3}) {
        // Compare away from jump phases, where right limits differ by rounding.
        if (s.has_jumps() && std::abs(std::remainder(t / T, 0.5)) < 1e-9) {
          continue;
        }
        EXPECT_NEAR(s.eval(t + k * T), s.eval(t), 1e-12) << "t=" << t;
      }
    }
  }
}

TEST(PeriodicTrajectory, DerivativeMatchesFiniteDifference)
{
  const double h = 1e-6;
  for (const auto & s : zoo()) {
    for (int i = 0; i < 50; ++i) {
      const double t = 0.013 + 0.0917 * i;
      const auto sing = s.singular_times(t - 2 * h, t + 2 * h);
      if (!sing.empty()) {
        continue;
      }
      const double fd = (s.eval(t + h) - s.eval(t - h)) / (2 * h);
      EXPECT_NEAR(s.deriv(t), fd, 1e-6 * std::max(1.0, std::abs(fd))) << "t=" << t;
    }
  }
}

TEST(PeriodicTrajectory, TriangleValues)
{
  const auto tri = PeriodicTrajectory::triangle(1.0);
  EXPECT_DOUBLE_EQ(tri.eval(0.0), 0.0);
  EXPECT_DOUBLE_EQ(tri.eval(0.25), 1.0);
  EXPECT_DOUBLE_EQ(tri.eval(0.5), 0.0);
  EXPECT_DOUBLE_EQ(tri.eval(0.75), -1.0);
  EXPECT_DOUBLE_EQ(tri.eval(0.125), 0.5);
  EXPECT_DOUBLE_EQ(tri.eval(-0.25), -1.0);
}

TEST(PeriodicTrajectory, CosineValues)
{
  const auto c = PeriodicTrajectory::cosine(1.0, 1.0, std::numbers::pi / 2.0);
  EXPECT_NEAR(c.eval(0.0), 0.0, 1e-15);
  EXPECT_NEAR(c.eval(0.25), -1.0, 1e-15);
  EXPECT_NEAR(PeriodicTrajectory::cosine(2.0, 3.0).eval(1.0), -3.0, 1e-14);
}

TEST(PeriodicTrajectory, SquareRightAndLeftLimits)
{
  const auto sq = PeriodicTrajectory::square(1.0, 2.0);
  EXPECT_DOUBLE_EQ(sq.eval(0.0), 2.0);
  EXPECT_DOUBLE_EQ(sq.eval_left(0.0), -2.0);
  EXPECT_DOUBLE_EQ(sq.eval(0.5), -2.0);
  EXPECT_DOUBLE_EQ(sq.eval_left(0.5), 2.0);
  EXPECT_DOUBLE_EQ(sq.eval(3.5), -2.0);
  EXPECT_TRUE(sq.has_jumps());
  const auto jumps = sq.jump_times(0.0, 2.0);
  ASSERT_EQ(jumps.size(), 5u);
  EXPECT_DOUBLE_EQ(jumps[1], 0.5);
}

TEST(PeriodicTrajectory, SampledInterpolatesLinearlyAndWraps)
{
  const PeriodicTrajectory s(wf::Sampled{{0.0, 0.5}, {0.0, 2.0}}, 2.0);
  EXPECT_DOUBLE_EQ(s.eval(0.5), 1.0);
  EXPECT_DOUBLE_EQ(s.eval(1.0), 2.0);
  EXPECT_DOUBLE_EQ(s.eval(1.5), 1.0);
  EXPECT_DOUBLE_EQ(s.eval(2.0), 0.0);
}

TEST(PeriodicTrajectory, FourierConstantTerm)
{
  const auto c = PeriodicTrajectory::constant(0.75);
  EXPECT_DOUBLE_EQ(c.eval(0.3), 0.75);
  EXPECT_DOUBLE_EQ(c.deriv(0.3), 0.0);
  const PeriodicTrajectory f(wf::Fourier{1.0, {2.0}, {3.0}}, 1.0);
  EXPECT_NEAR(f.eval(0.25), 1.0 + 3.0, 1e-14);
}

TEST(PeriodicTrajectory, Validation)
{
  EXPECT_THROW(PeriodicTrajectory::cosine(0.0), gluskabi::DomainError);
  EXPECT_THROW(PeriodicTrajectory::cosine(-1.0), gluskabi::DomainError);
  EXPECT_THROW(PeriodicTrajectory::cosine(std::nan("")), gluskabi::DomainError);
  EXPECT_THROW(PeriodicTrajectory(wf::Sampled{{0.0}, {1.0}}, 1.0), gluskabi::DomainError);
  EXPECT_THROW(PeriodicTrajectory(wf::Sampled{{0.0, 0.5, 0.4}, {1.0, 2.0, 3.0}}, 1.0),
               gluskabi::DomainError);
  EXPECT_THROW(PeriodicTrajectory(wf::Sampled{{0.1, 0.5}, {1.0, 2.0}}, 1.0), gluskabi::DomainError);
}

TEST(PeriodicTrajectory, RelabelKeepsShape)
{
  const PeriodicTrajectory c(wf::Cosine{1.0, 0.0}, RationalPeriod(1, 2));
  const auto lifted = c.relabeled(RationalPeriod(1));
  EXPECT_DOUBLE_EQ(lifted.period(), 1.0);
  EXPECT_DOUBLE_EQ(lifted.native_period(), 0.5);
  for (double t : {0.1, 0.37, 1.9}) {
    EXPECT_DOUBLE_EQ(lifted.eval(t), c.eval(t));
  }
  EXPECT_THROW(c.relabeled(RationalPeriod(1, 3)), gluskabi::Error);
}
