#include <gtest/gtest.h>

#include <numeric>

#include "gluskabi/errors.hpp"
#include "gluskabi/rational.hpp"

using gluskabi::RationalPeriod;

TEST(RationalPeriod, ReducesToLowestTerms)
{
  const RationalPeriod r(6, 4);
  EXPECT_EQ(r.numerator(), 3);
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_DOUBLE_EQ(r.value(), 1.5);
  EXPECT_EQ(RationalPeriod(2, 4), RationalPeriod(1, 2));
}

TEST(RationalPeriod, RejectsNonPositive)
{
  EXPECT_THROW(RationalPeriod(0), gluskabi::DomainError);
  EXPECT_THROW(RationalPeriod(-1, 2), gluskabi::DomainError);
  EXPECT_THROW(RationalPeriod(1, 0), gluskabi::DomainError);
}

TEST(RationalPeriod, MultipleOf)
{
  const RationalPeriod one(1);
  EXPECT_TRUE(one.is_multiple_of(RationalPeriod(1, 3)));
  EXPECT_EQ(one.multiple_of(RationalPeriod(1, 3)), 3);
  EXPECT_FALSE(RationalPeriod(1, 2).is_multiple_of(RationalPeriod(1, 3)));
}

TEST(RationalPeriod, LcmOfHalfAndThird)
{
  EXPECT_EQ(gluskabi::lcm_period(RationalPeriod(1, 2), RationalPeriod(1, 3)), RationalPeriod(1));
  EXPECT_EQ(gluskabi::lcm_period(RationalPeriod(2, 3), RationalPeriod(1, 2)), RationalPeriod(2));
}

// Smallest common multiple found by search: k * r1 for the least k that r2 divides.
TEST(RationalPeriod, LcmMatchesBruteForce)
{
  for (std::int64_t p1 = 1; p1 <= 6; ++p1) {
    for (std::int64_t q1 = 1; q1 <= 6; ++q1) {
      for (std::int64_t p2 = 1; p2 <= 6; ++p2) {
        for (std::int64_t q2 = 1; q2 <= 6; ++q2) {
          const RationalPeriod r1(p1, q1);
          const RationalPeriod r2(p2, q2);
          std::int64_t k = 1;
          while (!RationalPeriod(k * r1.numerator(), r1.denominator()).is_multiple_of(r2)) {
            ++k;
          }
          EXPECT_EQ(gluskabi::lcm_period(r1, r2), RationalPeriod(k * r1.numerator(), r1.denominator()))
            << r1 << " " << r2;
        }
      }
    }
  }
}
