#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "gluskabi/errors.hpp"

namespace gluskabi {

/// Exact positive rational period p/q, always stored in lowest terms.
class RationalPeriod {
public:
  RationalPeriod(std::int64_t numerator, std::int64_t denominator = 1)
  {
    if (numerator <= 0 || denominator <= 0) {
      throw DomainError("rational period must have positive numerator and denominator, got " +
                        std::to_string(numerator) + "/" + std::to_string(denominator));
    }
    const auto g = std::gcd(numerator, denominator);
    num_ = numerator / g;
    den_ = denominator / g;
  }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// True when *this == k * other for some positive integer k.
  bool is_multiple_of(const RationalPeriod & other) const noexcept
  {
    // p1/q1 = k p2/q2  <=>  p1 q2 = k p2 q1; both sides reduced, so q1 | q2 and p2 | p1.
    return other.den_ % den_ == 0 && num_ % other.num_ == 0;
  }

  /// Integer k with *this == k * other; only meaningful when is_multiple_of(other).
  std::int64_t multiple_of(const RationalPeriod & other) const noexcept
  {
    return (num_ / other.num_) * (other.den_ / den_);
  }

  friend bool operator==(const RationalPeriod &, const RationalPeriod &) = default;

  friend std::ostream & operator<<(std::ostream & os, const RationalPeriod & r)
  {
    return os << r.num_ << '/' << r.den_;
  }

private:
  std::int64_t num_{1};
  std::int64_t den_{1};
};

/// Least common multiple of two rational periods: lcm(p1,p2) / gcd(q1,q2).
inline RationalPeriod lcm_period(const RationalPeriod & r1, const RationalPeriod & r2)
{
  const auto g = std::gcd(r1.numerator(), r2.numerator());
  const auto f = r1.numerator() / g;
  if (f > std::numeric_limits<std::int64_t>::max() / r2.numerator()) {
    throw DomainError("lcm of rational periods overflows 64-bit numerator");
  }
  return RationalPeriod(f * r2.numerator(), std::gcd(r1.denominator(), r2.denominator()));
}

}  // namespace gluskabi
