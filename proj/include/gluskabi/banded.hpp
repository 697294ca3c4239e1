#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "gluskabi/errors.hpp"

namespace gluskabi {

/// Symmetric positive definite matrix with lower bandwidth `bw`, solved by band Cholesky.
class BandedSpdMatrix
{
public:
  BandedSpdMatrix(std::size_t n, std::size_t bw)
  : n_{n}, bw_{bw}, band_(n * (bw + 1), 0.0)
  {}

  std::size_t size() const noexcept { return n_; }
  std::size_t bandwidth() const noexcept { return bw_; }

  /// A(i, j) += v for |i - j| <= bw (either triangle may be addressed).
  void add(std::size_t i, std::size_t j, double v)
  {
    if (i < j) {
      std::swap(i, j);
    }
    if (i - j > bw_) {
      throw DomainError("entry outside the matrix band");
    }
    at(i, j) += v;
  }

  double get(std::size_t i, std::size_t j) const
  {
    if (i < j) {
      std::swap(i, j);
    }
    return i - j > bw_ ? 0.0 : band_[i * (bw_ + 1) + (i - j)];
  }

  /// In-place Cholesky factorisation A = L L^T; O(n bw^2).
  void factorize()
  {
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t k0 = j > bw_ ? j - bw_ : 0;
      double d = at(j, j);
      for (std::size_t k = k0; k < j; ++k) {
        d -= at(j, k) * at(j, k);
      }
      if (!(d > 0.0)) {
        throw ConditioningError("normal equations are not positive definite");
      }
      const double ljj = std::sqrt(d);
      at(j, j) = ljj;
      const std::size_t iend = std::min(n_, j + bw_ + 1);
      for (std::size_t i = j + 1; i < iend; ++i) {
        const std::size_t kk = i > bw_ ? i - bw_ : 0;
        double s = at(i, j);
        for (std::size_t k = std::max(kk, k0); k < j; ++k) {
          s -= at(i, k) * at(j, k);
        }
        at(i, j) = s / ljj;
      }
    }
    factored_ = true;
  }

  /// Solve A x = rhs after factorize().
  std::vector<double> solve(std::span<const double> rhs) const
  {
    if (!factored_) {
      throw DomainError("BandedSpdMatrix::solve called before factorize()");
    }
    std::vector<double> x(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t k0 = i > bw_ ? i - bw_ : 0;
      double s = x[i];
      for (std::size_t k = k0; k < i; ++k) {
        s -= at(i, k) * x[k];
      }
      x[i] = s / at(i, i);
    }
    for (std::size_t i = n_; i-- > 0; ) {
      const std::size_t kend = std::min(n_, i + bw_ + 1);
      double s = x[i];
      for (std::size_t k = i + 1; k < kend; ++k) {
        s -= at(k, i) * x[k];
      }
      x[i] = s / at(i, i);
    }
    return x;
  }

private:
  double & at(std::size_t i, std::size_t j) { return band_[i * (bw_ + 1) + (i - j)]; }
  double at(std::size_t i, std::size_t j) const { return band_[i * (bw_ + 1) + (i - j)]; }

  std::size_t n_;
  std::size_t bw_;
  std::vector<double> band_;
  bool factored_{false};
};

}  // namespace gluskabi
