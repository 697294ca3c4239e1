#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "gluskabi/errors.hpp"
#include "gluskabi/trajectory.hpp"

namespace gluskabi {

struct QuadratureOptions
{
  /// Sub-intervals per smooth piece.
  std::size_t subdivisions{256};
  /// Upper bound on the number of smooth pieces before giving up.
  std::size_t max_pieces{1'000'000};
};

/// Integral of f over [lo, hi] split at `breaks`, composite 3-point Gauss-Legendre per piece.
///
/// Nodes are interior to each piece, so the value taken at a jump point never
/// enters the sum; integrands that are constant on a piece integrate exactly.
template<typename F>
double integrate_piecewise(
  const F & f, double lo, double hi, const std::vector<double> & breaks,
  const QuadratureOptions & opts = {})
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo) {
    throw AlignmentError("quadrature interval must be finite and ordered");
  }
  std::vector<double> edges{lo};
  for (const double b : breaks) {
    if (!std::isfinite(b)) {
      throw AlignmentError("non-finite breakpoint cannot be aligned with the quadrature grid");
    }
    if (b > lo && b < hi) {
      edges.push_back(b);
    }
  }
  edges.push_back(hi);
  edges = merge_points(std::move(edges));
  if (edges.size() > opts.max_pieces + 1) {
    throw AlignmentError("too many breakpoints to align a quadrature grid");
  }

  static constexpr std::array<double, 3> kNode{-0.7745966692414834, 0.0, 0.7745966692414834};
  static constexpr std::array<double, 3> kWeight{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

  const std::size_t m = opts.subdivisions == 0 ? 1 : opts.subdivisions;
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double h = (edges[p + 1] - edges[p]) / static_cast<double>(m);
    double piece = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double mid = edges[p] + (static_cast<double>(i) + 0.5) * h;
      for (std::size_t q = 0; q < 3; ++q) {
        piece += kWeight[q] * f(mid + 0.5 * h * kNode[q]);
      }
    }
    total += 0.5 * h * piece;
  }
  return total;
}

}  // namespace gluskabi
