// Least-squares line fit for slope extraction from log-log samples.
#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace schrodiv {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double max_residual = 0;
};

inline LineFit least_squares_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares_fit: need >= 2 matching samples");
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0) throw std::invalid_argument("least_squares_fit: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(y[i] - fit.slope * x[i] - fit.intercept));
  return fit;
}

}  // namespace schrodiv
