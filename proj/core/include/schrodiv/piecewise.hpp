// Piecewise-linear curves over exact rationals: contiguous labeled segments,
// each s(alpha) = intercept + slope * alpha, continuous at the junctions and
// nonincreasing in alpha.
#pragma once

#include "schrodiv/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace schrodiv {

struct LinearPiece {
  Rat alpha_lo, alpha_hi;
  Rat slope, intercept;
  std::string label;

  Rat eval(const Rat& alpha) const { return intercept + slope * alpha; }
};

class PiecewiseLinearCurve {
 public:
  PiecewiseLinearCurve() = default;
  explicit PiecewiseLinearCurve(std::vector<LinearPiece> pieces);

  const std::vector<LinearPiece>& pieces() const { return pieces_; }
  Rat domain_lo() const;
  Rat domain_hi() const;
  bool contains(const Rat& alpha) const;

  // Value at alpha; throws std::invalid_argument outside the domain.
  Rat eval(const Rat& alpha) const;

  // The piece owning alpha. A breakpoint belongs to the piece on its left
  // (continuity makes the value unambiguous either way).
  const LinearPiece& piece_at(const Rat& alpha) const;

  // All segment endpoints, ascending, without duplicates.
  std::vector<Rat> breakpoints() const;

  // Throws std::logic_error when segments are not contiguous, the curve is
  // discontinuous at a junction, or some segment increases.
  void validate() const;

 private:
  std::vector<LinearPiece> pieces_;
  std::size_t index_of(const Rat& alpha) const;
};

}  // namespace schrodiv
