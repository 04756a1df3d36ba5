// Independent maximization of the Sobolev exponent over the slab-parameter
// box, restricted to the slice {min(alpha1, alpha2) = alpha}. The scan
// combines a base u2 grid with exactly solved boundary candidates (corner
// values, u3 hitting 0 or 1/2, and alpha1 = alpha2 crossings), so every
// candidate is validated and evaluated in exact rational arithmetic. This
// is the oracle the closed-form curves s_m(alpha) are checked against.
#pragma once

#include "schrodiv/exponents.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace schrodiv {

struct SliceMax {
  Rat value;          // max of s_from_params on the slice
  Rat u2, u3;         // a maximizer (first one met on the deterministic scan)
  std::string active; // "alpha1", "alpha2lo", or "alpha2hi"
};

// Returns nullopt when the slice is empty (alpha not attainable for these
// dims). u2_grid is the number of base grid steps across [1/2, 1].
std::optional<SliceMax> exact_max_on_slice(const ProblemDims& dims, const Rat& alpha,
                                           int u2_grid = 32);

struct PiecewiseReport {
  Rat max_deviation;   // max |oracle - curve| over the alpha grid
  Rat worst_alpha;     // where the max deviation occurred
  std::size_t points = 0;
};

// Sweeps alpha over the curve domain (alpha_steps equal steps plus every
// exact breakpoint) and compares the slice oracle against curve_m.
PiecewiseReport verify_piecewise(const ProblemDims& dims, int alpha_steps = 1000,
                                 int u2_grid = 32);

// max over m of the slice oracle, with the full ascending argmax set; the
// oracle-route counterpart of s_of_alpha.
GrandMax grand_max_oracle(int n, const Rat& alpha, int u2_grid = 32);

}  // namespace schrodiv
