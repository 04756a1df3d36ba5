// Closed-form exponent curves s_m(alpha) for the fractal Schrodinger
// divergence construction, their branch thresholds, the grand maximum
// s(alpha) = max_m s_m(alpha), and the rectangle mass-transference bound.
// Everything here is exact rational arithmetic.
//
// Branch formulas (writing N1 = n-m+1):
//   s3(alpha) = n/(2 N1) + (n-m-1)(n-alpha)/(2 N1)
//   s4(alpha) = (n-m)(1+n-alpha)/(2 N1)
//   s5(alpha) = 1/2 + (n-m-2)(n-alpha)/(2(n-m-1))
// Thresholds:
//   beta1 = n - (m-1)(n-m-1)/(n-m-3)   (needs m <= n-4)
//   beta2 = (n+m+1)/2
// Slab dimensions as functions of (u2, u3):
//   alpha1 = (m-1)/2 + (n-m+1) u2 + m u3
//   alpha2 = n-m-3 + 4 u2 + 2 m u3   (u2 <= 3/4)
//          = n-m   + 2 m u3          (u2 >= 3/4)
// Sobolev exponent attained by the parameter choice:
//   s_from_params = (2n-m-1)/4 - (n-m-1) u2 / 2 - m u3 / 2.
#pragma once

#include "schrodiv/dims.hpp"
#include "schrodiv/piecewise.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace schrodiv {

Rat s3(const ProblemDims& dims, const Rat& alpha);
Rat s4(const ProblemDims& dims, const Rat& alpha);
Rat s5(const ProblemDims& dims, const Rat& alpha);  // needs n-m-1 > 0

Rat beta1(const ProblemDims& dims);  // needs m < n-3
Rat beta2(const ProblemDims& dims);

// Both slab-dimension formulas; asserts the two alpha2 branches agree at
// u2 = 3/4. Inputs restricted to the closed box [1/2, u2_cap] x [0, 1/2].
std::pair<Rat, Rat> alpha_dims(const ProblemDims& dims, const Rat& u2, const Rat& u3);

Rat s_from_params(const ProblemDims& dims, const Rat& u2, const Rat& u3);

// Rectangle mass-transference dimension bound: for shrink exponents b and
// dilated exponents a (componentwise 0 <= a_i <= b_i <= 1, b_i > 0),
//   min over B in set(b) of  sum_{K1} 1 + sum_{K2} (1 - (b_j-a_j)/B) + sum_{K3} a_j/B
// with K1 = {j : a_j >= B}, K2 = {j : b_j <= B} \ K1, K3 = the rest.
Rat mtp_lower_bound(std::span<const Rat> b, std::span<const Rat> a);

// The slab-family shrink pattern (1/2, 1 x(n-m-1), 1/2 x m) fed to the bound.
std::vector<Rat> slab_shrink_pattern(const ProblemDims& dims);

// Dilation exponents as a full n-vector (a1, a2 x(n-m-1), a3 x m).
std::vector<Rat> dilation_pattern(const ProblemDims& dims, const ParamVector& u);

// The full piecewise curve s_m(alpha) on its admissible alpha range:
//   m = 0, or 3m <= n-1:          [n/2, n]        s3 then s4
//   (n-1)/3 < m, 2m <= n-2:       [n/2, n]        s3, s5, s4
//   n/2-1 < m <= n-3:             [n-m-1, n]      quarter-slope piece, s5, s4
//   m = n-2:                      [1, n]          slopes -1/8, -1/4, -1/3
//   m = n-1:                      [1, n]          single piece (1+n-alpha)/4
// Labels: "s3", "s4", "s5", "u2half" (the quarter-slope piece of the third
// family), "mid8", "mid4", "mid3" (m = n-2), "flat4" (m = n-1).
PiecewiseLinearCurve curve_m(const ProblemDims& dims);

Rat s_m_of_alpha(const ProblemDims& dims, const Rat& alpha);

struct GrandMax {
  Rat value;
  std::vector<int> argmax;  // ascending; canonical representative = front()
};

// max over m of s_m(alpha), each m contributing only on its own domain.
GrandMax s_of_alpha(int n, const Rat& alpha);

struct Theorem1Branch {
  std::string family;         // "s3", "max{s3,s4}", or "max{s3,s5}"
  Rat alpha_lo, alpha_hi;
  std::vector<int> active_m;  // m per formula, in family order (s3 first)
};

// The explicit five-case description of s(alpha) on [n/2, n]; the interval
// containing alpha (breakpoints resolve to the left interval).
Theorem1Branch theorem1_case(int n, const Rat& alpha);

// All intervals of the five-case description, ascending.
std::vector<Theorem1Branch> theorem1_branches(int n);

// Evaluates the branch family formula of `br` at alpha (max over its pieces).
Rat theorem1_eval(int n, const Theorem1Branch& br, const Rat& alpha);

// Alternative route to s3/s4/s5 through the kappa exponent dictionary
// (j = m+1, d = n+1):
//   kappa3 = (d - j/2 - alpha)/(d - j + 1)
//   kappa4 = (d - alpha)/(2(d - j + 1))
//   kappa5 = (d - alpha - 1)/(2(d - j - 1))
// returning (n - alpha + 1)/2 - kappa_i.
Rat kappa_cross_check(int i, const ProblemDims& dims, const Rat& alpha);

struct CurveRow {
  Rat alpha;
  Rat s;
  std::string branch;      // label of the winning piece
  std::vector<int> winning_m;
};

// Dense samples of s(alpha) on [alpha_lo, alpha_hi] at the given step, with
// every exact breakpoint of the grand max inserted.
std::vector<CurveRow> emit_curve(int n, const Rat& alpha_lo, const Rat& alpha_hi, const Rat& step);

}  // namespace schrodiv
