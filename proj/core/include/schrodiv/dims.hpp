// Problem dimensions (n, m), the geometric parameter vector u = (u1, u2, u3),
// its feasibility region, and the per-axis dilation exponents a = (a1, a2, a3)
// derived from u.
//
// Feasible region for u (all inequalities exact rational):
//   0 < u1 <= 1/2,  0 < u2 <= 1,  0 < u3 <= 1/2,
//   2*u2 - u1 >= 1,  u2 - u1 < 1/2,  (n-m+1)*u2 <= n-m+1/2.
// The closure points u3 = 0, u2 = 1/2 (which force u1 = 0, u2 - u1 = 1/2) are
// admitted as "boundary-feasible": the optimization over the region attains its
// maximum there.
#pragma once

#include "schrodiv/rational.hpp"

#include <string>
#include <vector>

namespace schrodiv {

struct ProblemDims {
  int n = 2;  // ambient dimension, n >= 2
  int m = 0;  // intermediate block dimension, 0 <= m <= n-1

  ProblemDims(int n_, int m_);

  // Largest m with 3m <= n-1, and largest m with 2m <= n-2.
  int m0() const { return (n - 1) / 3; }
  int m1() const { return (n - 2) / 2; }
};

struct ParamVector {
  Rat u1, u2, u3;
};

struct FeasibilityReport {
  bool feasible = false;           // strictly inside the region
  bool boundary_feasible = false;  // on the admitted closure only
  std::vector<std::string> violated;
  bool dilation_exists = false;
};

struct DilationVector {
  Rat a1, a2, a3;
};

// Checks every constraint; lists violated ones by name. A point in the closure
// of the region that is not strictly feasible is reported boundary-feasible.
FeasibilityReport check_params(const ProblemDims& dims, const ParamVector& u);

// The extremal dilation exponents compatible with u:
//   a3 = u3;  a1 + (n-m-1)*a2 = (n-m+1)*u2 - 1,
//   u2 >= 3/4: a1 = 1/2, a2 = ((n-m+1)*u2 - 3/2)/(n-m-1)
//   u2 <= 3/4: a1 = 2*u2 - 1, a2 = u2.
// Throws std::invalid_argument when u is infeasible or no dilation exists
// (m = n-1 with u2 > 3/4).
DilationVector dilation_from_params(const ProblemDims& dims, const ParamVector& u);

// Upper bound for u2: 1 - 1/(2(n-m+1)).
Rat u2_cap(const ProblemDims& dims);

// The evolution modules fix u1 maximal: min(1/2, 2*u2 - 1).
Rat default_u1(const Rat& u2);

}  // namespace schrodiv
