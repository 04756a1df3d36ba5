#include "schrodiv/dims.hpp"

#include <stdexcept>

namespace schrodiv {

ProblemDims::ProblemDims(int n_, int m_) : n(n_), m(m_) {
  if (n < 2) throw std::invalid_argument("ambient dimension n must be >= 2");
  if (m < 0 || m > n - 1) throw std::invalid_argument("block dimension m must satisfy 0 <= m <= n-1");
}

Rat u2_cap(const ProblemDims& dims) {
  return Rat(1) - Rat(BigInt(1), BigInt(2 * (dims.n - dims.m + 1)));
}

Rat default_u1(const Rat& u2) {
  Rat talbot = 2 * u2 - 1;
  return talbot < Rat(1, 2) ? talbot : Rat(1, 2);
}

FeasibilityReport check_params(const ProblemDims& dims, const ParamVector& u) {
  FeasibilityReport rep;
  const Rat half(1, 2);
  const Rat cap = u2_cap(dims);

  struct Constraint {
    const char* name;
    bool strict_ok;
    bool closure_ok;
  };
  const Constraint constraints[] = {
      {"u1>0", u.u1 > 0, u.u1 >= 0},
      {"u1<=1/2", u.u1 <= half, u.u1 <= half},
      {"u2>0", u.u2 > 0, u.u2 > 0},
      {"u2<=1", u.u2 <= 1, u.u2 <= 1},
      {"u3>0", u.u3 > 0, u.u3 >= 0},
      {"u3<=1/2", u.u3 <= half, u.u3 <= half},
      {"2u2-u1>=1", 2 * u.u2 - u.u1 >= 1, 2 * u.u2 - u.u1 >= 1},
      {"u2-u1<1/2", u.u2 - u.u1 < half, u.u2 - u.u1 <= half},
      {"(n-m+1)u2<=n-m+1/2", u.u2 <= cap, u.u2 <= cap},
  };

  bool strict = true, closure = true;
  for (const auto& c : constraints) {
    strict = strict && c.strict_ok;
    closure = closure && c.closure_ok;
    if (!c.strict_ok) rep.violated.push_back(c.name);
  }
  rep.feasible = strict;
  rep.boundary_feasible = !strict && closure;
  if (strict || closure) {
    // m = n-1 leaves a single dilation equation a1 = 2u2-1, solvable only up
    // to a1 <= 1/2, i.e. u2 <= 3/4.
    rep.dilation_exists = (dims.m < dims.n - 1) || (u.u2 <= Rat(3, 4));
  }
  return rep;
}

DilationVector dilation_from_params(const ProblemDims& dims, const ParamVector& u) {
  FeasibilityReport rep = check_params(dims, u);
  if (!rep.feasible && !rep.boundary_feasible)
    throw std::invalid_argument("dilation_from_params: infeasible parameter vector");
  if (!rep.dilation_exists)
    throw std::invalid_argument("dilation_from_params: no dilation exists for m=n-1 with u2 > 3/4");

  const Rat threequarters(3, 4);
  DilationVector a;
  a.a3 = u.u3;
  if (u.u2 >= threequarters && dims.m < dims.n - 1) {
    a.a1 = Rat(1, 2);
    a.a2 = (Rat(dims.n - dims.m + 1) * u.u2 - Rat(3, 2)) / Rat(dims.n - dims.m - 1);
  } else {
    a.a1 = 2 * u.u2 - 1;
    a.a2 = u.u2;  // meaningful only when m < n-1
  }

  // Internal consistency: the extremal solution satisfies all box constraints.
  if (a.a1 < u.u1 || a.a1 > Rat(1, 2) || a.a2 < u.u2 || a.a2 > 1)
    throw std::logic_error("dilation_from_params: extremal solution escaped its box");
  if (dims.m < dims.n - 1) {
    Rat lhs = a.a1 + Rat(dims.n - dims.m - 1) * a.a2;
    Rat rhs = Rat(dims.n - dims.m + 1) * u.u2 - 1;
    if (lhs != rhs) throw std::logic_error("dilation_from_params: linear constraint violated");
  }
  return a;
}

}  // namespace schrodiv
