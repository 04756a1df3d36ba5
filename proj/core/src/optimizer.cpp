#include "schrodiv/optimizer.hpp"

#include <set>
#include <stdexcept>

namespace schrodiv {

namespace {

const char* kBranchNames[] = {"alpha1", "alpha2lo", "alpha2hi"};

}  // namespace

std::optional<SliceMax> exact_max_on_slice(const ProblemDims& dims, const Rat& alpha,
                                           int u2_grid) {
  if (u2_grid < 1) throw std::invalid_argument("exact_max_on_slice: u2_grid must be >= 1");
  const long long n = dims.n, m = dims.m;
  const Rat half(1, 2), threeq(3, 4), one_half_u3(1, 2);
  const Rat cap = u2_cap(dims);

  auto a1_of = [&](const Rat& u2, const Rat& u3) {
    return Rat(m - 1) / 2 + Rat(n - m + 1) * u2 + Rat(m) * u3;
  };
  auto a2_of = [&](const Rat& u2, const Rat& u3) {
    return u2 <= threeq ? Rat(n - m - 3) + 4 * u2 + Rat(2 * m) * u3
                        : Rat(n - m) + Rat(2 * m) * u3;
  };

  // Base grid over [1/2, 1] clipped to [1/2, cap], plus the corners and the
  // exactly solved candidate u2 values for this alpha.
  std::set<Rat> u2s{half, cap};
  if (threeq < cap) u2s.insert(threeq);
  for (int k = 1; k < u2_grid; ++k) {
    Rat u2 = half + Rat(k, 2LL * u2_grid);
    if (u2 < cap) u2s.insert(u2);
  }
  auto propose = [&](const Rat& u2) {
    if (u2 >= half && u2 <= cap) u2s.insert(u2);
  };
  if (m == 0) {
    propose((alpha + half) / Rat(n + 1));      // alpha1 = alpha
    propose((alpha - Rat(n - 3)) / 4);         // alpha2 (low branch) = alpha
  } else {
    const Rat mhalf = Rat(m - 1) / 2;
    propose((alpha - mhalf) / Rat(n - m + 1));                     // alpha1 = alpha, u3 = 0
    propose((alpha - mhalf - Rat(m) / 2) / Rat(n - m + 1));        // alpha1 = alpha, u3 = 1/2
    propose((alpha - Rat(n - m - 3)) / 4);                         // alpha2lo = alpha, u3 = 0
    propose((alpha - Rat(n - m - 3) - Rat(m)) / 4);                // alpha2lo = alpha, u3 = 1/2
    if (n - m - 1 > 0)
      propose((alpha + Rat(n - 2 * m - 2)) / Rat(2 * (n - m - 1)));  // alpha1 = alpha2lo = alpha
    propose((alpha + Rat(n - 2 * m + 1)) / Rat(2 * (n - m + 1)));  // alpha1 = alpha2hi = alpha
  }

  std::optional<SliceMax> best;
  auto consider = [&](const Rat& u2, const Rat& u3, int branch) {
    if (u3 < 0 || u3 > one_half_u3) return;
    Rat a1 = a1_of(u2, u3), a2 = a2_of(u2, u3);
    if ((a1 <= a2 ? a1 : a2) != alpha) return;
    Rat s = s_from_params(dims, u2, u3);
    if (!best || s > best->value) best = SliceMax{s, u2, u3, kBranchNames[branch]};
  };
  for (const Rat& u2 : u2s) {
    if (m == 0) {
      consider(u2, Rat(0), a1_of(u2, Rat(0)) <= a2_of(u2, Rat(0)) ? 0 : (u2 <= threeq ? 1 : 2));
      continue;
    }
    // Solve u3 on each active-constraint branch and validate exactly.
    consider(u2, (alpha - Rat(m - 1) / 2 - Rat(n - m + 1) * u2) / Rat(m), 0);
    if (u2 <= threeq) consider(u2, (alpha - Rat(n - m - 3) - 4 * u2) / Rat(2 * m), 1);
    if (u2 >= threeq) consider(u2, (alpha - Rat(n - m)) / Rat(2 * m), 2);
  }
  return best;
}

PiecewiseReport verify_piecewise(const ProblemDims& dims, int alpha_steps, int u2_grid) {
  if (alpha_steps < 1) throw std::invalid_argument("verify_piecewise: alpha_steps must be >= 1");
  PiecewiseLinearCurve curve = curve_m(dims);
  const Rat lo = curve.domain_lo(), hi = curve.domain_hi();
  std::set<Rat> grid;
  for (int k = 0; k <= alpha_steps; ++k) grid.insert(lo + Rat(k) * (hi - lo) / alpha_steps);
  for (const Rat& bp : curve.breakpoints()) grid.insert(bp);

  PiecewiseReport report;
  report.max_deviation = Rat(0);
  report.worst_alpha = lo;
  for (const Rat& alpha : grid) {
    auto oracle = exact_max_on_slice(dims, alpha, u2_grid);
    if (!oracle)
      throw std::logic_error("verify_piecewise: empty slice inside the curve domain");
    Rat dev = abs_rat(oracle->value - curve.eval(alpha));
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_alpha = alpha;
    }
    ++report.points;
  }
  return report;
}

GrandMax grand_max_oracle(int n, const Rat& alpha, int u2_grid) {
  GrandMax out;
  bool first = true;
  for (int m = 0; m <= n - 1; ++m) {
    auto slice = exact_max_on_slice(ProblemDims(n, m), alpha, u2_grid);
    if (!slice) continue;
    if (first || slice->value > out.value) {
      out.value = slice->value;
      out.argmax.assign(1, m);
      first = false;
    } else if (slice->value == out.value) {
      out.argmax.push_back(m);
    }
  }
  if (first) throw std::invalid_argument("grand_max_oracle: alpha not attainable for any m");
  return out;
}

}  // namespace schrodiv
