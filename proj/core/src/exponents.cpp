#include "schrodiv/exponents.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace schrodiv {

namespace {

Rat rq(long long a, long long b) { return Rat(BigInt(a), BigInt(b)); }

}  // namespace

Rat s3(const ProblemDims& dims, const Rat& alpha) {
  const long long n = dims.n, m = dims.m;
  const Rat denom(2 * (n - m + 1));
  return Rat(n) / denom + Rat(n - m - 1) * (Rat(n) - alpha) / denom;
}

Rat s4(const ProblemDims& dims, const Rat& alpha) {
  const long long n = dims.n, m = dims.m;
  return Rat(n - m) * (Rat(1 + n) - alpha) / Rat(2 * (n - m + 1));
}

Rat s5(const ProblemDims& dims, const Rat& alpha) {
  const long long n = dims.n, m = dims.m;
  if (n - m - 1 <= 0) throw std::invalid_argument("s5 undefined for m = n-1");
  return rq(1, 2) + Rat(n - m - 2) * (Rat(n) - alpha) / Rat(2 * (n - m - 1));
}

Rat beta1(const ProblemDims& dims) {
  const long long n = dims.n, m = dims.m;
  if (n - m - 3 <= 0) throw std::invalid_argument("beta1 undefined unless m < n-3");
  return Rat(n) - Rat(m - 1) * Rat(n - m - 1) / Rat(n - m - 3);
}

Rat beta2(const ProblemDims& dims) { return rq(dims.n + dims.m + 1, 2); }

std::pair<Rat, Rat> alpha_dims(const ProblemDims& dims, const Rat& u2, const Rat& u3) {
  const long long n = dims.n, m = dims.m;
  if (u2 < rq(1, 2) || u2 > u2_cap(dims) || u3 < 0 || u3 > rq(1, 2))
    throw std::invalid_argument("alpha_dims: (u2, u3) outside the closed parameter box");
  const Rat a1 = rq(m - 1, 2) + Rat(n - m + 1) * u2 + Rat(m) * u3;
  const Rat low = Rat(n - m - 3) + 4 * u2 + Rat(2 * m) * u3;
  const Rat high = Rat(n - m) + Rat(2 * m) * u3;
  // The two alpha2 expressions coincide exactly on the branch boundary.
  if (u2 == rq(3, 4) && low != high) throw std::logic_error("alpha_dims: branch mismatch at u2 = 3/4");
  return {a1, u2 <= rq(3, 4) ? low : high};
}

Rat s_from_params(const ProblemDims& dims, const Rat& u2, const Rat& u3) {
  const long long n = dims.n, m = dims.m;
  return rq(2 * n - m - 1, 4) - Rat(n - m - 1) * u2 / 2 - Rat(m) * u3 / 2;
}

Rat mtp_lower_bound(std::span<const Rat> b, std::span<const Rat> a) {
  if (a.size() != b.size() || b.empty())
    throw std::invalid_argument("mtp_lower_bound: mismatched or empty exponent vectors");
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (!(b[j] > 0 && b[j] <= 1)) throw std::invalid_argument("mtp_lower_bound: b entries must lie in (0, 1]");
    if (a[j] < 0 || a[j] > b[j]) throw std::invalid_argument("mtp_lower_bound: need 0 <= a_j <= b_j");
  }
  std::set<Rat> candidates(b.begin(), b.end());
  bool first = true;
  Rat best;
  for (const Rat& B : candidates) {
    Rat total(0);
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[j] >= B)
        total += 1;
      else if (b[j] <= B)
        total += Rat(1) - (b[j] - a[j]) / B;
      else
        total += a[j] / B;
    }
    if (first || total < best) { best = total; first = false; }
  }
  return best;
}

std::vector<Rat> slab_shrink_pattern(const ProblemDims& dims) {
  std::vector<Rat> b;
  b.push_back(rq(1, 2));
  for (int j = 0; j < dims.n - dims.m - 1; ++j) b.push_back(Rat(1));
  for (int j = 0; j < dims.m; ++j) b.push_back(rq(1, 2));
  return b;
}

std::vector<Rat> dilation_pattern(const ProblemDims& dims, const ParamVector& u) {
  DilationVector d = dilation_from_params(dims, u);
  std::vector<Rat> a;
  a.push_back(d.a1);
  for (int j = 0; j < dims.n - dims.m - 1; ++j) a.push_back(d.a2);
  for (int j = 0; j < dims.m; ++j) a.push_back(d.a3);
  return a;
}

PiecewiseLinearCurve curve_m(const ProblemDims& dims) {
  const long long n = dims.n, m = dims.m;
  std::vector<LinearPiece> pieces;
  auto add = [&pieces](Rat lo, Rat hi, Rat slope, Rat intercept, const char* label) {
    if (lo < hi) pieces.push_back({std::move(lo), std::move(hi), std::move(slope), std::move(intercept), label});
  };
  // Slope/intercept forms of the three closed-form branches.
  const Rat s3_slope = -rq(n - m - 1, 2 * (n - m + 1));
  const Rat s3_icpt = rq(n * (n - m), 2 * (n - m + 1));
  const Rat s4_slope = -rq(n - m, 2 * (n - m + 1));
  const Rat s4_icpt = rq((n - m) * (1 + n), 2 * (n - m + 1));

  if (m == n - 1) {
    add(Rat(1), Rat(n), -rq(1, 4), rq(1 + n, 4), "flat4");
  } else if (m == n - 2 && m >= 1) {
    add(Rat(1), Rat(2), -rq(1, 8), rq(2 * n + 1, 8), "mid8");
    add(Rat(2), Rat(n) - rq(1, 2), -rq(1, 4), rq(3, 8) + rq(n, 4), "mid4");
    add(Rat(n) - rq(1, 2), Rat(n), -rq(1, 3), rq(n + 1, 3), "mid3");
  } else if (m == 0 || 3 * m <= n - 1) {
    add(rq(n, 2), Rat(n - m), s3_slope, s3_icpt, "s3");
    add(Rat(n - m), Rat(n), s4_slope, s4_icpt, "s4");
  } else {
    const Rat s5_slope = -rq(n - m - 2, 2 * (n - m - 1));
    const Rat s5_icpt = rq(1, 2) + rq(n * (n - m - 2), 2 * (n - m - 1));
    const Rat b2 = beta2(dims);
    if (2 * m <= n - 2) {
      const Rat b1 = beta1(dims);
      add(rq(n, 2), b1, s3_slope, s3_icpt, "s3");
      add(b1, b2, s5_slope, s5_icpt, "s5");
    } else {
      // n/2 - 1 < m <= n-3: the low-alpha piece has slope -1/4 and joins s5
      // at alpha = m+1.
      add(Rat(n - m - 1), Rat(m + 1), -rq(1, 4), rq(2 * n - m - 1, 4), "u2half");
      add(Rat(m + 1), b2, s5_slope, s5_icpt, "s5");
    }
    add(b2, Rat(n), s4_slope, s4_icpt, "s4");
  }
  return PiecewiseLinearCurve(std::move(pieces));
}

Rat s_m_of_alpha(const ProblemDims& dims, const Rat& alpha) {
  return curve_m(dims).eval(alpha);
}

GrandMax s_of_alpha(int n, const Rat& alpha) {
  GrandMax out;
  bool first = true;
  for (int m = 0; m <= n - 1; ++m) {
    ProblemDims dims(n, m);
    PiecewiseLinearCurve curve = curve_m(dims);
    if (!curve.contains(alpha)) continue;
    Rat v = curve.eval(alpha);
    if (first || v > out.value) {
      out.value = v;
      out.argmax.clear();
      out.argmax.push_back(m);
      first = false;
    } else if (v == out.value) {
      out.argmax.push_back(m);
    }
  }
  if (first) throw std::invalid_argument("s_of_alpha: alpha outside every branch domain");
  return out;
}

std::vector<Theorem1Branch> theorem1_branches(int n) {
  ProblemDims probe(n, 0);
  const int m0 = probe.m0(), m1 = probe.m1();
  std::vector<Theorem1Branch> out;
  auto add = [&out](Rat lo, Rat hi, std::string family, std::vector<int> ms) {
    if (lo < hi) out.push_back({std::move(family), std::move(lo), std::move(hi), std::move(ms)});
  };
  auto b1 = [n](int m) { return beta1(ProblemDims(n, m)); };

  if (n <= 7) {
    add(rq(n, 2), Rat(n - m0), "s3", {m0});
  } else if (n <= 11 || n == 13) {
    add(rq(n, 2), b1(m0 + 1), "s3", {m0 + 1});
    add(b1(m0 + 1), Rat(n - m0), "max{s3,s5}", {m0, m0 + 1});
  } else if (n % 2 == 0) {
    for (int m = m1; m >= m0 + 2; --m)
      add(b1(m), b1(m - 1), "max{s3,s5}", {m - 1, m});
    add(b1(m0 + 1), Rat(n - m0), "max{s3,s5}", {m0, m0 + 1});
  } else {
    add(rq(n, 2), b1(m1), "s3", {m1});
    for (int m = m1; m >= m0 + 2; --m)
      add(b1(m), b1(m - 1), "max{s3,s5}", {m - 1, m});
    add(b1(m0 + 1), Rat(n - m0), "max{s3,s5}", {m0, m0 + 1});
  }
  // Shared staircase max{s3,m-1, s4,m} on [n-m, n-m+1] for m = m0..1.
  for (int m = m0; m >= 1; --m)
    add(Rat(n - m), Rat(n - m + 1), "max{s3,s4}", {m - 1, m});
  return out;
}

Theorem1Branch theorem1_case(int n, const Rat& alpha) {
  auto branches = theorem1_branches(n);
  if (alpha < branches.front().alpha_lo || alpha > branches.back().alpha_hi)
    throw std::invalid_argument("theorem1_case: alpha outside [n/2, n]");
  for (const auto& br : branches)
    if (alpha <= br.alpha_hi) return br;
  return branches.back();
}

Rat theorem1_eval(int n, const Theorem1Branch& br, const Rat& alpha) {
  if (br.family == "s3") return s3(ProblemDims(n, br.active_m.at(0)), alpha);
  if (br.family == "max{s3,s5}") {
    Rat a = s3(ProblemDims(n, br.active_m.at(0)), alpha);
    Rat b = s5(ProblemDims(n, br.active_m.at(1)), alpha);
    return std::max(a, b);
  }
  if (br.family == "max{s3,s4}") {
    Rat a = s3(ProblemDims(n, br.active_m.at(0)), alpha);
    Rat b = s4(ProblemDims(n, br.active_m.at(1)), alpha);
    return std::max(a, b);
  }
  throw std::logic_error("theorem1_eval: unknown family " + br.family);
}

Rat kappa_cross_check(int i, const ProblemDims& dims, const Rat& alpha) {
  const long long j = dims.m + 1, d = dims.n + 1;
  Rat kappa;
  switch (i) {
    case 3:
      kappa = (Rat(d) - rq(j, 2) - alpha) / Rat(d - j + 1);
      break;
    case 4:
      kappa = (Rat(d) - alpha) / Rat(2 * (d - j + 1));
      break;
    case 5:
      if (d - j - 1 == 0) throw std::invalid_argument("kappa5 undefined for m = n-1");
      kappa = (Rat(d) - alpha - 1) / Rat(2 * (d - j - 1));
      break;
    default:
      throw std::invalid_argument("kappa index must be 3, 4, or 5");
  }
  return (Rat(dims.n) - alpha + 1) / 2 - kappa;
}

std::vector<CurveRow> emit_curve(int n, const Rat& alpha_lo, const Rat& alpha_hi, const Rat& step) {
  if (step <= 0) throw std::invalid_argument("emit_curve: step must be positive");
  if (alpha_lo >= alpha_hi) throw std::invalid_argument("emit_curve: empty alpha range");
  std::set<Rat> grid;
  for (Rat a = alpha_lo; a < alpha_hi; a += step) grid.insert(a);
  grid.insert(alpha_hi);
  for (int m = 0; m <= n - 1; ++m)
    for (const Rat& bp : curve_m(ProblemDims(n, m)).breakpoints())
      if (bp >= alpha_lo && bp <= alpha_hi) grid.insert(bp);

  std::vector<CurveRow> rows;
  rows.reserve(grid.size());
  for (const Rat& a : grid) {
    GrandMax g = s_of_alpha(n, a);
    CurveRow row;
    row.alpha = a;
    row.s = g.value;
    row.winning_m = g.argmax;
    row.branch = curve_m(ProblemDims(n, g.argmax.front())).piece_at(a).label;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace schrodiv
