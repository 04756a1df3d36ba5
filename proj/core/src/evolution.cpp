#include "schrodiv/evolution.hpp"

#include "schrodiv/errors.hpp"
#include "schrodiv/exponents.hpp"
#include "schrodiv/slabs.hpp"
#include "schrodiv/stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace schrodiv {

namespace {

// e(z) = exp(2 pi i z), argument reduced mod 1 before the trig calls so
// large lattice phases keep full precision.
std::complex<double> cis(double z) {
  double r = z - std::round(z);
  double a = 2.0 * std::numbers::pi * r;
  return {std::cos(a), std::sin(a)};
}

std::int64_t lattice_halfcount(double width, double spacing) {
  return static_cast<std::int64_t>(std::floor(width / spacing));
}

}  // namespace

double bump(double x, double c) {
  double t = x / c;
  double arg = 1.0 - t * t;
  if (arg <= 1e-12) return 0.0;
  return std::exp(1.0 - 1.0 / arg);  // normalized so bump(0, c) = 1
}

double bump_l2(double c) {
  const int nodes = 1 << 14;
  const double h = 2.0 * c / nodes;
  double sum = 0;
  for (int i = 1; i < nodes; ++i) {
    double w = bump(-c + i * h, c);
    sum += w * w;
  }
  return std::sqrt(sum * h);
}

std::complex<double> oscillatory_bump_integral(double y, double tau,
                                               const QuadratureControl& ctrl) {
  const double c = ctrl.c;
  auto f = [&](double xi) { return bump(xi, c) * cis(xi * y + tau * xi * xi); };

  // total phase variation across the support, in cycles
  double cycles = std::abs(y) * 2.0 * c + std::abs(tau) * c * c;
  int nodes = ctrl.min_nodes;
  while (nodes < 8.0 * cycles && nodes < ctrl.max_nodes) nodes *= 2;

  double h = 2.0 * c / nodes;
  std::complex<double> sum = 0;  // endpoints vanish with the bump
  for (int i = 1; i < nodes; ++i) sum += f(-c + i * h);
  std::complex<double> integral = sum * h;
  while (nodes < ctrl.max_nodes) {
    std::complex<double> odd = 0;
    for (int i = 0; i < nodes; ++i) odd += f(-c + (i + 0.5) * h);
    nodes *= 2;
    h *= 0.5;
    std::complex<double> next = integral * 0.5 + odd * h;
    bool done = std::abs(next - integral) <= ctrl.rel_tol * std::abs(next) + 1e-14;
    integral = next;
    if (done) break;
  }
  return integral;
}

std::complex<double> evolve_g(double x1, double t, double R, const QuadratureControl& ctrl) {
  double sr = std::sqrt(R);
  return sr * oscillatory_bump_integral(sr * (x1 + 2.0 * t * R), t * R, ctrl);
}

std::complex<double> evolve_h1(double x, double t, double D1, double R,
                               const QuadratureControl& ctrl) {
  const std::int64_t L = lattice_halfcount(ctrl.c * R, D1);
  std::complex<double> sum = 0;
  for (std::int64_t l = -L; l <= L; ++l) {
    double psi = bump(static_cast<double>(l) * D1 / R, ctrl.c);
    if (psi == 0.0) continue;
    double fl = static_cast<double>(l);
    std::complex<double> ph = cis(D1 * x * fl + t * D1 * D1 * fl * fl);
    sum += psi * ph * oscillatory_bump_integral(x + 2.0 * t * D1 * fl, t, ctrl);
  }
  return sum;
}

std::complex<double> evolve_h2(double x, double t, double D2, double R,
                               const QuadratureControl& ctrl) {
  const std::int64_t L = lattice_halfcount(ctrl.c * std::sqrt(R), D2);
  std::complex<double> sum = 0;
  for (std::int64_t l = -L; l <= L; ++l) {
    double fl = static_cast<double>(l);
    std::complex<double> ph = cis(D2 * x * fl + t * D2 * D2 * fl * fl);
    sum += ph * oscillatory_bump_integral(x + 2.0 * t * D2 * fl, t, ctrl);
  }
  return sum;
}

std::complex<double> solution_at(const ProblemDims& dims, const ParamVector& u, double R,
                                 std::span<const double> x, double t,
                                 const QuadratureControl& ctrl) {
  const int n = dims.n, m = dims.m;
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("solution_at: point dimension mismatch");
  SlabConfig cfg{dims, u, R, SlabFamily::Talbot};
  const double D1 = cfg.D1(), D2 = cfg.D2();
  std::complex<double> value = evolve_g(x[0], t, R, ctrl);
  for (int j = 1; j <= n - m - 1; ++j)
    value *= evolve_h1(x[static_cast<std::size_t>(j)], t, D1, R, ctrl);
  for (int j = n - m; j < n; ++j)
    value *= evolve_h2(x[static_cast<std::size_t>(j)], t, D2, R, ctrl);
  return value;
}

double datum_norm(const ProblemDims& dims, const ParamVector& u, double R,
                  const QuadratureControl& ctrl) {
  const int n = dims.n, m = dims.m;
  SlabConfig cfg{dims, u, R, SlabFamily::Talbot};
  const double D1 = cfg.D1(), D2 = cfg.D2();
  const double w2 = bump_l2(ctrl.c);
  double norm = std::pow(R, 0.25) * w2;
  if (n - m - 1 > 0) {
    const std::int64_t L1 = lattice_halfcount(ctrl.c * R, D1);
    double psi2 = 0;
    for (std::int64_t l = -L1; l <= L1; ++l) {
      double psi = bump(static_cast<double>(l) * D1 / R, ctrl.c);
      psi2 += psi * psi;
    }
    for (int j = 0; j < n - m - 1; ++j) norm *= std::sqrt(psi2) * w2;
  }
  if (m > 0) {
    const std::int64_t L2 = lattice_halfcount(ctrl.c * std::sqrt(R), D2);
    for (int j = 0; j < m; ++j) norm *= std::sqrt(static_cast<double>(2 * L2 + 1)) * w2;
  }
  return norm;
}

double normalized_magnitude(const ProblemDims& dims, const ParamVector& u, double R,
                            std::span<const double> x, double t,
                            const QuadratureControl& ctrl) {
  return std::abs(solution_at(dims, u, R, x, t, ctrl)) / datum_norm(dims, u, R, ctrl);
}

double hs_norm_ratio(const ProblemDims& dims, const ParamVector& u, double R, double s,
                     const QuadratureControl& ctrl) {
  const int n = dims.n, m = dims.m;
  SlabConfig cfg{dims, u, R, SlabFamily::Talbot};
  const double D1 = cfg.D1(), D2 = cfg.D2();
  const std::int64_t L1 = n - m - 1 > 0 ? lattice_halfcount(ctrl.c * R, D1) : 0;
  const std::int64_t L2 = m > 0 ? lattice_halfcount(ctrl.c * std::sqrt(R), D2) : 0;
  const int axes = (n - m - 1) + m;
  cost_guard("hs_norm_ratio",
             std::pow(static_cast<double>(2 * std::max(L1, L2) + 1), axes), 1e7);

  // Odometer over the mid/last lattice multi-indices; per-bump mass is the
  // product of squared envelope weights (g and h2 bumps have unit weight).
  std::vector<std::int64_t> idx(static_cast<std::size_t>(axes));
  for (int j = 0; j < axes; ++j)
    idx[static_cast<std::size_t>(j)] = j < n - m - 1 ? -L1 : -L2;
  double num = 0, den = 0;
  for (;;) {
    double mass = 1, fsq = R * R;
    for (int j = 0; j < axes; ++j) {
      double fl = static_cast<double>(idx[static_cast<std::size_t>(j)]);
      if (j < n - m - 1) {
        double psi = bump(fl * D1 / R, ctrl.c);
        mass *= psi * psi;
        fsq += (D1 * fl) * (D1 * fl);
      } else {
        fsq += (D2 * fl) * (D2 * fl);
      }
    }
    if (mass > 0) {
      num += mass * std::pow(1.0 + fsq, s);
      den += mass;
    }
    int j = axes - 1;
    while (j >= 0) {
      auto& v = idx[static_cast<std::size_t>(j)];
      std::int64_t hi = j < n - m - 1 ? L1 : L2;
      if (++v <= hi) break;
      v = j < n - m - 1 ? -L1 : -L2;
      --j;
    }
    if (j < 0) break;
    if (axes == 0) break;
  }
  if (axes == 0) {
    num = std::pow(1.0 + R * R, s);
    den = 1;
  }
  return std::sqrt(num / den) / std::pow(R, s);
}

SlopeFit slope_fit(const ProblemDims& dims, const ParamVector& u, int j_lo, int j_hi,
                   const QuadratureControl& ctrl) {
  if (j_hi < j_lo + 1) throw std::invalid_argument("slope_fit: need at least 2 scales");
  SlopeFit out;
  const SlabFamily family = dims.m == dims.n - 1 ? SlabFamily::Degenerate : SlabFamily::Talbot;
  std::vector<double> xs, ys;
  for (int j = j_lo; j <= j_hi; ++j) {
    const double R = std::ldexp(1.0, j);
    SlabPoint pt = select_slab_point(SlabConfig{dims, u, R, family});
    double mag = normalized_magnitude(dims, u, R, pt.x, pt.t, ctrl);
    out.scales.push_back(j);
    out.log2_mag.push_back(std::log2(mag));
    xs.push_back(static_cast<double>(j));
    ys.push_back(out.log2_mag.back());
  }
  LineFit fit = least_squares_fit(xs, ys);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  return out;
}

double off_scale_decay(const ProblemDims& dims, const ParamVector& u, int base_k, int j,
                       const QuadratureControl& ctrl) {
  const SlabFamily family = dims.m == dims.n - 1 ? SlabFamily::Degenerate : SlabFamily::Talbot;
  SlabPoint pt = select_slab_point(SlabConfig{dims, u, std::ldexp(1.0, base_k), family});
  return normalized_magnitude(dims, u, std::ldexp(1.0, j), pt.x, pt.t, ctrl);
}

double dyadic_partial_sum(const ProblemDims& dims, const ParamVector& u, int k0, int k_max,
                          int eval_k, const QuadratureControl& ctrl) {
  if (k0 < 1 || k_max < k0 || k_max > k0 + 8)
    throw std::invalid_argument("dyadic_partial_sum: need 1 <= k0 <= k_max <= k0 + 8");
  const SlabFamily family = dims.m == dims.n - 1 ? SlabFamily::Degenerate : SlabFamily::Talbot;
  SlabPoint pt = select_slab_point(SlabConfig{dims, u, std::ldexp(1.0, eval_k), family});
  const double s = to_double(s_from_params(dims, u.u2, u.u3));
  std::complex<double> acc = 0;
  for (int j = k0; j <= k_max; ++j) {
    const double Rj = std::ldexp(1.0, j);
    std::complex<double> Sj = solution_at(dims, u, Rj, pt.x, pt.t, ctrl);
    acc += static_cast<double>(j) * Sj / (std::pow(Rj, s) * datum_norm(dims, u, Rj, ctrl));
  }
  return std::abs(acc);
}

}  // namespace schrodiv
