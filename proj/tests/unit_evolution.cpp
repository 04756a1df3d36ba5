// Evolved wave packets: the bump profile and its oscillatory integral
// against an independent midpoint-rule oracle, lattice-factor exactness at
// time zero, norm factorization, Sobolev quotients, and the dyadic-scale
// diagnostics on the cheap degenerate family.
#include <doctest.h>

#include <schrodiv/evolution.hpp>
#include <schrodiv/exponents.hpp>
#include <schrodiv/slabs.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

using namespace schrodiv;

TEST_CASE("bump profile values") {
  CHECK(bump(0.0, 0.1) == 1.0);
  CHECK(bump(0.05, 0.1) == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-12));
  CHECK(bump(0.1, 0.1) == 0.0);
  CHECK(bump(-0.1, 0.1) == 0.0);
  CHECK(bump(0.2, 0.1) == 0.0);
  CHECK(bump(0.031, 0.1) == bump(-0.031, 0.1));
  CHECK(bump(0.0, 0.02) == 1.0);
}

TEST_CASE("bump integrals match the midpoint-rule oracle") {
  // Oracle: 1e7-node midpoint rule in long double (the library refines a
  // trapezoid rule in double, so this is an independent evaluation).
  CHECK(std::abs(oscillatory_bump_integral(0, 0) -
                 std::complex<double>(0.120690032243788, 0.0)) < 5e-9);
  CHECK(std::abs(bump_l2(0.1) - 0.313589032479251) < 5e-9);
  CHECK(std::abs(oscillatory_bump_integral(3.0, 0.5) -
                 std::complex<double>(0.0899834362845185, 0.000285977944767922)) < 5e-9);
  CHECK(std::abs(std::abs(oscillatory_bump_integral(25.0, 0.0)) - 0.000677739055151388) < 1e-9);
  CHECK(std::abs(oscillatory_bump_integral(0.0, 40.0) -
                 std::complex<double>(0.102665069194019, 0.0412027663052801)) < 5e-9);
}

TEST_CASE("bump integral symmetries") {
  // Even real profile: I(y, 0) is real and I(-y, -tau) = conj I(y, tau).
  CHECK(std::abs(oscillatory_bump_integral(7.3, 0.0).imag()) < 1e-12);
  for (auto [y, tau] : {std::pair{2.0, 0.3}, {11.0, 4.0}, {0.5, -2.0}}) {
    const auto fwd = oscillatory_bump_integral(y, tau);
    const auto rev = oscillatory_bump_integral(-y, -tau);
    CHECK(std::abs(rev - std::conj(fwd)) < 1e-10);
  }
}

TEST_CASE("tighter quadrature control does not move the values") {
  const QuadratureControl tight{0.1, 1e-11, 4096, 1 << 22};
  for (auto [y, tau] : {std::pair{0.0, 0.0}, {3.0, 0.5}, {40.0, 12.0}}) {
    const auto coarse = oscillatory_bump_integral(y, tau);
    const auto fine = oscillatory_bump_integral(y, tau, tight);
    CHECK(std::abs(coarse - fine) < 1e-7 * std::max(1e-3, std::abs(fine)));
  }
}

TEST_CASE("evolved packet magnitude factorization") {
  const double R = 1024.0, x1 = 0.5, t = -x1 / (2.0 * R);
  // At the bright position x1 = -2tR the frequency shift vanishes.
  const double mag = std::abs(evolve_g(x1, t, R));
  const double want = std::sqrt(R) * std::abs(oscillatory_bump_integral(0.0, t * R));
  CHECK(mag == doctest::Approx(want).epsilon(1e-9));
  // Away from the bright position the magnitude drops.
  CHECK(std::abs(evolve_g(x1 + 0.3, t, R)) < 0.2 * mag);
}

TEST_CASE("lattice factor at time zero counts its bumps") {
  // At t = 0 every lattice bump contributes the same integral, so the
  // value is an exact integer multiple of I(0,0).
  const double R = 16384.0, D2 = 4.0;  // floor(0.1 * 128 / 4) = 3 lattice sites each side
  const auto h2 = evolve_h2(0.0, 0.0, D2, R);
  const auto unit = oscillatory_bump_integral(0.0, 0.0);
  CHECK(std::abs(h2 / unit - 7.0) < 1e-9);
}

TEST_CASE("middle factor at time zero matches its envelope sum") {
  const double R = 4096.0, D1 = 512.0;  // sites at |l| <= floor(0.1 * 4096 / 512) = 0
  const auto h1 = evolve_h1(0.0, 0.0, D1, R);
  const auto unit = oscillatory_bump_integral(0.0, 0.0);
  CHECK(std::abs(h1 / unit - 1.0) < 1e-9);
  const double R2 = 65536.0, D1b = 4096.0;  // floor(0.1 * 65536 / 4096) = 1
  double envelope = 0.0;
  for (int l = -1; l <= 1; ++l) envelope += bump(static_cast<double>(l) * D1b / R2, 0.1);
  const auto h1b = evolve_h1(0.0, 0.0, D1b, R2);
  CHECK(std::abs(h1b / unit - envelope) < 1e-9);
}

TEST_CASE("datum norm factorizes over the axes") {
  const double w2 = bump_l2(0.1);
  {
    // (2,1): no middle axes, D2 = 4096^(1/4) = 8, no extra lattice sites.
    const double norm = datum_norm({2, 1}, {rat(1, 2), rat(3, 4), rat(1, 4)}, 4096.0);
    CHECK(norm == doctest::Approx(std::pow(4096.0, 0.25) * w2 * w2).epsilon(1e-12));
  }
  {
    // (3,1) at R = 2^16 with u = (1/2, 3/4, 1/4): D1 = R^(3/4) = 4096 so
    // floor(0.1 R / D1) = 1 envelope site each side; D2 = 2^4 gives
    // floor(0.1 sqrt(R) / D2) = 1 unit-weight site each side.
    const double R = 65536.0, D1 = 4096.0;
    double psi2 = 0.0;
    for (int l = -1; l <= 1; ++l) {
      const double psi = bump(static_cast<double>(l) * D1 / R, 0.1);
      psi2 += psi * psi;
    }
    const double norm = datum_norm({3, 1}, {rat(1, 2), rat(3, 4), rat(1, 4)}, R);
    const double want = std::pow(R, 0.25) * w2 * std::sqrt(psi2) * w2 * std::sqrt(3.0) * w2;
    CHECK(norm == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("solution factorizes into its axis factors") {
  const ProblemDims d{3, 1};
  const ParamVector u{rat(1, 4), rat(3, 4), rat(1, 4)};
  const double R = 4096.0;
  const SlabConfig cfg{d, u, R, SlabFamily::Talbot};
  const std::vector<double> x{0.4, 0.3, 0.55};
  const double t = 1.0 / (4.0 * R);
  const auto whole = solution_at(d, u, R, x, t);
  const auto parts = evolve_g(x[0], t, R) * evolve_h1(x[1], t, cfg.D1(), R) *
                     evolve_h2(x[2], t, cfg.D2(), R);
  CHECK(std::abs(whole - parts) < 1e-12 * std::max(1.0, std::abs(parts)));
}

TEST_CASE("Sobolev quotient pins") {
  const ProblemDims d{2, 1};
  const ParamVector u{rat(1, 2), rat(3, 4), rat(1, 4)};
  CHECK(hs_norm_ratio(d, u, 4096.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  // The datum's frequencies sit at distance ~R, so the weight cancels the
  // R^s normalization almost exactly.
  for (double s : {0.5, 1.0})
    CHECK(std::abs(hs_norm_ratio(d, u, 4096.0, s) - 1.0) < 1e-4);
  const double r1 = hs_norm_ratio({3, 1}, {rat(1, 4), rat(3, 4), rat(1, 4)}, 16384.0, 0.5);
  CHECK(std::abs(r1 - 1.0) < 1e-2);
}

TEST_CASE("slope fit recovers the parameter exponent on the degenerate family") {
  // The magnitude is normalized by the L2 norm, so against the R^s Sobolev
  // normalization it grows like R^+s at the selected points.
  const ProblemDims d{2, 1};
  const ParamVector u{rat(1, 2), rat(3, 4), rat(1, 16)};
  const SlopeFit fit = slope_fit(d, u, 10, 14);
  const double s = to_double(s_from_params(d, u.u2, u.u3));  // 15/32
  CHECK(s == doctest::Approx(15.0 / 32.0));
  CHECK(std::abs(fit.slope - s) < 0.1);
  CHECK(fit.scales.size() == 5);
  CHECK(fit.log2_mag.size() == 5);
}

TEST_CASE("off-scale terms are small at coarser-than-datum scales") {
  // Evaluating a higher-frequency datum at a lower scale's point leaves
  // the packet far outside its bright set. (The reverse direction needs
  // larger bases and is covered by the acceptance gate.)
  const ProblemDims d{2, 1};
  const ParamVector u{rat(1, 2), rat(3, 4), rat(1, 4)};
  CHECK(off_scale_decay(d, u, 16, 18) < std::ldexp(1.0, -18));
  CHECK(off_scale_decay(d, u, 16, 19) < std::ldexp(1.0, -19));
}

TEST_CASE("dyadic partial sum validates its window") {
  const ProblemDims d{2, 1};
  const ParamVector u{rat(1, 2), rat(3, 4), rat(1, 4)};
  CHECK_THROWS_AS(dyadic_partial_sum(d, u, 10, 19, 10), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_partial_sum(d, u, 0, 4, 2), std::invalid_argument);
  CHECK(dyadic_partial_sum(d, u, 10, 12, 11) > 0.0);
}
