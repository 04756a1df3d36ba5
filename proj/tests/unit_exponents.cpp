// Closed-form exponent curves: frozen rational literals from hand evaluation
// of the branch formulas, junction identities, the grand maximum, the
// five-case description, and the rectangle mass-transference bound.
#include <doctest.h>

#include <schrodiv/exponents.hpp>

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace schrodiv;

TEST_CASE("branch values match hand-evaluated rationals") {
  // Oracle: hand rational arithmetic on the three branch formulas.
  CHECK(s3({2, 0}, rat(3, 2)) == rat(5, 12));
  CHECK(s3({3, 1}, rat(2)) == rat(2, 3));
  CHECK(s3({6, 2}, rat(4)) == rat(6, 5));
  CHECK(s3({10, 3}, rat(7)) == rat(7, 4));

  CHECK(s4({2, 0}, rat(3, 2)) == rat(1, 2));
  CHECK(s4({2, 0}, rat(2)) == rat(1, 3));
  CHECK(s4({3, 1}, rat(3)) == rat(1, 3));
  CHECK(s4({10, 3}, rat(7)) == rat(7, 4));

  CHECK(s5({6, 2}, rat(5)) == rat(5, 6));
  CHECK(s5({5, 1}, rat(4)) == rat(5, 6));
}

TEST_CASE("s5 at (10,3,7) is pinned three independent ways") {
  // 7 is the s5/s4 junction for these dims, so the value must equal s4
  // there; the kappa dictionary gives a third route to the same number.
  const ProblemDims d{10, 3};
  CHECK(beta2(d) == rat(7));
  CHECK(s5(d, rat(7)) == rat(7, 4));
  CHECK(s4(d, rat(7)) == rat(7, 4));
  CHECK(kappa_cross_check(5, d, rat(7)) == rat(7, 4));
}

TEST_CASE("threshold literals") {
  CHECK(beta1({6, 1}) == rat(6));
  CHECK(beta1({7, 2}) == rat(5));
  CHECK(beta1({10, 3}) == rat(7));
  CHECK(beta1({30, 5}) == rat(282, 11));
  CHECK(beta1({6, 0}) == rat(23, 3));
  CHECK_THROWS_AS(beta1({5, 2}), std::invalid_argument);  // needs m < n-3

  CHECK(beta2({6, 2}) == rat(9, 2));
  CHECK(beta2({2, 0}) == rat(3, 2));
  CHECK(beta2({2, 1}) == rat(2));
}

TEST_CASE("junction identities hold exactly for every dimension pair") {
  for (int n = 2; n <= 18; ++n) {
    for (int m = 0; m <= n - 2; ++m) {
      const ProblemDims d{n, m};
      CHECK(s3(d, rat(n - m)) == s4(d, rat(n - m)));
      CHECK(s5(d, beta2(d)) == s4(d, beta2(d)));
      if (m < n - 3) CHECK(s3(d, beta1(d)) == s5(d, beta1(d)));
    }
  }
}

TEST_CASE("kappa dictionary agrees with the direct formulas") {
  const std::vector<ProblemDims> dims{{2, 0}, {3, 1}, {6, 2}, {9, 3}, {14, 5}};
  for (const auto& d : dims) {
    for (int k = 0; k <= 8; ++k) {
      const Rat alpha = Rat(d.n, 2) + Rat(k * d.n, 16);  // spread over [n/2, n]
      CHECK(kappa_cross_check(3, d, alpha) == s3(d, alpha));
      CHECK(kappa_cross_check(4, d, alpha) == s4(d, alpha));
      CHECK(kappa_cross_check(5, d, alpha) == s5(d, alpha));
    }
  }
}

TEST_CASE("per-m curves validate and cover the advertised domains") {
  for (int n = 2; n <= 16; ++n) {
    for (int m = 0; m < n; ++m) {
      const ProblemDims d{n, m};
      const PiecewiseLinearCurve curve = curve_m(d);
      CHECK_NOTHROW(curve.validate());
      CHECK(curve.domain_hi() == rat(n));
      if (m <= d.m1())
        CHECK(curve.domain_lo() == rat(n, 2));
      else if (m <= n - 3)
        CHECK(curve.domain_lo() == rat(n - m - 1));
      else
        CHECK(curve.domain_lo() == rat(1));
      auto bps = curve.breakpoints();
      CHECK(std::is_sorted(bps.begin(), bps.end()));
    }
  }
}

TEST_CASE("grand max endpoint closed forms") {
  for (int n = 2; n <= 16; ++n) {
    CHECK(s_of_alpha(n, rat(n)).value == rat(n, 2 * (n + 1)));
    CHECK(s_of_alpha(n, rat(n, 2)).value == rat(n, 4));
  }
}

TEST_CASE("five-case description tiles the domain and reproduces the max") {
  for (int n : {2, 3, 4, 6, 10, 13}) {
    const auto branches = theorem1_branches(n);
    REQUIRE(!branches.empty());
    CHECK(branches.front().alpha_lo == rat(n, 2));
    CHECK(branches.back().alpha_hi == rat(n));
    for (std::size_t i = 1; i < branches.size(); ++i)
      CHECK(branches[i].alpha_lo == branches[i - 1].alpha_hi);
    for (Rat alpha = rat(n, 2); alpha <= rat(n); alpha += rat(1, 8)) {
      const auto br = theorem1_case(n, alpha);
      CHECK(theorem1_eval(n, br, alpha) == s_of_alpha(n, alpha).value);
      CHECK(br.alpha_lo <= alpha);
      CHECK(alpha <= br.alpha_hi);
    }
  }
}

TEST_CASE("half-dimension point ties the low-m families") {
  const GrandMax g = s_of_alpha(6, rat(3));
  CHECK(g.value == rat(3, 2));
  REQUIRE(!g.argmax.empty());
  CHECK(g.argmax.front() == 0);
  for (int m : {0, 1, 2})
    CHECK(std::find(g.argmax.begin(), g.argmax.end(), m) != g.argmax.end());
}

TEST_CASE("mass transference literals") {
  // Oracle: hand minimization over the candidate scales B in set(b).
  {
    const std::vector<Rat> b{rat(1, 2), rat(1, 2)}, a{rat(1, 4), rat(1, 4)};
    CHECK(mtp_lower_bound(b, a) == rat(1));
  }
  {
    const std::vector<Rat> b{rat(1), rat(1)}, a{rat(1, 2), rat(1, 3)};
    CHECK(mtp_lower_bound(b, a) == rat(5, 6));
  }
  {
    // B = 1/2 gives 5/4, B = 1 gives 9/8; the bound takes the smaller.
    const std::vector<Rat> b{rat(1, 2), rat(1)}, a{rat(1, 8), rat(1, 2)};
    CHECK(mtp_lower_bound(b, a) == rat(9, 8));
  }
}

TEST_CASE("slab pattern bound equals the smaller slab dimension") {
  CHECK(mtp_lower_bound(std::vector<Rat>{rat(1, 2), rat(1), rat(1, 2)},
                        std::vector<Rat>{rat(3, 8), rat(11, 16), rat(1, 4)}) == rat(9, 4));
  const std::vector<ProblemDims> dims{{2, 0}, {2, 1}, {3, 1}, {4, 1}, {4, 2}};
  for (const auto& d : dims) {
    for (Rat u2 = rat(1, 2); u2 <= u2_cap(d); u2 += rat(1, 16)) {
      for (Rat u3 : {rat(1, 8), rat(1, 4), rat(1, 2)}) {
        const ParamVector u{default_u1(u2), u2, u3};
        if (!check_params(d, u).dilation_exists) continue;
        const auto [a1, a2] = alpha_dims(d, u2, u3);
        CHECK(mtp_lower_bound(slab_shrink_pattern(d), dilation_pattern(d, u)) ==
              std::min(a1, a2));
      }
    }
  }
}

TEST_CASE("slab dimension formulas at hand-checked points") {
  {
    const auto [a1, a2] = alpha_dims({2, 1}, rat(3, 4), rat(1, 4));
    CHECK(a1 == rat(7, 4));
    CHECK(a2 == rat(3, 2));
  }
  {
    const auto [a1, a2] = alpha_dims({3, 1}, rat(49, 64), rat(1, 16));
    CHECK(a1 == rat(151, 64));
    CHECK(a2 == rat(17, 8));
  }
  CHECK(s_from_params({2, 1}, rat(3, 4), rat(1, 4)) == rat(3, 8));
  CHECK(s_from_params({2, 1}, rat(3, 4), rat(1, 16)) == rat(15, 32));
  CHECK(s_from_params({3, 1}, rat(9, 16), rat(1, 16)) == rat(11, 16));
  CHECK(s_from_params({2, 0}, rat(9, 16), rat(1, 4)) == rat(15, 32));
}

TEST_CASE("emit_curve rows are consistent with the grand max") {
  const auto rows = emit_curve(5, rat(5, 2), rat(5), rat(1, 4));
  REQUIRE(rows.size() >= 11);
  CHECK(rows.front().alpha == rat(5, 2));
  CHECK(rows.back().alpha == rat(5));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].alpha < rows[i].alpha);
  for (const auto& row : rows) {
    const GrandMax g = s_of_alpha(5, row.alpha);
    CHECK(row.s == g.value);
    CHECK(row.winning_m == g.argmax);
    CHECK(!row.branch.empty());
  }
}
