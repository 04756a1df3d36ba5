// Brute-force slice maximization against the closed-form curves: frozen
// slice maxima from hand optimization, exactness of the piecewise sweep,
// and agreement of the two grand-max routes.
#include <doctest.h>

#include <schrodiv/optimizer.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

using namespace schrodiv;

TEST_CASE("slice maxima match hand optimization") {
  // (2,1): s depends only on u3, so the maximum sits at the smallest u3
  // reaching the slice; solving min(alpha1, alpha2) = 7/4 gives u3 = 3/8
  // at u2 = 3/4 and s = 1/2 - 3/16 = 5/16.
  {
    const auto r = exact_max_on_slice({2, 1}, rat(7, 4));
    REQUIRE(r.has_value());
    CHECK(r->value == rat(5, 16));
    CHECK(r->u2 == rat(3, 4));
    CHECK(r->u3 == rat(3, 8));
  }
  // (3,1) at alpha = 5/2: both dimension formulas are active at the
  // maximizer (u2, u3) = (3/4, 1/4), s = 1 - 3/8 - 1/8 = 1/2.
  {
    const auto r = exact_max_on_slice({3, 1}, rat(5, 2));
    REQUIRE(r.has_value());
    CHECK(r->value == rat(1, 2));
  }
  // (6,2) at alpha = 4 sits on the middle branch: 1/2 + 2*2/6 = 7/6.
  CHECK(exact_max_on_slice({6, 2}, rat(4))->value == rat(7, 6));
  // (10,5) at alpha = 5: the quarter-slope branch gives 4/4 + 5/4 = 9/4.
  CHECK(exact_max_on_slice({10, 5}, rat(5))->value == rat(9, 4));
}

TEST_CASE("reported maximizers are self-consistent") {
  const std::vector<std::pair<ProblemDims, Rat>> cases{
      {{2, 1}, rat(7, 4)}, {{3, 1}, rat(5, 2)}, {{6, 2}, rat(4)}, {{4, 1}, rat(3)}};
  for (const auto& [d, alpha] : cases) {
    const auto r = exact_max_on_slice(d, alpha);
    REQUIRE(r.has_value());
    CHECK(s_from_params(d, r->u2, r->u3) == r->value);
    const auto [a1, a2] = alpha_dims(d, r->u2, r->u3);
    CHECK(std::min(a1, a2) == alpha);
  }
}

TEST_CASE("unattainable slices come back empty") {
  CHECK(!exact_max_on_slice({2, 0}, rat(5, 2)).has_value());
  CHECK(!exact_max_on_slice({3, 1}, rat(1, 4)).has_value());
}

TEST_CASE("piecewise sweep deviation is exactly zero") {
  // The candidate set contains every validity-interval endpoint, so the
  // scan reproduces the closed forms with no error at all.
  for (auto [n, m] : {std::pair{2, 0}, {2, 1}, {3, 1}, {4, 1}, {5, 2}, {10, 5}}) {
    const auto rep = verify_piecewise({n, m}, 60, 32);
    CHECK(rep.max_deviation == rat(0));
    CHECK(rep.points > 60);
  }
}

TEST_CASE("grand max routes agree pointwise") {
  for (int n : {4, 6}) {
    for (Rat alpha = rat(n, 2); alpha <= rat(n); alpha += rat(1, 4)) {
      const GrandMax direct = s_of_alpha(n, alpha);
      const GrandMax oracle = grand_max_oracle(n, alpha, 32);
      CHECK(direct.value == oracle.value);
      CHECK(direct.argmax == oracle.argmax);
    }
  }
}

TEST_CASE("parameter feasibility reporting") {
  const ProblemDims d{3, 1};
  {
    const auto rep = check_params(d, {rat(1, 2), rat(3, 4), rat(1, 4)});
    CHECK(rep.feasible);
    CHECK(rep.dilation_exists);
    CHECK(rep.violated.empty());
  }
  {
    // u2 = 1/2 forces u1 to the closed boundary u1 = 0.
    const auto rep = check_params(d, {rat(0), rat(1, 2), rat(1, 4)});
    CHECK(!rep.feasible);
    CHECK(rep.boundary_feasible);
  }
  {
    const auto rep = check_params(d, {rat(1, 8), rat(3, 4), rat(1, 4)});
    CHECK(!rep.feasible);
    CHECK(!rep.boundary_feasible);
    CHECK(std::find_if(rep.violated.begin(), rep.violated.end(), [](const std::string& v) {
            return v.find("u2-u1") != std::string::npos;
          }) != rep.violated.end());
  }
  // m = n-1 with u2 > 3/4 admits no dilation.
  CHECK(!check_params({2, 1}, {rat(1, 2), rat(13, 16), rat(1, 4)}).dilation_exists);
  CHECK_THROWS_AS(dilation_from_params({2, 1}, {rat(1, 2), rat(13, 16), rat(1, 4)}),
                  std::invalid_argument);
}

TEST_CASE("dilation literals on both branches") {
  {
    const auto a = dilation_from_params({3, 1}, {rat(3, 8), rat(11, 16), rat(1, 4)});
    CHECK(a.a1 == rat(3, 8));
    CHECK(a.a2 == rat(11, 16));
    CHECK(a.a3 == rat(1, 4));
  }
  {
    const auto a = dilation_from_params({3, 1}, {rat(1, 2), rat(49, 64), rat(1, 16)});
    CHECK(a.a1 == rat(1, 2));
    CHECK(a.a2 == rat(51, 64));
    CHECK(a.a3 == rat(1, 16));
  }
}

TEST_CASE("default u1 tracks the feasibility wall") {
  CHECK(default_u1(rat(3, 4)) == rat(1, 2));
  CHECK(default_u1(rat(9, 16)) == rat(1, 8));
  CHECK(default_u1(rat(1, 2)) == rat(0));
}
