// Slab family geometry at a dyadic scale R: the Talbot family
//   B^1(R p1/(D1^2 q), R^-1/2) x B^(n-m-1)(p'/(D1 q), R^-1) x B^m(p''/D2, R^-1/2)
// over odd q in [Q/2, Q) and gcd(p1, q) = 1, and the degenerate family
//   [-1, 0] x B^(n-1)(p''/D2, R^-1/2)
// used when m = n-1. Scales: D1 = R^(1+u1-u2), D2 = R^u3, Q = R^(2u2-u1-1).
// Includes enumeration, membership, delta-grid box counting, the rational
// time/space point selector, and the measure of the rescaled ball union.
#pragma once

#include "schrodiv/dims.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace schrodiv {

enum class SlabFamily { Talbot, Degenerate };
enum class DeltaScale { InvR, InvSqrtR };

struct SlabConfig {
  ProblemDims dims;
  ParamVector u;
  double R = 0;
  SlabFamily family = SlabFamily::Talbot;

  double D1() const;
  double D2() const;
  double Q() const;
};

struct Slab {
  std::int64_t q = 1;
  std::int64_t p1 = 0;
  std::vector<std::int64_t> p_mid;   // n-m-1 entries
  std::vector<std::int64_t> p_last;  // m entries
  double x1 = 0;                     // center, R p1/(D1^2 q); -1/2 for degenerate
  std::vector<double> x_mid;         // centers p/(D1 q)
  std::vector<double> x_last;        // centers p/D2
};

// Denominators probed at this scale: {1} when Q < 2, otherwise the odd q
// in [Q/2, Q).
std::vector<std::int64_t> slab_q_list(double Q);

// All slabs with centers in [0,1)^n, ordered by (q, p1, p_mid, p_last).
// The Talbot family requires Q >= 3 here; refuses counts above the budget.
std::vector<Slab> enumerate_slabs(const SlabConfig&);

// Continuous approximation of the slab count (per-q products summed over
// the actual q list) and its power law R^((n-m+1)u2 + m u3 - 1).
double slab_count_estimate(const SlabConfig&);
Rat slab_count_exponent(const SlabConfig&);

// The slab containing x, if any; q values are probed in increasing order
// and the first hit wins.
std::optional<Slab> slab_containing(const SlabConfig&, std::span<const double> x);

struct SlabPoint {
  std::int64_t q = 1;
  std::int64_t p1 = 0;  // even: p1 = 2a with gcd(a, q) = 1
  double t = 0;
  std::vector<double> x;
  bool q_in_range = true;  // q landed inside [Q/2, Q)
};

// A rational-time evaluation point inside the family: t = -p1/(2 D1^2 q)
// with the packet position x1 = -2tR steered into [1/10, 1], x'_i and x''_i
// at half-integer lattice sites. The degenerate family pins x1 = -1/2,
// t = 1/(4R).
SlabPoint select_slab_point(const SlabConfig&);

struct BoxCountResult {
  double delta;
  BigInt boxes;
  double dim_estimate;  // log(boxes) / log(1/delta)
};

// Number of delta-grid cells (grid anchored at 0) meeting the slab union,
// delta = R^-1 or R^-1/2.
BoxCountResult box_count(const SlabConfig&, DeltaScale);

struct OmegaConfig {
  ProblemDims dims;  // N = n - m ball coordinates
  ParamVector u;
  double R = 0;
};

struct OmegaReport {
  double t1 = 0, t2 = 0;  // shrink exponents relative to Q (0 when Q = 1)
  double r1 = 0, r2 = 0;  // radii D1^2/R^(1+a1) and D1/R^a2
  double measure = 0;     // union measure in [0,1]^N by interval merge / sweep
  double mc_measure = 0;  // Monte Carlo estimate (0 samples skips it)
  double mc_sigma = 0;
  std::int64_t balls = 0;
};

// Measure of the rescaled ball union Omega = U_q U_p B^1(p1/q, r1) x
// B^(N-1)(p'/q, r2) inside [0,1]^N, with the dilation exponents derived
// from u. Exact path implemented for N <= 2.
OmegaReport omega_measure(const OmegaConfig&, std::int64_t mc_samples = 1000000,
                          std::uint64_t seed = 0x5EED);

// Fraction of [0,1]^N covered by Omega.
double ubiquity_ratio(const OmegaConfig&);

}  // namespace schrodiv
