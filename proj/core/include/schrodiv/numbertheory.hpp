// Arithmetic support for the slab construction: totient/Moebius tables,
// quadratic Gauss sums with exact integer phase reduction, the index-set
// and intersecting-pair counts behind the slab families, and weighted
// Gauss sums with compactly supported perturbation profiles.
#pragma once

#include "schrodiv/rational.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace schrodiv {

struct SieveTables {
  std::vector<std::int64_t> phi;  // phi[k], 0 <= k <= limit (phi[0] = 0)
  std::vector<int> mu;            // mu[k]
  std::vector<int> least_prime;   // smallest prime factor (0 for k < 2)
};

SieveTables linear_sieve(std::int64_t limit);

std::int64_t totient(std::int64_t n);  // direct factorization
int mobius(std::int64_t n);

// G(a, b; q) = sum_{x=0}^{q-1} e((a x^2 + b x)/q), phases reduced mod q in
// integer arithmetic first, so shifting a or b by q reproduces the result
// bit for bit.
std::complex<double> gauss_sum_1d(std::int64_t a, std::int64_t b, std::int64_t q);

// Product over coordinates of 1-D sums (the exact factorization of the
// d-dimensional sum).
std::complex<double> gauss_sum_multi(std::span<const std::int64_t> a,
                                     std::span<const std::int64_t> b, std::int64_t q);

// Direct d-dimensional summation over [0,q)^d, as an independent check of
// the product form. Refuses q^d above the operation budget.
std::complex<double> gauss_sum_multi_direct(std::span<const std::int64_t> a,
                                            std::span<const std::int64_t> b, std::int64_t q);

// |J| for the slab index family: sum over odd q in [Q/2, Q) of phi(q) q^(N-1),
// where N counts the coordinates carrying a /q frequency (one coprime slot
// plus N-1 free slots).
BigInt count_index_set(std::int64_t Q, int N);

// Same count with phi(q) recomputed by direct gcd enumeration.
BigInt count_index_set_bruteforce(std::int64_t Q, int N);

struct PairCount {
  BigInt total;     // ordered pairs, diagonal included
  BigInt diagonal;  // = |J|
};

// Ordered pairs of index-set members whose product balls intersect: axis 1
// has radius Q^-t1 around p1/q, the other N-1 axes radius Q^-t2 around
// p_j/q. Closed balls, compared exactly in integers.
PairCount count_intersecting_pairs(std::int64_t Q, int N, const Rat& t1, const Rat& t2);

enum class PerturbProfile { Box, Hat, Smooth };

struct PerturbationReport {
  std::complex<double> lhs;   // sum_m zeta(m) e(a|m|^2 / q)
  std::complex<double> main;  // (q^-d sum_m zeta(m)) * full Gauss sum
  double error;               // |lhs - main|
  double bound;               // q^(d/2) (L/q)^(d - 2N), N = profile smoothness
  std::int64_t terms;         // lattice points per axis
};

// Weighted Gauss sum against a width-L profile: Box is the indicator of the
// half-open [-L, L), Hat is 1 - |m|/L on [-L, L], Smooth is a C-infinity
// bump. Smoothness orders N = 0, 1, 2 enter the reported bound. Refuses
// (2L+1)^d above the operation budget.
PerturbationReport perturbation_check(PerturbProfile profile, std::int64_t q, std::int64_t a,
                                      std::int64_t L, int d);

}  // namespace schrodiv
