// Time evolution of the three-factor wave packet datum under the free
// Schrodinger flow, normalized magnitudes at selected space-time points,
// Sobolev-to-L2 norm quotients, and the dyadic-scale slope / decay / partial
// sum diagnostics built on them. All phases use e(z) = exp(2 pi i z).
#pragma once

#include "schrodiv/dims.hpp"

#include <complex>
#include <span>
#include <vector>

namespace schrodiv {

struct QuadratureControl {
  double c = 0.1;          // half-width of the frequency bump
  double rel_tol = 1e-8;   // node-doubling stop threshold (relative)
  int min_nodes = 512;     // starting interval count
  int max_nodes = 1 << 21;
};

// Smooth bump exp(1 - 1/(1-(x/c)^2)) on (-c, c), zero outside; bump(0,c) = 1.
double bump(double x, double c);

// L2 norm of the bump profile, sqrt(integral of bump^2 over [-c, c]).
double bump_l2(double c);

// I(y, tau) = integral over [-c, c] of bump(xi) e(xi y + tau xi^2) d xi,
// by trapezoid refinement with an oscillation-aware starting resolution.
std::complex<double> oscillatory_bump_integral(double y, double tau,
                                               const QuadratureControl& ctrl = {});

// Evolved first-axis packet: frequencies in a sqrt(R)-width bump at R, with
// the carrier chirp factored out. Magnitude sqrt(R) |I(sqrt(R)(x1 + 2tR), tR)|.
std::complex<double> evolve_g(double x1, double t, double R,
                              const QuadratureControl& ctrl = {});

// Evolved middle-axis factor: unit bumps on the lattice D1*l, |l D1/R| <= c,
// with the smooth envelope bump(l D1/R, c).
std::complex<double> evolve_h1(double x, double t, double D1, double R,
                               const QuadratureControl& ctrl = {});

// Evolved last-axis factor: unit bumps on the lattice D2*l with the sharp
// cutoff |l| <= floor(c sqrt(R) / D2), unit weights.
std::complex<double> evolve_h2(double x, double t, double D2, double R,
                               const QuadratureControl& ctrl = {});

// Product solution g(x1) * prod evolve_h1(x_j) * prod evolve_h2(x_j) with
// D1 = R^(1+u1-u2), D2 = R^u3.
std::complex<double> solution_at(const ProblemDims& dims, const ParamVector& u, double R,
                                 std::span<const double> x, double t,
                                 const QuadratureControl& ctrl = {});

// L2 norm of the datum: R^(1/4) w2 * prod sqrt(sum psi^2) w2 * prod
// sqrt(2 L2 + 1) w2 (bump supports are pairwise disjoint at these spacings).
double datum_norm(const ProblemDims& dims, const ParamVector& u, double R,
                  const QuadratureControl& ctrl = {});

// |solution_at| / datum_norm.
double normalized_magnitude(const ProblemDims& dims, const ParamVector& u, double R,
                            std::span<const double> x, double t,
                            const QuadratureControl& ctrl = {});

// H^s norm over R^s L2 norm with the Sobolev weight frozen at each bump
// center (R, D1 l', D2 l''); exactly 1 at s = 0.
double hs_norm_ratio(const ProblemDims& dims, const ParamVector& u, double R, double s,
                     const QuadratureControl& ctrl = {});

struct SlopeFit {
  std::vector<int> scales;       // j with R = 2^j
  std::vector<double> log2_mag;  // log2 normalized magnitude at each scale's point
  double slope = 0;
  double intercept = 0;
};

// Normalized magnitude at each dyadic scale's own selected slab point,
// least-squares slope of log2 magnitude against j.
SlopeFit slope_fit(const ProblemDims& dims, const ParamVector& u, int j_lo, int j_hi,
                   const QuadratureControl& ctrl = {});

// Normalized magnitude of the scale-2^j solution at the scale-2^base_k
// selected point (off-scale terms should be tiny).
double off_scale_decay(const ProblemDims& dims, const ParamVector& u, int base_k, int j,
                       const QuadratureControl& ctrl = {});

// | sum_{j=k0}^{k_max} j * S_j(x,t) / (R_j^s ||f_j||_2) | at the scale-2^eval_k
// selected point, s = s_from_params(dims, u).
double dyadic_partial_sum(const ProblemDims& dims, const ParamVector& u, int k0, int k_max,
                          int eval_k, const QuadratureControl& ctrl = {});

}  // namespace schrodiv
