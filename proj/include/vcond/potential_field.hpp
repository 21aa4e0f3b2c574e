#pragma once

// Discrete logarithmic potentials of the equispaced nodes e^{i j eps},
// j = 0..n, and their Clausen-function approximations.
//
//   U(theta)   = sum_j   log 1/|e^{i theta} - e^{i j eps}|
//   U_k(theta) = sum_{j != k} log 1/|e^{i theta} - e^{i j eps}|
//
// so that log|L_k(e^{i theta})| = U_k(k eps) - U_k(theta).

#include <utility>
#include <vector>

#include "vcond/mp.hpp"

namespace vcond {

/// Nodes e^{i j eps}, j = 0..n, with (n+1) eps < 2pi.
class EquispacedFamily {
 public:
  /// DomainError unless n >= 0, eps > 0 and (n+1) eps < 2pi.
  EquispacedFamily(const PrecisionContext& ctx, long n, const Real& eps);

  long n() const { return n_; }
  const Real& eps() const { return eps_; }
  /// eps n / (2 pi)
  const Real& alpha() const { return alpha_; }
  /// Angle of node j.
  Real node(long j) const { return eps_ * j; }

 private:
  long n_;
  Real eps_;
  Real alpha_;
};

/// log|2 sin(x/2)| = log|1 - e^{ix}|; PoleError when x is a multiple of 2pi.
Real log_chord(const PrecisionContext& ctx, const Real& x);

/// Direct sum of the n+1 kernel terms. PoleError when theta hits a node.
Real potential_U(const PrecisionContext& ctx, const EquispacedFamily& fam, const Real& theta);

/// U(theta) + log|e^{i theta} - e^{i k eps}|, summed directly without the k-th
/// term so it is finite at theta = k eps. PoleError at any other node.
Real potential_Uk(const PrecisionContext& ctx, const EquispacedFamily& fam, long k,
                  const Real& theta);

/// Diagonal values U_k(k eps) for every k = 0..n via prefix sums of the
/// chord logarithms. O(n) instead of O(n^2) direct summation.
std::vector<Real> potential_Uk_diagonal(const PrecisionContext& ctx, const EquispacedFamily& fam);

/// Clausen-based estimate of a Riemann sum together with a proven bound on
/// its error.
struct RiemannEstimate {
  Real estimate;
  Real guaranteed_error;
};

/// Estimate of sum_{j=1}^m log|2 sin((a + h j)/2)|, h = (b - a)/m, for
/// (a, b) inside [0, pi]; error at most 3/2.
RiemannEstimate riemann_estimate_halfcircle(const PrecisionContext& ctx, const Real& a,
                                            const Real& b, long m);

/// Estimate of sum_{j=1}^m log|2 sin((a + h j)/2)|, h = (b - a)/(m + 1), for
/// (a, b) inside [0, 2pi) containing pi; error at most 5.
RiemannEstimate riemann_estimate_crossing(const PrecisionContext& ctx, const Real& a,
                                          const Real& b, long m);

/// Closed-form approximation of U_k(k eps), accurate up to an O(1) term.
Real uk_diagonal_estimate(const PrecisionContext& ctx, const EquispacedFamily& fam, long k);

/// Approximations of U(eps n/2 + pi) (first) and U(eps n + eps) (second).
/// Requires (n+2) eps < 2pi.
std::pair<Real, Real> u_midpoint_and_edge(const PrecisionContext& ctx,
                                          const EquispacedFamily& fam);

/// Parabolas g(x) = (M/2)(x - center)^2 + center_value bounding U on the
/// node-free arc: the Taylor parabola (curvature M_w) lies below U on
/// (eps n, 2pi) and the secant parabola (curvature M_n) lies above U on
/// (eps n + eps, 2pi - eps).
struct QuadraticEnvelope {
  Real M_w;
  Real M_n;
  Real center;
  Real center_value;

  Real wide(const Real& x) const;
  Real narrow(const Real& x) const;
};

/// U'' at the center is the exact sum (1/4) sum_j sec^2(eps n/4 - eps j/2).
/// DomainError unless (n+2) eps < 2pi; DegeneracyError when eps + eps n/2 = pi.
QuadraticEnvelope envelopes(const PrecisionContext& ctx, const EquispacedFamily& fam);

struct CurvatureRatio {
  /// M_n / M_w
  Real ratio;
  /// log(2 / alpha)
  Real model;
  /// ratio / model, which stays within a fixed band across families.
  Real normalized;
};

/// RegimeError unless n eps < 2pi - 2 sqrt(eps).
CurvatureRatio curvature_ratio_bounds(const PrecisionContext& ctx, const EquispacedFamily& fam);

}  // namespace vcond
