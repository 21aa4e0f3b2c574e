#pragma once

#include <functional>
#include <vector>

#include "vcond/mp.hpp"

namespace vcond {

struct QuadratureResult {
  Real value;
  /// |I_k - I_{k-1}| at the last level.
  Real error_estimate;
  int level = 0;
  bool converged = false;
};

using RealFunction = std::function<Real(const Real&)>;

/// Tanh-sinh (double exponential) quadrature of f over [a, b].
///
/// Abscissae are refined by halving the step until successive estimates agree
/// to `rel_tol` relative to the current estimate. Integrable endpoint
/// singularities such as log|x - a| are handled; f is never evaluated at a or b.
/// Intervals that fail to converge are bisected up to `max_depth` times.
QuadratureResult integrate(const PrecisionContext& ctx, const RealFunction& f, const Real& a,
                           const Real& b, const Real& rel_tol, int max_level = 11,
                           int max_depth = 6);

/// Sum of integrals over consecutive pieces [p_0, p_1], [p_1, p_2], ...
QuadratureResult integrate_piecewise(const PrecisionContext& ctx, const RealFunction& f,
                                     const std::vector<Real>& breakpoints, const Real& rel_tol,
                                     int max_level = 11);

}  // namespace vcond
