#pragma once

#include "vcond/mp.hpp"

namespace vcond {

/// f(x) = -log(2 sin(x/2)), the kernel whose antiderivative is the Clausen function.
/// PoleError at x in {0, 2pi}; DomainError outside [0, 2pi].
Real f_kernel(const PrecisionContext& ctx, const Real& x);

/// Cl(theta) = sum_{k>=1} sin(k theta)/k^2 = -int_0^theta log|2 sin(x/2)| dx.
///
/// The argument is reduced to [0, pi] using oddness and 2pi-periodicity. On
/// [0, 2pi/3] the expansion about 0 is used,
///   Cl(x) = x - x log x + x sum_n 2 zeta(2n) / (2n (2n+1)) (x / 2pi)^(2n),
/// and near pi the expansion
///   Cl(pi + t) = -t log 2 + t sum_n 2 zeta(2n) (1 - 4^-n) / (2n (2n+1)) (t / pi)^(2n).
/// Both series shrink by at least 1/9 per term on their half of the range.
Real clausen(const PrecisionContext& ctx, const Real& theta);

/// Catalan's constant G = sum_k (-1)^k / (2k+1)^2, via the accelerated series
/// G = (pi/8) log(2 + sqrt 3) + (3/8) sum_k 1 / ((2k+1)^2 binom(2k, k)).
Real catalan(const PrecisionContext& ctx);

/// int_0^x log cot(phi) dphi for x in [0, pi/2], as (Cl(2x) - Cl(pi + 2x)) / 2.
Real log_cot_integral(const PrecisionContext& ctx, const Real& x);

/// Worst-case residuals of the standard Clausen identities over uniform grids.
struct ClausenGridReport {
  /// max |Cl(2pi - x) + Cl(x)|
  Real oddness;
  /// max |Cl(x) - 2 Cl(pi + x/2) - 2 Cl(x/2)|
  Real duplication;
  /// Largest excess of the difference-quotient error over its bound
  /// eps/(2x) + log(pi/2) (and the mirrored bound near 2pi); zero when it holds.
  Real difference_quotient;
  /// Range of Cl(alpha pi) / (alpha (1 - alpha) log(2/alpha)) over alpha in (0, 1).
  Real ratio_min;
  Real ratio_max;
  /// Range of the reciprocal ratio, which is the quantity confined to [1/pi, 2/5].
  Real inverse_ratio_min;
  Real inverse_ratio_max;
  /// Distance of [inverse_ratio_min, inverse_ratio_max] outside [1/pi, 2/5].
  Real ratio_violation;
};

/// Evaluates the identities at grid_size points (grid_size >= 8).
ClausenGridReport clausen_identity_scan(const PrecisionContext& ctx, int grid_size);

}  // namespace vcond
