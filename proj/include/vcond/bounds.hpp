#pragma once

// Closed-form rates for Vandermonde matrices with separated circle nodes and
// for contiguous Fourier submatrices.

#include <string>

#include "vcond/mp.hpp"

namespace vcond {

enum class Regime { full_circle, narrow_gap, general };

std::string to_string(Regime r);

/// (4/(n eps)) int_0^{eps n/4} log cot - C log(n)/n, the per-n rate of log||V^{-1}||.
/// RegimeError unless (n+1) eps < 2pi; DomainError unless n >= 1 and C in [1/2, 1].
Real thm_main_rate(const PrecisionContext& ctx, long n, const Real& eps, double C = 1.0);

/// (2N/pi) int_0^{alpha pi/2} log cot, alpha = max(sizes)/N, minus (1/2) log N
/// when both index sets are contiguous.
Real corollary_contiguous(const PrecisionContext& ctx, long N, long size_s, long size_t_,
                          bool both_contiguous);

/// 2GN/pi, minus (1/2) log N when both_contiguous. DomainError for N < 2.
Real catalan_cap(const PrecisionContext& ctx, long N, bool both_contiguous);

/// (pi/2)(min(p, q) - pq/N).
Real barnett_lower(const PrecisionContext& ctx, long p, long q, long N);

/// Gap g = 2pi - n eps: full_circle when g <= 2 eps, narrow_gap when g < 2 sqrt(eps),
/// general otherwise. Ties within a relative 2^(-bits+16) go to the earlier regime.
/// DomainError unless n eps < 2pi.
Regime regime_classify(const PrecisionContext& ctx, long n, const Real& eps);

struct BoundsReport {
  Real thm_main;
  Real cor_contiguous;
  Real catalan_cap;
  Real barnett;
  Regime regime;
  Real alpha;
};

/// All bounds for a p x q submatrix of the N x N Fourier matrix. The
/// Vandermonde rate uses n = max(p, q) - 1 at spacing 2pi/N and is NaN when
/// max(p, q) is 1 or N.
BoundsReport bounds_report(const PrecisionContext& ctx, long N, long p, long q,
                           bool both_contiguous, double C = 1.0);

}  // namespace vcond
