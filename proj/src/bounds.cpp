#include "vcond/bounds.hpp"

#include <algorithm>

#include "vcond/clausen.hpp"

namespace vcond {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::full_circle:
      return "full_circle";
    case Regime::narrow_gap:
      return "narrow_gap";
    case Regime::general:
      return "general";
  }
  return "general";
}

Real thm_main_rate(const PrecisionContext& ctx, long n, const Real& eps, double C) {
  if (n < 1) throw DomainError("thm_main_rate: n must be at least 1");
  if (!(C >= 0.5 && C <= 1.0)) throw DomainError("thm_main_rate: C must lie in [1/2, 1]");
  if (!(eps > 0.0) || eps * (n + 1) >= ctx.two_pi()) {
    throw RegimeError("thm_main_rate: need (n+1) eps < 2pi");
  }
  Real span = eps.rounded(ctx) * n;
  Real integral = log_cot_integral(ctx, ldexp(span, -2));
  return ldexp(integral / span, 2) - log(Real(ctx, n)) * C / n;
}

Real corollary_contiguous(const PrecisionContext& ctx, long N, long size_s, long size_t_,
                          bool both_contiguous) {
  if (size_s < 1 || size_t_ < 1 || size_s > N || size_t_ > N) {
    throw DomainError("corollary_contiguous: sizes must lie in [1, N]");
  }
  Real alpha = Real(ctx, std::max(size_s, size_t_)) / N;
  Real value = ldexp(log_cot_integral(ctx, ldexp(alpha * ctx.pi(), -1)) * N / ctx.pi(), 1);
  if (both_contiguous) value -= ldexp(log(Real(ctx, N)), -1);
  return value;
}

Real catalan_cap(const PrecisionContext& ctx, long N, bool both_contiguous) {
  if (N < 2) throw DomainError("catalan_cap: N must be at least 2");
  Real value = ldexp(catalan(ctx) * N / ctx.pi(), 1);
  if (both_contiguous) value -= ldexp(log(Real(ctx, N)), -1);
  return value;
}

Real barnett_lower(const PrecisionContext& ctx, long p, long q, long N) {
  if (p < 1 || q < 1 || p > N || q > N) throw DomainError("barnett_lower: need 1 <= p, q <= N");
  return ldexp(ctx.pi(), -1) * (Real(ctx, std::min(p, q)) - Real(ctx, p) * q / N);
}

Regime regime_classify(const PrecisionContext& ctx, long n, const Real& eps) {
  if (n < 0 || !(eps > 0.0) || eps * n >= ctx.two_pi()) {
    throw DomainError("regime_classify: need n eps < 2pi");
  }
  // Ties within the rounding slack go to the first matching clause.
  const Real slack = ctx.tol(16);
  Real gap = ctx.two_pi() - eps * n;
  if (gap <= ldexp(eps, 1) * (1.0 + slack)) return Regime::full_circle;
  if (gap < ldexp(sqrt(eps), 1) * (1.0 - slack)) return Regime::narrow_gap;
  return Regime::general;
}

BoundsReport bounds_report(const PrecisionContext& ctx, long N, long p, long q,
                           bool both_contiguous, double C) {
  const long m = std::max(p, q);
  const Real eps = ctx.two_pi() / N;
  BoundsReport r{Real(), corollary_contiguous(ctx, N, p, q, both_contiguous),
                 catalan_cap(ctx, N, both_contiguous), barnett_lower(ctx, p, q, N), Regime::general,
                 Real(ctx, m) / N};
  r.regime = regime_classify(ctx, m - 1, eps);
  // With one node, or nodes filling the circle, the rate formula does not apply.
  r.thm_main = (m >= 2 && m < N) ? thm_main_rate(ctx, m - 1, eps, C) : Real::nan(ctx.bits());
  return r;
}

}  // namespace vcond
