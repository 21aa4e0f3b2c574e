#include "vcond/clausen.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace vcond {

namespace {

constexpr int kGuardBits = 32;

// Series coefficients 2 zeta(2n) / (2n (2n+1)) and the same times (1 - 4^-n),
// n = 1, 2, ..., cached per working precision.
struct ClausenTable {
  std::vector<Real> about_zero;
  std::vector<Real> about_pi;
};

std::shared_ptr<const ClausenTable> table_for(const PrecisionContext& wctx) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ClausenTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(wctx.bits());
  if (it != cache.end()) return it->second;

  auto table = std::make_shared<ClausenTable>();
  // Ratio between consecutive terms is at most 1/9.
  const long terms = static_cast<long>(wctx.bits() * 0.3155) + 8;
  for (long n = 1; n <= terms; ++n) {
    Real c = zeta(wctx, static_cast<unsigned long>(2 * n)) * 2L / (2 * n * (2 * n + 1));
    Real quarter_pow = ldexp(wctx.one(), -2 * n);
    table->about_pi.push_back(c * (1.0 - quarter_pow));
    table->about_zero.push_back(std::move(c));
  }
  cache.emplace(wctx.bits(), table);
  return table;
}

// sum_n coef[n-1] * y^n, stopping once y^n is below the working precision.
Real power_series(const std::vector<Real>& coef, const Real& y, const Real& cutoff) {
  Real sum(y.bits());
  Real p = y;
  for (const Real& c : coef) {
    sum += c * p;
    p *= y;
    if (p < cutoff) break;
  }
  return sum;
}

// Cl on [0, pi] at working precision.
Real clausen_reduced(const PrecisionContext& wctx, const Real& x) {
  if (x.is_zero()) return wctx.zero();
  const auto table = table_for(wctx);
  const Real pi = wctx.pi();
  const Real cutoff = wctx.tol(-8);
  if (x <= pi * (2.0 / 3.0)) {
    Real y = sqr(x / wctx.two_pi());
    return x - x * log(x) + x * power_series(table->about_zero, y, cutoff);
  }
  Real t = x - pi;
  Real y = sqr(t / pi);
  Real log2(wctx.bits());
  mpfr_const_log2(log2.get(), MPFR_RNDN);
  return -t * log2 + t * power_series(table->about_pi, y, cutoff);
}

}  // namespace

Real f_kernel(const PrecisionContext& ctx, const Real& x) {
  const Real two_pi = ctx.two_pi();
  if (x.is_zero() || x == two_pi) throw PoleError("f_kernel: pole at x = " + x.str(20));
  if (x < 0.0 || x > two_pi) throw DomainError("f_kernel: x must lie in (0, 2pi)");
  const PrecisionContext wctx = ctx.widened(kGuardBits);
  Real s = sin(ldexp(x.rounded(wctx), -1));
  return (-log(s * 2L)).rounded(ctx);
}

Real clausen(const PrecisionContext& ctx, const Real& theta) {
  if (!theta.is_finite()) throw DomainError("clausen: argument must be finite");
  const PrecisionContext wctx = ctx.widened(kGuardBits);
  const Real two_pi = wctx.two_pi();
  Real r = fmod_positive(theta.rounded(wctx), two_pi);
  Real result = (r > wctx.pi()) ? -clausen_reduced(wctx, two_pi - r) : clausen_reduced(wctx, r);
  return result.rounded(ctx);
}

Real catalan(const PrecisionContext& ctx) {
  const PrecisionContext wctx = ctx.widened(kGuardBits);
  // 1 / binom(2k, k) is updated by the factor k / (2 (2k - 1)).
  Real inv_binom = wctx.one();
  Real sum = wctx.one();
  const Real cutoff = wctx.tol(-8);
  for (long k = 1;; ++k) {
    inv_binom *= k;
    inv_binom /= 2 * (2 * k - 1);
    Real term = inv_binom / ((2 * k + 1) * (2 * k + 1));
    sum += term;
    if (term < cutoff) break;
  }
  Real lead = ldexp(wctx.pi(), -3) * log(sqrt(Real(wctx, 3L)) + 2.0);
  return (lead + sum * 0.375).rounded(ctx);
}

Real log_cot_integral(const PrecisionContext& ctx, const Real& x) {
  const Real half_pi = ldexp(ctx.pi(), -1);
  if (!x.is_finite() || x < 0.0 || x > half_pi) {
    throw DomainError("log_cot_integral: x must lie in [0, pi/2]");
  }
  const PrecisionContext wctx = ctx.widened(kGuardBits);
  Real two_x = ldexp(x.rounded(wctx), 1);
  Real value = ldexp(clausen(wctx, two_x) - clausen(wctx, two_x + wctx.pi()), -1);
  return value.rounded(ctx);
}

ClausenGridReport clausen_identity_scan(const PrecisionContext& ctx, int grid_size) {
  if (grid_size < 8) throw DomainError("clausen_identity_scan: grid_size must be at least 8");
  const Real pi = ctx.pi();
  const Real two_pi = ctx.two_pi();
  Real log_half_pi = log(ldexp(pi, -1));

  ClausenGridReport rep{ctx.zero(), ctx.zero(), ctx.zero(), Real::infinity(ctx.bits(), 1),
                        Real::infinity(ctx.bits(), -1), Real::infinity(ctx.bits(), 1),
                        Real::infinity(ctx.bits(), -1), ctx.zero()};

  const double steps[] = {1.0 / 8, 1.0 / 64, 1.0 / 512};
  for (int i = 0; i < grid_size; ++i) {
    // Midpoints of a uniform grid on (0, 2pi), then on (0, pi) and (0, 1).
    Real frac = Real(ctx, 2L * i + 1) / (2L * grid_size);
    Real x = two_pi * frac;
    Real cx = clausen(ctx, x);
    rep.oddness = max(rep.oddness, abs(clausen(ctx, two_pi - x) + cx));
    Real dup = cx - clausen(ctx, pi + ldexp(x, -1)) * 2L - clausen(ctx, ldexp(x, -1)) * 2L;
    rep.duplication = max(rep.duplication, abs(dup));

    Real y = pi * frac;
    for (double s : steps) {
      Real eps(ctx, s);
      if (y <= pi - eps) {
        Real dq = (clausen(ctx, y + eps) - clausen(ctx, y)) / eps;
        Real excess = abs(dq + log(y)) - (ldexp(eps / y, -1) + log_half_pi);
        rep.difference_quotient = max(rep.difference_quotient, excess);
      }
      Real ym = two_pi - y;
      if (ym >= pi + eps) {
        Real dq = (clausen(ctx, ym) - clausen(ctx, ym - eps)) / eps;
        Real gap = two_pi - ym;
        Real excess = abs(dq + log(gap)) - (ldexp(eps / gap, -1) + log_half_pi);
        rep.difference_quotient = max(rep.difference_quotient, excess);
      }
    }

    const Real& alpha = frac;
    Real denom = alpha * (1.0 - alpha) * log(2.0 / alpha);
    Real ratio = clausen(ctx, alpha * pi) / denom;
    rep.ratio_min = min(rep.ratio_min, ratio);
    rep.ratio_max = max(rep.ratio_max, ratio);
    Real inv = 1.0 / ratio;
    rep.inverse_ratio_min = min(rep.inverse_ratio_min, inv);
    rep.inverse_ratio_max = max(rep.inverse_ratio_max, inv);
  }
  Real lo = 1.0 / pi;
  Real hi(ctx, 0.4);
  rep.ratio_violation = max(max(lo - rep.inverse_ratio_min, rep.inverse_ratio_max - hi), ctx.zero());
  return rep;
}

}  // namespace vcond
