#include "vcond/quadrature.hpp"

namespace vcond {

namespace {

struct Node {
  Real one_minus_x;  // distance of the abscissa from the right end of [-1, 1]
  Real weight;
};

Node node_at(const Real& t, const Real& half_pi) {
  Real u = half_pi * sinh(t);
  Real e2u = exp(u * 2L);
  Real ch = cosh(u);
  return {Real(2.0 / (e2u + 1.0)), half_pi * cosh(t) / sqr(ch)};
}

// One tanh-sinh pass without bisection.
QuadratureResult tanh_sinh(const PrecisionContext& wctx, const RealFunction& f, const Real& a,
                           const Real& b, const Real& rel_tol, int max_level) {
  const Real half_pi = ldexp(wctx.pi(), -1);
  const Real half = ldexp(b - a, -1);
  const Real mid = ldexp(a + b, -1);
  const Real cutoff = wctx.tol(-24);

  // Truncation point: weights below 2^(-bits-24) are dropped.
  Real t_max = wctx.one();
  while (node_at(t_max, half_pi).weight > cutoff) t_max += 0.5;

  // The L1 mass of the integrand scales the convergence test so that
  // integrals with cancellation (true value near zero) still terminate.
  Real total_abs = wctx.zero();
  auto pair_sum = [&](const Real& t) {
    Node nd = node_at(t, half_pi);
    Real d = half * nd.one_minus_x;
    Real fr = f(b - d);
    Real fl = f(a + d);
    total_abs += (abs(fr) + abs(fl)) * nd.weight;
    return (fr + fl) * nd.weight;
  };

  Real total = f(mid) * half_pi;
  total_abs += abs(total);
  Real h = wctx.one();
  for (Real t = wctx.one(); t <= t_max; t += 1.0) total += pair_sum(t);
  Real prev = total * half;

  QuadratureResult res{prev, Real::infinity(wctx.bits(), 1), 0, false};
  for (int level = 1; level <= max_level; ++level) {
    h = ldexp(h, -1);
    for (long k = 1;; k += 2) {
      Real t = h * k;
      if (t > t_max) break;
      total += pair_sum(t);
    }
    Real cur = total * h * half;
    Real diff = abs(cur - prev);
    res = {cur, diff, level, false};
    Real scale = abs(total_abs * h * half);
    if (level >= 3 && (diff <= rel_tol * scale || scale.is_zero())) {
      res.converged = true;
      return res;
    }
    prev = cur;
  }
  return res;
}

QuadratureResult integrate_rec(const PrecisionContext& wctx, const RealFunction& f, const Real& a,
                               const Real& b, const Real& rel_tol, int max_level, int depth) {
  QuadratureResult r = tanh_sinh(wctx, f, a, b, rel_tol, max_level);
  if (r.converged || depth <= 0) return r;
  Real m = ldexp(a + b, -1);
  QuadratureResult left = integrate_rec(wctx, f, a, m, rel_tol, max_level, depth - 1);
  QuadratureResult right = integrate_rec(wctx, f, m, b, rel_tol, max_level, depth - 1);
  return {left.value + right.value, left.error_estimate + right.error_estimate,
          std::max(left.level, right.level), left.converged && right.converged};
}

}  // namespace

QuadratureResult integrate(const PrecisionContext& ctx, const RealFunction& f, const Real& a,
                           const Real& b, const Real& rel_tol, int max_level, int max_depth) {
  const PrecisionContext wctx = ctx.widened(24);
  if (a == b) return {ctx.zero(), ctx.zero(), 0, true};
  QuadratureResult r = integrate_rec(wctx, f, a.rounded(wctx), b.rounded(wctx), rel_tol,
                                     max_level, max_depth);
  r.value = r.value.rounded(ctx);
  r.error_estimate = r.error_estimate.rounded(ctx);
  return r;
}

QuadratureResult integrate_piecewise(const PrecisionContext& ctx, const RealFunction& f,
                                     const std::vector<Real>& breakpoints, const Real& rel_tol,
                                     int max_level) {
  QuadratureResult total{ctx.zero(), ctx.zero(), 0, true};
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    QuadratureResult r = integrate(ctx, f, breakpoints[i], breakpoints[i + 1], rel_tol, max_level);
    total.value += r.value;
    total.error_estimate += r.error_estimate;
    total.level = std::max(total.level, r.level);
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace vcond
