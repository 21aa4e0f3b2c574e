#include "vcond/potential_field.hpp"

#include "vcond/clausen.hpp"

namespace vcond {

namespace {

// Cl(eps m)/eps + (1/2) log eps - (1/2) log(eps m ^ (2pi - eps (m+1))), the
// approximation of -sum_{j=1}^m log(2 sin(eps j / 2)); zero for the empty sum.
Real chord_sum_estimate(const PrecisionContext& ctx, const Real& eps, long m) {
  if (m == 0) return ctx.zero();
  Real span = eps * m;
  Real other = ctx.two_pi() - eps * (m + 1);
  const Real& wedge = min(span, other);
  if (wedge <= 0.0) throw DomainError("chord_sum_estimate: logarithm of a nonpositive argument");
  return clausen(ctx, span) / eps + ldexp(log(eps), -1) - ldexp(log(wedge), -1);
}

void require_gap_for_two_more(const PrecisionContext& ctx, const EquispacedFamily& fam,
                              const char* who) {
  if (!(fam.eps() * (fam.n() + 2) < ctx.two_pi())) {
    throw DomainError(std::string(who) + ": requires (n+2) eps < 2pi");
  }
}

}  // namespace

EquispacedFamily::EquispacedFamily(const PrecisionContext& ctx, long n, const Real& eps)
    : n_(n), eps_(eps.rounded(ctx)), alpha_(ctx.zero()) {
  if (n < 0) throw DomainError("EquispacedFamily: n must be nonnegative");
  if (!eps_.is_finite() || eps_ <= 0.0) throw DomainError("EquispacedFamily: eps must be positive");
  if (!(eps_ * (n + 1) < ctx.two_pi())) {
    throw DomainError("EquispacedFamily: requires (n+1) eps < 2pi");
  }
  alpha_ = eps_ * n / ctx.two_pi();
}

Real log_chord(const PrecisionContext& ctx, const Real& x) {
  Real s = abs(sin(ldexp(x, -1)));
  if (s <= ctx.tol(8) * (1.0 + abs(x))) {
    throw PoleError("log_chord: argument is a multiple of 2pi");
  }
  return log(s * 2L);
}

Real potential_U(const PrecisionContext& ctx, const EquispacedFamily& fam, const Real& theta) {
  Real sum = ctx.zero();
  for (long j = 0; j <= fam.n(); ++j) sum -= log_chord(ctx, theta - fam.node(j));
  return sum;
}

Real potential_Uk(const PrecisionContext& ctx, const EquispacedFamily& fam, long k,
                  const Real& theta) {
  if (k < 0 || k > fam.n()) throw DomainError("potential_Uk: k out of range");
  Real sum = ctx.zero();
  for (long j = 0; j <= fam.n(); ++j) {
    if (j != k) sum -= log_chord(ctx, theta - fam.node(j));
  }
  return sum;
}

std::vector<Real> potential_Uk_diagonal(const PrecisionContext& ctx,
                                        const EquispacedFamily& fam) {
  const long n = fam.n();
  // prefix[m] = -sum_{j=1}^m log(2 sin(eps j / 2))
  std::vector<Real> prefix;
  prefix.reserve(n + 1);
  prefix.push_back(ctx.zero());
  for (long j = 1; j <= n; ++j) prefix.push_back(prefix.back() - log_chord(ctx, fam.node(j)));
  std::vector<Real> out;
  out.reserve(n + 1);
  for (long k = 0; k <= n; ++k) out.push_back(prefix[k] + prefix[n - k]);
  return out;
}

RiemannEstimate riemann_estimate_halfcircle(const PrecisionContext& ctx, const Real& a,
                                            const Real& b, long m) {
  if (m < 1) throw DomainError("riemann_estimate_halfcircle: m must be positive");
  if (!(a >= 0.0 && a < b && b <= ctx.pi())) {
    throw DomainError("riemann_estimate_halfcircle: requires 0 <= a < b <= pi");
  }
  Real h = (b - a) / m;
  Real est = -(clausen(ctx, b) - clausen(ctx, a)) / h + ldexp(log((b + h) / (a + h)), -1);
  return {est, Real(ctx, 1.5)};
}

RiemannEstimate riemann_estimate_crossing(const PrecisionContext& ctx, const Real& a,
                                          const Real& b, long m) {
  if (m < 1) throw DomainError("riemann_estimate_crossing: m must be positive");
  const Real pi = ctx.pi();
  if (!(a >= 0.0 && a < pi && pi < b && b < ctx.two_pi())) {
    throw DomainError("riemann_estimate_crossing: requires 0 <= a < pi < b < 2pi");
  }
  Real h = (b - a) / (m + 1);
  Real est = -(clausen(ctx, b) - clausen(ctx, a)) / h + ldexp(log(pi / (a + h)), -1) +
             ldexp(log(pi / (ctx.two_pi() - b + h)), -1);
  return {est, Real(ctx, 5L)};
}

Real uk_diagonal_estimate(const PrecisionContext& ctx, const EquispacedFamily& fam, long k) {
  if (k < 0 || k > fam.n()) throw DomainError("uk_diagonal_estimate: k out of range");
  return chord_sum_estimate(ctx, fam.eps(), k) + chord_sum_estimate(ctx, fam.eps(), fam.n() - k);
}

std::pair<Real, Real> u_midpoint_and_edge(const PrecisionContext& ctx,
                                          const EquispacedFamily& fam) {
  require_gap_for_two_more(ctx, fam, "u_midpoint_and_edge");
  const Real& eps = fam.eps();
  Real mid = clausen(ctx, ctx.pi() + ldexp(eps * (fam.n() + 2), -1)) * 2L / eps +
             log(ctx.two_pi() - eps * fam.n());
  Real edge = chord_sum_estimate(ctx, eps, fam.n() + 1);
  return {mid, edge};
}

Real QuadraticEnvelope::wide(const Real& x) const {
  return ldexp(M_w, -1) * sqr(x - center) + center_value;
}

Real QuadraticEnvelope::narrow(const Real& x) const {
  return ldexp(M_n, -1) * sqr(x - center) + center_value;
}

QuadraticEnvelope envelopes(const PrecisionContext& ctx, const EquispacedFamily& fam) {
  require_gap_for_two_more(ctx, fam, "envelopes");
  const Real& eps = fam.eps();
  const long n = fam.n();
  Real center = ldexp(eps * n, -1) + ctx.pi();
  Real center_value = potential_U(ctx, fam, center);

  Real mw = ctx.zero();
  Real quarter_span = ldexp(eps * n, -2);
  for (long j = 0; j <= n; ++j) mw += sqr(sec(quarter_span - ldexp(eps * j, -1)));
  mw = ldexp(mw, -2);

  Real offset = eps + ldexp(eps * n, -1) - ctx.pi();
  if (abs(offset) <= ctx.tol(8)) throw DegeneracyError("envelopes: eps + eps n/2 = pi");
  Real edge_value = potential_U(ctx, fam, eps * (n + 1));
  Real mn = ldexp(edge_value - center_value, 1) / sqr(offset);
  return {mw, mn, center, center_value};
}

CurvatureRatio curvature_ratio_bounds(const PrecisionContext& ctx, const EquispacedFamily& fam) {
  const Real& eps = fam.eps();
  if (!(eps * fam.n() < ctx.two_pi() - sqrt(eps) * 2L)) {
    throw RegimeError("curvature_ratio_bounds: requires n eps < 2pi - 2 sqrt(eps)");
  }
  if (fam.n() == 0) throw RegimeError("curvature_ratio_bounds: requires n >= 1");
  QuadraticEnvelope env = envelopes(ctx, fam);
  Real ratio = env.M_n / env.M_w;
  Real model = log(2.0 / fam.alpha());
  Real normalized = ratio / model;
  return {ratio, model, normalized};
}

}  // namespace vcond
