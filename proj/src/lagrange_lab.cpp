#include "vcond/lagrange_lab.hpp"

#include <algorithm>
#include <cmath>

#include "vcond/quadrature.hpp"

namespace vcond {

namespace {

// Golden-section search for a maximum of f on [lo, hi].
template <class F>
std::pair<Real, Real> golden_max(F&& f, Real lo, Real hi, const Real& tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  Real x1 = hi - (hi - lo) * inv_phi;
  Real x2 = lo + (hi - lo) * inv_phi;
  Real f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = std::move(x1);
      x1 = x2;
      f1 = f2;
      x2 = lo + (hi - lo) * inv_phi;
      f2 = f(x2);
    } else {
      hi = std::move(x2);
      x2 = x1;
      f2 = f1;
      x1 = hi - (hi - lo) * inv_phi;
      f1 = f(x1);
    }
  }
  if (f1 < f2) return {x2, f2};
  return {x1, f1};
}

}  // namespace

NodeSet::NodeSet(const PrecisionContext& ctx, std::vector<Real> angles) : eps_min_(ctx.zero()) {
  if (angles.empty()) throw DomainError("NodeSet: at least one node is required");
  const Real two_pi = ctx.two_pi();
  for (Real& a : angles) {
    if (!a.is_finite()) throw DomainError("NodeSet: angles must be finite");
    a = fmod_positive(a.rounded(ctx), two_pi);
  }
  std::sort(angles.begin(), angles.end(), [](const Real& x, const Real& y) { return x < y; });
  eps_min_ = two_pi;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    Real gap = (i + 1 < angles.size()) ? angles[i + 1] - angles[i]
                                       : two_pi - angles[i] + angles[0];
    if (angles.size() > 1 && gap <= 0.0) throw DegeneracyError("NodeSet: duplicate nodes");
    if (angles.size() > 1) eps_min_ = min(eps_min_, gap);
  }
  angles_ = std::move(angles);
  points_.reserve(angles_.size());
  for (const Real& a : angles_) points_.push_back(unit_point(ctx, a));
}

NodeSet NodeSet::equispaced(const PrecisionContext& ctx, long n, const Real& eps) {
  if (n < 0) throw DomainError("NodeSet::equispaced: n must be nonnegative");
  std::vector<Real> a;
  a.reserve(n + 1);
  for (long j = 0; j <= n; ++j) a.push_back(eps.rounded(ctx) * j);
  return NodeSet(ctx, std::move(a));
}

NodeSet NodeSet::roots_of_unity(const PrecisionContext& ctx, long m) {
  if (m < 1) throw DomainError("NodeSet::roots_of_unity: m must be positive");
  std::vector<Real> a;
  a.reserve(m);
  for (long j = 0; j < m; ++j) a.push_back(ctx.two_pi() * j / m);
  return NodeSet(ctx, std::move(a));
}

Complex LagrangeCoeffs::eval(const Complex& z) const {
  Complex acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

LagrangeCoeffs lagrange_coeffs(const PrecisionContext& ctx, const NodeSet& nodes, long k) {
  const long n = nodes.degree();
  if (k < 0 || k > n) throw DomainError("lagrange_coeffs: k out of range");
  const auto& z = nodes.points();
  std::vector<Complex> poly{Complex(ctx.one(), ctx.zero())};
  poly.reserve(n + 1);
  Complex denom(ctx.one(), ctx.zero());
  for (long j = 0; j <= n; ++j) {
    if (j == k) continue;
    // poly <- poly * (z - z_j)
    poly.push_back(poly.back());
    for (std::size_t i = poly.size() - 2; i >= 1; --i) poly[i] = poly[i - 1] - z[j] * poly[i];
    poly[0] = -(z[j] * poly[0]);
    denom *= z[k] - z[j];
  }
  if (norm(denom).is_zero()) throw DegeneracyError("lagrange_coeffs: coincident nodes");
  Complex inv = Complex(ctx.one(), ctx.zero()) / denom;
  for (Complex& c : poly) c *= inv;
  return {k, std::move(poly)};
}

Real lagrange_abs(const PrecisionContext& ctx, const NodeSet& nodes, long k, const Complex& z) {
  const auto& p = nodes.points();
  if (k < 0 || k > nodes.degree()) throw DomainError("lagrange_abs: k out of range");
  Real num = ctx.one(), den = ctx.one();
  for (long j = 0; j <= nodes.degree(); ++j) {
    if (j == k) continue;
    num *= abs(z - p[j]);
    den *= abs(p[k] - p[j]);
  }
  return num / den;
}

Real circle_mean_square(const PrecisionContext& ctx, const LagrangeCoeffs& lc) {
  Real s = ctx.zero();
  for (const Complex& c : lc.coeffs) s += norm(c);
  return s;
}

CircleMax max_on_circle(const PrecisionContext& ctx, const NodeSet& nodes, long k) {
  if (k < 0 || k > nodes.degree()) throw DomainError("max_on_circle: k out of range");
  const long grid = 32 * static_cast<long>(nodes.size());
  const Real step = ctx.two_pi() / grid;
  auto f = [&](const Real& t) { return lagrange_abs(ctx, nodes, k, unit_point(ctx, t)); };
  long best = 0;
  Real best_val = f(ctx.zero());
  for (long g = 1; g < grid; ++g) {
    Real v = f(step * g);
    if (v > best_val) {
      best_val = std::move(v);
      best = g;
    }
  }
  auto [theta, value] =
      golden_max(f, step * (best - 1), step * (best + 1), ldexp(ctx.one(), -ctx.bits() / 4));
  if (value < best_val) return {fmod_positive(step * best, ctx.two_pi()), best_val};
  return {fmod_positive(theta, ctx.two_pi()), value};
}

std::vector<long> central_window(long n) {
  const long mid = n / 2;
  std::vector<long> s;
  for (long j = 0; j <= n; ++j) {
    if ((j - mid) * (j - mid) <= n) s.push_back(j);
  }
  return s;
}

std::vector<Complex> test_vector(const PrecisionContext& ctx, const EquispacedFamily& fam) {
  const long n = fam.n();
  if (n < 4) throw DegeneracyError("test_vector: window is degenerate for n < 4");
  const Real& eps = fam.eps();
  if (!(eps < ctx.two_pi() * n - sqrt(eps) * 2L)) {
    throw RegimeError("test_vector: requires eps < 2pi n - 2 sqrt(eps)");
  }
  const std::vector<long> window = central_window(n);
  Real scale = 1.0 / sqrt(Real(ctx, static_cast<long>(window.size())));
  std::vector<Complex> x(n + 1, Complex(ctx));
  for (long j : window) {
    Complex phase = unit_point(ctx, eps * (j * n) / 2L);
    if ((n - j) % 2 != 0) phase = -phase;
    x[j] = phase * scale;
  }
  return x;
}

Real xi_ratio(const PrecisionContext& ctx, const EquispacedFamily& fam) {
  const long n = fam.n();
  const Real& eps = fam.eps();
  if (!(eps * n < ctx.two_pi() - sqrt(eps) * 2L)) {
    throw RegimeError("xi_ratio: requires n eps < 2pi - 2 sqrt(eps)");
  }
  NodeSet nodes = NodeSet::equispaced(ctx, n, eps);
  const Real lo = eps * (n + 1);
  const Real hi = ctx.two_pi() - eps;
  // xi - 1 decays like exp(-c n), so the gap integral needs far more relative
  // accuracy than the ratio itself.
  const Real rel_tol = ldexp(ctx.one(), -ctx.bits() / 2);
  Real worst = ctx.zero();
  for (long k : central_window(n)) {
    Real whole = circle_mean_square(ctx, lagrange_coeffs(ctx, nodes, k)) * ctx.two_pi();
    auto q = integrate(
        ctx, [&](const Real& t) { return sqr(lagrange_abs(ctx, nodes, k, unit_point(ctx, t))); },
        lo, hi, rel_tol);
    if (!q.converged) throw ConvergenceError("xi_ratio: gap integral did not converge");
    worst = max(worst, whole / q.value);
  }
  return worst;
}

Real equispaced_lagrange_max_log(const PrecisionContext& ctx, const EquispacedFamily& fam,
                                 int grid_per_gap) {
  if (grid_per_gap < 2) throw DomainError("equispaced_lagrange_max_log: grid_per_gap must be >= 2");
  const long n = fam.n();
  const Real& eps = fam.eps();
  const std::vector<Real> diag = potential_Uk_diagonal(ctx, fam);
  if (n == 0) return ctx.zero();

  // Grid angles theta_g = (g + 1/2) h, g = 0..G-1, with h = eps / grid_per_gap.
  // Offsets theta_g - k eps = (g - k grid_per_gap + 1/2) h, so one table of
  // chord logarithms indexed by m = g - k grid_per_gap serves every term.
  const Real h = eps / static_cast<long>(grid_per_gap);
  const long G = static_cast<long>(std::ceil((ctx.two_pi() / h).to_double()));
  const long shift = n * grid_per_gap;
  std::vector<Real> chord;
  chord.reserve(G + shift);
  for (long m = -shift; m < G; ++m) chord.push_back(log_chord(ctx, h * (2 * m + 1) / 2L));
  auto C = [&](long m) -> const Real& { return chord[m + shift]; };

  std::vector<Real> U(G, ctx.zero());
  for (long g = 0; g < G; ++g) {
    for (long j = 0; j <= n; ++j) U[g] -= C(g - j * grid_per_gap);
  }

  struct Candidate {
    long k, g;
    Real value;
  };
  std::vector<Candidate> best;
  for (long k = 0; k <= n; ++k) {
    long arg = 0;
    Real top = Real::infinity(ctx.bits(), -1);
    for (long g = 0; g < G; ++g) {
      // log|L_k| = U_k(k eps) - U(theta) - log|e^{i theta} - e^{i k eps}|
      Real v = diag[k] - U[g] - C(g - k * grid_per_gap);
      if (v > top) {
        top = std::move(v);
        arg = g;
      }
    }
    best.push_back({k, arg, std::move(top)});
  }
  std::sort(best.begin(), best.end(),
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });

  Real result = best.front().value;
  const Real tol = ldexp(ctx.one(), -ctx.bits() / 4);
  const std::size_t refine = std::min<std::size_t>(best.size(), 4);
  for (std::size_t i = 0; i < refine; ++i) {
    const long k = best[i].k;
    auto f = [&](const Real& t) { return diag[k] - potential_Uk(ctx, fam, k, t); };
    Real lo = h * (2 * best[i].g - 1) / 2L;
    Real hi = h * (2 * best[i].g + 3) / 2L;
    try {
      auto refined = golden_max(f, std::move(lo), std::move(hi), tol);
      result = max(result, refined.second);
    } catch (const PoleError&) {
      // The bracket touches a node where |L_k| vanishes; the grid value stands.
    }
  }
  return result;
}

}  // namespace vcond
