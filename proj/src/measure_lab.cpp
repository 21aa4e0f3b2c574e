#include "vcond/measure_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vcond/clausen.hpp"
#include "vcond/quadrature.hpp"

namespace vcond {
namespace {

Real angle_of(const PrecisionContext& ctx, const Complex& z) {
  return fmod_positive(arg(z), ctx.two_pi());
}

bool on_circle(const PrecisionContext& ctx, const Complex& z) {
  return abs(abs(z) - 1.0) <= ctx.tol(8);
}

// Measure of [lo, hi] inside [a, b] modulo 2pi; widths at most 2pi each.
Real arc_overlap(const PrecisionContext& ctx, const Real& lo, const Real& hi, const Real& a,
                 const Real& b) {
  Real total = ctx.zero();
  for (long k = -2; k <= 2; ++k) {
    Real shift = ctx.two_pi() * k;
    Real l = max(lo + shift, a);
    Real h = min(hi + shift, b);
    if (h > l) total += h - l;
  }
  return total;
}

Real clamp_unit(const PrecisionContext& ctx, const Real& x) {
  if (x > 1.0) return ctx.one();
  if (x < -1.0) return ctx.one() * -1.0;
  return x;
}

Real arc_potential_on_circle(const PrecisionContext& ctx, const ArcUniform& arc, const Real& theta) {
  return (clausen(ctx, theta - arc.a) - clausen(ctx, theta - arc.b)) / (arc.b - arc.a);
}

Real arc_potential_quadrature(const PrecisionContext& ctx, const ArcUniform& arc, const Complex& z) {
  const Real rho = abs(z);
  const Real phi = arg(z);
  const Real dr = sqr(rho - 1.0);
  // |z - e^{it}|^2 = (|z| - 1)^2 + 4 |z| sin^2((t - phi)/2), stable near the circle.
  RealFunction f = [&](const Real& t) {
    Real s = sin(ldexp(t - phi, -1));
    return ldexp(log(dr + ldexp(rho * sqr(s), 2)), -1) * -1.0;
  };
  std::vector<Real> breaks{arc.a};
  if (!rho.is_zero()) {
    // Split where the integrand peaks.
    Real t0 = arc.a + fmod_positive(phi - arc.a, ctx.two_pi());
    if (t0 > arc.a && t0 < arc.b) breaks.push_back(t0);
  }
  breaks.push_back(arc.b);
  QuadratureResult q = integrate_piecewise(ctx, f, breaks, ctx.tol(16), 12);
  return q.value / (arc.b - arc.a);
}

struct CircleBreak {
  Real angle;
  Real mass_mu;
  Real mass_nu;
};

// Continuous arc-length part of a circle-supported measure on the arc starting at `start` of length `len`.
Real continuous_arc_mass(const PrecisionContext& ctx, const Measure& m, const Real& start, const Real& len) {
  if (m.is_circle()) return len / ctx.two_pi();
  if (m.is_arc()) {
    const auto& arc = std::get<ArcUniform>(m.variant());
    return arc_overlap(ctx, start, start + len, arc.a, arc.b) / (arc.b - arc.a);
  }
  return ctx.zero();
}

void add_breaks(const PrecisionContext& ctx, const Measure& m, bool is_mu, std::vector<CircleBreak>& out) {
  auto push = [&](const Real& angle, const Real& w) {
    Real mu = is_mu ? w : ctx.zero();
    Real nu = is_mu ? ctx.zero() : w;
    out.push_back({fmod_positive(angle, ctx.two_pi()), mu, nu});
  };
  if (m.is_arc()) {
    const auto& arc = std::get<ArcUniform>(m.variant());
    push(arc.a, ctx.zero());
    push(arc.b, ctx.zero());
  } else if (m.is_discrete()) {
    const auto& pts = std::get<DiscreteUniform>(m.variant()).points;
    Real w = ctx.one() / static_cast<long>(pts.size());
    for (const Complex& p : pts) push(angle_of(ctx, p), w);
  }
}

KSReport ks_circle(const PrecisionContext& ctx, const Measure& mu, const Measure& nu, int level) {
  std::vector<CircleBreak> raw;
  add_breaks(ctx, mu, true, raw);
  add_breaks(ctx, nu, false, raw);
  std::sort(raw.begin(), raw.end(), [](const CircleBreak& x, const CircleBreak& y) { return x.angle < y.angle; });
  std::vector<CircleBreak> br;
  for (CircleBreak& b : raw) {
    if (!br.empty() && br.back().angle == b.angle) {
      br.back().mass_mu += b.mass_mu;
      br.back().mass_nu += b.mass_nu;
    } else {
      br.push_back(std::move(b));
    }
  }
  KSReport best{ctx.zero(), Complex(ctx), ctx.zero(), level};
  const std::size_t m = br.size();
  if (m == 0) return best;

  Real delta = ldexp(ctx.one(), -level);
  for (std::size_t i = 0; i < m; ++i) {
    Real gap = (i + 1 < m ? br[i + 1].angle : br[0].angle + ctx.two_pi()) - br[i].angle;
    if (m > 1) delta = min(delta, ldexp(gap, -2));
  }

  // Prefix sums of atom masses in sorted order, doubled to handle wrap-around.
  std::vector<Real> pre_mu{ctx.zero()}, pre_nu{ctx.zero()};
  for (std::size_t k = 0; k < 2 * m; ++k) {
    pre_mu.push_back(pre_mu.back() + br[k % m].mass_mu);
    pre_nu.push_back(pre_nu.back() + br[k % m].mass_nu);
  }

  Real best_diff = Real::infinity(ctx.bits(), -1);
  Real best_start(ctx.bits()), best_len(ctx.bits());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t step = 0; step <= m; ++step) {
      const std::size_t j = i + step;  // index into the doubled list
      Real span = br[j % m].angle + ctx.two_pi() * static_cast<long>(j / m) - br[i].angle;
      for (int s1 : {1, -1}) {
        for (int s2 : {1, -1}) {
          // s = +1 extends past the break and includes its atom.
          Real start = br[i].angle - delta * s1;
          Real len = span + delta * (s1 + s2);
          if (!(len > 0.0) || len >= ctx.two_pi()) continue;
          std::size_t first = s1 > 0 ? i : i + 1;
          std::size_t last = s2 > 0 ? j : j - (j > 0 ? 1 : 0);
          if (s2 < 0 && j == 0) continue;
          Real atoms_mu = ctx.zero(), atoms_nu = ctx.zero();
          if (last + 1 > first) {
            atoms_mu = pre_mu[last + 1] - pre_mu[first];
            atoms_nu = pre_nu[last + 1] - pre_nu[first];
          }
          Real diff = abs(atoms_mu + continuous_arc_mass(ctx, mu, start, len) - atoms_nu -
                          continuous_arc_mass(ctx, nu, start, len));
          if (diff > best_diff) {
            best_diff = diff;
            best_start = start;
            best_len = len;
          }
        }
      }
    }
  }
  if (!best_diff.is_finite()) return best;
  Real mid = best_start + ldexp(best_len, -1);
  best.witness_center = unit_point(ctx, mid);
  best.witness_radius = ldexp(sin(ldexp(best_len, -2)), 1);
  best.value = abs(ball_mass(ctx, mu, best.witness_center, best.witness_radius) -
                   ball_mass(ctx, nu, best.witness_center, best.witness_radius));
  return best;
}

void collect_points(const PrecisionContext& ctx, const Measure& m, std::vector<Complex>& atoms,
                    std::vector<Complex>& centers) {
  if (m.is_discrete()) {
    const auto& pts = std::get<DiscreteUniform>(m.variant()).points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      atoms.push_back(pts[i]);
      centers.push_back(pts[i]);
      if (i + 1 < pts.size()) centers.push_back((pts[i] + pts[i + 1]) * ldexp(ctx.one(), -1));
    }
  } else if (m.is_arc()) {
    const auto& arc = std::get<ArcUniform>(m.variant());
    atoms.push_back(unit_point(ctx, arc.a));
    atoms.push_back(unit_point(ctx, arc.b));
    centers.push_back(atoms[atoms.size() - 2]);
    centers.push_back(atoms.back());
    centers.push_back(unit_point(ctx, ldexp(arc.a + arc.b, -1)));
  } else if (m.is_disk()) {
    centers.push_back(std::get<DiskUniform>(m.variant()).center);
  }
}

KSReport ks_general(const PrecisionContext& ctx, const Measure& mu, const Measure& nu, int level) {
  std::vector<Complex> atoms, centers;
  collect_points(ctx, mu, atoms, centers);
  collect_points(ctx, nu, atoms, centers);
  const Real extent = max(mu.support_radius(ctx), nu.support_radius(ctx));
  const int g = 16;
  for (int x = 0; x <= g; ++x) {
    for (int y = 0; y <= g; ++y) {
      centers.push_back(Complex(extent * (2.0 * x / g - 1.0), extent * (2.0 * y / g - 1.0)));
    }
  }
  const Real delta = ldexp(ctx.one(), -level);
  KSReport best{ctx.zero(), Complex(ctx), ctx.zero(), level};
  for (const Complex& c : centers) {
    std::vector<Real> radii;
    for (const Complex& a : atoms) {
      Real d = abs(a - c);
      radii.push_back(d + delta);
      if (d > delta) radii.push_back(d - delta);
    }
    for (int k = 1; k <= 4 * g; ++k) radii.push_back(extent * k / (2L * g));
    for (const Real& r : radii) {
      Real diff = abs(ball_mass(ctx, mu, c, r) - ball_mass(ctx, nu, c, r));
      if (diff > best.value) {
        best.value = diff;
        best.witness_center = c;
        best.witness_radius = r;
      }
    }
  }
  return best;
}

// Golden-section maximum of f on [lo, hi].
std::pair<Real, Real> golden_max(const std::function<Real(const Real&)>& f, Real lo, Real hi,
                                 const Real& tol) {
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

struct Extremum {
  Real value;
  Complex at;
};

// max of sign * U^mu over the support of `where`.
Extremum search_support(const PrecisionContext& ctx, const Measure& mu, const Measure& where,
                        int sign, int resolution) {
  auto value_at = [&](const Complex& z) -> Real {
    try {
      return potential(ctx, mu, z) * static_cast<long>(sign);
    } catch (const PoleError&) {
      return Real::infinity(ctx.bits(), sign);
    }
  };
  if (where.is_discrete()) {
    Extremum best{Real::infinity(ctx.bits(), -1), Complex(ctx)};
    for (const Complex& p : std::get<DiscreteUniform>(where.variant()).points) {
      Real v = value_at(p);
      if (v > best.value) best = {v, p};
    }
    return best;
  }
  if (where.is_disk()) {
    const auto& d = std::get<DiskUniform>(where.variant());
    Extremum best{value_at(d.center), d.center};
    const int rings = std::max(4, resolution / 16);
    for (int k = 1; k <= rings; ++k) {
      Real rad = d.radius * k / static_cast<long>(rings);
      for (int j = 0; j < resolution; ++j) {
        Complex z = d.center + unit_point(ctx, ctx.two_pi() * j / static_cast<long>(resolution)) * rad;
        Real v = value_at(z);
        if (v > best.value) best = {v, z};
      }
    }
    return best;
  }
  Real lo = ctx.zero(), hi = ctx.two_pi();
  bool closed = false;
  if (where.is_arc()) {
    const auto& arc = std::get<ArcUniform>(where.variant());
    lo = arc.a;
    hi = arc.b;
    closed = true;
  }
  auto f = [&](const Real& t) { return value_at(unit_point(ctx, t)); };
  const int n = std::max(resolution, 8);
  const long cells = closed ? n - 1 : n;
  const Real step = (hi - lo) / cells;
  long best_j = 0;
  Real best_v = f(lo);
  for (long j = 1; j < n; ++j) {
    Real v = f(lo + step * j);
    if (v > best_v) {
      best_v = v;
      best_j = j;
    }
  }
  Real left = lo + step * (best_j - 1), right = lo + step * (best_j + 1);
  if (closed) {
    left = max(left, lo);
    right = min(right, hi);
  }
  auto [t, v] = golden_max(f, left, right, ldexp(ctx.one(), -ctx.bits() / 4));
  if (v > best_v) return {v, unit_point(ctx, t)};
  return {best_v, unit_point(ctx, lo + step * best_j)};
}

}  // namespace

Real potential(const PrecisionContext& ctx, const Measure& mu, const Complex& z) {
  if (mu.is_circle()) return log(max(abs(z), ctx.one())) * -1.0;
  if (mu.is_discrete()) {
    const auto& pts = std::get<DiscreteUniform>(mu.variant()).points;
    Real sum = ctx.zero();
    for (const Complex& t : pts) {
      Real d = abs(z - t);
      if (d.is_zero()) throw PoleError("potential: z is an atom of the measure");
      sum -= log(d);
    }
    return sum / static_cast<long>(pts.size());
  }
  if (mu.is_disk()) {
    const auto& d = std::get<DiskUniform>(mu.variant());
    Real dist = abs(z - d.center);
    if (dist <= d.radius) {
      return ldexp((sqr(d.radius) - sqr(dist)) / sqr(d.radius), -1) - log(d.radius);
    }
    return log(dist) * -1.0;
  }
  const auto& arc = std::get<ArcUniform>(mu.variant());
  if (on_circle(ctx, z)) return arc_potential_on_circle(ctx, arc, arg(z));
  return arc_potential_quadrature(ctx, arc, z);
}

Real ball_mass(const PrecisionContext& ctx, const Measure& mu, const Complex& c, const Real& r) {
  if (r < 0.0) return ctx.zero();
  if (mu.is_discrete()) {
    const auto& pts = std::get<DiscreteUniform>(mu.variant()).points;
    long count = 0;
    for (const Complex& t : pts) {
      if (abs(t - c) <= r) ++count;
    }
    return Real(ctx, count) / static_cast<long>(pts.size());
  }
  if (mu.is_disk()) {
    const auto& dk = std::get<DiskUniform>(mu.variant());
    const Real& R0 = dk.radius;
    Real d = abs(c - dk.center);
    if (d + r <= R0) return sqr(r) / sqr(R0);
    if (d + R0 <= r) return ctx.one();
    if (d >= r + R0) return ctx.zero();
    // Lens area of two intersecting disks.
    Real a1 = acos(clamp_unit(ctx, (sqr(d) + sqr(r) - sqr(R0)) / (d * r * 2L)));
    Real a2 = acos(clamp_unit(ctx, (sqr(d) + sqr(R0) - sqr(r)) / (d * R0 * 2L)));
    Real k = (r + R0 - d) * (d + r - R0) * (d - r + R0) * (d + r + R0);
    Real area = sqr(r) * a1 + sqr(R0) * a2 - ldexp(sqrt(max(k, ctx.zero())), -1);
    return min(area / (ctx.pi() * sqr(R0)), ctx.one());
  }
  // Circle-supported: the ball meets the circle in the arc |t - arg c| <= h.
  Real d = abs(c);
  Real h(ctx.bits());
  if (d.is_zero()) {
    if (r < 1.0) return ctx.zero();
    h = ctx.pi();
  } else {
    Real kappa = (1.0 + sqr(d) - sqr(r)) / (d * 2L);
    if (kappa >= 1.0) return ctx.zero();
    h = kappa <= -1.0 ? ctx.pi() : acos(kappa);
  }
  if (mu.is_circle()) return h / ctx.pi();
  const auto& arc = std::get<ArcUniform>(mu.variant());
  Real phi = arg(c);
  return min(arc_overlap(ctx, phi - h, phi + h, arc.a, arc.b) / (arc.b - arc.a), ctx.one());
}

Real support_distance(const PrecisionContext& ctx, const Measure& mu, const Complex& z) {
  if (mu.is_circle()) return abs(abs(z) - 1.0);
  if (mu.is_disk()) {
    const auto& d = std::get<DiskUniform>(mu.variant());
    return max(abs(z - d.center) - d.radius, ctx.zero());
  }
  if (mu.is_discrete()) {
    Real best = Real::infinity(ctx.bits(), 1);
    for (const Complex& t : std::get<DiscreteUniform>(mu.variant()).points) best = min(best, abs(z - t));
    return best;
  }
  const auto& arc = std::get<ArcUniform>(mu.variant());
  if (!abs(z).is_zero()) {
    Real t = arc.a + fmod_positive(arg(z) - arc.a, ctx.two_pi());
    if (t <= arc.b) return abs(abs(z) - 1.0);
  }
  return min(abs(z - unit_point(ctx, arc.a)), abs(z - unit_point(ctx, arc.b)));
}

KSReport ks_distance(const PrecisionContext& ctx, const Measure& mu, const Measure& nu, int level) {
  if (level < 1) throw DomainError("ks_distance: level must be positive");
  if (mu.on_unit_circle(ctx) && nu.on_unit_circle(ctx)) return ks_circle(ctx, mu, nu, level);
  return ks_general(ctx, mu, nu, level);
}

RegularityReport regularity_check(const PrecisionContext& ctx, const Measure& mu, const NodeSet& S,
                                  const RegularityParams& p) {
  if (!(p.rho1 > 0.0) || !(p.rho2 > 0.0) || !(p.C_holder > 0.0) || !(p.R > 0.0) ||
      !(p.alpha_holder > 0.0) || p.alpha_holder > 1.0 || !(p.beta_dim > 0.0) || p.beta_dim > 2.0) {
    throw DomainError("regularity_check: parameters out of range");
  }
  RegularityReport rep;
  const Real zero = ctx.zero();

  // 1. Support radius.
  Real srad = mu.support_radius(ctx);
  rep.support = {srad <= p.R * (1.0 + ctx.tol(8)), srad, Complex(ctx), srad};

  // Sample points on the support, shared by conditions 2 and 4.
  std::vector<Complex> base;
  if (mu.is_discrete()) {
    base = std::get<DiscreteUniform>(mu.variant()).points;
  } else if (mu.is_disk()) {
    const auto& d = std::get<DiskUniform>(mu.variant());
    base.push_back(d.center);
    for (int k = 1; k <= 4; ++k) {
      for (int j = 0; j < 16; ++j) {
        base.push_back(d.center + unit_point(ctx, ctx.two_pi() * j / 16L) * (d.radius * k / 4L));
      }
    }
  } else {
    Real lo = zero, len = ctx.two_pi();
    if (mu.is_arc()) {
      const auto& arc = std::get<ArcUniform>(mu.variant());
      lo = arc.a;
      len = arc.b - arc.a;
    }
    for (int j = 0; j <= 64; ++j) base.push_back(unit_point(ctx, lo + len * j / 64L));
  }

  // 2. Upper density for r below the minimal gap of S.
  const Real eps = S.eps_min();
  rep.upper_density = {true, zero, Complex(ctx), zero};
  for (int j = 0; j <= 24; ++j) {
    Real r = ldexp(eps * (1.0 - 1.0 / 256), -j);
    Real rb = pow(r, p.beta_dim);
    std::vector<Complex> centers = base;
    if (mu.on_unit_circle(ctx) && r < 1.0) {
      // A center inside the circle at depth sqrt(1 - r^2) holds the longest arc.
      Real depth = sqrt(1.0 - sqr(r));
      for (const Complex& b : base) centers.push_back(b * depth);
    }
    for (const Complex& c : centers) {
      Real ratio = ball_mass(ctx, mu, c, r) / rb;
      if (ratio > rep.upper_density.worst) rep.upper_density = {true, ratio, c, r};
    }
  }
  rep.upper_density.pass = rep.upper_density.worst <= p.rho1;

  // 3. Lower density at the maximum of the potential.
  if (mu.is_discrete()) {
    rep.lower_density = {false, zero, base.front(), zero};
  } else {
    Extremum top = search_support(ctx, mu, mu, 1, 256);
    Real r = Real::infinity(ctx.bits(), 1);
    for (const Complex& s : S.points()) r = min(r, abs(top.at - s));
    if (r.is_zero()) {
      rep.lower_density = {false, zero, top.at, r};
    } else {
      Real ratio = ball_mass(ctx, mu, top.at, r) / pow(r, p.beta_dim);
      rep.lower_density = {ratio >= p.rho2, ratio, top.at, r};
    }
  }

  // 4. Hoelder continuity of U on pairs at geometric scales.
  rep.holder = {true, zero, Complex(ctx), zero};
  auto test_pair = [&](const Complex& x, const Real& ux, const Complex& y) {
    Real dist = abs(x - y);
    if (dist.is_zero()) return;
    Real ratio(ctx.bits());
    try {
      ratio = abs(ux - potential(ctx, mu, y)) / pow(dist, p.alpha_holder);
    } catch (const PoleError&) {
      ratio = Real::infinity(ctx.bits(), 1);
    }
    if (ratio > rep.holder.worst) rep.holder = {true, ratio, x, dist};
  };
  if (mu.is_discrete()) {
    // Next to an atom U changes by log(2)/n between distances h and 2h.
    for (const Complex& a : base) {
      for (int k = 1; k <= 40; ++k) {
        Complex x = a + Complex(ldexp(ctx.one(), -k), zero);
        test_pair(x, potential(ctx, mu, x), a + Complex(ldexp(ctx.one(), 1 - k), zero));
      }
    }
  }
  for (std::size_t i = 0; i < base.size() && !mu.is_discrete(); ++i) {
    const Complex& x = base[i];
    Real ux = potential(ctx, mu, x);
    for (int k = 1; k <= 40; ++k) {
      Real h = ldexp(ctx.one(), -k);
      if (mu.on_unit_circle(ctx)) {
        test_pair(x, ux, x * unit_point(ctx, h));
        test_pair(x, ux, x * unit_point(ctx, h * -1.0));
      } else {
        test_pair(x, ux, x + Complex(h, zero));
      }
      // Radial pairs leave the circle and need quadrature; sample them sparsely.
      if (i % 8 == 0 && k % 4 == 1 && k <= 20) test_pair(x, ux, x * (1.0 + h));
    }
  }
  rep.holder.pass = rep.holder.worst <= p.C_holder;
  return rep;
}

Real potential_diff_bound(const PrecisionContext& ctx, const Measure& mu_c, const Measure& mu_d,
                          const Complex& z, const RegularityParams& params, int ks_level) {
  if (!(params.rho1 > 0.0) || !(params.beta_dim > 0.0) || !(params.R > 0.0)) {
    throw DomainError("potential_diff_bound: rho1, beta_dim and R must be positive");
  }
  Real dist = support_distance(ctx, mu_d, z);
  if (dist.is_zero()) throw PreconditionError("potential_diff_bound: z lies on the support of mu_d");
  Real ks = ks_distance(ctx, mu_d, mu_c, ks_level).value;
  if (ks.is_zero()) return ks;
  Real eps = min(dist, pow(params.beta_dim * ks / params.rho1, ctx.one() / params.beta_dim));
  return (1.0 + log(params.R / eps)) * ks;
}

DeltaReport rate_delta(const PrecisionContext& ctx, const Measure& mu, const Measure& nu, int resolution) {
  if (resolution < 2) throw DomainError("rate_delta: resolution must be at least 2");
  Extremum top = search_support(ctx, mu, mu, 1, resolution);
  Extremum bottom = search_support(ctx, mu, nu, -1, resolution);
  Real inf_value = bottom.value * -1.0;
  return {top.value - inf_value, top.value, top.at, inf_value, bottom.at};
}

}  // namespace vcond
