// End-to-end acceptance checks, one PASS/FAIL line per criterion.
// `acceptance --full-figure` runs only the N = 512 reproduction instead.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "vcond/bounds.hpp"
#include "vcond/clausen.hpp"
#include "vcond/experiments.hpp"
#include "vcond/lagrange_lab.hpp"
#include "vcond/matrix_lab.hpp"
#include "vcond/measure_lab.hpp"
#include "vcond/potential_field.hpp"

using namespace vcond;

namespace {

std::mt19937_64 rng(20240611);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << o.detail << "] ("
            << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
  std::cout.unsetf(std::ios::fixed);
}

std::string num(const Real& x, int digits = 6) { return x.str(digits); }

// n + 1 angles with cyclic gaps at least eps.
std::vector<Real> separated_angles(const PrecisionContext& ctx, long n, double eps) {
  std::vector<double> gaps(n + 1);
  double total = 0;
  for (double& g : gaps) {
    g = -std::log(uniform(1e-12, 1.0));
    total += g;
  }
  const double spare = 2 * M_PI - (n + 1) * eps;
  std::vector<Real> out;
  double at = uniform(0.0, 2 * M_PI);
  for (long j = 0; j <= n; ++j) {
    out.push_back(fmod_positive(Real(ctx, at), ctx.two_pi()));
    at += eps + spare * gaps[j] / total * 0.999;
  }
  return out;
}

Outcome error_term_reproduction() {
  PrecisionContext ctx(256);
  std::ostringstream d;
  bool ok = true;
  for (double a : {0.25, 0.5, 0.75}) {
    Real e64 = kappa_row(ctx, SubmatrixSpec::contiguous(64, 1, cell_size(64, a), 1, cell_size(64, a))).error_term;
    Real e128 =
        kappa_row(ctx, SubmatrixSpec::contiguous(128, 1, cell_size(128, a), 1, cell_size(128, a))).error_term;
    for (const Real& e : {e64, e128}) ok = ok && e > 0.3 && e < 2.0;
    ok = ok && abs(e128 - e64) < 0.5;
    d << "alpha=" << a << ": " << num(e64, 4) << ", " << num(e128, 4) << "; ";
  }
  return {ok, d.str() + "need (0.3, 2.0) and |diff| < 0.5"};
}

Outcome catalan_cap_check() {
  PrecisionContext ctx(256);
  const long N = 128;
  KappaRow r = kappa_row(ctx, SubmatrixSpec::contiguous(N, 1, N / 2, 1, N / 2));
  Real rate = catalan(ctx) * 2L / ctx.pi();
  Real lo = rate - (log(Real(ctx, N)) / 2L + 2.0) / N;
  bool ok = r.status == "ok" && r.log_kappa_over_N >= lo && r.log_kappa_over_N <= rate;
  return {ok, "(1/N) log kappa = " + num(r.log_kappa_over_N, 8) + " in [" + num(lo, 8) + ", " + num(rate, 8) + "]"};
}

Outcome barnett_grid() {
  PrecisionContext ctx(256);
  const long N = 64;
  int violations = 0;
  std::string worst;
  double worst_gap = 0;
  for (long i = 1; i <= 8; ++i) {
    for (long j = 1; j <= 8; ++j) {
      long p = N * i / 8, q = N * j / 8;
      KappaRow r = kappa_row(ctx, SubmatrixSpec::contiguous(N, 1, p, 1, q));
      Real lower = barnett_lower(ctx, p, q, N);
      if (!(r.log_kappa >= lower)) {
        ++violations;
        double gap = (lower - r.log_kappa).to_double();
        if (gap > worst_gap) {
          worst_gap = gap;
          worst = "p=" + std::to_string(p) + " q=" + std::to_string(q) + " log kappa " + num(r.log_kappa, 4) +
                  " < " + num(lower, 4);
        }
      }
    }
  }
  std::string d = std::to_string(violations) + " of 64 cells below the bound";
  if (violations > 0) d += "; worst " + worst;
  return {violations == 0, d};
}

Outcome clausen_identities() {
  std::ostringstream d;
  bool ok = true;
  for (int bits : {128, 512}) {
    PrecisionContext ctx(bits);
    ClausenGridReport s = clausen_identity_scan(ctx, 1000);
    Real tol = ctx.tol(32);
    ok = ok && s.oddness < tol && s.duplication < tol && s.ratio_violation.is_zero();
    d << bits << " bits: odd " << num(s.oddness, 2) << " dup " << num(s.duplication, 2) << " ratio ["
      << num(s.inverse_ratio_min, 5) << ", " << num(s.inverse_ratio_max, 5) << "]; ";
  }
  return {ok, d.str()};
}

Outcome orthogonality_oracle() {
  PrecisionContext ctx(256);
  Real worst = ctx.zero();
  for (int t = 0; t < 20; ++t) {
    long n = uniform_int(1, 12);
    NodeSet nodes(ctx, separated_angles(ctx, n, uniform(0.05, 2 * M_PI / (n + 1))));
    SvdFactors f = svd_jacobi_full(ctx, vandermonde_like(ctx, {monomial_basis(ctx, n), nodes.points()}));
    for (long k = 0; k <= n; ++k) {
      Real lhs = circle_mean_square(ctx, lagrange_coeffs(ctx, nodes, k));
      Real rhs = ctx.zero();
      for (std::size_t l = 0; l < f.report.singular_values.size(); ++l) {
        rhs += norm(f.U(k, l)) / sqr(f.report.singular_values[l]);
      }
      worst = max(worst, abs(lhs - rhs) / rhs);
    }
  }
  Real tol = ldexp(ctx.one(), -ctx.bits() / 2);
  return {worst <= tol, "max relative error " + num(worst, 3) + " vs " + num(tol, 3)};
}

Outcome riemann_lemmas() {
  PrecisionContext ctx(128);
  Real worst_half = ctx.zero(), worst_cross = ctx.zero();
  for (int t = 0; t < 100; ++t) {
    double a = uniform(0.0, M_PI), b = uniform(a, M_PI);
    long m = uniform_int(1, 5000);
    RiemannEstimate e = riemann_estimate_halfcircle(ctx, Real(ctx, a), Real(ctx, b), m);
    Real h = (Real(ctx, b) - a) / m, s = ctx.zero();
    for (long j = 1; j <= m; ++j) s += log_chord(ctx, h * j + a);
    worst_half = max(worst_half, abs(s - e.estimate));

    double c = uniform(0.0, M_PI), d = uniform(M_PI, 2 * M_PI);
    long mc = uniform_int(1, 5000);
    RiemannEstimate ec = riemann_estimate_crossing(ctx, Real(ctx, c), Real(ctx, d), mc);
    Real hc = (Real(ctx, d) - c) / (mc + 1), sc = ctx.zero();
    for (long j = 1; j <= mc; ++j) sc += log_chord(ctx, hc * j + c);
    worst_cross = max(worst_cross, abs(sc - ec.estimate));
  }
  return {worst_half <= 1.5 && worst_cross <= 5.0,
          "half-circle max " + num(worst_half, 4) + " (<= 1.5), crossing max " + num(worst_cross, 4) + " (<= 5)"};
}

Outcome envelope_containment() {
  PrecisionContext ctx(192);
  const Real slack = ctx.tol(32);
  long violations = 0, samples = 0;
  for (int t = 0; t < 20; ++t) {
    long n;
    double eps;
    do {
      n = uniform_int(2, 300);
      eps = uniform(0.001, 2 * M_PI / (n + 2));
    } while (!(n * eps < 2 * M_PI - 2 * std::sqrt(eps)));
    EquispacedFamily fam(ctx, n, Real(ctx, eps));
    QuadraticEnvelope env = envelopes(ctx, fam);
    Real lo = fam.eps() * n, edge = lo + fam.eps(), hi = ctx.two_pi() - fam.eps();
    for (int i = 1; i <= 1000; ++i) {
      Real x = lo + (ctx.two_pi() - lo) * (i / 1001.0);
      Real u = potential_U(ctx, fam, x);
      ++samples;
      if (env.wide(x) > u + slack) ++violations;
      if (x > edge && x < hi && env.narrow(x) < u - slack) ++violations;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(samples) + " samples"};
}

Outcome determinant_extremality() {
  PrecisionContext ctx(256);
  Real worst = Real::infinity(ctx.bits(), 1);
  for (int t = 0; t < 100; ++t) {
    long n = uniform_int(1, 12);
    double eps = uniform(0.01, 2 * M_PI / (n + 1));
    Real excess = det_log_vandermonde(ctx, separated_angles(ctx, n, eps)) -
                  det_log_vandermonde(ctx, NodeSet::equispaced(ctx, n, Real(ctx, eps)));
    worst = min(worst, excess);
  }
  return {worst >= ctx.tol(32) * -1.0, "min log|det| excess over equispaced " + num(worst, 4)};
}

Outcome chebotarev() {
  PrecisionContext ctx(256);
  const long N = 7;
  Real smallest = Real::infinity(ctx.bits(), 1);
  long count = 0;
  for (unsigned rows = 1; rows < (1u << N); ++rows) {
    for (unsigned cols = 1; cols < (1u << N); ++cols) {
      if (__builtin_popcount(rows) != __builtin_popcount(cols)) continue;
      std::vector<long> rs, cs;
      for (long i = 0; i < N; ++i) {
        if (rows & (1u << i)) rs.push_back(i + 1);
        if (cols & (1u << i)) cs.push_back(i + 1);
      }
      SpectralReport s = svd_jacobi(ctx, general_submatrix(ctx, N, rs, cs));
      smallest = min(smallest, s.sigma_min);
      ++count;
    }
  }
  Real floor = ldexp(ctx.one(), -ctx.bits() / 2);
  return {smallest > floor, std::to_string(count) + " submatrices, min sigma " + num(smallest, 4)};
}

Outcome equality_trend() {
  PrecisionContext ctx(192);
  std::ostringstream d;
  bool ok = true;
  double prev_gap = 0, prev_n = 0;
  for (long n : {32, 64, 128, 256}) {
    Real eps = ctx.two_pi() / (4L * n);
    Real actual = log_inverse_norm_lagrange(ctx, NodeSet::equispaced(ctx, n, eps));
    double gap = std::abs((actual - thm_main_rate(ctx, n, eps) * n).to_double());
    ok = ok && gap <= 3 * std::log(double(n));
    if (prev_n > 0) ok = ok && gap - prev_gap <= 3 * std::log(n / prev_n);
    d << "n=" << n << ": " << gap << "; ";
    prev_gap = gap;
    prev_n = double(n);
  }
  return {ok, d.str() + "need |gap| <= 3 log n"};
}

Outcome rate_consistency() {
  PrecisionContext ctx(160);
  Real L = ctx.pi();
  Real closed = (clausen(ctx, ldexp(L, -1)) - clausen(ctx, ctx.pi() + ldexp(L, -1))) * 2L / L;
  Real delta = rate_delta(ctx, Measure::arc(ctx, ctx.zero(), L), Measure::circle()).delta;
  bool ok = abs(delta - closed) < 1e-10;
  std::ostringstream d;
  d << "delta " << num(delta, 12) << " vs " << num(closed, 12) << "; gaps";
  double prev = 1e9;
  for (long n : {64, 128, 256, 512}) {
    EquispacedFamily fam(ctx, n, L / n);
    double gap = std::abs((delta - equispaced_lagrange_max_log(ctx, fam) / n).to_double());
    ok = ok && gap < prev;
    prev = gap;
    d << " " << gap;
  }
  return {ok, d.str()};
}

int full_figure() {
  PrecisionContext ctx(512);
  const long N = 512;
  report(12, "N=512 alpha=beta=1/2 cell within 2.0 of the corollary estimate", [&] {
    // The estimate sits a few nats above the default 64-bit margin; 88 bits remain.
    KappaRow r = kappa_row(ctx, SubmatrixSpec::contiguous(N, 1, N / 2, 1, N / 2), true);
    return Outcome{r.status == "ok" && abs(r.error_term) < 2.0,
                   "status " + r.status + ", log kappa " + num(r.log_kappa, 8) + ", estimate " +
                       num(r.cor_bound, 8)};
  });
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1 && std::strcmp(argv[1], "--full-figure") == 0) return full_figure();

  report(1, "error term for square contiguous cells, N in {64, 128}", error_term_reproduction);
  report(2, "Catalan cap at N=128, alpha=beta=1/2", catalan_cap_check);
  report(3, "Barnett lower bound on the 8x8 grid at N=64", barnett_grid);
  report(4, "Clausen identities at 128 and 512 bits", clausen_identities);
  report(5, "Lagrange coefficient norms equal inverse column norms", orthogonality_oracle);
  report(6, "Riemann-sum estimates within 3/2 and 5", riemann_lemmas);
  report(7, "quadratic envelopes contain the potential", envelope_containment);
  report(8, "equispaced nodes minimize |det V|", determinant_extremality);
  report(9, "all square submatrices of F_7 are nonsingular", chebotarev);
  report(10, "equispaced Vandermonde inverse norm tracks the rate", equality_trend);
  report(11, "Lagrange growth on an arc approaches delta", rate_consistency);
  std::cout << failures << " of 11 criteria failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
