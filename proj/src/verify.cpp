#include "vcond/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "vcond/bounds.hpp"
#include "vcond/clausen.hpp"
#include "vcond/lagrange_lab.hpp"
#include "vcond/matrix_lab.hpp"
#include "vcond/measure_lab.hpp"
#include "vcond/potential_field.hpp"

namespace vcond {
namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
long uniform_int(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Outcome of one check: empty string on success, otherwise the witness.
using CheckFn = std::function<std::string()>;

struct Runner {
  std::string suite;
  VerifyReport& report;

  void run(const std::string& name, const CheckFn& fn, bool skip = false) {
    CheckResult r{suite, name, false, skip, ""};
    if (skip) {
      r.passed = true;
      r.detail = "skipped below 128 bits";
    } else {
      try {
        r.detail = fn();
        r.passed = r.detail.empty();
      } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
      }
    }
    report.checks.push_back(std::move(r));
  }
};

std::string witness(const std::string& what, const Real& value) {
  return what + " = " + value.str(8);
}

// n + 1 angles with cyclic gaps at least eps, random offset.
std::vector<Real> separated_angles(const PrecisionContext& ctx, Rng& rng, long n, double eps) {
  std::vector<double> gaps(n + 1);
  double total = 0;
  for (double& g : gaps) {
    g = -std::log(uniform(rng, 1e-12, 1.0));
    total += g;
  }
  const double spare = 2 * M_PI - (n + 1) * eps;
  std::vector<Real> angles;
  double at = uniform(rng, 0.0, 2 * M_PI);
  for (long j = 0; j <= n; ++j) {
    angles.push_back(fmod_positive(Real(ctx, at), ctx.two_pi()));
    at += eps + spare * gaps[j] / total * 0.999;
  }
  return angles;
}

void clausen_suite(Runner& r, const PrecisionContext& ctx, Rng&) {
  ClausenGridReport scan = clausen_identity_scan(ctx, 1000);
  const Real tol = ctx.tol(32);
  r.run("oddness", [&] { return scan.oddness < tol ? "" : witness("residual", scan.oddness); });
  r.run("duplication", [&] { return scan.duplication < tol ? "" : witness("residual", scan.duplication); });
  r.run("difference quotient", [&] {
    return scan.difference_quotient.is_zero() ? "" : witness("excess", scan.difference_quotient);
  });
  r.run("ratio in [1/pi, 2/5]", [&] {
    return scan.ratio_violation.is_zero() ? "" : witness("violation", scan.ratio_violation);
  });
  r.run("Cl(pi/2) = G", [&] {
    Real d = abs(clausen(ctx, ldexp(ctx.pi(), -1)) - catalan(ctx));
    return d < tol ? "" : witness("residual", d);
  });
}

void potentials_suite(Runner& r, const PrecisionContext& ctx, Rng& rng) {
  r.run("Riemann sums on a half circle", [&] {
    for (int t = 0; t < 100; ++t) {
      double a = uniform(rng, 0.0, M_PI), b = uniform(rng, a, M_PI);
      long m = uniform_int(rng, 1, 2000);
      RiemannEstimate e = riemann_estimate_halfcircle(ctx, Real(ctx, a), Real(ctx, b), m);
      Real h = (Real(ctx, b) - a) / m, s = ctx.zero();
      for (long j = 1; j <= m; ++j) s += log_chord(ctx, h * j + a);
      if (abs(s - e.estimate) > 1.5) return witness("error", abs(s - e.estimate));
    }
    return std::string();
  });
  r.run("Riemann sums across pi", [&] {
    for (int t = 0; t < 100; ++t) {
      double a = uniform(rng, 0.0, M_PI), b = uniform(rng, M_PI, 2 * M_PI);
      long m = uniform_int(rng, 1, 2000);
      RiemannEstimate e = riemann_estimate_crossing(ctx, Real(ctx, a), Real(ctx, b), m);
      Real h = (Real(ctx, b) - a) / (m + 1), s = ctx.zero();
      for (long j = 1; j <= m; ++j) s += log_chord(ctx, h * j + a);
      if (abs(s - e.estimate) > 5.0) return witness("error", abs(s - e.estimate));
    }
    return std::string();
  });
  r.run("quadratic envelopes", [&] {
    const Real slack = ctx.tol(32);
    for (int t = 0; t < 20; ++t) {
      long n;
      double eps;
      do {
        n = uniform_int(rng, 2, 200);
        eps = uniform(rng, 0.001, 2 * M_PI / (n + 2));
      } while (!(n * eps < 2 * M_PI - 2 * std::sqrt(eps)));
      EquispacedFamily fam(ctx, n, Real(ctx, eps));
      QuadraticEnvelope env = envelopes(ctx, fam);
      Real lo = fam.eps() * n;
      for (int i = 1; i <= 50; ++i) {
        Real x = lo + (ctx.two_pi() - lo) * (i / 51.0);
        Real u = potential_U(ctx, fam, x);
        Real s = slack * (1.0 + abs(u));
        if (env.wide(x) > u + s) return "wide envelope above U at n=" + std::to_string(n);
        if (x > lo + fam.eps() && x < ctx.two_pi() - fam.eps() && env.narrow(x) < u - s) {
          return "narrow envelope below U at n=" + std::to_string(n);
        }
      }
    }
    return std::string();
  });
}

void lagrange_suite(Runner& r, const PrecisionContext& ctx, Rng& rng) {
  const bool low = ctx.bits() < 128;
  r.run("Lagrange norms equal inverse columns", [&] {
    for (int t = 0; t < 20; ++t) {
      long n = uniform_int(rng, 1, 12);
      NodeSet nodes(ctx, separated_angles(ctx, rng, n, uniform(rng, 0.05, 2 * M_PI / (n + 1))));
      VandermondeLikeSpec spec{monomial_basis(ctx, n), nodes.points()};
      SvdFactors f = svd_jacobi_full(ctx, vandermonde_like(ctx, spec));
      for (long k = 0; k <= n; ++k) {
        Real lhs = circle_mean_square(ctx, lagrange_coeffs(ctx, nodes, k));
        // Column k of the inverse V diag(1/s) U^* has squared norm sum_l |U_kl|^2 / s_l^2.
        Real rhs = ctx.zero();
        for (std::size_t l = 0; l < f.report.singular_values.size(); ++l) {
          rhs += norm(f.U(k, l)) / sqr(f.report.singular_values[l]);
        }
        Real rel = abs(lhs - rhs) / rhs;
        if (rel > ldexp(ctx.one(), -ctx.bits() / 2)) return witness("relative error", rel);
      }
    }
    return std::string();
  }, low);
  r.run("equispaced nodes minimize |det|", [&] {
    for (int t = 0; t < 100; ++t) {
      long n = uniform_int(rng, 1, 12);
      double eps = uniform(rng, 0.01, 2 * M_PI / (n + 1));
      Real lhs = det_log_vandermonde(ctx, separated_angles(ctx, rng, n, eps));
      Real rhs = det_log_vandermonde(ctx, NodeSet::equispaced(ctx, n, Real(ctx, eps)));
      if (lhs < rhs - ctx.tol(32)) return witness("deficit", rhs - lhs);
    }
    return std::string();
  });
}

void matrices_suite(Runner& r, const PrecisionContext& ctx, Rng& rng) {
  r.run("Chebotarev N = 7", [&] {
    const long N = 7;
    for (unsigned rows = 1; rows < (1u << N); ++rows) {
      for (unsigned cols = 1; cols < (1u << N); ++cols) {
        if (__builtin_popcount(rows) != __builtin_popcount(cols)) continue;
        std::vector<long> rs, cs;
        for (long i = 0; i < N; ++i) {
          if (rows & (1u << i)) rs.push_back(i + 1);
          if (cols & (1u << i)) cs.push_back(i + 1);
        }
        SpectralReport s = svd_jacobi(ctx, general_submatrix(ctx, N, rs, cs));
        if (!(s.sigma_min > ldexp(ctx.one(), -ctx.bits() / 2))) {
          return "rows " + std::to_string(rows) + " cols " + std::to_string(cols) + " " +
                 witness("sigma_min", s.sigma_min);
        }
      }
    }
    return std::string();
  }, ctx.bits() < 128);
  r.run("cyclic shift invariance", [&] {
    for (int t = 0; t < 6; ++t) {
      long N = uniform_int(rng, 8, 32), p = uniform_int(rng, 1, N), q = uniform_int(rng, 1, N);
      SpectralReport a = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, 1, p, 1, q));
      SpectralReport b = kappa_submatrix(
          ctx, SubmatrixSpec::contiguous(N, uniform_int(rng, 1, N), p, uniform_int(rng, 1, N), q));
      if (a.singular != b.singular) return "singularity differs at N=" + std::to_string(N);
      if (!a.singular && abs(a.log_kappa - b.log_kappa) > ctx.tol(64) * (1.0 + abs(a.log_kappa))) {
        return witness("log kappa difference", abs(a.log_kappa - b.log_kappa));
      }
    }
    return std::string();
  });
  r.run("SVD backward error", [&] {
    for (int t = 0; t < 5; ++t) {
      std::size_t m = uniform_int(rng, 2, 12), n = uniform_int(rng, 2, 12);
      CMatrix a(ctx, m, n);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) = Complex(Real(ctx, uniform(rng, -1, 1)), Real(ctx, uniform(rng, -1, 1)));
        }
      }
      SvdFactors f = svd_jacobi_full(ctx, a);
      CMatrix us = f.U;
      for (std::size_t j = 0; j < f.report.singular_values.size(); ++j) {
        for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= f.report.singular_values[j];
      }
      CMatrix rec = us * f.V.adjoint();
      Real err = ctx.zero();
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) err += norm(rec(i, j) - a(i, j));
      }
      err = sqrt(err);
      if (err > ldexp(a.frobenius_norm(), -ctx.bits() + 32)) return witness("backward error", err);
    }
    return std::string();
  });
}

void bounds_suite(Runner& r, const PrecisionContext& ctx, Rng&) {
  r.run("Barnett below corollary for max(p, q) <= 7N/8", [&] {
    const long N = 64;
    for (long p = 1; p <= 7 * N / 8; ++p) {
      for (long q = 1; q <= 7 * N / 8; ++q) {
        if (barnett_lower(ctx, p, q, N) > corollary_contiguous(ctx, N, p, q, true)) {
          return "p=" + std::to_string(p) + " q=" + std::to_string(q);
        }
      }
    }
    return std::string();
  });
  r.run("Catalan cap dominates the corollary", [&] {
    for (long N : {16L, 100L}) {
      Real cap = catalan_cap(ctx, N, true);
      for (long m = 1; m <= N; ++m) {
        if (corollary_contiguous(ctx, N, m, 1, true) > cap + ctx.tol(32) * N) {
          return "N=" + std::to_string(N) + " m=" + std::to_string(m);
        }
      }
    }
    return std::string();
  });
  r.run("regime boundaries", [&] {
    for (long n : {5L, 50L, 500L}) {
      if (regime_classify(ctx, n, ctx.two_pi() / (n + 1)) != Regime::full_circle) return std::string("full circle");
      if (regime_classify(ctx, n, ctx.two_pi() / (4L * n)) != Regime::general) return std::string("general");
    }
    return std::string();
  });
}

void measures_suite(Runner& r, const PrecisionContext& ctx, Rng& rng) {
  auto random_measure = [&]() {
    if (uniform_int(rng, 0, 1) == 0) {
      double a = uniform(rng, 0.0, 6.0);
      return Measure::arc(ctx, Real(ctx, a), Real(ctx, a + uniform(rng, 0.2, 6.0)));
    }
    std::vector<Complex> pts;
    long n = uniform_int(rng, 3, 9);
    for (long j = 0; j < n; ++j) pts.push_back(unit_point(ctx, Real(ctx, uniform(rng, 0.0, 2 * M_PI))));
    return Measure::discrete(ctx, pts);
  };
  r.run("KS symmetry and triangle inequality", [&] {
    const Real slack = ldexp(ctx.one(), -20);
    for (int t = 0; t < 8; ++t) {
      Measure a = random_measure(), b = random_measure(), c = random_measure();
      Real ab = ks_distance(ctx, a, b).value, ba = ks_distance(ctx, b, a).value;
      Real ac = ks_distance(ctx, a, c).value, bc = ks_distance(ctx, b, c).value;
      if (abs(ab - ba) > ctx.tol(8)) return witness("asymmetry", abs(ab - ba));
      if (ab > 1.0 || ab < 0.0) return witness("out of range", ab);
      if (ac > ab + bc + slack) return witness("triangle excess", ac - ab - bc);
    }
    return std::string();
  });
  r.run("delta of a half arc is 4G/pi", [&] {
    DeltaReport d = rate_delta(ctx, Measure::arc(ctx, ctx.zero(), ctx.pi()), Measure::circle());
    Real err = abs(d.delta - catalan(ctx) * 4L / ctx.pi());
    return err < 1e-10 ? "" : witness("error", err);
  });
  r.run("potential difference bound", [&] {
    const Real L = ldexp(ctx.pi(), -1);
    Measure arc = Measure::arc(ctx, ctx.zero(), L);
    RegularityParams p{ctx.pi() / L, ctx.one(), ctx.one(), ctx.one(), ctx.one(), Real(ctx, 2L)};
    for (long n : {16L, 64L}) {
      Measure atoms = Measure::arc_atoms(ctx, ctx.zero(), L, n);
      Complex z = unit_point(ctx, Real(ctx, uniform(rng, 2.0, 6.0)));
      Real actual = abs(potential(ctx, atoms, z) - potential(ctx, arc, z));
      Real bound = potential_diff_bound(ctx, arc, atoms, z, p);
      if (actual > bound) return witness("excess", actual - bound);
    }
    return std::string();
  });
}

using SuiteFn = void (*)(Runner&, const PrecisionContext&, Rng&);

SuiteFn find_suite(const std::string& name) {
  if (name == "clausen") return clausen_suite;
  if (name == "potentials") return potentials_suite;
  if (name == "lagrange") return lagrange_suite;
  if (name == "matrices") return matrices_suite;
  if (name == "bounds") return bounds_suite;
  if (name == "measures") return measures_suite;
  return nullptr;
}

}  // namespace

bool VerifyReport::all_passed() const {
  for (const CheckResult& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"clausen", "potentials", "lagrange",
                                              "matrices", "bounds", "measures"};
  return names;
}

VerifyReport run_verify(const std::string& suite, std::uint64_t seed, int bits) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify_suites();
  } else if (find_suite(suite) != nullptr) {
    names.push_back(suite);
  } else {
    throw DomainError("unknown verify suite '" + suite + "'");
  }
  PrecisionContext ctx(bits);
  VerifyReport report;
  for (const std::string& name : names) {
    // Each suite gets its own stream so results do not depend on which others ran.
    Rng rng(seed ^ std::hash<std::string>{}(name));
    Runner runner{name, report};
    find_suite(name)(runner, ctx, rng);
  }
  return report;
}

}  // namespace vcond
