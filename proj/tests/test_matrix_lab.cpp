#include "support.hpp"

#include <sstream>

#include "vcond/clausen.hpp"
#include "vcond/matrix_lab.hpp"

using namespace vcond;
using namespace vcond::testing;

namespace {

NodeSet random_nodes(const PrecisionContext& ctx, long n, double eps) {
  std::vector<Real> a;
  for (double t : random_separated_angles(n, eps)) a.emplace_back(ctx, t);
  return NodeSet(ctx, std::move(a));
}

CMatrix random_matrix(const PrecisionContext& ctx, std::size_t r, std::size_t c) {
  CMatrix m(ctx, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Complex(ctx, uniform(-1, 1), uniform(-1, 1));
  }
  return m;
}

// ||M - U diag(s) V^*||_F for the factors of svd_jacobi_full.
Real backward_error(const PrecisionContext& ctx, const CMatrix& m, const SvdFactors& f) {
  const std::size_t k = f.report.singular_values.size();
  CMatrix us = f.U;
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= f.report.singular_values[j];
  }
  CMatrix r = us * f.V.adjoint();
  Real s = ctx.zero();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s += norm(m(i, j) - r(i, j));
  }
  return sqrt(s);
}

// Largest deviation of Q^* Q from the identity.
Real orthogonality_defect(const PrecisionContext& ctx, const CMatrix& q) {
  CMatrix g = q.adjoint() * q;
  Real worst = ctx.zero();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      Complex d = g(i, j);
      if (i == j) d.re -= 1.0;
      worst = max(worst, abs(d));
    }
  }
  return worst;
}

std::vector<std::vector<long>> subsets(long n, long k) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  auto rec = [&](auto&& self, long from) -> void {
    if (static_cast<long>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (long i = from; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

TEST_CASE("Fourier submatrix entries") {
  PrecisionContext ctx(128);
  CMatrix f = fourier_submatrix(ctx, SubmatrixSpec::contiguous(8, 1, 4, 1, 4));
  REQUIRE(f.rows() == 4);
  REQUIRE(f.cols() == 4);
  for (long k = 0; k < 4; ++k) {
    Real t = ctx.pi() * k / 4L;
    CHECK(abs(f(1, k).re - cos(t)) <= ctx.tol(4));
    CHECK(abs(f(1, k).im - sin(t)) <= ctx.tol(4));
    CHECK(abs(f(0, k).re - 1.0) <= ctx.tol(4));
  }
  for (long N : {5, 8, 12}) {
    CMatrix full = fourier_submatrix(ctx, SubmatrixSpec::contiguous(N, 1, N, 1, N));
    for (std::size_t i = 0; i < full.rows(); ++i) {
      for (std::size_t j = 0; j < full.cols(); ++j) CHECK(abs(abs(full(i, j)) - 1.0) <= ctx.tol(4));
    }
    SpectralReport r = svd_jacobi(ctx, full);
    CHECK(abs(r.sigma_max - sqrt(Real(ctx, N))) <= ctx.tol(12));
    CHECK(abs(r.kappa - 1.0) <= ctx.tol(12));
    CHECK_FALSE(r.singular);
  }
  // Cyclic column intervals wrap around.
  SubmatrixSpec wrap(8, {2, 5}, 7, 3);
  CHECK(wrap.cols() == std::vector<long>{7, 8, 1});
  CHECK(wrap.alpha() == 3.0 / 8);
  CHECK(wrap.beta() == 2.0 / 8);
  CHECK_THROWS_AS(SubmatrixSpec(8, {1, 1}, 1, 2), DomainError);
  CHECK_THROWS_AS(SubmatrixSpec(8, {0}, 1, 2), DomainError);
  CHECK_THROWS_AS(SubmatrixSpec(8, {1}, 1, 0), DomainError);
}

TEST_CASE("singular and nonsingular general submatrices") {
  PrecisionContext ctx(256);
  SpectralReport r = svd_jacobi(ctx, general_submatrix(ctx, 4, {1, 3}, {1, 3}));
  CHECK(r.singular);
  CHECK(r.kappa.is_inf());
  CHECK(r.sigma_min <= ctx.tol(64));

  CMatrix full = general_submatrix(ctx, 6, {1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5, 6});
  CMatrix ref = fourier_submatrix(ctx, SubmatrixSpec::contiguous(6, 1, 6, 1, 6));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) CHECK(abs(full(i, j) - ref(i, j)) <= ctx.tol(2));
  }
}

TEST_CASE("every square submatrix of a prime-order Fourier matrix is nonsingular") {
  PrecisionContext ctx(128);
  const Real floor_ = ldexp(ctx.one(), -ctx.bits() / 2);
  for (long N : {5, 7}) {
    long count = 0;
    for (long k = 1; k <= N; ++k) {
      auto sets = subsets(N, k);
      for (const auto& rows : sets) {
        for (const auto& cols : sets) {
          SpectralReport r = svd_jacobi(ctx, general_submatrix(ctx, N, rows, cols));
          CHECK(r.sigma_min > floor_);
          CHECK_FALSE(r.singular);
          ++count;
        }
      }
    }
    // sum_k C(N,k)^2 = C(2N,N) square pairs with k >= 1.
    CHECK(count == (N == 5 ? 251 : 3431));
  }
}

TEST_CASE("SVD of identity and diagonal matrices") {
  PrecisionContext ctx(128);
  CMatrix id(ctx, 5, 5);
  for (std::size_t i = 0; i < 5; ++i) id(i, i).re = 1.0;
  SpectralReport r = svd_jacobi(ctx, id);
  for (const Real& s : r.singular_values) CHECK(s == 1.0);
  CHECK(r.kappa == 1.0);

  CMatrix d(ctx, 4, 3);
  d(0, 1).re = 1.0;
  d(2, 0).re = 3.0;
  SpectralReport rd = svd_jacobi(ctx, d);
  REQUIRE(rd.singular_values.size() == 3);
  CHECK(rd.singular_values[0] == 3.0);
  CHECK(rd.singular_values[1] == 1.0);
  CHECK(rd.singular_values[2].is_zero());
  CHECK(rd.singular);
  CHECK(rd.log_kappa.is_inf());
  CHECK_THROWS_AS(svd_jacobi(ctx, CMatrix()), DomainError);
}

TEST_CASE("SVD backward error and orthogonality") {
  for (int bits : {128, 256}) {
    PrecisionContext ctx(bits);
    std::vector<CMatrix> cases;
    cases.push_back(random_matrix(ctx, 6, 6));
    cases.push_back(random_matrix(ctx, 9, 4));
    cases.push_back(random_matrix(ctx, 3, 7));
    cases.push_back(fourier_submatrix(ctx, SubmatrixSpec::contiguous(32, 1, 10, 1, 12)));
    cases.push_back(fourier_submatrix(ctx, SubmatrixSpec(24, {1, 4, 5, 9, 13}, 3, 6)));
    cases.push_back(vandermonde(ctx, random_nodes(ctx, 12, 0.05)));
    for (const CMatrix& m : cases) {
      SvdFactors f = svd_jacobi_full(ctx, m);
      CHECK(f.report.converged);
      INFO(m.rows() << "x" << m.cols() << " at " << bits << " bits");
      CHECK(backward_error(ctx, m, f) <= ldexp(m.frobenius_norm(), -bits + 32));
      CHECK(orthogonality_defect(ctx, f.V) <= ctx.tol(32));
      for (std::size_t j = 1; j < f.report.singular_values.size(); ++j) {
        CHECK(f.report.singular_values[j - 1] >= f.report.singular_values[j]);
      }
      CHECK(f.report.sigma_max >= f.report.sigma_min);
      CHECK(abs(f.report.kappa - f.report.sigma_max / f.report.sigma_min) <= f.report.kappa * ctx.tol(4));
    }
  }
}

TEST_CASE("singular values agree with the Lagrange-coefficient inverse") {
  // F_{S,T} with S = T = {1..8}, N = 16, is the Vandermonde matrix of the
  // nodes e^{2 pi i j / 16}; its inverse has the Lagrange coefficients as columns.
  PrecisionContext ctx(256);
  SpectralReport direct = kappa_submatrix(ctx, SubmatrixSpec::contiguous(16, 1, 8, 1, 8));
  NodeSet nodes = NodeSet::equispaced(ctx, 7, ctx.two_pi() / 16L);
  CMatrix w(ctx, 8, 8);
  for (long k = 0; k < 8; ++k) {
    LagrangeCoeffs lc = lagrange_coeffs(ctx, nodes, k);
    for (std::size_t i = 0; i < 8; ++i) w(i, k) = lc.coeffs[i];
  }
  SpectralReport inv = svd_jacobi(ctx, w);
  const Real tol = ldexp(ctx.one(), -200);
  for (std::size_t j = 0; j < 8; ++j) {
    Real expect = 1.0 / inv.singular_values[7 - j];
    INFO("j = " << j << " log2 err " << log2_err(direct.singular_values[j], expect));
    CHECK(abs(direct.singular_values[j] - expect) <= tol * direct.singular_values[j]);
  }
  CHECK(abs(log_inverse_norm_lagrange(ctx, nodes) + log(direct.sigma_min)) <= ldexp(ctx.one(), -80));
}

TEST_CASE("log inverse norm by power iteration matches Jacobi on equispaced nodes") {
  PrecisionContext ctx(256);
  for (long n : {10, 24, 48}) {
    NodeSet nodes = NodeSet::equispaced(ctx, n, ctx.two_pi() / (4L * n));
    CMatrix v = vandermonde_like(ctx, {monomial_basis(ctx, n), nodes.points()});
    SpectralReport r = svd_jacobi(ctx, v);
    Real direct = -log(r.sigma_min);
    Real power = log_inverse_norm_lagrange(ctx, nodes);
    INFO("n = " << n);
    CHECK(abs(direct - power) <= ldexp(ctx.one(), -80) * abs(direct));
    // Lower precision gives the same value to the precision used.
    PrecisionContext lctx(192);
    Real low = log_inverse_norm_lagrange(lctx, NodeSet::equispaced(lctx, n, lctx.two_pi() / (4L * n)));
    CHECK(abs(low - power) <= ldexp(ctx.one(), -80) * abs(direct));
  }
}

TEST_CASE("Vandermonde matrices") {
  PrecisionContext ctx(192);
  for (long m : {3, 8, 11}) {
    CMatrix v = vandermonde(ctx, NodeSet::roots_of_unity(ctx, m));
    CMatrix g = v.adjoint() * v;
    for (long i = 0; i < m; ++i) {
      for (long j = 0; j < m; ++j) {
        Complex d = g(i, j);
        if (i == j) d.re -= static_cast<double>(m);
        CHECK(abs(d) <= ctx.tol(16));
      }
    }
  }
  CMatrix pm = vandermonde(ctx, NodeSet(ctx, {ctx.zero(), ctx.pi()}));
  CHECK(abs(pm(0, 0).re - 1.0) <= ctx.tol(2));
  CHECK(abs(pm(0, 1).re - 1.0) <= ctx.tol(2));
  CHECK(abs(pm(1, 0).re - 1.0) <= ctx.tol(2));
  CHECK(abs(pm(1, 1).re + 1.0) <= ctx.tol(2));

  // Equispaced nodes with eps = 2pi/N give a leading block of the DFT.
  const long N = 20, n = 6;
  CMatrix lead = vandermonde(ctx, NodeSet::equispaced(ctx, n, ctx.two_pi() / N));
  CMatrix dft = fourier_submatrix(ctx, SubmatrixSpec::contiguous(N, 1, n + 1, 1, n + 1));
  for (long i = 0; i <= n; ++i) {
    for (long j = 0; j <= n; ++j) CHECK(abs(lead(i, j) - dft(i, j)) <= ctx.tol(8));
  }
}

TEST_CASE("Vandermonde-like matrices") {
  PrecisionContext ctx(192);
  NodeSet nodes = random_nodes(ctx, 6, 0.2);
  CMatrix v = vandermonde(ctx, nodes);
  auto mono = monomial_basis(ctx, 6);
  CMatrix vl = vandermonde_like(ctx, {mono, nodes.points()});
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) CHECK(abs(vl(i, j) - v(j, i)) <= ctx.tol(4));
  }

  auto doubled = mono;
  for (auto& p : doubled) {
    for (Complex& c : p) c *= Real(ctx, 2L);
  }
  CMatrix v2 = vandermonde_like(ctx, {doubled, nodes.points()});
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) CHECK(abs(v2(i, j) - vl(i, j) * Real(ctx, 2L)) <= ctx.tol(4));
  }

  // Recombined basis p_k = sum_i B_{ik} z^i gives V B, with
  // kappa(V)/kappa(B) <= kappa(V B) <= kappa(V) kappa(B).
  CMatrix b = random_matrix(ctx, 7, 7);
  std::vector<std::vector<Complex>> basis(7);
  for (std::size_t k = 0; k < 7; ++k) {
    for (std::size_t i = 0; i < 7; ++i) basis[k].push_back(b(i, k));
  }
  CMatrix vb = vandermonde_like(ctx, {basis, nodes.points()});
  CMatrix prod = vl * b;
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) CHECK(abs(vb(i, j) - prod(i, j)) <= ctx.tol(12));
  }
  Real kv = svd_jacobi(ctx, vl).kappa, kb = svd_jacobi(ctx, b).kappa, kvb = svd_jacobi(ctx, vb).kappa;
  CHECK(kvb <= kv * kb * (1.0 + 1e-30));
  CHECK(kvb * (1.0 + 1e-30) >= kv / kb);

  CHECK_THROWS_AS(vandermonde_like(ctx, {monomial_basis(ctx, 3), nodes.points()}), DomainError);
}

TEST_CASE("Gram matrices") {
  PrecisionContext ctx(128);
  CMatrix g = gram_matrix(ctx, monomial_basis(ctx, 4), Measure::circle());
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) CHECK(abs(g(i, j).re - (i == j ? 1.0 : 0.0)) <= ctx.tol(2));
  }

  std::vector<std::vector<Complex>> b2 = {{Complex(ctx, 1, 0)}, {Complex(ctx, 1, 0), Complex(ctx, 1, 0)}};
  CMatrix g2 = gram_matrix(ctx, b2, Measure::circle());
  CHECK(g2(0, 0).re == 1.0);
  CHECK(g2(0, 1).re == 1.0);
  CHECK(g2(1, 0).re == 1.0);
  CHECK(g2(1, 1).re == 2.0);

  for (long m : {5, 9}) {
    NodeSet roots = NodeSet::roots_of_unity(ctx, m);
    CMatrix gd = gram_matrix(ctx, monomial_basis(ctx, 4), Measure::discrete(ctx, roots.points()));
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(abs(gd(i, j).re - (i == j ? 1.0 : 0.0)) <= ctx.tol(8));
        CHECK(abs(gd(i, j).im) <= ctx.tol(8));
      }
    }
  }

  // Uniform measure on the upper half circle:
  // G_{jk} = (1/pi) int_0^pi e^{i(j-k)t} dt = (e^{i(j-k)pi} - 1) / (i pi (j-k)).
  Measure half = Measure::arc(ctx, ctx.zero(), ctx.pi());
  CHECK_THROWS_AS(gram_matrix(ctx, monomial_basis(ctx, 3), half), UnsupportedError);
  CMatrix ga = gram_matrix(ctx, monomial_basis(ctx, 3), half, true);
  for (long j = 0; j < 4; ++j) {
    for (long k = 0; k < 4; ++k) {
      long d = j - k;
      double re = 0, im = 0;
      if (d == 0) {
        re = 1;
      } else if (d % 2 != 0) {
        im = 2.0 / (M_PI * d);
      }
      CHECK(std::abs(ga(j, k).re.to_double() - re) < 1e-15);
      CHECK(std::abs(ga(j, k).im.to_double() - im) < 1e-15);
    }
  }
  CHECK_THROWS_AS(gram_matrix(ctx, monomial_basis(ctx, 2),
                              Measure::disk(ctx, Complex(ctx), Real(ctx, 0.5)), true),
                  UnsupportedError);
}

TEST_CASE("Vandermonde norm bounds on the circle") {
  PrecisionContext ctx(128);
  // Relative accuracy of the computed singular values.
  const Real slack = ctx.tol(40);
  for (int trial = 0; trial < 20; ++trial) {
    long n = uniform_int(1, 14);
    SpectralReport r = svd_jacobi(ctx, vandermonde(ctx, random_nodes(ctx, n, 0.01)));
    CHECK(r.sigma_max >= sqrt(Real(ctx, n + 1)) * (1.0 - slack));
    CHECK(r.sigma_max <= Real(ctx, n + 1) * (1.0 + slack));

    long N = uniform_int(static_cast<int>(n + 1), 40);
    std::vector<long> all(N);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng());
    std::vector<Real> angles;
    for (long j = 0; j <= n; ++j) angles.push_back(ctx.two_pi() * all[j] / N);
    SpectralReport rf = svd_jacobi(ctx, vandermonde(ctx, NodeSet(ctx, angles)));
    CHECK(rf.sigma_max >= sqrt(Real(ctx, n + 1)) * (1.0 - slack));
    CHECK(rf.sigma_max <= sqrt(Real(ctx, N)) * (1.0 + slack));
  }
}

TEST_CASE("smallest singular value does not increase when rows are added to a wide matrix") {
  PrecisionContext ctx(192);
  for (int trial = 0; trial < 20; ++trial) {
    long N = uniform_int(12, 40);
    long q = uniform_int(3, static_cast<int>(N - 1));
    long p = uniform_int(1, static_cast<int>(q - 1));
    long extra = uniform_int(1, static_cast<int>(q - p));
    long s = uniform_int(1, static_cast<int>(N));
    long t = uniform_int(1, static_cast<int>(N));
    SpectralReport base = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, s, p, t, q));
    SpectralReport grown = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, s, p + extra, t, q));
    INFO("N=" << N << " p=" << p << " q=" << q << " extra=" << extra);
    CHECK(grown.sigma_min <= base.sigma_min * (1.0 + 1e-40));
    // The same holds for tall matrices gaining columns.
    SpectralReport tall = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, t, q, s, p));
    SpectralReport tall_grown = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, t, q, s, p + extra));
    CHECK(tall_grown.sigma_min <= tall.sigma_min * (1.0 + 1e-40));
  }
}

TEST_CASE("Barnett lower bound on contiguous submatrices") {
  PrecisionContext ctx(192);
  for (long N : {16, 24, 40}) {
    for (long p = 1; p <= N; p += 3) {
      for (long q = 1; q <= N; q += 5) {
        SpectralReport r = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, 1, p, 1, q));
        Real barnett = ldexp(ctx.pi(), -1) * (Real(ctx, std::min(p, q)) - Real(ctx, p * q) / N);
        INFO("N=" << N << " p=" << p << " q=" << q);
        CHECK(r.log_kappa >= barnett);
      }
    }
  }
}

TEST_CASE("inverse norm sandwich by Lagrange circle norms") {
  PrecisionContext ctx(192);
  for (int trial = 0; trial < 20; ++trial) {
    long n = uniform_int(1, 16);
    NodeSet nodes = random_nodes(ctx, n, uniform(0.02, 0.3));
    SpectralReport r = svd_jacobi(ctx, vandermonde(ctx, nodes));
    Real inv_sq = 1.0 / sqr(r.sigma_min);
    Real top = ctx.zero(), total = ctx.zero();
    for (long k = 0; k <= n; ++k) {
      Real ms = circle_mean_square(ctx, lagrange_coeffs(ctx, nodes, k));
      top = max(top, ms);
      total += ms;
    }
    CHECK(top <= inv_sq * (1.0 + 1e-40));
    CHECK(inv_sq <= total * (1.0 + 1e-40));
  }
}

TEST_CASE("column norms of the inverse equal Lagrange circle norms") {
  PrecisionContext ctx(256);
  for (int trial = 0; trial < 10; ++trial) {
    long n = uniform_int(2, 12);
    NodeSet nodes = random_nodes(ctx, n, 0.05);
    DenseRows v = node_rows_vandermonde(nodes.points());
    for (long k = 0; k <= n; ++k) {
      std::vector<Complex> e(n + 1, Complex(ctx));
      e[k].re = 1.0;
      std::vector<Complex> col = gauss_solve(v, e);
      Real s = ctx.zero();
      for (const Complex& c : col) s += norm(c);
      Real ms = circle_mean_square(ctx, lagrange_coeffs(ctx, nodes, k));
      CHECK(abs(s - ms) <= ldexp(ms, -ctx.bits() / 2));
    }
  }
}

TEST_CASE("Vandermonde-like lemma bounds with Gram matrices") {
  PrecisionContext ctx(192);
  for (int trial = 0; trial < 6; ++trial) {
    long n = uniform_int(2, 7);
    NodeSet nodes = random_nodes(ctx, n, 0.15);
    // A basis of random combinations of monomials.
    CMatrix b = random_matrix(ctx, n + 1, n + 1);
    std::vector<std::vector<Complex>> basis(n + 1);
    for (long k = 0; k <= n; ++k) {
      for (long i = 0; i <= n; ++i) basis[k].push_back(b(i, k));
    }
    SpectralReport rv = svd_jacobi(ctx, vandermonde_like(ctx, {basis, nodes.points()}));
    Real inv_norm = 1.0 / rv.sigma_min;
    Real root = sqrt(Real(ctx, n + 1));

    std::vector<std::vector<Complex>> lag;
    for (long k = 0; k <= n; ++k) lag.push_back(lagrange_coeffs(ctx, nodes, k).coeffs);

    std::vector<Measure> measures = {Measure::circle(),
                                     Measure::discrete(ctx, NodeSet::roots_of_unity(ctx, 3 * (n + 1)).points())};
    for (const Measure& nu : measures) {
      Real gamma = basis_sup_norm(ctx, basis, nu);
      Real lmax = basis_sup_norm(ctx, lag, nu);
      SpectralReport rg = svd_jacobi(ctx, gram_matrix(ctx, basis, nu));
      Real g_inv = 1.0 / rg.sigma_min;
      INFO("trial " << trial << " n = " << n);
      CHECK(lmax / (root * gamma) <= inv_norm * (1.0 + 1e-20));
      CHECK(inv_norm <= root * sqrt(g_inv) * lmax * (1.0 + 1e-20));
    }
  }
}

TEST_CASE("sup norms over supports") {
  PrecisionContext ctx(128);
  // |1 + z| on the circle peaks at z = 1 with value 2.
  std::vector<std::vector<Complex>> b = {{Complex(ctx, 1, 0), Complex(ctx, 1, 0)}};
  CHECK(abs(basis_sup_norm(ctx, b, Measure::circle()) - 2.0) <= ctx.tol(40));
  // On the arc [pi/2, pi] the maximum sits at the endpoint pi/2: |1 + i| = sqrt 2.
  Measure arc = Measure::arc(ctx, ldexp(ctx.pi(), -1), ctx.pi());
  CHECK(abs(basis_sup_norm(ctx, b, arc) - sqrt(Real(ctx, 2L))) <= ctx.tol(40));
  // On the disk |z - 1| <= 1/2 the maximum modulus is at z = 3/2.
  Measure disk = Measure::disk(ctx, Complex(ctx, 1, 0), Real(ctx, 0.5));
  CHECK(abs(basis_sup_norm(ctx, b, disk) - 2.5) <= ctx.tol(40));
  Measure atoms = Measure::discrete(ctx, {Complex(ctx, 0, 1), Complex(ctx, -1, 0)});
  CHECK(abs(basis_sup_norm(ctx, b, atoms) - sqrt(Real(ctx, 2L))) <= ctx.tol(4));
}

TEST_CASE("determinant of circle Vandermonde matrices") {
  PrecisionContext ctx(192);
  for (long N : {2, 5, 16}) {
    Real expect = log(Real(ctx, N)) * N / 2L;
    CHECK(abs(det_log_vandermonde(ctx, NodeSet::roots_of_unity(ctx, N)) - expect) <= ctx.tol(16));
  }
  CHECK(abs(det_log_vandermonde(ctx, NodeSet(ctx, {ctx.zero(), ctx.pi()})) - log(Real(ctx, 2L))) <=
        ctx.tol(4));
  CHECK(det_log_vandermonde(ctx, std::vector<Real>{ctx.one(), ctx.one() + ctx.two_pi()}).is_inf());

  // Against Gaussian elimination on the node-rows matrix.
  for (int trial = 0; trial < 5; ++trial) {
    long n = uniform_int(1, 9);
    NodeSet nodes = random_nodes(ctx, n, 0.1);
    DenseRows a = node_rows_vandermonde(nodes.points());
    Real logdet = ctx.zero();
    for (std::size_t c = 0; c < a.size(); ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < a.size(); ++r) {
        if (norm(a[r][c]) > norm(a[piv][c])) piv = r;
      }
      std::swap(a[c], a[piv]);
      logdet += log(abs(a[c][c]));
      for (std::size_t r = c + 1; r < a.size(); ++r) {
        Complex f = a[r][c] / a[c][c];
        for (std::size_t k = c; k < a.size(); ++k) a[r][k] -= f * a[c][k];
      }
    }
    CHECK(abs(det_log_vandermonde(ctx, nodes) - logdet) <= ctx.tol(24));
  }
}

TEST_CASE("equispaced nodes minimize the determinant among separated sets") {
  PrecisionContext ctx(192);
  for (int trial = 0; trial < 100; ++trial) {
    long n = uniform_int(1, 12);
    double eps = uniform(0.05, 2 * M_PI / (n + 1));
    Real eq = det_log_vandermonde(ctx, NodeSet::equispaced(ctx, n, Real(ctx, eps)));
    NodeSet nodes = random_nodes(ctx, n, eps);
    CHECK(det_log_vandermonde(ctx, nodes) >= eq - ctx.tol(32));
  }
}

TEST_CASE("rectangular sandwich on sigma_n") {
  PrecisionContext ctx(128);
  CMatrix sq = random_matrix(ctx, 4, 4);
  SandwichBounds one = rectangular_sandwich(ctx, sq, 10);
  Real s4 = svd_jacobi(ctx, sq).sigma_min;
  CHECK(one.complete);
  CHECK(one.subsets == 1);
  CHECK(one.lower == s4);
  CHECK(abs(one.upper - s4) <= ctx.tol(8));

  std::vector<CMatrix> tall = {random_matrix(ctx, 5, 4),
                               fourier_submatrix(ctx, SubmatrixSpec::contiguous(12, 1, 6, 1, 4))};
  for (const CMatrix& m : tall) {
    SandwichBounds sb = rectangular_sandwich(ctx, m, 10000);
    Real sn = svd_jacobi(ctx, m).sigma_min;
    CHECK(sb.complete);
    CHECK(sb.lower <= sn * (1.0 + 1e-30));
    CHECK(sn <= sb.upper * (1.0 + 1e-30));
  }
  SandwichBounds partial = rectangular_sandwich(ctx, tall[1], 3);
  CHECK_FALSE(partial.complete);
  CHECK(partial.subsets == 3);
  CHECK(partial.lower <= svd_jacobi(ctx, tall[1]).sigma_min * (1.0 + 1e-30));
  CHECK_THROWS_AS(rectangular_sandwich(ctx, random_matrix(ctx, 3, 4), 10), DomainError);
}

TEST_CASE("condition numbers are invariant under cyclic shifts") {
  PrecisionContext ctx(192);
  for (int trial = 0; trial < 6; ++trial) {
    long N = uniform_int(10, 30);
    long p = uniform_int(2, static_cast<int>(N - 2)), q = uniform_int(2, static_cast<int>(N - 2));
    SpectralReport base = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, 1, p, 1, q));
    long s = uniform_int(2, static_cast<int>(N)), t = uniform_int(2, static_cast<int>(N));
    SpectralReport moved = kappa_submatrix(ctx, SubmatrixSpec::contiguous(N, s, p, t, q));
    CHECK(abs(base.log_kappa - moved.log_kappa) <= ldexp(ctx.one(), -100));
  }
}

TEST_CASE("matrix CSV round trip") {
  PrecisionContext ctx(200);
  CMatrix m = fourier_submatrix(ctx, SubmatrixSpec::contiguous(7, 2, 3, 5, 4));
  m(1, 1) = Complex(ctx, -1e-30, 12345.5);
  std::stringstream ss;
  m.write_csv(ss);
  CMatrix back = CMatrix::read_csv(ctx, ss);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      CHECK(back(i, j).re == m(i, j).re);
      CHECK(back(i, j).im == m(i, j).im);
    }
  }
  std::stringstream bad("1,2,3\n");
  CHECK_THROWS_AS(CMatrix::read_csv(ctx, bad), DomainError);
  std::stringstream ragged("1,2,3,4\n1,2\n");
  CHECK_THROWS_AS(CMatrix::read_csv(ctx, ragged), DomainError);
}
