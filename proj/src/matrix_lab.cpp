#include "vcond/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "vcond/quadrature.hpp"

namespace vcond {

// ---------------------------------------------------------------------------
// CMatrix

CMatrix::CMatrix(const PrecisionContext& ctx, std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(ctx)) {}

CMatrix CMatrix::adjoint() const {
  CMatrix out;
  out.rows_ = cols_;
  out.cols_ = rows_;
  out.data_.reserve(data_.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.data_.push_back(conj((*this)(i, j)));
  }
  return out;
}

Real CMatrix::frobenius_norm() const {
  if (data_.empty()) return Real();
  Real s(data_.front().bits());
  for (const Complex& z : data_) s += norm(z);
  return sqrt(s);
}

void CMatrix::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) os << ',';
      const Complex& z = (*this)(i, j);
      os << z.re.shortest_str() << ',' << z.im.shortest_str();
    }
    os << '\n';
  }
}

CMatrix CMatrix::read_csv(const PrecisionContext& ctx, std::istream& is) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() % 2 != 0) throw DomainError("CMatrix::read_csv: odd number of fields");
    std::vector<Complex> row;
    for (std::size_t i = 0; i < fields.size(); i += 2) {
      row.emplace_back(Real(ctx, fields[i]), Real(ctx, fields[i + 1]));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DomainError("CMatrix::read_csv: ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return CMatrix();
  CMatrix m(ctx, rows.size(), rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = std::move(rows[i][j]);
  }
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("CMatrix product: dimension mismatch");
  PrecisionContext ctx(static_cast<int>(std::max<mpfr_prec_t>(a(0, 0).bits(), PrecisionContext::kMinBits)));
  CMatrix c(ctx, a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex& bkj = b(k, j);
      for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Fourier and Vandermonde constructions

SubmatrixSpec::SubmatrixSpec(long N, std::vector<long> rows, long col_start, long col_length)
    : N_(N), rows_(std::move(rows)), col_start_(col_start), col_length_(col_length) {
  if (N < 1) throw DomainError("SubmatrixSpec: N must be positive");
  if (rows_.empty()) throw DomainError("SubmatrixSpec: row set is empty");
  for (long r : rows_) {
    if (r < 1 || r > N) throw DomainError("SubmatrixSpec: row index out of range");
  }
  std::vector<long> sorted = rows_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("SubmatrixSpec: repeated row index");
  }
  if (col_start < 1 || col_start > N) throw DomainError("SubmatrixSpec: column start out of range");
  if (col_length < 1 || col_length > N) throw DomainError("SubmatrixSpec: column length out of range");
}

SubmatrixSpec SubmatrixSpec::contiguous(long N, long row_start, long p, long col_start, long q) {
  if (p < 1 || p > N) throw DomainError("SubmatrixSpec: row count out of range");
  if (row_start < 1 || row_start > N) throw DomainError("SubmatrixSpec: row start out of range");
  std::vector<long> rows;
  for (long i = 0; i < p; ++i) rows.push_back((row_start - 1 + i) % N + 1);
  return SubmatrixSpec(N, std::move(rows), col_start, q);
}

std::vector<long> SubmatrixSpec::cols() const {
  std::vector<long> c;
  for (long i = 0; i < col_length_; ++i) c.push_back((col_start_ - 1 + i) % N_ + 1);
  return c;
}

double SubmatrixSpec::alpha() const {
  return static_cast<double>(std::max<long>(rows_.size(), col_length_)) / N_;
}

double SubmatrixSpec::beta() const {
  return static_cast<double>(std::min<long>(rows_.size(), col_length_)) / N_;
}

CMatrix general_submatrix(const PrecisionContext& ctx, long N, const std::vector<long>& rows,
                          const std::vector<long>& cols) {
  if (N < 1) throw DomainError("general_submatrix: N must be positive");
  for (long r : rows) {
    if (r < 1 || r > N) throw DomainError("general_submatrix: row index out of range");
  }
  for (long c : cols) {
    if (c < 1 || c > N) throw DomainError("general_submatrix: column index out of range");
  }
  std::vector<Complex> roots;
  roots.reserve(N);
  for (long r = 0; r < N; ++r) roots.push_back(unit_point(ctx, ctx.two_pi() * r / N));
  CMatrix m(ctx, rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      long e = ((rows[i] - 1) * (cols[j] - 1)) % N;
      m(i, j) = roots[e];
    }
  }
  return m;
}

CMatrix fourier_submatrix(const PrecisionContext& ctx, const SubmatrixSpec& spec) {
  return general_submatrix(ctx, spec.N(), spec.rows(), spec.cols());
}

CMatrix vandermonde(const PrecisionContext& ctx, const NodeSet& nodes) {
  const std::size_t n = nodes.size();
  CMatrix v(ctx, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    Complex p(ctx.one(), ctx.zero());
    for (std::size_t j = 0; j < n; ++j) {
      v(j, k) = p;
      p = p * nodes.points()[k];
    }
  }
  return v;
}

std::vector<std::vector<Complex>> monomial_basis(const PrecisionContext& ctx, long n) {
  std::vector<std::vector<Complex>> basis;
  for (long k = 0; k <= n; ++k) {
    std::vector<Complex> c(k + 1, Complex(ctx));
    c[k].re = 1.0;
    basis.push_back(std::move(c));
  }
  return basis;
}

Complex eval_poly(const std::vector<Complex>& coeffs, const Complex& z) {
  if (coeffs.empty()) return Complex(Real(z.bits()), Real(z.bits()));
  Complex acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

CMatrix vandermonde_like(const PrecisionContext& ctx, const VandermondeLikeSpec& spec) {
  if (spec.basis.size() != spec.nodes.size()) {
    throw DomainError("vandermonde_like: basis size must equal the number of nodes");
  }
  const std::size_t n = spec.nodes.size();
  for (const auto& p : spec.basis) {
    if (p.size() > n) throw DomainError("vandermonde_like: basis degree exceeds n");
  }
  CMatrix v(ctx, n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) v(j, k) = eval_poly(spec.basis[k], spec.nodes[j]);
  }
  return v;
}

CMatrix gram_matrix(const PrecisionContext& ctx, const std::vector<std::vector<Complex>>& basis,
                    const Measure& nu, bool allow_quadrature) {
  const std::size_t n = basis.size();
  CMatrix g(ctx, n, n);
  if (nu.is_circle()) {
    // Monomials are orthonormal for normalized arc length on the circle.
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t len = std::min(basis[j].size(), basis[k].size());
        for (std::size_t m = 0; m < len; ++m) g(j, k) += basis[j][m] * conj(basis[k][m]);
      }
    }
    return g;
  }
  if (nu.is_discrete()) {
    const auto& pts = std::get<DiscreteUniform>(nu.variant()).points;
    for (const Complex& t : pts) {
      std::vector<Complex> vals;
      for (const auto& p : basis) vals.push_back(eval_poly(p, t));
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) g(j, k) += vals[j] * conj(vals[k]);
      }
    }
    Real w = ctx.one() / static_cast<long>(pts.size());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) g(j, k) *= w;
    }
    return g;
  }
  if (nu.is_arc() && allow_quadrature) {
    const auto& arc = std::get<ArcUniform>(nu.variant());
    const Real len = arc.b - arc.a;
    const Real tol = ldexp(ctx.one(), -ctx.bits() / 2);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        auto entry = [&](bool imag) {
          return integrate(
                     ctx,
                     [&](const Real& t) {
                       Complex z = unit_point(ctx, t);
                       Complex v = eval_poly(basis[j], z) * conj(eval_poly(basis[k], z));
                       return imag ? v.im : v.re;
                     },
                     arc.a, arc.b, tol)
                     .value /
                 len;
        };
        g(j, k) = Complex(entry(false), entry(true));
        g(k, j) = conj(g(j, k));
      }
    }
    return g;
  }
  throw UnsupportedError("gram_matrix: measure requires quadrature or is not supported");
}

Real basis_sup_norm(const PrecisionContext& ctx, const std::vector<std::vector<Complex>>& basis,
                    const Measure& nu) {
  Real best = ctx.zero();
  if (nu.is_discrete()) {
    for (const Complex& t : std::get<DiscreteUniform>(nu.variant()).points) {
      for (const auto& p : basis) best = max(best, abs(eval_poly(p, t)));
    }
    return best;
  }
  // Arc, circle, or the boundary circle of a disk (maximum modulus).
  Real a = ctx.zero(), b = ctx.two_pi();
  Complex center(ctx);
  Real radius = ctx.one();
  if (nu.is_arc()) {
    a = std::get<ArcUniform>(nu.variant()).a;
    b = std::get<ArcUniform>(nu.variant()).b;
  } else if (nu.is_disk()) {
    center = std::get<DiskUniform>(nu.variant()).center;
    radius = std::get<DiskUniform>(nu.variant()).radius;
  }
  std::size_t degree = 0;
  for (const auto& p : basis) degree = std::max(degree, p.size());
  const long grid = 64 * static_cast<long>(degree + 1);
  for (const auto& p : basis) {
    auto f = [&](const Real& t) { return abs(eval_poly(p, center + unit_point(ctx, t) * radius)); };
    Real step = (b - a) / grid;
    long arg = 0;
    Real top = f(a);
    for (long g = 1; g <= grid; ++g) {
      Real v = f(a + step * g);
      if (v > top) {
        top = std::move(v);
        arg = g;
      }
    }
    // Golden-section refinement inside the neighbouring grid cells.
    Real lo = max(a, a + step * (arg - 1)), hi = min(b, a + step * (arg + 1));
    const double r = (std::sqrt(5.0) - 1) / 2;
    Real x1 = hi - (hi - lo) * r, x2 = lo + (hi - lo) * r;
    Real f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < ctx.bits() / 2; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + (hi - lo) * r;
        f2 = f(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - (hi - lo) * r;
        f1 = f(x1);
      }
    }
    best = max(best, max(top, max(f1, f2)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD

namespace {

// Contiguous block of initialized mpfr numbers.
class MpfrBlock {
 public:
  MpfrBlock(std::size_t n, mpfr_prec_t prec) : v_(n) {
    for (auto& x : v_) {
      mpfr_init2(&x, prec);
      mpfr_set_zero(&x, 1);
    }
  }
  MpfrBlock(const MpfrBlock&) = delete;
  MpfrBlock& operator=(const MpfrBlock&) = delete;
  ~MpfrBlock() {
    for (auto& x : v_) mpfr_clear(&x);
  }
  mpfr_ptr operator[](std::size_t i) { return &v_[i]; }

 private:
  std::vector<__mpfr_struct> v_;
};

struct JacobiOutcome {
  std::vector<Real> sigma;       // unsorted, one per column
  std::vector<Complex> columns;  // rotated columns, column-major (m x n)
  std::vector<Complex> right;    // accumulated rotations (n x n), if requested
  int sweeps = 0;
  bool converged = false;
  Real max_cosine;
};

constexpr int kMaxSweeps = 200;

// Orthogonalizes the columns of a tall m x n matrix (m >= n).
JacobiOutcome hestenes(const PrecisionContext& ctx, const CMatrix& a, bool want_right) {
  const std::size_t m = a.rows(), n = a.cols();
  const mpfr_prec_t prec = ctx.bits();
  const mpfr_rnd_t R = MPFR_RNDN;

  MpfrBlock re(m * n, prec), im(m * n, prec);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      mpfr_set(re[j * m + i], a(i, j).re.get(), R);
      mpfr_set(im[j * m + i], a(i, j).im.get(), R);
    }
  }
  MpfrBlock vre(want_right ? n * n : 0, prec), vim(want_right ? n * n : 0, prec);
  if (want_right) {
    for (std::size_t j = 0; j < n; ++j) mpfr_set_ui(vre[j * n + j], 1, R);
  }

  MpfrBlock nrm(n, prec);
  // Scratch: 0 g_re, 1 g_im, 2 g, 3 zeta, 4 t, 5 c, 6 s, 7 w_re, 8 w_im,
  // 9 u_re, 10 u_im, 11 tmp, 12 tmp2, 13 tol^2, 14 zero threshold.
  MpfrBlock w(16, prec);
  auto recompute_norms = [&] {
    for (std::size_t j = 0; j < n; ++j) {
      mpfr_set_zero(nrm[j], 1);
      for (std::size_t i = 0; i < m; ++i) {
        mpfr_fmma(w[11], re[j * m + i], re[j * m + i], im[j * m + i], im[j * m + i], R);
        mpfr_add(nrm[j], nrm[j], w[11], R);
      }
    }
  };
  recompute_norms();

  // Rotation threshold m 2^(-bits+16) on |cos|, and the noise level eta = 2^(-bits+8) ||A||_F
  // below which a column is numerically zero. A column of norm r cannot be
  // orthogonalized beyond |cos| ~ eta / r, so that term is added to the test.
  mpfr_set_ui(w[13], 1, R);
  mpfr_mul_2si(w[13], w[13], -static_cast<long>(prec) + 16, R);
  mpfr_mul_ui(w[13], w[13], m, R);
  mpfr_set_zero(w[14], 1);
  for (std::size_t j = 0; j < n; ++j) mpfr_add(w[14], w[14], nrm[j], R);
  mpfr_mul_2si(w[14], w[14], 2 * (-static_cast<long>(prec) + 8), R);
  mpfr_sqrt(w[15], w[14], R);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  // A pair whose columns are unchanged since it was last found converged is
  // skipped; its inner product is the same.
  std::vector<std::uint32_t> touched(n, 1), checked(n * n, 0);
  std::uint32_t clock = 1;

  JacobiOutcome out;
  out.max_cosine = ctx.zero();
  Real worst(prec);
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    bool rotated = false;
    mpfr_set_zero(worst.get(), 1);
    // Visiting columns in order of decreasing norm speeds up convergence for
    // strongly graded matrices.
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return mpfr_greater_p(nrm[x], nrm[y]) != 0; });
    for (std::size_t ip = 0; ip + 1 < n; ++ip) {
      for (std::size_t iq = ip + 1; iq < n; ++iq) {
        const std::size_t p = order[ip], q = order[iq];
        if (mpfr_lessequal_p(nrm[p], w[14]) || mpfr_lessequal_p(nrm[q], w[14])) continue;
        std::uint32_t& seen = checked[std::min(p, q) * n + std::max(p, q)];
        if (seen > touched[p] && seen > touched[q]) continue;
        seen = ++clock;
        const std::size_t op = p * m, oq = q * m;
        // gamma = a_p^* a_q
        mpfr_set_zero(w[0], 1);
        mpfr_set_zero(w[1], 1);
        for (std::size_t i = 0; i < m; ++i) {
          mpfr_fmma(w[11], re[op + i], re[oq + i], im[op + i], im[oq + i], R);
          mpfr_add(w[0], w[0], w[11], R);
          mpfr_fmms(w[11], re[op + i], im[oq + i], im[op + i], re[oq + i], R);
          mpfr_add(w[1], w[1], w[11], R);
        }
        // |gamma| versus tol sqrt(alpha beta) + eta sqrt(min(alpha, beta))
        mpfr_fmma(w[2], w[0], w[0], w[1], w[1], R);
        mpfr_sqrt(w[2], w[2], R);                 // g = |gamma|
        mpfr_mul(w[12], nrm[p], nrm[q], R);
        mpfr_sqrt(w[12], w[12], R);
        mpfr_div(w[11], w[2], w[12], R);
        if (mpfr_greater_p(w[11], worst.get())) mpfr_set(worst.get(), w[11], R);
        mpfr_mul(w[12], w[12], w[13], R);
        mpfr_sqrt(w[3], mpfr_lessequal_p(nrm[p], nrm[q]) ? nrm[p] : nrm[q], R);
        mpfr_fma(w[12], w[3], w[15], w[12], R);
        if (mpfr_lessequal_p(w[2], w[12])) continue;
        rotated = true;
        touched[p] = touched[q] = ++clock;

        mpfr_sub(w[3], nrm[q], nrm[p], R);        // beta - alpha
        mpfr_div(w[3], w[3], w[2], R);
        mpfr_div_2ui(w[3], w[3], 1, R);           // zeta
        if (mpfr_zero_p(w[3])) {
          mpfr_set_ui(w[4], 1, R);
        } else {
          mpfr_sqr(w[11], w[3], R);
          mpfr_add_ui(w[11], w[11], 1, R);
          mpfr_sqrt(w[11], w[11], R);
          mpfr_abs(w[12], w[3], R);
          mpfr_add(w[11], w[11], w[12], R);
          mpfr_ui_div(w[4], 1, w[11], R);
          if (mpfr_sgn(w[3]) < 0) mpfr_neg(w[4], w[4], R);  // t
        }
        mpfr_sqr(w[11], w[4], R);
        mpfr_add_ui(w[11], w[11], 1, R);
        mpfr_rec_sqrt(w[5], w[11], R);            // c
        mpfr_mul(w[6], w[5], w[4], R);            // s
        mpfr_div(w[7], w[0], w[2], R);            // w = conj(gamma)/|gamma|
        mpfr_div(w[8], w[1], w[2], R);
        mpfr_neg(w[8], w[8], R);

        auto rotate = [&](MpfrBlock& xr, MpfrBlock& xi, std::size_t bp, std::size_t bq,
                          std::size_t len) {
          for (std::size_t i = 0; i < len; ++i) {
            mpfr_ptr pr = xr[bp + i], pi = xi[bp + i], qr = xr[bq + i], qi = xi[bq + i];
            mpfr_fmms(w[9], w[7], qr, w[8], qi, R);   // u = w a_q
            mpfr_fmma(w[10], w[7], qi, w[8], qr, R);
            mpfr_fmma(qr, w[6], pr, w[5], w[9], R);   // a_q' = s a_p + c u
            mpfr_fmms(pr, w[5], pr, w[6], w[9], R);   // a_p' = c a_p - s u
            mpfr_fmma(qi, w[6], pi, w[5], w[10], R);
            mpfr_fmms(pi, w[5], pi, w[6], w[10], R);
          }
        };
        rotate(re, im, op, oq, m);
        if (want_right) rotate(vre, vim, p * n, q * n, n);

        mpfr_mul(w[11], w[4], w[2], R);           // t |gamma|
        mpfr_sub(nrm[p], nrm[p], w[11], R);
        mpfr_add(nrm[q], nrm[q], w[11], R);
        // The cheap update cancels when a column is nearly annihilated.
        mpfr_abs(w[11], w[11], R);
        mpfr_mul_2si(w[11], w[11], -8, R);
        for (std::size_t c : {p, q}) {
          if (mpfr_greaterequal_p(nrm[c], w[11])) continue;
          mpfr_set_zero(nrm[c], 1);
          for (std::size_t i = 0; i < m; ++i) {
            mpfr_fmma(w[12], re[c * m + i], re[c * m + i], im[c * m + i], im[c * m + i], R);
            mpfr_add(nrm[c], nrm[c], w[12], R);
          }
        }
      }
    }
    recompute_norms();
    out.sweeps = sweep;
    out.max_cosine = worst;
    if (!rotated) {
      out.converged = true;
      break;
    }
  }

  for (std::size_t j = 0; j < n; ++j) {
    Real s(prec);
    mpfr_sqrt(s.get(), nrm[j], R);
    out.sigma.push_back(std::move(s));
  }
  out.columns.reserve(m * n);
  for (std::size_t k = 0; k < m * n; ++k) {
    Complex z{Real(prec), Real(prec)};
    mpfr_set(z.re.get(), re[k], R);
    mpfr_set(z.im.get(), im[k], R);
    out.columns.push_back(std::move(z));
  }
  if (want_right) {
    out.right.reserve(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      Complex z{Real(prec), Real(prec)};
      mpfr_set(z.re.get(), vre[k], R);
      mpfr_set(z.im.get(), vim[k], R);
      out.right.push_back(std::move(z));
    }
  }
  return out;
}

// Householder QR with column pivoting of a tall m x n matrix; returns R^H (n x n).
// Rows of R decay roughly like the singular values, so Jacobi on R^H needs far
// fewer sweeps than on a strongly graded input.
CMatrix pivoted_r_adjoint(const PrecisionContext& ctx, const CMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  const mpfr_prec_t prec = ctx.bits();
  const mpfr_rnd_t R = MPFR_RNDN;
  MpfrBlock re(m * n, prec), im(m * n, prec);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      mpfr_set(re[j * m + i], a(i, j).re.get(), R);
      mpfr_set(im[j * m + i], a(i, j).im.get(), R);
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Scratch: 0 norm^2, 1 best, 2 |x0|, 3 alpha_re, 4 alpha_im, 5 vtv, 6 d_re, 7 d_im, 8 tmp.
  MpfrBlock w(9, prec);
  MpfrBlock norms(n, prec);

  auto col_norm2 = [&](std::size_t j, std::size_t from, mpfr_ptr out) {
    mpfr_set_zero(out, 1);
    for (std::size_t i = from; i < m; ++i) {
      mpfr_fmma(w[8], re[j * m + i], re[j * m + i], im[j * m + i], im[j * m + i], R);
      mpfr_add(out, out, w[8], R);
    }
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t j = k; j < n; ++j) {
      col_norm2(perm[j], k, norms[j]);
      if (mpfr_greater_p(norms[j], norms[best])) best = j;
    }
    std::swap(perm[k], perm[best]);
    mpfr_swap(norms[k], norms[best]);
    const std::size_t c = perm[k] * m;
    if (mpfr_zero_p(norms[k])) continue;

    // alpha = -e^{i arg x0} ||x||, v = x - alpha e_1 stored in place.
    mpfr_sqrt(w[0], norms[k], R);
    mpfr_hypot(w[2], re[c + k], im[c + k], R);
    if (mpfr_zero_p(w[2])) {
      mpfr_neg(w[3], w[0], R);
      mpfr_set_zero(w[4], 1);
    } else {
      mpfr_div(w[3], re[c + k], w[2], R);
      mpfr_mul(w[3], w[3], w[0], R);
      mpfr_neg(w[3], w[3], R);
      mpfr_div(w[4], im[c + k], w[2], R);
      mpfr_mul(w[4], w[4], w[0], R);
      mpfr_neg(w[4], w[4], R);
    }
    mpfr_sub(re[c + k], re[c + k], w[3], R);
    mpfr_sub(im[c + k], im[c + k], w[4], R);
    // v^* v = 2 ||x|| (||x|| + |x0|)
    mpfr_add(w[5], w[0], w[2], R);
    mpfr_mul(w[5], w[5], w[0], R);
    mpfr_mul_2ui(w[5], w[5], 1, R);

    for (std::size_t jj = k + 1; jj < n; ++jj) {
      const std::size_t d = perm[jj] * m;
      // t = 2 v^* a_j / v^* v
      mpfr_set_zero(w[6], 1);
      mpfr_set_zero(w[7], 1);
      for (std::size_t i = k; i < m; ++i) {
        mpfr_fmma(w[8], re[c + i], re[d + i], im[c + i], im[d + i], R);
        mpfr_add(w[6], w[6], w[8], R);
        mpfr_fmms(w[8], re[c + i], im[d + i], im[c + i], re[d + i], R);
        mpfr_add(w[7], w[7], w[8], R);
      }
      mpfr_mul_2ui(w[6], w[6], 1, R);
      mpfr_mul_2ui(w[7], w[7], 1, R);
      mpfr_div(w[6], w[6], w[5], R);
      mpfr_div(w[7], w[7], w[5], R);
      for (std::size_t i = k; i < m; ++i) {
        mpfr_fmms(w[8], re[c + i], w[6], im[c + i], w[7], R);
        mpfr_sub(re[d + i], re[d + i], w[8], R);
        mpfr_fmma(w[8], re[c + i], w[7], im[c + i], w[6], R);
        mpfr_sub(im[d + i], im[d + i], w[8], R);
      }
    }
    mpfr_set(re[c + k], w[3], R);
    mpfr_set(im[c + k], w[4], R);
  }

  CMatrix rh(ctx, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t c = perm[j] * m;
    for (std::size_t i = 0; i <= j; ++i) {
      mpfr_set(rh(j, i).re.get(), re[c + i], R);
      mpfr_neg(rh(j, i).im.get(), im[c + i], R);
    }
  }
  return rh;
}

SvdFactors svd_impl(const PrecisionContext& ctx, const CMatrix& input, bool want_vectors) {
  if (input.rows() == 0 || input.cols() == 0) throw DomainError("svd_jacobi: empty matrix");
  const bool wide = input.rows() < input.cols();
  CMatrix a = wide ? input.adjoint() : input;
  const std::size_t m = a.rows(), n = a.cols();

  JacobiOutcome jo =
      want_vectors ? hestenes(ctx, a, true) : hestenes(ctx, pivoted_r_adjoint(ctx, a), false);
  if (!jo.converged) {
    throw ConvergenceError("svd_jacobi: no convergence after " + std::to_string(kMaxSweeps) +
                           " sweeps (" + std::to_string(m) + "x" + std::to_string(n) +
                           ", max |cos| = " + jo.max_cosine.str(6) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return jo.sigma[x] > jo.sigma[y]; });

  SvdFactors f;
  SpectralReport& rep = f.report;
  for (std::size_t k : order) rep.singular_values.push_back(jo.sigma[k]);
  rep.sigma_max = rep.singular_values.front();
  rep.sigma_min = rep.singular_values.back();
  rep.converged = true;
  rep.sweeps = jo.sweeps;
  Real threshold = ldexp(rep.sigma_max, -ctx.bits() + std::min(64, ctx.bits() / 2));
  rep.singular = rep.sigma_max.is_zero() || rep.sigma_min < threshold;
  if (rep.singular) {
    rep.kappa = Real::infinity(ctx.bits(), 1);
    rep.log_kappa = Real::infinity(ctx.bits(), 1);
  } else {
    rep.kappa = rep.sigma_max / rep.sigma_min;
    rep.log_kappa = log(rep.kappa);
  }

  if (want_vectors) {
    // Left vectors are the normalized rotated columns; the right ones are the
    // accumulated rotations.
    CMatrix left(ctx, m, n), right(ctx, n, n);
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t k = order[c];
      for (std::size_t i = 0; i < m; ++i) {
        if (!jo.sigma[k].is_zero()) left(i, c) = jo.columns[k * m + i] / jo.sigma[k];
      }
      for (std::size_t i = 0; i < n; ++i) right(i, c) = jo.right[k * n + i];
    }
    if (wide) {
      f.U = std::move(right);
      f.V = std::move(left);
    } else {
      f.U = std::move(left);
      f.V = std::move(right);
    }
  }
  return f;
}

}  // namespace

SpectralReport svd_jacobi(const PrecisionContext& ctx, const CMatrix& m) {
  return svd_impl(ctx, m, false).report;
}

SvdFactors svd_jacobi_full(const PrecisionContext& ctx, const CMatrix& m) {
  return svd_impl(ctx, m, true);
}

SpectralReport kappa_submatrix(const PrecisionContext& ctx, const SubmatrixSpec& spec) {
  return svd_jacobi(ctx, fourier_submatrix(ctx, spec));
}

Real log_inverse_norm_lagrange(const PrecisionContext& ctx, const NodeSet& nodes) {
  const std::size_t n = nodes.size();
  // Column k of W = V^{-1} (node-rows convention) is the coefficient vector of L_k.
  std::vector<std::vector<Complex>> w;
  w.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    w.push_back(lagrange_coeffs(ctx, nodes, static_cast<long>(k)).coeffs);
  }
  // Power iteration on W^* W from a fixed, non-symmetric start vector.
  std::vector<Complex> x(n, Complex(ctx));
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = Complex(Real(ctx, 1.0 + 0.37 * std::sin(1.0 + 2.3 * k)),
                   Real(ctx, 0.21 * std::cos(0.7 + 1.9 * k)));
  }
  const Real tol = ldexp(ctx.one(), -std::min(ctx.bits() / 2, 96));
  Real prev = ctx.zero();
  for (int it = 0; it < 5000; ++it) {
    Real xn = ctx.zero();
    for (const Complex& c : x) xn += norm(c);
    xn = sqrt(xn);
    for (Complex& c : x) c /= xn;
    std::vector<Complex> y(n, Complex(ctx));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) y[i] += w[k][i] * x[k];
    }
    Real yn = ctx.zero();
    for (const Complex& c : y) yn += norm(c);
    // ||W x||^2 with ||x|| = 1 increases monotonically toward sigma_max^2.
    if (it > 2 && abs(yn - prev) <= tol * yn) return ldexp(log(yn), -1);
    prev = yn;
    for (std::size_t k = 0; k < n; ++k) {
      Complex s(ctx);
      for (std::size_t i = 0; i < n; ++i) s += conj(w[k][i]) * y[i];
      x[k] = std::move(s);
    }
  }
  throw ConvergenceError("log_inverse_norm_lagrange: power iteration did not converge");
}

Real det_log_vandermonde(const PrecisionContext& ctx, const std::vector<Real>& angles) {
  std::vector<Real> a;
  for (const Real& t : angles) a.push_back(fmod_positive(t.rounded(ctx), ctx.two_pi()));
  Real s = ctx.zero();
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t k = j + 1; k < a.size(); ++k) {
      if (a[j] == a[k]) return Real::infinity(ctx.bits(), -1);
      s += log(abs(sin(ldexp(a[k] - a[j], -1))) * 2L);
    }
  }
  return s;
}

Real det_log_vandermonde(const PrecisionContext& ctx, const NodeSet& nodes) {
  return det_log_vandermonde(ctx, nodes.angles());
}

SandwichBounds rectangular_sandwich(const PrecisionContext& ctx, const CMatrix& m, long budget) {
  const std::size_t rows = m.rows(), n = m.cols();
  if (rows < n) throw DomainError("rectangular_sandwich: matrix must have at least as many rows as columns");
  if (budget < 1) throw DomainError("rectangular_sandwich: budget must be positive");
  SandwichBounds out{ctx.zero(), ctx.zero(), 0, false};
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Real sum_sq = ctx.zero();
  for (;;) {
    if (out.subsets >= budget) break;
    CMatrix sub(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sub(i, j) = m(idx[i], j);
    }
    Real sn = svd_jacobi(ctx, sub).sigma_min;
    out.lower = max(out.lower, sn);
    sum_sq += sqr(sn);
    ++out.subsets;
    // Next combination in lexicographic order.
    std::size_t i = n;
    while (i > 0 && idx[i - 1] == rows - n + (i - 1)) --i;
    if (i == 0) {
      out.complete = true;
      break;
    }
    ++idx[i - 1];
    for (std::size_t j = i; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  out.upper = sqrt(sum_sq);
  return out;
}

}  // namespace vcond
