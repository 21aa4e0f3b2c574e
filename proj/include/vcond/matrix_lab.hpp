#pragma once

// Fourier submatrices, Vandermonde(-like) matrices and a one-sided Jacobi SVD
// at configurable precision.

#include <iosfwd>
#include <optional>
#include <vector>

#include "vcond/lagrange_lab.hpp"
#include "vcond/measure.hpp"
#include "vcond/mp.hpp"

namespace vcond {

/// Dense complex matrix, column-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(const PrecisionContext& ctx, std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  CMatrix adjoint() const;
  Real frobenius_norm() const;

  /// One line per row, "re,im" pairs separated by commas, each number in the
  /// shortest decimal form that round-trips at its precision.
  void write_csv(std::ostream& os) const;
  /// Inverse of write_csv; DomainError on malformed input.
  static CMatrix read_csv(const PrecisionContext& ctx, std::istream& is);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// F_{S,T} of the N x N Fourier matrix with entries e^{2pi i (j-1)(k-1)/N}.
/// Rows are a set of 1-based indices; columns a cyclic interval.
class SubmatrixSpec {
 public:
  /// DomainError on out-of-range or repeated rows, or length outside [1, N].
  SubmatrixSpec(long N, std::vector<long> rows, long col_start, long col_length);
  /// Contiguous rows {row_start, ..., row_start + p - 1} (cyclic).
  static SubmatrixSpec contiguous(long N, long row_start, long p, long col_start, long q);

  long N() const { return N_; }
  const std::vector<long>& rows() const { return rows_; }
  long col_start() const { return col_start_; }
  long col_length() const { return col_length_; }
  /// 1-based column indices of the cyclic interval.
  std::vector<long> cols() const;
  /// max(|rows|, length) / N and min(...) / N.
  double alpha() const;
  double beta() const;

 private:
  long N_;
  std::vector<long> rows_;
  long col_start_;
  long col_length_;
};

struct SpectralReport {
  Real sigma_max;
  Real sigma_min;
  /// sigma_max / sigma_min, +inf when singular.
  Real kappa;
  Real log_kappa;
  bool converged = false;
  bool singular = false;
  int sweeps = 0;
  /// All singular values, descending.
  std::vector<Real> singular_values;
};

/// M = U diag(sigma) V^*, with U and V having orthonormal columns.
struct SvdFactors {
  SpectralReport report;
  CMatrix U;
  CMatrix V;
};

CMatrix fourier_submatrix(const PrecisionContext& ctx, const SubmatrixSpec& spec);

/// Arbitrary 1-based row and column index sets of the N x N Fourier matrix.
CMatrix general_submatrix(const PrecisionContext& ctx, long N, const std::vector<long>& rows,
                          const std::vector<long>& cols);

/// (n+1) x (n+1) matrix with entry (j, k) = z_k^j: column k holds the powers of z_k.
CMatrix vandermonde(const PrecisionContext& ctx, const NodeSet& nodes);

/// Polynomials p_0..p_n given by monomial coefficients, evaluated at nodes.
struct VandermondeLikeSpec {
  std::vector<std::vector<Complex>> basis;
  std::vector<Complex> nodes;
};

/// Entry (j, k) = p_k(z_j), rows indexed by nodes. With the monomial basis this
/// is the transpose of vandermonde().
CMatrix vandermonde_like(const PrecisionContext& ctx, const VandermondeLikeSpec& spec);

/// Monomial basis 1, z, ..., z^n.
std::vector<std::vector<Complex>> monomial_basis(const PrecisionContext& ctx, long n);

/// p(z) from monomial coefficients.
Complex eval_poly(const std::vector<Complex>& coeffs, const Complex& z);

/// G_{jk} = int p_j conj(p_k) dnu. Circle-uniform and discrete measures are
/// handled exactly; arc-uniform measures require allow_quadrature.
/// UnsupportedError otherwise.
CMatrix gram_matrix(const PrecisionContext& ctx, const std::vector<std::vector<Complex>>& basis,
                    const Measure& nu, bool allow_quadrature = false);

/// max_j sup over supp(nu) of |p_j|; exact for discrete measures, grid plus
/// local refinement on arcs and the circle.
Real basis_sup_norm(const PrecisionContext& ctx, const std::vector<std::vector<Complex>>& basis,
                    const Measure& nu);

/// One-sided (Hestenes) Jacobi SVD at ctx precision. svd_jacobi first reduces
/// the input by Householder QR with column pivoting and rotates the columns of
/// R^H; svd_jacobi_full works on the input directly. Columns are rotated
/// until every pair has |cos| below m 2^(-bits+16) plus the rounding floor of the
/// smaller column; ConvergenceError after 200 sweeps.
/// sigma_min < 2^(-bits+g) sigma_max, g = min(64, bits/2), is reported as singular.
SpectralReport svd_jacobi(const PrecisionContext& ctx, const CMatrix& m);
SvdFactors svd_jacobi_full(const PrecisionContext& ctx, const CMatrix& m);

/// SVD of F_{S,T}.
SpectralReport kappa_submatrix(const PrecisionContext& ctx, const SubmatrixSpec& spec);

/// log ||V^{-1}||_2 for the Vandermonde matrix of `nodes`, computed as
/// log sigma_max of the explicit inverse whose rows are the Lagrange
/// coefficient vectors, by power iteration on W^* W.
Real log_inverse_norm_lagrange(const PrecisionContext& ctx, const NodeSet& nodes);

/// log|det V| = sum_{j<k} log(2 sin((theta_k - theta_j)/2)) for angles in any
/// order; -inf when two angles coincide mod 2pi.
Real det_log_vandermonde(const PrecisionContext& ctx, const std::vector<Real>& angles);
Real det_log_vandermonde(const PrecisionContext& ctx, const NodeSet& nodes);

struct SandwichBounds {
  /// max over enumerated row subsets S of sigma_n(M_S).
  Real lower;
  /// sqrt of the sum of sigma_n(M_S)^2; an upper bound only when complete.
  Real upper;
  long subsets = 0;
  bool complete = false;
};

/// Square-subset bounds on sigma_n of a tall m x n matrix via Cauchy-Binet and
/// interlacing. At most `budget` subsets are enumerated (lexicographic order).
SandwichBounds rectangular_sandwich(const PrecisionContext& ctx, const CMatrix& m, long budget);

}  // namespace vcond
