#pragma once

// Lagrange interpolation on nodes of the unit circle.

#include <utility>
#include <vector>

#include "vcond/mp.hpp"
#include "vcond/potential_field.hpp"

namespace vcond {

/// Distinct points e^{i theta_j} with angles sorted in [0, 2pi).
class NodeSet {
 public:
  /// Angles are reduced mod 2pi and sorted; DegeneracyError on duplicates.
  NodeSet(const PrecisionContext& ctx, std::vector<Real> angles);

  /// e^{i j eps}, j = 0..n.
  static NodeSet equispaced(const PrecisionContext& ctx, long n, const Real& eps);
  /// The m-th roots of unity.
  static NodeSet roots_of_unity(const PrecisionContext& ctx, long m);

  std::size_t size() const { return angles_.size(); }
  /// Polynomial degree n = size - 1.
  long degree() const { return static_cast<long>(angles_.size()) - 1; }
  const std::vector<Real>& angles() const { return angles_; }
  const std::vector<Complex>& points() const { return points_; }
  /// Minimum cyclic gap between consecutive angles (2pi for a single node).
  const Real& eps_min() const { return eps_min_; }

 private:
  std::vector<Real> angles_;
  std::vector<Complex> points_;
  Real eps_min_;
};

/// Monomial coefficients a_0..a_n of L_k(z) = prod_{j != k} (z - z_j)/(z_k - z_j).
struct LagrangeCoeffs {
  long k = 0;
  std::vector<Complex> coeffs;

  /// sum_j a_j z^j by Horner's rule.
  Complex eval(const Complex& z) const;
};

LagrangeCoeffs lagrange_coeffs(const PrecisionContext& ctx, const NodeSet& nodes, long k);

/// |L_k(z)| from the product form, accurate even where |L_k| is tiny.
Real lagrange_abs(const PrecisionContext& ctx, const NodeSet& nodes, long k, const Complex& z);

/// (1/2pi) int |L_k(e^{i theta})|^2 dtheta = sum_j |a_j|^2.
Real circle_mean_square(const PrecisionContext& ctx, const LagrangeCoeffs& lc);

struct CircleMax {
  Real theta;
  Real value;
};

/// max over the circle of |L_k|: a grid of 32(n+1) angles followed by
/// golden-section refinement to 2^(-bits/4) in theta.
CircleMax max_on_circle(const PrecisionContext& ctx, const NodeSet& nodes, long k);

/// Unit vector x_j = (-1)^(n-j) e^{i j n eps/2} |S|^(-1/2) on the window
/// S = {j : |j - floor(n/2)| <= sqrt(n)}, zero elsewhere.
/// DegeneracyError for n < 4; RegimeError unless eps < 2pi n - 2 sqrt(eps).
std::vector<Complex> test_vector(const PrecisionContext& ctx, const EquispacedFamily& fam);

/// Indices of the central window S used by test_vector and xi_ratio.
std::vector<long> central_window(long n);

/// xi = max_{k in S} int_0^{2pi} |L_k|^2 / int_{n eps + eps}^{2pi - eps} |L_k|^2
/// for the nodes e^{i j eps}. RegimeError unless n eps < 2pi - 2 sqrt(eps).
Real xi_ratio(const PrecisionContext& ctx, const EquispacedFamily& fam);

/// max_k sup_theta log|L_k(e^{i theta})| for the nodes e^{i j eps}, j = 0..n.
///
/// Uses log|L_k(e^{i theta})| = U_k(k eps) - U(theta) - log|e^{i theta} - e^{i k eps}|,
/// so U is tabulated once on a grid of `grid` angles per unit gap and each k
/// costs one pass over the grid. The best grid point is refined by golden section.
Real equispaced_lagrange_max_log(const PrecisionContext& ctx, const EquispacedFamily& fam,
                                 int grid_per_gap = 8);

}  // namespace vcond
