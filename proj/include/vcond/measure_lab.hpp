#pragma once

// Logarithmic potentials of measures, the ball discrepancy
// sup_{z, r} |mu(B(z, r)) - nu(B(z, r))|, and the regularity conditions
// under which the Lagrange growth rate is a difference of potentials.

#include "vcond/lagrange_lab.hpp"
#include "vcond/measure.hpp"

namespace vcond {

/// U(z) = int log 1/|z - t| dmu(t).
///
/// Arc measures use the Clausen closed form on the unit circle and
/// tanh-sinh quadrature elsewhere. PoleError at an atom of a discrete measure.
Real potential(const PrecisionContext& ctx, const Measure& mu, const Complex& z);

/// mu(B(c, r)) for the closed ball.
Real ball_mass(const PrecisionContext& ctx, const Measure& mu, const Complex& c, const Real& r);

/// Distance from z to the support of mu.
Real support_distance(const PrecisionContext& ctx, const Measure& mu, const Complex& z);

struct KSReport {
  Real value;
  Complex witness_center;
  Real witness_radius;
  int refinement_level = 0;
};

/// Best ball found for sup |mu(B) - nu(B)|; always a lower bound on the supremum.
///
/// When both supports lie on the unit circle every ball meets the circle in a
/// closed arc, so the search runs over arcs whose ends sit at atoms or arc
/// endpoints, nudged by 2^(-level) to take or drop the end atom. Otherwise
/// centers are atoms, midpoints and a grid, with radii at center-to-atom
/// distances plus or minus 2^(-level).
KSReport ks_distance(const PrecisionContext& ctx, const Measure& mu, const Measure& nu,
                     int level = 30);

struct RegularityParams {
  Real rho1;
  Real rho2;
  Real C_holder;
  Real alpha_holder;
  Real beta_dim;
  Real R;
};

struct ConditionCheck {
  bool pass = false;
  /// Largest sampled ratio for upper bounds, smallest for the lower bound.
  Real worst;
  Complex witness;
  /// Radius (conditions 2 and 3) or pair distance (condition 4).
  Real witness_scale;
};

struct RegularityReport {
  ConditionCheck support;
  ConditionCheck upper_density;
  ConditionCheck lower_density;
  ConditionCheck holder;
  bool all_pass() const {
    return support.pass && upper_density.pass && lower_density.pass && holder.pass;
  }
};

/// Samples the four conditions on grids:
///  1. supp mu lies in |z| <= R;
///  2. mu(B(zeta, r)) / r^beta <= rho1 for r below the minimal gap of S;
///  3. mu(B(z+, r)) / r^beta >= rho2 at z+ = argmax U, r = dist(z+, S);
///  4. |U(x) - U(y)| <= C |x - y|^alpha for pairs on and near the support.
/// DomainError if params are out of range. Never throws on a failed condition.
RegularityReport regularity_check(const PrecisionContext& ctx, const Measure& mu,
                                  const NodeSet& S, const RegularityParams& params);

/// log(e R / eps) KS(mu_d, mu_c) with eps = min(dist(z, supp mu_d), (beta KS / rho1)^(1/beta)),
/// a bound on |U^{mu_d}(z) - U^{mu_c}(z)| when mu_c satisfies the upper density
/// condition with (rho1, beta) and both supports have diameter at most R.
/// PreconditionError when z lies on supp mu_d.
Real potential_diff_bound(const PrecisionContext& ctx, const Measure& mu_c, const Measure& mu_d,
                          const Complex& z, const RegularityParams& params, int ks_level = 30);

struct DeltaReport {
  Real delta;
  Real sup_value;
  Complex sup_at;
  Real inf_value;
  Complex inf_at;
};

/// sup over supp mu of U^mu minus inf over supp nu of U^mu.
///
/// Each extremum comes from a grid of `resolution` points per curve (exact over
/// atoms) refined by golden section; ties go to the smallest angle. Disk
/// supports are searched on a polar grid without refinement. The sup is +inf
/// for a discrete mu.
DeltaReport rate_delta(const PrecisionContext& ctx, const Measure& mu, const Measure& nu,
                       int resolution = 256);

}  // namespace vcond
