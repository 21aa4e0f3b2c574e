#pragma once

// Probability measures in the plane used as weights for Gram matrices and as
// sources of logarithmic potentials.

#include <variant>
#include <vector>

#include "vcond/mp.hpp"

namespace vcond {

/// Normalized arc length on {e^{i theta} : a <= theta <= b}, 0 < b - a <= 2pi.
struct ArcUniform {
  Real a;
  Real b;
};

/// Normalized arc length on the whole unit circle.
struct CircleUniform {};

/// Equal point masses at distinct points.
struct DiscreteUniform {
  std::vector<Complex> points;
};

/// Normalized area measure on a closed disk.
struct DiskUniform {
  Complex center;
  Real radius;
};

class Measure {
 public:
  using Variant = std::variant<ArcUniform, CircleUniform, DiscreteUniform, DiskUniform>;

  /// DomainError unless 0 < b - a <= 2pi.
  static Measure arc(const PrecisionContext& ctx, const Real& a, const Real& b);
  static Measure circle();
  /// DegeneracyError on repeated points; DomainError when empty.
  static Measure discrete(const PrecisionContext& ctx, std::vector<Complex> points);
  /// n equal masses at e^{i (a + j (b - a)/(n - 1))}, j = 0..n-1.
  static Measure arc_atoms(const PrecisionContext& ctx, const Real& a, const Real& b, long n);
  /// DomainError unless radius > 0.
  static Measure disk(const PrecisionContext& ctx, const Complex& center, const Real& radius);

  const Variant& variant() const { return v_; }
  bool is_arc() const { return std::holds_alternative<ArcUniform>(v_); }
  bool is_circle() const { return std::holds_alternative<CircleUniform>(v_); }
  bool is_discrete() const { return std::holds_alternative<DiscreteUniform>(v_); }
  bool is_disk() const { return std::holds_alternative<DiskUniform>(v_); }
  /// Support lies on the unit circle (arc, circle, or discrete with |z| = 1).
  bool on_unit_circle(const PrecisionContext& ctx) const;
  /// max |z| over the support.
  Real support_radius(const PrecisionContext& ctx) const;

 private:
  explicit Measure(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace vcond
