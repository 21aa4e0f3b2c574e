#include "vcond/measure.hpp"

namespace vcond {

Measure Measure::arc(const PrecisionContext& ctx, const Real& a, const Real& b) {
  if (!a.is_finite() || !b.is_finite()) throw DomainError("Measure::arc: endpoints must be finite");
  Real len = b - a;
  if (len <= 0.0 || len > ctx.two_pi()) throw DomainError("Measure::arc: need 0 < b - a <= 2pi");
  return Measure(ArcUniform{a.rounded(ctx), b.rounded(ctx)});
}

Measure Measure::circle() { return Measure(CircleUniform{}); }

Measure Measure::discrete(const PrecisionContext& ctx, std::vector<Complex> points) {
  if (points.empty()) throw DomainError("Measure::discrete: no points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i] = Complex(points[i].re.rounded(ctx), points[i].im.rounded(ctx));
    for (std::size_t j = 0; j < i; ++j) {
      if (points[i].re == points[j].re && points[i].im == points[j].im) {
        throw DegeneracyError("Measure::discrete: repeated point");
      }
    }
  }
  return Measure(DiscreteUniform{std::move(points)});
}

Measure Measure::arc_atoms(const PrecisionContext& ctx, const Real& a, const Real& b, long n) {
  if (n < 2) throw DomainError("Measure::arc_atoms: need at least two atoms");
  Real len = b - a;
  if (len <= 0.0 || len >= ctx.two_pi()) throw DomainError("Measure::arc_atoms: need 0 < b - a < 2pi");
  std::vector<Complex> pts;
  for (long j = 0; j < n; ++j) pts.push_back(unit_point(ctx, a + len * j / (n - 1)));
  return discrete(ctx, std::move(pts));
}

Measure Measure::disk(const PrecisionContext& ctx, const Complex& center, const Real& radius) {
  if (!(radius > 0.0) || !radius.is_finite()) throw DomainError("Measure::disk: radius must be positive");
  return Measure(DiskUniform{Complex(center.re.rounded(ctx), center.im.rounded(ctx)), radius.rounded(ctx)});
}

bool Measure::on_unit_circle(const PrecisionContext& ctx) const {
  if (is_arc() || is_circle()) return true;
  if (is_disk()) return false;
  const Real tol = ctx.tol(8);
  for (const Complex& z : std::get<DiscreteUniform>(v_).points) {
    if (abs(abs(z) - 1.0) > tol) return false;
  }
  return true;
}

Real Measure::support_radius(const PrecisionContext& ctx) const {
  if (is_arc() || is_circle()) return ctx.one();
  if (is_disk()) {
    const auto& d = std::get<DiskUniform>(v_);
    return abs(d.center) + d.radius;
  }
  Real r = ctx.zero();
  for (const Complex& z : std::get<DiscreteUniform>(v_).points) r = max(r, abs(z));
  return r;
}

}  // namespace vcond
