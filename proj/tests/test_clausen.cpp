#include "support.hpp"

#include <mpfr.h>

#include "vcond/clausen.hpp"
#include "vcond/quadrature.hpp"

using namespace vcond;
using vcond::testing::uniform;

namespace {

// Reference values at 50 significant digits from an independent
// arbitrary-precision implementation.
struct Ref {
  const char* theta;
  const char* value;
};
const Ref kReference[] = {
    {"0.001", "0.0079077552928710260103873084847384152665214752741579"},
    {"0.5", "0.8483118777036792709936275148179171293487244605362"},
    {"1", "1.0139591323607685042945743388859146875611792800777"},
    {"2", "0.72714605086327924742983825460835817612027000483112"},
    {"2.0943951023931954923", "0.67662773760643575001876509493008111529828654783663"},
    {"3", "0.098026209391301421161429791240677663628465948316701"},
    {"3.1", "0.028826832389660725413619033558514079571608090032954"},
    {"4", "-0.56814394442986978080077475955387256465172323527458"},
    {"6.2", "-0.29004891983264809041531574746763882950252026704682"},
    {"-1.3", "-0.98970325322959855316626525941751729914657146441768"},
    {"100", "-0.86917920033571799072700108382436161941631676181525"},
};

Real mpfr_catalan(const PrecisionContext& ctx) {
  Real g(ctx.bits());
  mpfr_const_catalan(g.get(), MPFR_RNDN);
  return g;
}

// Partial sums of sum_k (-1)^k / (2k+1)^2 bracket G; returns (S_{2m-1}, S_{2m}).
std::pair<double, double> alternating_bracket(int m) {
  long double s = 0, prev = 0;
  for (int k = 0; k < 2 * m + 1; ++k) {
    prev = s;
    long double t = 1.0L / ((2.0L * k + 1) * (2.0L * k + 1));
    s += (k % 2 == 0) ? t : -t;
  }
  return {static_cast<double>(std::min(prev, s)), static_cast<double>(std::max(prev, s))};
}

}  // namespace

TEST_CASE("kernel values and poles") {
  PrecisionContext ctx(256);
  Real tol = ctx.tol(8);
  Real log2 = log(Real(ctx, 2L));
  CHECK(abs(f_kernel(ctx, ctx.pi()) + log2) <= tol);
  CHECK(abs(f_kernel(ctx, ctx.pi() / 3L)) <= tol);
  CHECK_THROWS_AS(f_kernel(ctx, ctx.zero()), PoleError);
  CHECK_THROWS_AS(f_kernel(ctx, ctx.two_pi()), PoleError);
  CHECK_THROWS_AS(f_kernel(ctx, Real(ctx, -1.0)), DomainError);
}

TEST_CASE("kernel derivative is half the cotangent") {
  PrecisionContext ctx(256);
  Real h = ldexp(ctx.one(), -30);
  for (int i = 0; i < 50; ++i) {
    Real x(ctx, uniform(0.1, 2 * M_PI - 0.1));
    Real fd = (f_kernel(ctx, x + h) - f_kernel(ctx, x - h)) / ldexp(h, 1);
    Real exact = -ldexp(cot(ldexp(x, -1)), -1);
    // f(x) = -log(2 sin(x/2)) so f'(x) = -cot(x/2)/2.
    REQUIRE(abs(fd - exact) <= abs(exact) * 1e-6 + 1e-30);
  }
}

TEST_CASE("kernel is bounded by log 2 away from the poles") {
  PrecisionContext ctx(128);
  double lo = 2 * std::asin(0.25), hi = 2 * M_PI - lo;
  Real log2 = log(Real(ctx, 2L));
  for (int i = 1; i < 1000; ++i) {
    Real x(ctx, lo + (hi - lo) * i / 1000.0);
    REQUIRE(abs(f_kernel(ctx, x)) <= log2 + ctx.tol(8));
  }
}

TEST_CASE("Clausen function at special points") {
  for (int bits : {64, 128, 512}) {
    PrecisionContext ctx(bits);
    Real tol = ctx.tol(16);
    CHECK(clausen(ctx, ctx.zero()).is_zero());
    CHECK(abs(clausen(ctx, ctx.pi())) <= tol);
    CHECK(abs(clausen(ctx, ctx.two_pi())) <= tol);
    CHECK(abs(clausen(ctx, ldexp(ctx.pi(), -1)) - mpfr_catalan(ctx)) <= tol);
  }
}

TEST_CASE("Clausen function matches reference values") {
  PrecisionContext ctx(200);
  for (const Ref& r : kReference) {
    Real v = clausen(ctx, Real(ctx, r.theta));
    INFO("theta = " << r.theta << ", got " << v);
    CHECK(abs(v - Real(ctx, r.value)) <= Real(ctx, 1e-48));
  }
}

TEST_CASE("Clausen function equals the integral of the kernel") {
  PrecisionContext ctx(256);
  Real tol(ctx, 1e-20);
  for (int i = 0; i < 20; ++i) {
    Real theta(ctx, uniform(0.05, 2 * M_PI - 0.05));
    auto q = integrate(
        ctx, [&](const Real& x) { return log(abs(sin(ldexp(x, -1))) * 2L); }, ctx.zero(), theta,
        ctx.tol(64));
    INFO("theta = " << theta);
    REQUIRE(abs(clausen(ctx, theta) + q.value) <= tol);
  }
}

TEST_CASE("Catalan constant from two independent series") {
  PrecisionContext ctx(512);
  Real g = catalan(ctx);
  CHECK(abs(g - clausen(ctx, ldexp(ctx.pi(), -1))) <= ctx.tol(16));
  CHECK(abs(g - mpfr_catalan(ctx)) <= ctx.tol(16));
  auto [lo, hi] = alternating_bracket(200000);
  CHECK(g >= lo - 1e-15);
  CHECK(g <= hi + 1e-15);
  Real rate = g * 2L / ctx.pi();
  CHECK(rate > 0.5830);
  CHECK(rate < 0.5832);
  Real growth = exp(rate);
  CHECK(growth > 1.791);
  CHECK(growth < 1.792);
}

TEST_CASE("log-cot integral values and domain") {
  PrecisionContext ctx(256);
  Real tol = ctx.tol(16);
  Real quarter = ldexp(ctx.pi(), -2);
  CHECK(abs(log_cot_integral(ctx, quarter) - catalan(ctx)) <= tol);
  CHECK(abs(log_cot_integral(ctx, ctx.zero())) <= tol);
  CHECK(abs(log_cot_integral(ctx, ldexp(ctx.pi(), -1))) <= tol);
  CHECK_THROWS_AS(log_cot_integral(ctx, Real(ctx, -0.1)), DomainError);
  CHECK_THROWS_AS(log_cot_integral(ctx, Real(ctx, 1.6)), DomainError);
}

TEST_CASE("log-cot integral against quadrature and additivity") {
  PrecisionContext ctx(256);
  Real half_pi = ldexp(ctx.pi(), -1);
  for (int i = 0; i < 10; ++i) {
    Real x(ctx, uniform(0.01, 1.56));
    auto q = integrate(ctx, [](const Real& p) { return log(cot(p)); }, ctx.zero(), x, ctx.tol(64));
    REQUIRE(abs(log_cot_integral(ctx, x) - q.value) <= Real(ctx, 1e-20));
    // int_0^x = -int_x^{pi/2}, and by the reflection phi -> pi/2 - phi,
    // int_x^{pi/2} log cot = -int_0^{pi/2 - x} log cot.
    REQUIRE(abs(log_cot_integral(ctx, x) - log_cot_integral(ctx, half_pi - x)) <= ctx.tol(24));
  }
}

TEST_CASE("log-cot integral is nonnegative with its maximum at pi/4") {
  PrecisionContext ctx(128);
  Real peak = log_cot_integral(ctx, ldexp(ctx.pi(), -2));
  for (int i = 0; i <= 200; ++i) {
    Real x = ldexp(ctx.pi(), -1) * (i / 200.0);
    Real v = log_cot_integral(ctx, x);
    REQUIRE(v >= -ctx.tol(16));
    REQUIRE(v <= peak + ctx.tol(16));
  }
}

TEST_CASE("identity scan") {
  for (int bits : {128, 512}) {
    PrecisionContext ctx(bits);
    ClausenGridReport rep = clausen_identity_scan(ctx, 1000);
    Real tol = ctx.tol(32);
    INFO("bits = " << bits);
    CHECK(rep.oddness < tol);
    CHECK(rep.duplication < tol);
    CHECK(rep.difference_quotient <= 0.0);
    CHECK(rep.ratio_violation.is_zero());
    CHECK(rep.inverse_ratio_min >= 1.0 / M_PI);
    CHECK(rep.inverse_ratio_max <= 0.4);
    CHECK(rep.ratio_min > 2.5);
    CHECK(rep.ratio_max <= ctx.pi());
  }
  PrecisionContext ctx(512);
  ClausenGridReport rep = clausen_identity_scan(ctx, 64);
  CHECK(rep.duplication < ctx.tol(32));
  CHECK_THROWS_AS(clausen_identity_scan(ctx, 4), DomainError);
}

TEST_CASE("ratio at one half") {
  PrecisionContext ctx(256);
  Real g = catalan(ctx);
  Real ratio = g / (log(Real(ctx, 4L)) * 0.25);
  CHECK(abs(ratio - 2.643) < 0.001);
  Real inv = 1.0 / ratio;
  CHECK(inv >= 1.0 / M_PI);
  CHECK(inv <= 0.4);
}
