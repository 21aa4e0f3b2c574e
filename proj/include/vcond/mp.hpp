#pragma once

// Extended-precision real and complex scalars on top of GNU MPFR.
//
// Every Real carries its own precision. Binary operations produce a result at
// the larger of the two operand precisions, so values created from a
// PrecisionContext stay at that precision through arithmetic without any
// ambient global state.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "vcond/errors.hpp"

namespace vcond {

class Real;

/// Working precision in bits, threaded explicitly through every numeric op.
class PrecisionContext {
 public:
  static constexpr int kMinBits = 64;
  static constexpr int kDefaultBits = 512;

  /// Throws ConfigError when bits < 64.
  explicit PrecisionContext(int bits = kDefaultBits);

  int bits() const { return bits_; }

  /// 2^(-bits + guard).
  Real tol(int guard) const;

  Real zero() const;
  Real one() const;
  Real pi() const;
  Real two_pi() const;
  Real from(double x) const;
  Real from(std::string_view decimal) const;

  /// Same context with `extra` additional bits, for internal guard digits.
  PrecisionContext widened(int extra) const { return PrecisionContext(bits_ + extra); }

 private:
  int bits_;
};

/// Named constructor with the validation of the PrecisionContext ctor.
PrecisionContext ctx_new(int bits);

class Real {
 public:
  Real();  // 64-bit zero
  explicit Real(mpfr_prec_t bits);
  Real(const PrecisionContext& ctx, double x);
  Real(const PrecisionContext& ctx, long x);
  Real(const PrecisionContext& ctx, int x) : Real(ctx, static_cast<long>(x)) {}
  Real(const PrecisionContext& ctx, std::string_view decimal);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Assigns a double, keeping this value's precision.
  Real& operator=(double x);

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  /// Copy of this value rounded to `bits`.
  Real rounded(mpfr_prec_t bits) const;
  Real rounded(const PrecisionContext& ctx) const { return rounded(ctx.bits()); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDZ); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Decimal string with `digits` significant digits (0 = enough to round-trip).
  std::string str(std::size_t digits = 0) const;
  /// Shortest decimal string that parses back to exactly this value at its precision.
  std::string shortest_str() const;

  static Real infinity(mpfr_prec_t bits, int sign);
  static Real nan(mpfr_prec_t bits);

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(double o);
  Real& operator-=(double o);
  Real& operator*=(double o);
  Real& operator/=(double o);
  Real& operator*=(long o);
  Real& operator/=(long o);

  Real operator-() const;

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, double b);
Real operator-(const Real& a, double b);
Real operator*(const Real& a, double b);
Real operator/(const Real& a, double b);
Real operator+(double a, const Real& b);
Real operator-(double a, const Real& b);
Real operator*(double a, const Real& b);
Real operator/(double a, const Real& b);
Real operator*(const Real& a, long b);
Real operator*(long a, const Real& b);
Real operator/(const Real& a, long b);
Real operator*(const Real& a, int b);
Real operator*(int a, const Real& b);
Real operator/(const Real& a, int b);

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
bool operator==(const Real& a, double b);
std::partial_ordering operator<=>(const Real& a, double b);

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real sec(const Real& x);
Real csc(const Real& x);
Real cot(const Real& x);
Real asin(const Real& x);
Real acos(const Real& x);
Real atan(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real erf(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real round(const Real& x);
Real ldexp(const Real& x, long e);
Real sqr(const Real& x);
Real fmod_positive(const Real& x, const Real& m);
const Real& min(const Real& a, const Real& b);
const Real& max(const Real& a, const Real& b);
/// Riemann zeta at a positive integer.
Real zeta(const PrecisionContext& ctx, unsigned long n);
/// Base-2 exponent e with x = m 2^e, 0.5 <= |m| < 1.
long exponent2(const Real& x);

/// Complex scalar as a pair of Reals.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const PrecisionContext& ctx) : re(ctx.zero()), im(ctx.zero()) {}
  Complex(const PrecisionContext& ctx, double r, double i) : re(ctx, r), im(ctx, i) {}

  mpfr_prec_t bits() const { return re.bits(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator*=(const Real& o);
  Complex& operator/=(const Real& o);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Real& b);

Complex conj(const Complex& z);
/// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
/// e^{i theta}
Complex expi(const Real& theta);

/// e^{i theta} at the context precision.
Complex unit_point(const PrecisionContext& ctx, const Real& theta);

}  // namespace vcond
