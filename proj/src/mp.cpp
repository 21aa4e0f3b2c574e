#include "vcond/mp.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>

namespace vcond {

namespace {

bool is_moved_from(mpfr_srcptr v) { return v->_mpfr_d == nullptr; }

mpfr_prec_t max_bits(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.bits());
  fn(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

PrecisionContext::PrecisionContext(int bits) : bits_(bits) {
  if (bits < kMinBits) {
    throw ConfigError("precision must be at least 64 bits, got " + std::to_string(bits));
  }
}

PrecisionContext ctx_new(int bits) { return PrecisionContext(bits); }

Real PrecisionContext::tol(int guard) const {
  Real r(bits_);
  mpfr_set_ui_2exp(r.get(), 1, -bits_ + guard, MPFR_RNDN);
  return r;
}

Real PrecisionContext::zero() const { return Real(*this, 0L); }
Real PrecisionContext::one() const { return Real(*this, 1L); }

Real PrecisionContext::pi() const {
  Real r(bits_);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

Real PrecisionContext::two_pi() const {
  Real r = pi();
  mpfr_mul_2ui(r.get(), r.get(), 1, MPFR_RNDN);
  return r;
}

Real PrecisionContext::from(double x) const { return Real(*this, x); }
Real PrecisionContext::from(std::string_view decimal) const { return Real(*this, decimal); }

// ---------------------------------------------------------------------------

Real::Real() {
  mpfr_init2(v_, PrecisionContext::kMinBits);
  mpfr_set_zero(v_, 1);
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(const PrecisionContext& ctx, double x) {
  mpfr_init2(v_, ctx.bits());
  mpfr_set_d(v_, x, MPFR_RNDN);
}

Real::Real(const PrecisionContext& ctx, long x) {
  mpfr_init2(v_, ctx.bits());
  mpfr_set_si(v_, x, MPFR_RNDN);
}

Real::Real(const PrecisionContext& ctx, std::string_view decimal) {
  mpfr_init2(v_, ctx.bits());
  std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw DomainError("not a decimal number: '" + s + "'");
  }
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.bits());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  *v_ = *other.v_;
  other.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (is_moved_from(v_)) {
    mpfr_init2(v_, other.bits());
  } else if (bits() != other.bits()) {
    mpfr_set_prec(v_, other.bits());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) std::swap(*v_, *other.v_);
  return *this;
}

Real::~Real() {
  if (!is_moved_from(v_)) mpfr_clear(v_);
}

Real& Real::operator=(double x) {
  mpfr_set_d(v_, x, MPFR_RNDN);
  return *this;
}

Real Real::rounded(mpfr_prec_t b) const {
  Real r(b);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string Real::str(std::size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  // Value is 0.mant * 10^e. Positional notation for moderate exponents,
  // d.ddd e(e-1) otherwise.
  const long ex = static_cast<long>(e) - 1;
  const long n = static_cast<long>(mant.size());
  if (ex >= -6 && ex < 21) {
    if (ex < 0) return sign + "0." + std::string(static_cast<std::size_t>(-ex - 1), '0') + mant;
    if (ex + 1 >= n) return sign + mant + std::string(static_cast<std::size_t>(ex + 1 - n), '0');
    return sign + mant.substr(0, ex + 1) + "." + mant.substr(ex + 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(ex);
  return out;
}

std::string Real::shortest_str() const {
  if (!is_finite() || is_zero()) return str();
  const std::size_t max_digits = mpfr_get_str_ndigits(10, bits());
  Real probe(bits());
  for (std::size_t d = 1; d < max_digits; ++d) {
    std::string s = str(d);
    mpfr_set_str(probe.v_, s.c_str(), 10, MPFR_RNDN);
    if (mpfr_equal_p(probe.v_, v_)) return s;
  }
  return str(max_digits);
}

Real Real::infinity(mpfr_prec_t b, int sign) {
  Real r(b);
  mpfr_set_inf(r.v_, sign);
  return r;
}

Real Real::nan(mpfr_prec_t b) {
  Real r(b);
  mpfr_set_nan(r.v_);
  return r;
}

Real& Real::operator+=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator+=(double o) {
  mpfr_add_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(double o) {
  mpfr_sub_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(double o) {
  mpfr_mul_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(double o) {
  mpfr_div_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const { return unary(*this, mpfr_neg); }

#define VCOND_BINARY(op, fn)                                  \
  Real operator op(const Real& a, const Real& b) {            \
    Real r(max_bits(a, b));                                   \
    fn(r.get(), a.get(), b.get(), MPFR_RNDN);                 \
    return r;                                                 \
  }
VCOND_BINARY(+, mpfr_add)
VCOND_BINARY(-, mpfr_sub)
VCOND_BINARY(*, mpfr_mul)
VCOND_BINARY(/, mpfr_div)
#undef VCOND_BINARY

Real operator+(const Real& a, double b) {
  Real r(a.bits());
  mpfr_add_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, double b) {
  Real r(a.bits());
  mpfr_sub_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, double b) {
  Real r(a.bits());
  mpfr_mul_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, double b) {
  Real r(a.bits());
  mpfr_div_d(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator+(double a, const Real& b) { return b + a; }
Real operator-(double a, const Real& b) {
  Real r(b.bits());
  mpfr_d_sub(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
Real operator*(double a, const Real& b) { return b * a; }
Real operator/(double a, const Real& b) {
  Real r(b.bits());
  mpfr_d_div(r.get(), a, b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.bits());
  mpfr_mul_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(const Real& a, long b) {
  Real r(a.bits());
  mpfr_div_si(r.get(), a.get(), b, MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
Real operator*(int a, const Real& b) { return b * static_cast<long>(a); }
Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.get(), b.get());
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

bool operator==(const Real& a, double b) { return !a.is_nan() && mpfr_cmp_d(a.get(), b) == 0; }

std::partial_ordering operator<=>(const Real& a, double b) {
  if (a.is_nan() || b != b) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.get(), b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.str(static_cast<std::size_t>(os.precision() > 0 ? os.precision() : 0));
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real sec(const Real& x) { return unary(x, mpfr_sec); }
Real csc(const Real& x) { return unary(x, mpfr_csc); }
Real cot(const Real& x) { return unary(x, mpfr_cot); }
Real asin(const Real& x) { return unary(x, mpfr_asin); }
Real acos(const Real& x) { return unary(x, mpfr_acos); }
Real atan(const Real& x) { return unary(x, mpfr_atan); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }
Real erf(const Real& x) { return unary(x, mpfr_erf); }
Real sqr(const Real& x) { return unary(x, mpfr_sqr); }

Real atan2(const Real& y, const Real& x) {
  Real r(max_bits(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(max_bits(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.bits());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

Real floor(const Real& x) {
  Real r(x.bits());
  mpfr_floor(r.get(), x.get());
  return r;
}

Real round(const Real& x) {
  Real r(x.bits());
  mpfr_round(r.get(), x.get());
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.bits());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

Real fmod_positive(const Real& x, const Real& m) {
  Real r(max_bits(x, m));
  mpfr_fmod(r.get(), x.get(), m.get(), MPFR_RNDN);
  if (r.sign() < 0) r += m;
  if (r >= m) r -= m;
  return r;
}

const Real& min(const Real& a, const Real& b) { return (b < a) ? b : a; }
const Real& max(const Real& a, const Real& b) { return (a < b) ? b : a; }

Real zeta(const PrecisionContext& ctx, unsigned long n) {
  Real r(ctx.bits());
  mpfr_zeta_ui(r.get(), n, MPFR_RNDN);
  return r;
}

long exponent2(const Real& x) {
  if (!x.is_finite() || x.is_zero()) return 0;
  return static_cast<long>(mpfr_get_exp(x.get()));
}

// ---------------------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Complex& Complex::operator*=(const Real& o) {
  re *= o;
  im *= o;
  return *this;
}

Complex& Complex::operator/=(const Real& o) {
  re /= o;
  im /= o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex operator*(const Complex& a, const Complex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
Complex operator*(const Real& a, const Complex& b) { return b * a; }
Complex operator/(const Complex& a, const Complex& b) {
  Real d = norm(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }

Real norm(const Complex& z) {
  Real r(z.bits());
  mpfr_sqr(r.get(), z.re.get(), MPFR_RNDN);
  Real t(z.bits());
  mpfr_sqr(t.get(), z.im.get(), MPFR_RNDN);
  r += t;
  return r;
}

Real abs(const Complex& z) {
  Real r(z.bits());
  mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return r;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex expi(const Real& theta) {
  Real s(theta.bits()), c(theta.bits());
  mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
  return {std::move(c), std::move(s)};
}

Complex unit_point(const PrecisionContext& ctx, const Real& theta) {
  if (!theta.is_finite()) throw DomainError("unit_point: angle must be finite");
  return expi(theta.rounded(ctx));
}

}  // namespace vcond
