#include "diagorbit/arith/big_real.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

#include "diagorbit/error.hpp"

namespace diagorbit {

namespace {

thread_local int tl_precision = kDefaultPrecision;

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

int prec_of(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

int default_precision() noexcept { return tl_precision; }

PrecisionScope::PrecisionScope(int bits) : saved_(tl_precision) {
  if (bits < 2) throw Error(ErrorCode::kInvalidInput, "precision must be >= 2 bits");
  tl_precision = bits;
}

PrecisionScope::~PrecisionScope() { tl_precision = saved_; }

BigReal::BigReal(Uninit, int prec) { mpfr_init2(value_, prec); }

BigReal make_uninit(int prec) { return BigReal(BigReal::Uninit{}, prec); }

BigReal::BigReal() : BigReal(0L, default_precision()) {}
BigReal::BigReal(int v) : BigReal(static_cast<long>(v), default_precision()) {}
BigReal::BigReal(long v) : BigReal(v, default_precision()) {}
BigReal::BigReal(double v) : BigReal(v, default_precision()) {}
BigReal::BigReal(const Integer& v) : BigReal(v, default_precision()) {}
BigReal::BigReal(const Rational& v) : BigReal(v, default_precision()) {}

BigReal::BigReal(long v, int prec) {
  mpfr_init2(value_, prec);
  mpfr_set_si(value_, v, kRnd);
}

BigReal::BigReal(double v, int prec) {
  mpfr_init2(value_, prec);
  mpfr_set_d(value_, v, kRnd);
}

BigReal::BigReal(const Integer& v, int prec) {
  mpfr_init2(value_, prec);
  mpfr_set_z(value_, v.get_mpz_t(), kRnd);
}

BigReal::BigReal(const Rational& v, int prec) {
  mpfr_init2(value_, prec);
  mpfr_set_q(value_, v.get_mpq_t(), kRnd);
}

BigReal BigReal::from_string(std::string_view text, int prec) {
  BigReal r(Uninit{}, prec);
  std::string s(text);
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 10, kRnd);
  if (end == s.c_str() || *end != '\0') {
    throw Error(ErrorCode::kInvalidInput, "not a decimal number: " + s);
  }
  return r;
}

BigReal BigReal::pi(int prec) {
  BigReal r(Uninit{}, prec);
  mpfr_const_pi(r.value_, kRnd);
  return r;
}

BigReal BigReal::pow2(long exponent, int prec) {
  BigReal r(1L, prec);
  mpfr_mul_2si(r.value_, r.value_, exponent, kRnd);
  return r;
}

BigReal BigReal::infinity(int sign, int prec) {
  BigReal r(Uninit{}, prec);
  mpfr_set_inf(r.value_, sign);
  return r;
}

BigReal::BigReal(const BigReal& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRnd);
}

BigReal::BigReal(BigReal&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(value_); }

int BigReal::precision() const noexcept { return static_cast<int>(mpfr_get_prec(value_)); }

BigReal BigReal::with_precision(int prec) const {
  BigReal r(Uninit{}, prec);
  mpfr_set(r.value_, value_, kRnd);
  return r;
}

BigReal& BigReal::operator+=(const BigReal& o) { return *this = *this + o; }
BigReal& BigReal::operator-=(const BigReal& o) { return *this = *this - o; }
BigReal& BigReal::operator*=(const BigReal& o) { return *this = *this * o; }
BigReal& BigReal::operator/=(const BigReal& o) { return *this = *this / o; }

BigReal BigReal::operator-() const {
  BigReal r(Uninit{}, precision());
  mpfr_neg(r.value_, value_, kRnd);
  return r;
}

int BigReal::sign() const noexcept { return mpfr_sgn(value_); }
bool BigReal::is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
bool BigReal::is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
bool BigReal::is_nan() const noexcept { return mpfr_nan_p(value_) != 0; }

double BigReal::to_double() const noexcept { return mpfr_get_d(value_, kRnd); }

Integer BigReal::floor_integer() const {
  if (!is_finite()) throw Error(ErrorCode::kInvalidInput, "floor of non-finite value");
  Integer z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDD);
  return z;
}

Integer BigReal::round_integer() const {
  if (!is_finite()) throw Error(ErrorCode::kInvalidInput, "round of non-finite value");
  Integer z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDN);
  return z;
}

Rational BigReal::to_rational() const {
  if (!is_finite()) throw Error(ErrorCode::kInvalidInput, "non-finite value has no rational form");
  if (is_zero()) return Rational(0);
  Integer m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), value_);
  Rational q(m);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}

std::string BigReal::to_string(int digits) const {
  if (digits < 1) digits = 1;
  int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
  std::vector<char> buf(static_cast<size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
  return std::string(buf.data());
}

std::string BigReal::to_fixed(int decimals) const {
  int n = mpfr_snprintf(nullptr, 0, "%.*Rf", decimals, value_);
  std::vector<char> buf(static_cast<size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", decimals, value_);
  std::string s(buf.data());
  // Avoid "-0.000" in stable output.
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

#define DIAGORBIT_BINOP(op, fn)                                   \
  BigReal operator op(const BigReal& a, const BigReal& b) {       \
    BigReal r = make_uninit(prec_of(a, b));                       \
    fn(r.raw(), a.raw(), b.raw(), kRnd);                          \
    return r;                                                     \
  }
DIAGORBIT_BINOP(+, mpfr_add)
DIAGORBIT_BINOP(-, mpfr_sub)
DIAGORBIT_BINOP(*, mpfr_mul)
DIAGORBIT_BINOP(/, mpfr_div)
#undef DIAGORBIT_BINOP

BigReal operator+(const BigReal& a, long b) {
  BigReal r = make_uninit(a.precision());
  mpfr_add_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
BigReal operator-(const BigReal& a, long b) {
  BigReal r = make_uninit(a.precision());
  mpfr_sub_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
BigReal operator*(const BigReal& a, long b) {
  BigReal r = make_uninit(a.precision());
  mpfr_mul_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
BigReal operator/(const BigReal& a, long b) {
  BigReal r = make_uninit(a.precision());
  mpfr_div_si(r.raw(), a.raw(), b, kRnd);
  return r;
}
BigReal operator*(long a, const BigReal& b) { return b * a; }
BigReal operator+(long a, const BigReal& b) { return b + a; }
BigReal operator-(long a, const BigReal& b) {
  BigReal r = make_uninit(b.precision());
  mpfr_si_sub(r.raw(), a, b.raw(), kRnd);
  return r;
}
BigReal operator/(long a, const BigReal& b) {
  BigReal r = make_uninit(b.precision());
  mpfr_si_div(r.raw(), a, b.raw(), kRnd);
  return r;
}
BigReal operator*(const BigReal& a, const Integer& b) {
  BigReal r = make_uninit(a.precision());
  mpfr_mul_z(r.raw(), a.raw(), b.get_mpz_t(), kRnd);
  return r;
}
BigReal operator+(const BigReal& a, const Integer& b) {
  BigReal r = make_uninit(a.precision());
  mpfr_add_z(r.raw(), a.raw(), b.get_mpz_t(), kRnd);
  return r;
}
BigReal operator*(const BigReal& a, const Rational& b) {
  BigReal r = make_uninit(a.precision());
  mpfr_mul_q(r.raw(), a.raw(), b.get_mpq_t(), kRnd);
  return r;
}

bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.raw(), b.raw());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.raw(), b) == 0; }

std::partial_ordering operator<=>(const BigReal& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.raw(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const BigReal& a, double b) { return !a.is_nan() && mpfr_cmp_d(a.raw(), b) == 0; }

std::partial_ordering operator<=>(const BigReal& a, double b) {
  if (a.is_nan() || b != b) return std::partial_ordering::unordered;
  int c = mpfr_cmp_d(a.raw(), b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define DIAGORBIT_UNARY(name, fn)              \
  BigReal name(const BigReal& x) {             \
    BigReal r = make_uninit(x.precision());    \
    fn(r.raw(), x.raw(), kRnd);                \
    return r;                                  \
  }
DIAGORBIT_UNARY(abs, mpfr_abs)
DIAGORBIT_UNARY(sqrt, mpfr_sqrt)
DIAGORBIT_UNARY(cbrt, mpfr_cbrt)
DIAGORBIT_UNARY(exp, mpfr_exp)
DIAGORBIT_UNARY(log, mpfr_log)
DIAGORBIT_UNARY(sin, mpfr_sin)
DIAGORBIT_UNARY(cos, mpfr_cos)
#undef DIAGORBIT_UNARY

BigReal floor(const BigReal& x) {
  BigReal r = make_uninit(x.precision());
  mpfr_floor(r.raw(), x.raw());
  return r;
}

BigReal ceil(const BigReal& x) {
  BigReal r = make_uninit(x.precision());
  mpfr_ceil(r.raw(), x.raw());
  return r;
}

BigReal round(const BigReal& x) {
  BigReal r = make_uninit(x.precision());
  mpfr_round(r.raw(), x.raw());
  return r;
}

BigReal dist_to_integer(const BigReal& x) {
  BigReal r = make_uninit(x.precision());
  mpfr_rint(r.raw(), x.raw(), MPFR_RNDN);
  mpfr_sub(r.raw(), x.raw(), r.raw(), kRnd);
  mpfr_abs(r.raw(), r.raw(), kRnd);
  return r;
}

BigReal pow(const BigReal& x, const BigReal& y) {
  BigReal r = make_uninit(prec_of(x, y));
  mpfr_pow(r.raw(), x.raw(), y.raw(), kRnd);
  return r;
}

BigReal pow(const BigReal& x, long n) {
  BigReal r = make_uninit(x.precision());
  mpfr_pow_si(r.raw(), x.raw(), n, kRnd);
  return r;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r = make_uninit(prec_of(x, y));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), kRnd);
  return r;
}

BigReal min(const BigReal& a, const BigReal& b) { return (b < a) ? b : a; }
BigReal max(const BigReal& a, const BigReal& b) { return (b > a) ? b : a; }

BigReal root(const BigReal& x, unsigned long k) {
  if (k == 0) throw Error(ErrorCode::kInvalidInput, "zeroth root");
  BigReal r = make_uninit(x.precision());
  if (k % 2 == 1) {
    mpfr_rootn_ui(r.raw(), x.raw(), k, kRnd);
  } else {
    BigReal a = abs(x);
    mpfr_rootn_ui(r.raw(), a.raw(), k, kRnd);
  }
  return r;
}

BigReal unit_roundoff(int prec) { return BigReal::pow2(1 - prec, 64); }

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(20); }

long bit_length(const Integer& v) {
  if (v == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
}

}  // namespace diagorbit
