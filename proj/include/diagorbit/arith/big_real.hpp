#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace diagorbit {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical n/d (gmpxx leaves two-argument constructions unreduced).
inline Rational make_rational(const Integer& n, const Integer& d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline constexpr int kDefaultPrecision = 256;
inline constexpr int kMinPrecision = 64;

// Working precision (bits) used when a BigReal is built without an explicit
// precision. Thread-local; PrecisionScope changes it for a lexical scope.
int default_precision() noexcept;

class PrecisionScope {
 public:
  explicit PrecisionScope(int bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_;
};

// Arbitrary-precision binary floating point number (MPFR, round-to-nearest).
// Binary operations produce a result at the larger operand precision.
class BigReal {
 public:
  BigReal();
  BigReal(int v);     // NOLINT(google-explicit-constructor)
  BigReal(long v);    // NOLINT(google-explicit-constructor)
  BigReal(double v);  // NOLINT(google-explicit-constructor)
  BigReal(const Integer& v);   // NOLINT(google-explicit-constructor)
  BigReal(const Rational& v);  // NOLINT(google-explicit-constructor)

  BigReal(long v, int prec);
  BigReal(double v, int prec);
  BigReal(const Integer& v, int prec);
  BigReal(const Rational& v, int prec);

  // Parses a decimal literal ("1.25", "-3e-7", "inf").
  static BigReal from_string(std::string_view text, int prec = default_precision());
  static BigReal zero(int prec) { return BigReal(0L, prec); }
  static BigReal pi(int prec);
  static BigReal pow2(long exponent, int prec);
  static BigReal infinity(int sign, int prec);

  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  int precision() const noexcept;
  // Copy rounded (or exactly extended) to a new precision.
  BigReal with_precision(int prec) const;

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);
  BigReal operator-() const;

  int sign() const noexcept;
  bool is_zero() const noexcept;
  bool is_finite() const noexcept;
  bool is_nan() const noexcept;

  double to_double() const noexcept;
  Integer floor_integer() const;
  Integer round_integer() const;
  // Exact value of the binary float as a rational.
  Rational to_rational() const;

  // Scientific notation with `digits` significant digits, e.g. "1.2599e+00".
  std::string to_string(int digits = 30) const;
  // Fixed notation with `decimals` digits after the point.
  std::string to_fixed(int decimals) const;

  mpfr_srcptr raw() const noexcept { return value_; }
  mpfr_ptr raw() noexcept { return value_; }

 private:
  struct Uninit {};
  BigReal(Uninit, int prec);

  friend BigReal make_uninit(int prec);

  mpfr_t value_;
};

BigReal make_uninit(int prec);

BigReal operator+(const BigReal& a, const BigReal& b);
BigReal operator-(const BigReal& a, const BigReal& b);
BigReal operator*(const BigReal& a, const BigReal& b);
BigReal operator/(const BigReal& a, const BigReal& b);
BigReal operator+(const BigReal& a, long b);
BigReal operator-(const BigReal& a, long b);
BigReal operator*(const BigReal& a, long b);
BigReal operator/(const BigReal& a, long b);
BigReal operator*(long a, const BigReal& b);
BigReal operator+(long a, const BigReal& b);
BigReal operator-(long a, const BigReal& b);
BigReal operator/(long a, const BigReal& b);
inline BigReal operator+(const BigReal& a, int b) { return a + static_cast<long>(b); }
inline BigReal operator-(const BigReal& a, int b) { return a - static_cast<long>(b); }
inline BigReal operator*(const BigReal& a, int b) { return a * static_cast<long>(b); }
inline BigReal operator/(const BigReal& a, int b) { return a / static_cast<long>(b); }
inline BigReal operator*(int a, const BigReal& b) { return static_cast<long>(a) * b; }
inline BigReal operator+(int a, const BigReal& b) { return static_cast<long>(a) + b; }
inline BigReal operator-(int a, const BigReal& b) { return static_cast<long>(a) - b; }
inline BigReal operator/(int a, const BigReal& b) { return static_cast<long>(a) / b; }
BigReal operator*(const BigReal& a, const Integer& b);
BigReal operator+(const BigReal& a, const Integer& b);
inline BigReal operator*(const Integer& a, const BigReal& b) { return b * a; }
inline BigReal operator+(const Integer& a, const BigReal& b) { return b + a; }
BigReal operator*(const BigReal& a, const Rational& b);
inline BigReal operator*(const Rational& a, const BigReal& b) { return b * a; }

bool operator==(const BigReal& a, const BigReal& b);
std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);
bool operator==(const BigReal& a, long b);
std::partial_ordering operator<=>(const BigReal& a, long b);
inline bool operator==(const BigReal& a, int b) { return a == static_cast<long>(b); }
inline std::partial_ordering operator<=>(const BigReal& a, int b) {
  return a <=> static_cast<long>(b);
}
bool operator==(const BigReal& a, double b);
std::partial_ordering operator<=>(const BigReal& a, double b);

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal cbrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal pow(const BigReal& x, const BigReal& y);
BigReal pow(const BigReal& x, long n);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal floor(const BigReal& x);
BigReal ceil(const BigReal& x);
BigReal round(const BigReal& x);
// Distance to the nearest integer.
BigReal dist_to_integer(const BigReal& x);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
// sign(x) * |x|^(1/k) for odd k; |x|^(1/k) otherwise.
BigReal root(const BigReal& x, unsigned long k);

// Relative error of one rounded operation at `prec` bits: 2^(1-prec).
BigReal unit_roundoff(int prec);

std::ostream& operator<<(std::ostream& os, const BigReal& x);

// Bits needed to represent |v| (0 for v = 0).
long bit_length(const Integer& v);

}  // namespace diagorbit
