#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "diagorbit/arith/big_complex.hpp"
#include "diagorbit/arith/big_real.hpp"

namespace diagorbit {

// Integer polynomial, coefficients from the constant term upward.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> ascending);
  // Coefficients listed from the leading term down, e.g. {1,0,0,-2} = t^3 - 2.
  static IntPoly from_descending(const std::vector<Integer>& descending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Integer& lead() const { return c_.back(); }
  const Integer& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<Integer>& coeffs() const { return c_; }
  std::vector<Integer> descending() const;

  Rational eval(const Rational& x) const;
  BigReal eval(const BigReal& x) const;
  BigComplex eval(const BigComplex& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  IntPoly derivative() const;
  // Largest |c_i|.
  Integer height() const;

  std::string to_string(char var = 't') const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

 private:
  std::vector<Integer> c_;
};

// Rational polynomial, coefficients from the constant term upward; zero is the empty list.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> ascending);
  explicit RatPoly(const IntPoly& p);
  static RatPoly constant(const Rational& c) { return RatPoly(std::vector<Rational>{c}); }
  static RatPoly monomial(int k, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lead() const { return c_.back(); }
  Rational coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : Rational(0);
  }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  BigReal eval(const BigReal& x) const;
  RatPoly derivative() const;
  RatPoly monic() const;

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rational& s) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

// Quotient and remainder; throws on division by zero.
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
RatPoly gcd(RatPoly a, RatPoly b);
// Returns g = gcd(a, b) (monic) and s, t with s a + t b = g.
RatPoly ext_gcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t);
bool is_squarefree(const IntPoly& p);

// Number of distinct real roots in (lo, hi] by Sturm's theorem.
int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi);
int count_real_roots(const IntPoly& p);
// Cauchy bound: every root has |z| < bound.
Rational root_bound(const IntPoly& p);

// Exact handle on one root of a squarefree integer polynomial, re-evaluable at any
// precision. Real roots carry an isolating rational interval; complex roots carry a
// seed refined by Newton's method. Values are cached per precision (thread-safe).
class RootHandle {
 public:
  RootHandle() = default;
  static RootHandle real_root(IntPoly p, Rational lo, Rational hi);
  static RootHandle complex_root(IntPoly p, BigComplex seed);

  bool is_real() const;
  const IntPoly& poly() const;
  // Isolating interval (real roots only).
  const Rational& lo() const;
  const Rational& hi() const;

  BigComplex value(int prec) const;
  BigReal real_value(int prec) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

struct PolyRoots {
  // Real roots ascending, then one representative (im > 0) of each conjugate pair
  // ordered by real part then imaginary part.
  std::vector<RootHandle> handles;
  std::vector<BigComplex> values;
  int r = 0;
  int s = 0;
};

PolyRoots poly_roots(const IntPoly& p, int prec = default_precision());

// Monic product of (t - z) over all roots including conjugates, real parts of coefficients.
std::vector<BigReal> rebuild_monic(const PolyRoots& roots, int prec);

}  // namespace diagorbit
