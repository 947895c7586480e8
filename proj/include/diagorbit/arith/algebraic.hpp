#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diagorbit/arith/big_real.hpp"
#include "diagorbit/arith/matrix.hpp"
#include "diagorbit/arith/poly.hpp"

namespace diagorbit {

// Elements of Q[t]/(f) as power-basis coordinate vectors of length deg f.
using Coords = std::vector<Rational>;

Coords nf_reduce(const IntPoly& minpoly, const RatPoly& x);
Coords nf_mul(const IntPoly& minpoly, const Coords& x, const Coords& y);
// Throws DivisionByZeroElement for x = 0.
Coords nf_inv(const IntPoly& minpoly, const Coords& x);
// Determinant of multiplication by x.
Rational nf_norm(const IntPoly& minpoly, const Coords& x);
// Sum of the conjugates, from Newton power sums.
Rational nf_trace(const IntPoly& minpoly, const Coords& x);
// Matrix of multiplication by x; column j holds the coordinates of x * t^j.
RatMatrix nf_mul_matrix(const IntPoly& minpoly, const Coords& x);
// Power sums s_0..s_{n} of the roots of f.
std::vector<Rational> power_sums(const IntPoly& f, int n);

Coords nf_add(const Coords& x, const Coords& y);
Coords nf_sub(const Coords& x, const Coords& y);
Coords nf_scale(const Coords& x, const Rational& c);
Coords nf_const(int d, const Rational& c);
Coords nf_gen(int d);
bool nf_is_zero(const Coords& x);

// Sylvester resultant of two integer polynomials (exact).
Rational sylvester_resultant(const RatPoly& f, const RatPoly& g);

// A real number field Q(theta) with theta a chosen real root of the minimal polynomial.
struct RealField {
  IntPoly minpoly;
  RootHandle root;
  int degree() const { return minpoly.degree(); }
};

// Real number known exactly: either a rational, an element of a real number field, or
// a floating value frozen at its given precision.
class ExactReal {
 public:
  enum class Kind { kRational, kAlgebraic, kFloat };

  ExactReal() : ExactReal(Rational(0)) {}
  ExactReal(Rational q);  // NOLINT(google-explicit-constructor)
  ExactReal(std::shared_ptr<const RealField> field, Coords coords);
  static ExactReal from_float(BigReal x);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ != Kind::kFloat; }
  bool is_rational() const;
  std::optional<Rational> as_rational() const;
  const std::shared_ptr<const RealField>& field() const { return field_; }
  const Coords& coords() const { return coords_; }

  // Value with relative error below 2^(2-prec). Float values are rounded from their
  // frozen precision.
  BigReal eval(int prec) const;
  // Precision of a float value; 0 for exact values.
  int frozen_precision() const { return kind_ == Kind::kFloat ? value_.precision() : 0; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::kRational;
  Rational q_;
  std::shared_ptr<const RealField> field_;
  Coords coords_;
  BigReal value_;
};

// Integer combination sum_i c_i x_i evaluated so that the result has about `prec`
// correct bits even under cancellation (exact kinds are re-evaluated as needed).
BigReal eval_combination(const std::vector<Integer>& c, const std::vector<ExactReal>& x, int prec);

}  // namespace diagorbit
