#include "diagorbit/arith/algebraic.hpp"

#include <algorithm>

#include "diagorbit/error.hpp"

namespace diagorbit {

namespace {

RatPoly to_poly(const Coords& x) { return RatPoly(x); }

void check_len(const IntPoly& f, const Coords& x) {
  if (static_cast<int>(x.size()) != f.degree()) {
    throw Error(ErrorCode::kDimensionMismatch, "coordinate vector length differs from field degree");
  }
}

}  // namespace

Coords nf_reduce(const IntPoly& minpoly, const RatPoly& x) {
  RatPoly r = x % RatPoly(minpoly);
  Coords out(static_cast<std::size_t>(minpoly.degree()), Rational(0));
  for (int i = 0; i <= r.degree(); ++i) out[static_cast<std::size_t>(i)] = r.coeff(i);
  return out;
}

Coords nf_mul(const IntPoly& minpoly, const Coords& x, const Coords& y) {
  check_len(minpoly, x);
  check_len(minpoly, y);
  return nf_reduce(minpoly, to_poly(x) * to_poly(y));
}

Coords nf_inv(const IntPoly& minpoly, const Coords& x) {
  check_len(minpoly, x);
  if (nf_is_zero(x)) throw Error(ErrorCode::kDivisionByZeroElement, "inverse of zero element");
  RatPoly s, t;
  RatPoly g = ext_gcd(to_poly(x), RatPoly(minpoly), s, t);
  if (g.degree() != 0) {
    throw Error(ErrorCode::kDivisionByZeroElement, "element shares a factor with the modulus");
  }
  return nf_reduce(minpoly, s);
}

RatMatrix nf_mul_matrix(const IntPoly& minpoly, const Coords& x) {
  check_len(minpoly, x);
  const int d = minpoly.degree();
  RatMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  RatPoly px = to_poly(x);
  for (int j = 0; j < d; ++j) {
    Coords col = nf_reduce(minpoly, px * RatPoly::monomial(j));
    for (int i = 0; i < d; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = col[static_cast<std::size_t>(i)];
  }
  return m;
}

Rational nf_norm(const IntPoly& minpoly, const Coords& x) { return determinant(nf_mul_matrix(minpoly, x)); }

std::vector<Rational> power_sums(const IntPoly& f, int n) {
  const int d = f.degree();
  // Monic coefficients e: t^d + a_{d-1} t^{d-1} + ... + a_0.
  std::vector<Rational> a(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] = make_rational(f[i], f.lead());
  std::vector<Rational> s(static_cast<std::size_t>(n) + 1, Rational(0));
  s[0] = d;
  for (int k = 1; k <= n; ++k) {
    Rational acc = 0;
    // Newton: s_k + a_{d-1} s_{k-1} + ... + a_{d-k+1} s_1 + k a_{d-k} = 0 (k <= d);
    // for k > d: s_k + a_{d-1} s_{k-1} + ... + a_0 s_{k-d} = 0.
    for (int j = 1; j <= std::min(k - 1, d); ++j) acc += a[static_cast<std::size_t>(d - j)] * s[static_cast<std::size_t>(k - j)];
    if (k <= d) acc += a[static_cast<std::size_t>(d - k)] * k;
    s[static_cast<std::size_t>(k)] = -acc;
  }
  return s;
}

Rational nf_trace(const IntPoly& minpoly, const Coords& x) {
  check_len(minpoly, x);
  auto s = power_sums(minpoly, minpoly.degree());
  Rational t = 0;
  for (std::size_t i = 0; i < x.size(); ++i) t += x[i] * s[i];
  return t;
}

Coords nf_add(const Coords& x, const Coords& y) {
  Coords r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Coords nf_sub(const Coords& x, const Coords& y) {
  Coords r = x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Coords nf_scale(const Coords& x, const Rational& c) {
  Coords r = x;
  for (auto& v : r) v *= c;
  return r;
}

Coords nf_const(int d, const Rational& c) {
  Coords r(static_cast<std::size_t>(d), Rational(0));
  r[0] = c;
  return r;
}

Coords nf_gen(int d) {
  Coords r(static_cast<std::size_t>(d), Rational(0));
  if (d >= 2) {
    r[1] = 1;
  } else {
    throw Error(ErrorCode::kInvalidInput, "degree-1 field has no generator coordinate");
  }
  return r;
}

bool nf_is_zero(const Coords& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; });
}

Rational sylvester_resultant(const RatPoly& f, const RatPoly& g) {
  const int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return 0;
  const std::size_t size = static_cast<std::size_t>(m + n);
  if (size == 0) return 1;
  RatMatrix s(size, size);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = f.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = g.coeff(n - j);
  return determinant(s);
}

// ---- ExactReal ----

ExactReal::ExactReal(Rational q) : kind_(Kind::kRational), q_(std::move(q)) { q_.canonicalize(); }

ExactReal::ExactReal(std::shared_ptr<const RealField> field, Coords coords)
    : kind_(Kind::kAlgebraic), field_(std::move(field)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != field_->degree()) {
    throw Error(ErrorCode::kDimensionMismatch, "coordinates do not match field degree");
  }
}

ExactReal ExactReal::from_float(BigReal x) {
  ExactReal e;
  e.kind_ = Kind::kFloat;
  e.value_ = std::move(x);
  return e;
}

bool ExactReal::is_rational() const { return as_rational().has_value(); }

std::optional<Rational> ExactReal::as_rational() const {
  if (kind_ == Kind::kRational) return q_;
  if (kind_ == Kind::kAlgebraic) {
    for (std::size_t i = 1; i < coords_.size(); ++i)
      if (coords_[i] != 0) return std::nullopt;
    return coords_[0];
  }
  return std::nullopt;
}

BigReal ExactReal::eval(int prec) const {
  switch (kind_) {
    case Kind::kRational:
      return BigReal(q_, prec);
    case Kind::kFloat:
      return value_.with_precision(prec);
    case Kind::kAlgebraic:
      break;
  }
  // Horner at increasing working precision until cancellation is covered.
  int guard = 32;
  for (int attempt = 0; attempt < 8; ++attempt) {
    int wp = prec + guard;
    BigReal theta = field_->root.real_value(wp);
    BigReal acc = BigReal::zero(wp);
    BigReal mag = BigReal::zero(wp);
    BigReal pw(1L, wp);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] != 0) {
        BigReal term = BigReal(coords_[i], wp) * pw;
        acc += term;
        mag += abs(term);
      }
      pw *= theta;
    }
    if (mag.is_zero()) return BigReal::zero(prec);
    if (acc.is_zero()) {
      if (guard > 4 * prec) return BigReal::zero(prec);
      guard *= 2;
      continue;
    }
    // Bits lost to cancellation: log2(mag / |acc|).
    long lost = mpfr_get_exp(mag.raw()) - mpfr_get_exp(acc.raw());
    if (lost + 8 < guard) return acc.with_precision(prec);
    guard = static_cast<int>(lost) + 32;
  }
  throw Error(ErrorCode::kPrecisionExhausted, "algebraic evaluation did not stabilize");
}

std::string ExactReal::describe() const {
  switch (kind_) {
    case Kind::kRational:
      return q_.get_str();
    case Kind::kFloat:
      return value_.to_string(30);
    case Kind::kAlgebraic:
      break;
  }
  std::string s = "[";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].get_str();
  }
  return s + "] in Q[t]/(" + field_->minpoly.to_string() + ")";
}

BigReal eval_combination(const std::vector<Integer>& c, const std::vector<ExactReal>& x, int prec) {
  if (c.size() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "combination length");
  long cbits = 0;
  for (const auto& v : c) cbits = std::max(cbits, bit_length(v));
  int guard = static_cast<int>(cbits) + 32;
  int frozen = 0;
  for (const auto& xi : x) frozen = std::max(frozen, xi.frozen_precision());
  for (int attempt = 0; attempt < 8; ++attempt) {
    int wp = prec + guard;
    BigReal acc = BigReal::zero(wp);
    BigReal mag = BigReal::zero(wp);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      BigReal term = x[i].eval(wp) * c[i];
      acc += term;
      mag += abs(term);
    }
    if (mag.is_zero() || frozen > 0) return acc.with_precision(prec);
    if (acc.is_zero()) {
      if (guard > 4 * prec) return BigReal::zero(prec);
      guard *= 2;
      continue;
    }
    long lost = mpfr_get_exp(mag.raw()) - mpfr_get_exp(acc.raw());
    if (lost + 8 < guard) return acc.with_precision(prec);
    guard = static_cast<int>(lost) + 32;
  }
  throw Error(ErrorCode::kPrecisionExhausted, "integer combination did not stabilize");
}

}  // namespace diagorbit
