#include "diagorbit/arith/matrix.hpp"

#include <algorithm>

namespace diagorbit {

RealMatrix to_real(const RatMatrix& m, int prec) {
  return m.map([prec](const Rational& q) { return BigReal(q, prec); });
}

RealMatrix to_real(const IntMatrix& m, int prec) {
  return m.map([prec](const Integer& z) { return BigReal(z, prec); });
}

RealMatrix with_precision(const RealMatrix& m, int prec) {
  return m.map([prec](const BigReal& x) { return x.with_precision(prec); });
}

RatMatrix to_rational(const IntMatrix& m) {
  return m.map([](const Integer& z) { return Rational(z); });
}

int matrix_precision(const RealMatrix& m) {
  int p = kMinPrecision;
  for (const auto& x : m.data()) p = std::max(p, x.precision());
  return p;
}

namespace {

// LU with partial pivoting in place; returns sign of the permutation, or 0 if singular.
int lu_decompose(RealMatrix& a, std::vector<std::size_t>& perm) {
  const std::size_t n = a.rows();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    BigReal best = abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal v = abs(a(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best.is_zero()) return 0;
    if (piv != k) {
      a.swap_rows(piv, k);
      std::swap(perm[piv], perm[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      BigReal f = a(i, k) / a(k, k);
      a(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return sign;
}

}  // namespace

BigReal determinant(const RealMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  RealMatrix a = m;
  std::vector<std::size_t> perm;
  int sign = lu_decompose(a, perm);
  int prec = matrix_precision(m);
  if (sign == 0) return BigReal::zero(prec);
  BigReal d(static_cast<long>(sign), prec);
  for (std::size_t i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

RealMatrix inverse(const RealMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kDimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RealMatrix a = m;
  std::vector<std::size_t> perm;
  if (lu_decompose(a, perm) == 0) throw Error(ErrorCode::kSingularBasis, "matrix is singular");
  int prec = matrix_precision(m);
  RealMatrix inv(n, n, BigReal::zero(prec));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<BigReal> x(n, BigReal::zero(prec));
    for (std::size_t i = 0; i < n; ++i) {
      BigReal s(perm[i] == c ? 1L : 0L, prec);
      for (std::size_t k = 0; k < i; ++k) s -= a(i, k) * x[k];
      x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
      BigReal s = x[ii];
      for (std::size_t k = ii + 1; k < n; ++k) s -= a(ii, k) * x[k];
      x[ii] = s / a(ii, ii);
    }
    inv.set_col(c, x);
  }
  return inv;
}

BigReal frobenius_norm(const RealMatrix& m) {
  BigReal s = BigReal::zero(matrix_precision(m));
  for (const auto& x : m.data()) s += x * x;
  return sqrt(s);
}

BigReal max_abs_entry(const RealMatrix& m) {
  BigReal s = BigReal::zero(matrix_precision(m));
  for (const auto& x : m.data()) s = max(s, abs(x));
  return s;
}

BigReal dot(const std::vector<BigReal>& a, const std::vector<BigReal>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::kDimensionMismatch, "dot product length");
  if (a.empty()) return BigReal(0L);
  BigReal s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigReal norm2(const std::vector<BigReal>& v) { return sqrt(dot(v, v)); }

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, r);
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(piv, k);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kDimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw Error(ErrorCode::kSingularBasis, "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<Rational> solve(const RatMatrix& m, const std::vector<Rational>& b) {
  RatMatrix inv = inverse(m);
  std::vector<Rational> x(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += inv(i, j) * b[j];
    x[i] = s;
  }
  return x;
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::kDimensionMismatch, "determinant of non-square matrix");
  IntMatrix a = m;
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(piv, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace diagorbit
