#include "diagorbit/arith/lll.hpp"

#include <algorithm>

#include "diagorbit/error.hpp"

namespace diagorbit {

std::vector<BigReal> gram_schmidt(const RealMatrix& rows, RealMatrix& mu) {
  const std::size_t n = rows.rows(), m = rows.cols();
  int prec = matrix_precision(rows);
  mu = RealMatrix(n, n, BigReal::zero(prec));
  std::vector<std::vector<BigReal>> star(n);
  std::vector<BigReal> bb(n, BigReal::zero(prec));
  for (std::size_t i = 0; i < n; ++i) {
    star[i] = rows.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      BigReal num = dot(rows.row(i), star[j]);
      mu(i, j) = bb[j].is_zero() ? BigReal::zero(prec) : num / bb[j];
      for (std::size_t k = 0; k < m; ++k) star[i][k] -= mu(i, j) * star[j][k];
    }
    mu(i, i) = BigReal(1L, prec);
    bb[i] = dot(star[i], star[i]);
  }
  return bb;
}

LLLResult lll_rows(const RealMatrix& input, double delta, std::size_t fixed_prefix) {
  const std::size_t n = input.rows(), m = input.cols();
  const int prec = matrix_precision(input) + 32;
  RealMatrix b = with_precision(input, prec);
  IntMatrix u = IntMatrix::identity(n);
  if (n <= 1) return {input, u};

  RealMatrix mu;
  std::vector<BigReal> bb = gram_schmidt(b, mu);
  const BigReal d(delta, prec);
  const BigReal half(0.5, prec);
  std::size_t k = 1;
  long iterations = 0;
  const long max_iterations = 200000;
  while (k < n) {
    if (++iterations > max_iterations) {
      throw Error(ErrorCode::kPrecisionExhausted, "LLL did not terminate; raise precision");
    }
    // Size-reduce row k.
    for (std::size_t jj = k; jj-- > 0;) {
      if (abs(mu(k, jj)) <= half) continue;
      BigReal rr = round(mu(k, jj));
      Integer r = rr.round_integer();
      for (std::size_t c = 0; c < m; ++c) b(k, c) -= rr * b(jj, c);
      for (std::size_t c = 0; c < n; ++c) u(k, c) -= r * u(jj, c);
      for (std::size_t i = 0; i < jj; ++i) mu(k, i) -= rr * mu(jj, i);
      mu(k, jj) -= rr;
    }
    BigReal lhs = bb[k];
    BigReal rhs = (d - mu(k, k - 1) * mu(k, k - 1)) * bb[k - 1];
    if (lhs >= rhs || k == fixed_prefix) {
      ++k;
    } else {
      b.swap_rows(k, k - 1);
      u.swap_rows(k, k - 1);
      bb = gram_schmidt(b, mu);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  // Recompute the reduced rows exactly from the transform.
  RealMatrix out(n, m, BigReal::zero(prec - 32));
  int in_prec = matrix_precision(input);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < m; ++c) {
      BigReal acc = BigReal::zero(prec + 64);
      for (std::size_t j = 0; j < n; ++j) {
        if (u(i, j) != 0) acc += input(j, c).with_precision(prec + 64) * u(i, j);
      }
      out(i, c) = acc.with_precision(in_prec);
    }
  }
  return {out, u};
}

IntMatrix integer_relation_candidates(const std::vector<BigReal>& x, int scale_bits) {
  const std::size_t n = x.size();
  int prec = scale_bits + 64;
  for (const auto& v : x) prec = std::max(prec, v.precision());
  RealMatrix rows(n, n + 1, BigReal::zero(prec));
  BigReal scale = BigReal::pow2(scale_bits, prec);
  for (std::size_t i = 0; i < n; ++i) {
    rows(i, i) = BigReal(1L, prec);
    rows(i, n) = x[i].with_precision(prec) * scale;
  }
  LLLResult r = lll_rows(rows);
  return r.transform;
}

}  // namespace diagorbit
