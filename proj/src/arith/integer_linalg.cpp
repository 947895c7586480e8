#include "diagorbit/arith/integer_linalg.hpp"

#include "diagorbit/error.hpp"

namespace diagorbit {

namespace {

void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= f * m(src, j);
}

void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntMatrix hermite_normal_form(const IntMatrix& m, IntMatrix& transform) {
  IntMatrix h = m;
  const std::size_t rows = h.rows(), cols = h.cols();
  transform = IntMatrix::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (h(i, c) != 0 && (best == rows || abs(h(i, c)) < abs(h(best, c)))) best = i;
      }
      if (best == rows) break;
      if (best != r) {
        h.swap_rows(best, r);
        transform.swap_rows(best, r);
      }
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (h(i, c) == 0) continue;
        Integer q = h(i, c) / h(r, c);
        row_axpy(h, i, r, q);
        row_axpy(transform, i, r, q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      row_negate(h, r);
      row_negate(transform, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      row_axpy(h, i, r, q);
      row_axpy(transform, i, r, q);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = h(i, j);
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix u;
  return hermite_normal_form(m, u);
}

IntMatrix integer_kernel(const IntMatrix& m) {
  // U * m^T = [H; 0]; the rows of U paired with zero rows span the kernel.
  IntMatrix mt = m.transpose();
  IntMatrix u;
  IntMatrix h = hermite_normal_form(mt, u);
  const std::size_t n = mt.rows();
  const std::size_t rank = h.rows();
  IntMatrix k(n - rank, n);
  for (std::size_t i = rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i - rank, j) = u(i, j);
  // Present the kernel basis in Hermite form for determinism.
  return k.rows() ? hermite_normal_form(k) : k;
}

Integer lcm_denominators(const RatMatrix& m) {
  Integer l = 1;
  for (const auto& v : m.data()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

IntMatrix integer_kernel(const RatMatrix& m) {
  Integer l = lcm_denominators(m);
  IntMatrix mi = m.map([&l](const Rational& v) {
    Rational s = v * l;
    return Integer(s.get_num());
  });
  return integer_kernel(mi);
}

Integer gcd_all(const std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntMatrix unimodular_completion(const std::vector<Integer>& v) {
  const std::size_t n = v.size();
  if (gcd_all(v) != 1) throw Error(ErrorCode::kInvalidInput, "vector is not primitive");
  // U * v^T = e_1 with U unimodular, so U^{-1} has first column v and
  // (U^{-1})^T has first row v.
  IntMatrix col(n, 1);
  for (std::size_t i = 0; i < n; ++i) col(i, 0) = v[i];
  IntMatrix u;
  hermite_normal_form(col, u);
  RatMatrix inv = inverse(to_rational(u));
  IntMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = inv(j, i).get_num();
  return out;
}

RatMatrix rational_lattice_basis(const RatMatrix& generators) {
  Integer l = lcm_denominators(generators);
  IntMatrix mi = generators.map([&l](const Rational& v) {
    Rational s = v * l;
    return Integer(s.get_num());
  });
  IntMatrix h = hermite_normal_form(mi);
  return h.map([&l](const Integer& z) {
    Rational q(z, l);
    q.canonicalize();
    return q;
  });
}

RatMatrix rational_lattice_dual(const RatMatrix& basis) { return inverse(basis).transpose(); }

}  // namespace diagorbit
