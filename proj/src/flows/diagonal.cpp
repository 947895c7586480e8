#include "diagorbit/flows/diagonal.hpp"

#include "diagorbit/error.hpp"

namespace diagorbit {

TracelessDiag::TracelessDiag(std::vector<BigReal> entries) : t_(std::move(entries)) {
  if (t_.empty()) return;
  BigReal tr = BigReal::zero(t_.front().precision());
  for (const auto& x : t_) tr += x;
  if (tr.is_zero()) return;
  BigReal mean = tr / static_cast<long>(t_.size());
  for (auto& x : t_) x -= mean;
}

TracelessDiag TracelessDiag::scaled(const BigReal& s) const {
  TracelessDiag out = *this;
  for (auto& x : out.t_) x *= s;
  return out;
}

TracelessDiag TracelessDiag::operator+(const TracelessDiag& o) const {
  if (o.dim() != dim()) throw Error(ErrorCode::kDimensionMismatch, "diagonal dimensions differ");
  TracelessDiag out = *this;
  for (std::size_t i = 0; i < dim(); ++i) out.t_[i] += o.t_[i];
  return out;
}

BigReal TracelessDiag::norm() const { return norm2(t_); }

BigReal TracelessDiag::root(std::size_t i, std::size_t j) const { return t_[i] - t_[j]; }

TracelessDiag a_k_flow(std::size_t k, const BigReal& t, std::size_t d) {
  if (k < 1 || k + 1 > d) throw Error(ErrorCode::kBadIndex, "a_k needs 1 <= k <= d-1");
  std::vector<BigReal> e;
  for (std::size_t i = 0; i < d; ++i) e.push_back(i < k ? t * static_cast<long>(d - k) : -(t * static_cast<long>(k)));
  return TracelessDiag(e);
}

LatticeBasis apply_diag(const TracelessDiag& v, const LatticeBasis& x) {
  if (v.dim() != x.dim()) throw Error(ErrorCode::kDimensionMismatch, "diagonal and lattice dimensions differ");
  return x.scale_rows(v.entries());
}

void TorusParam::validate(int prec) const {
  if (r < 0 || s < 0 || a.size() != static_cast<std::size_t>(r) || w.size() != static_cast<std::size_t>(s)) {
    throw Error(ErrorCode::kInvalidInput, "torus parameter shape");
  }
  BigReal det(1L, prec);
  for (const auto& x : a) {
    if (x.sign() <= 0) throw Error(ErrorCode::kInvalidInput, "torus moduli must be positive");
    det *= x;
  }
  for (const auto& z : w) det *= z.norm_sq();
  if (abs(det - 1) > BigReal::pow2(-prec / 2, 64)) {
    throw Error(ErrorCode::kDeterminantViolation, "torus element must have determinant one");
  }
}

RealMatrix rotation_block(const BigComplex& w) {
  RealMatrix m(2, 2, BigReal::zero(w.precision()));
  m(0, 0) = w.re;
  m(0, 1) = -w.im;
  m(1, 0) = w.im;
  m(1, 1) = w.re;
  return m;
}

RealMatrix TorusParam::matrix(int prec) const {
  const std::size_t d = dim();
  RealMatrix m(d, d, BigReal::zero(prec));
  for (int i = 0; i < r; ++i) m(i, i) = a[i].with_precision(prec);
  for (int j = 0; j < s; ++j) {
    RealMatrix b = rotation_block(w[j]);
    const std::size_t k = r + 2 * j;
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q) m(k + p, k + q) = b(p, q).with_precision(prec);
  }
  return m;
}

TorusParam TorusParam::compose(const TorusParam& o) const {
  if (o.r != r || o.s != s) throw Error(ErrorCode::kDimensionMismatch, "torus signatures differ");
  TorusParam out = *this;
  for (int i = 0; i < r; ++i) out.a[i] = a[i] * o.a[i];
  for (int j = 0; j < s; ++j) out.w[j] = w[j] * o.w[j];
  return out;
}

LatticeBasis apply_matrix(const RealMatrix& g, const LatticeBasis& x) {
  if (g.rows() != x.dim() || g.cols() != x.dim()) throw Error(ErrorCode::kDimensionMismatch, "matrix shape");
  const int prec = x.precision();
  LatticeBasis hi = x.has_provenance() ? x.at_precision(prec + 64) : x;
  RealMatrix m = with_precision(g, prec + 64) * with_precision(hi.matrix(), prec + 64);
  return LatticeBasis(with_precision(m, prec));
}

LatticeBasis torus_apply(const TorusParam& t, const LatticeBasis& x) {
  t.validate(x.precision());
  if (t.dim() != x.dim()) throw Error(ErrorCode::kDimensionMismatch, "torus and lattice dimensions differ");
  return apply_matrix(t.matrix(x.precision() + 64), x);
}

std::vector<BigComplex> torus_tilde(const TorusParam& t) {
  std::vector<BigComplex> out;
  for (const auto& x : t.a) out.emplace_back(x);
  for (const auto& z : t.w) {
    out.push_back(z);
    out.push_back(z.conj());
  }
  return out;
}

BigComplex torus_chi(const std::vector<BigComplex>& diag, std::size_t i, std::size_t j) {
  if (i >= diag.size() || j >= diag.size() || i == j) throw Error(ErrorCode::kBadIndex, "character index");
  return diag[i] / diag[j];
}

bool parabolic_check(const RealMatrix& g, std::size_t k, int sign) {
  const std::size_t d = g.rows();
  if (k < 1 || k + 1 > d) throw Error(ErrorCode::kBadIndex, "parabolic needs 1 <= k <= d-1");
  const BigReal tol = BigReal::pow2(-matrix_precision(g) / 2, 64);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      bool off = sign > 0 ? (i >= k && j < k) : (i < k && j >= k);
      if (off && abs(g(i, j)) > tol) return false;
    }
  return true;
}

}  // namespace diagorbit
