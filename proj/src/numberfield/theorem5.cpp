#include "diagorbit/numberfield/theorem5.hpp"

#include "diagorbit/error.hpp"

namespace diagorbit {

RealMatrix row_shear(const std::vector<BigReal>& v) {
  const std::size_t d = v.size() + 1;
  int prec = v.empty() ? default_precision() : v.front().precision();
  RealMatrix g(d, d, BigReal::zero(prec));
  for (std::size_t i = 0; i < d; ++i) g(i, i) = BigReal(1L, prec);
  for (std::size_t j = 1; j < d; ++j) g(0, j) = v[j - 1];
  return g;
}

RealMatrix column_shear(const std::vector<BigReal>& v) {
  const std::size_t d = v.size() + 1;
  int prec = v.empty() ? default_precision() : v.front().precision();
  RealMatrix h(d, d, BigReal::zero(prec));
  for (std::size_t i = 0; i < d; ++i) h(i, i) = BigReal(1L, prec);
  for (std::size_t i = 1; i < d; ++i) h(i, 0) = v[i - 1];
  return h;
}

Theorem5Factor theorem5_factor(const KLattice& kl, int prec) {
  const FieldPtr& f = kl.field();
  const std::size_t d = f->degree();
  if (f->r() < 1) throw Error(ErrorCode::kPreconditionViolated, "the field needs a real embedding");
  if (kl.basis()[0] != nf_const(static_cast<int>(d), Rational(1))) {
    throw Error(ErrorCode::kPreconditionViolated, "first basis element must be 1");
  }
  const int wp = prec + 64;
  Theorem5Factor out;
  RealMatrix phi = embedding_matrix(kl, wp);
  std::vector<BigReal> v;
  for (std::size_t j = 1; j < d; ++j) v.push_back(phi(0, j));
  RealMatrix g = row_shear(v);
  RealMatrix m = g * inverse(phi);
  BigReal det = determinant(m);
  if (d % 2 == 0 && det.sign() < 0) {
    throw Error(ErrorCode::kShapeViolation, "det(g_v Phi^{-1}) < 0 in even dimension");
  }
  BigReal c = root(det, static_cast<unsigned long>(d));
  RealMatrix p = m.scaled(1L / c);
  BigReal off = BigReal::zero(prec);
  for (std::size_t j = 1; j < d; ++j) off = max(off, abs(p(0, j)));
  if (off > BigReal::pow2(-prec / 2, 64)) {
    throw Error(ErrorCode::kShapeViolation, "first row of p is not (b, 0, ..., 0); check basis and embedding order");
  }
  out.c = c.with_precision(prec);
  out.p = with_precision(p, prec);
  out.phi = with_precision(phi, prec);
  out.m = with_precision(m, prec);
  out.g_v = with_precision(g, prec);
  out.max_first_row_off = off.with_precision(64);
  return out;
}

}  // namespace diagorbit
