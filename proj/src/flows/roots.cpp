#include "diagorbit/flows/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "diagorbit/error.hpp"

namespace diagorbit {

std::string RootIndex::to_string() const { return "lambda_" + std::to_string(i) + std::to_string(j); }

bool root_greater(const RootIndex& a, const RootIndex& b) {
  long da = static_cast<long>(a.j) - static_cast<long>(a.i);
  long db = static_cast<long>(b.j) - static_cast<long>(b.i);
  if (da != db) return da > db;
  return a.i < b.i;
}

std::vector<RootIndex> root_order(std::size_t d) {
  std::vector<RootIndex> out;
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j)
      if (i != j) out.push_back({i, j});
  std::sort(out.begin(), out.end(), root_greater);
  return out;
}

LieElement::LieElement(RealMatrix x) : x_(std::move(x)) {
  if (!x_.square()) throw Error(ErrorCode::kDimensionMismatch, "Lie algebra element must be square");
  BigReal tr = BigReal::zero(matrix_precision(x_));
  BigReal mag = BigReal::zero(tr.precision());
  for (std::size_t i = 0; i < x_.rows(); ++i) {
    tr += x_(i, i);
    mag += abs(x_(i, i));
  }
  if (abs(tr) > BigReal::pow2(-tr.precision() / 2, 64) * (1 + mag)) {
    throw Error(ErrorCode::kInvalidInput, "Lie algebra element must be traceless");
  }
}

RealMatrix LieElement::diagonal_part() const {
  RealMatrix d(dim(), dim(), BigReal::zero(matrix_precision(x_)));
  for (std::size_t i = 0; i < dim(); ++i) d(i, i) = x_(i, i);
  return d;
}

LieElement LieElement::elementary(std::size_t d, std::size_t i, std::size_t j, int prec) {
  if (i < 1 || j < 1 || i > d || j > d || i == j) throw Error(ErrorCode::kBadIndex, "root index");
  RealMatrix m(d, d, BigReal::zero(prec));
  m(i - 1, j - 1) = BigReal(1L, prec);
  return LieElement(m);
}

RealMatrix adjoint_conjugation(const TracelessDiag& v, const LieElement& x) {
  const std::size_t d = x.dim();
  const int prec = matrix_precision(x.matrix());
  RealMatrix a(d, d, BigReal::zero(prec)), ainv(d, d, BigReal::zero(prec));
  for (std::size_t i = 0; i < d; ++i) {
    a(i, i) = exp(v[i].with_precision(prec));
    ainv(i, i) = exp(-v[i].with_precision(prec));
  }
  return a * x.matrix() * ainv;
}

RealMatrix adjoint_formula(const TracelessDiag& v, const LieElement& x) {
  const std::size_t d = x.dim();
  RealMatrix out = x.matrix();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) out(i, j) = out(i, j) * exp(v.root(i, j).with_precision(out(i, j).precision()));
  return out;
}

namespace {

bool nonzero(const BigReal& x) { return abs(x) > BigReal::pow2(-x.precision() / 2, 64); }

LieElement reverse(const LieElement& x) {
  const std::size_t d = x.dim();
  RealMatrix m = x.matrix();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) m(a, b) = x.matrix()(d - 1 - a, d - 1 - b);
  return LieElement(m);
}

ConeCertificate construct_positive(const std::vector<LieElement>& h, const RootIndex& top) {
  const std::size_t d = h.front().dim();
  const int prec = matrix_precision(h.front().matrix());
  ConeCertificate c;
  c.root = top;
  // X: largest |X_{i0j0}| / |X|_F, first in basis order on ties.
  std::size_t pick = h.size();
  BigReal best = BigReal::zero(prec);
  for (std::size_t k = 0; k < h.size(); ++k) {
    const BigReal& comp = h[k].component(top);
    if (!nonzero(comp)) continue;
    BigReal score = abs(comp) / frobenius_norm(h[k].matrix());
    if (pick == h.size() || score > best) {
      pick = k;
      best = score;
    }
  }
  c.x = h[pick];

  std::vector<BigReal> diag(d, BigReal::zero(prec));
  for (std::size_t i = 0; i + 1 < top.j; ++i) diag[i] = BigReal(static_cast<long>(top.j - i), prec);
  c.v0 = TracelessDiag(diag);

  const BigReal lead = c.v0.root(top.i - 1, top.j - 1);
  c.margin = BigReal::infinity(1, prec);
  bool diagonal_active = false;
  for (std::size_t i = 0; i < d; ++i) diagonal_active = diagonal_active || nonzero(c.x.matrix()(i, i));
  if (diagonal_active) c.margin = lead;
  for (const RootIndex& r : root_order(d)) {
    if (r == top || !nonzero(c.x.component(r))) continue;
    c.margin = min(c.margin, lead - c.v0.root(r.i - 1, r.j - 1));
  }
  c.normalized_margin = c.margin / c.v0.norm();

  c.nilpotent = RealMatrix(d, d, BigReal::zero(prec));
  c.nilpotent(top.i - 1, top.j - 1) = c.x.component(top);

  std::vector<double> ts, logs;
  for (int t = 1; t <= 10; ++t) {
    BigReal bt(static_cast<long>(t), prec);
    RealMatrix ad = adjoint_conjugation(c.v0.scaled(bt), c.x).scaled(exp(-(lead * bt)));
    double res = frobenius_norm(ad - c.nilpotent).to_double();
    c.residuals.push_back(res);
    if (res > 0) {
      ts.push_back(t);
      logs.push_back(std::log(res));
    }
  }
  if (ts.size() < 2) {
    c.slope = -std::numeric_limits<double>::infinity();
  } else {
    double n = static_cast<double>(ts.size()), st = 0, sl = 0, stt = 0, stl = 0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      st += ts[k];
      sl += logs[k];
      stt += ts[k] * ts[k];
      stl += ts[k] * logs[k];
    }
    c.slope = (n * stl - st * sl) / (n * stt - st * st);
  }
  return c;
}

}  // namespace

ConeCertificate cone_construct(const std::vector<LieElement>& h_basis) {
  if (h_basis.empty()) throw Error(ErrorCode::kDiagonalSubalgebra, "empty subalgebra");
  const std::size_t d = h_basis.front().dim();
  for (const auto& x : h_basis)
    if (x.dim() != d) throw Error(ErrorCode::kDimensionMismatch, "subalgebra elements differ in size");

  auto projecting = [&](const std::vector<LieElement>& h, const RootIndex& r) {
    return std::any_of(h.begin(), h.end(), [&](const LieElement& x) { return nonzero(x.component(r)); });
  };
  for (const RootIndex& r : root_order(d)) {
    if (r.positive() && projecting(h_basis, r)) return construct_positive(h_basis, r);
  }
  // Only negative roots project: conjugate by the order-reversing permutation.
  std::vector<LieElement> rev;
  for (const auto& x : h_basis) rev.push_back(reverse(x));
  for (const RootIndex& r : root_order(d)) {
    if (!r.positive() || !projecting(rev, r)) continue;
    ConeCertificate c = construct_positive(rev, r);
    c.reversed = true;
    c.root = {d + 1 - r.i, d + 1 - r.j};
    std::vector<BigReal> v(c.v0.entries().rbegin(), c.v0.entries().rend());
    c.v0 = TracelessDiag(v);
    c.x = reverse(c.x);
    c.nilpotent = reverse(LieElement(c.nilpotent)).matrix();
    return c;
  }
  throw Error(ErrorCode::kDiagonalSubalgebra, "the subalgebra is contained in the diagonal algebra");
}

}  // namespace diagorbit
