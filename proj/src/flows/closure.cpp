#include "diagorbit/flows/closure.hpp"

#include "diagorbit/arith/integer_linalg.hpp"
#include "diagorbit/arith/lll.hpp"
#include "diagorbit/error.hpp"

namespace diagorbit {

namespace {

// Rank of the rows of m by Gram-Schmidt with an absolute cutoff on the residual.
std::size_t numeric_rank(const std::vector<std::vector<BigReal>>& rows, const BigReal& cutoff) {
  std::vector<std::vector<BigReal>> q;
  for (auto v : rows) {
    for (const auto& u : q) {
      BigReal c = dot(v, u) / dot(u, u);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    }
    if (norm2(v) > cutoff) q.push_back(v);
  }
  return q.size();
}

}  // namespace

ClosureResult subspace_closure(const RealMatrix& lattice, const RealMatrix& w, int prec) {
  const std::size_t m = lattice.rows();
  if (!lattice.square() || m == 0) throw Error(ErrorCode::kDimensionMismatch, "lattice basis must be square");
  if (w.rows() == 0) throw Error(ErrorCode::kInvalidInput, "the subspace needs at least one vector");
  if (w.cols() != m) throw Error(ErrorCode::kDimensionMismatch, "subspace vectors have the wrong length");
  const int wp = prec + 32;
  RealMatrix linv = inverse(with_precision(lattice, wp));
  RealMatrix y = with_precision(w, wp) * linv;  // rows: W in lattice coordinates
  const std::size_t k = y.rows();

  // Integer relations c with y c = 0 from LLL on [I | S y^T].
  const BigReal scale = BigReal::pow2(prec / 2, wp);
  RealMatrix rows(m, m + k, BigReal::zero(wp));
  for (std::size_t i = 0; i < m; ++i) {
    rows(i, i) = BigReal(1L, wp);
    for (std::size_t j = 0; j < k; ++j) rows(i, m + j) = y(j, i) * scale;
  }
  LLLResult red = lll_rows(rows);
  const BigReal exact_tol = BigReal::pow2(-(3 * prec) / 4, 64);
  const BigReal clear_tol = BigReal::pow2(-prec / 2, 64);
  const Integer height = Integer(1) << (prec / 16);

  std::vector<std::vector<Integer>> rel;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Integer> c = red.transform.row(i);
    Integer h = 0;
    for (const auto& v : c) h = std::max(h, Integer(abs(v)));
    BigReal r = BigReal::zero(wp);
    for (std::size_t j = 0; j < k; ++j) {
      BigReal acc = BigReal::zero(wp);
      for (std::size_t t = 0; t < m; ++t)
        if (c[t] != 0) acc += y(j, t) * c[t];
      r = max(r, abs(acc));
    }
    if (h > height || r > clear_tol) continue;
    if (r > exact_tol) throw Error(ErrorCode::kUncertifiedInput, "cannot decide whether a small functional vanishes on W");
    rel.push_back(c);
  }
  ClosureResult out;
  if (!rel.empty()) {
    IntMatrix rm(rel.size(), m);
    for (std::size_t i = 0; i < rel.size(); ++i) rm.set_row(i, rel[i]);
    IntMatrix h = hermite_normal_form(rm);
    for (std::size_t i = 0; i < h.rows(); ++i) out.certificates.push_back(h.row(i));
  }
  out.dimension = m - out.certificates.size();

  // Functionals on R^m: x -> x L^{-1} c.
  std::vector<std::vector<BigReal>> funcs;
  for (const auto& c : out.certificates) {
    std::vector<BigReal> f(m, BigReal::zero(wp));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (c[b] != 0) f[a] += linv(a, b) * c[b];
    funcs.push_back(f);
  }
  const BigReal cutoff = BigReal::pow2(-prec / 4, 64);
  const std::size_t base = numeric_rank(funcs, cutoff);
  for (std::size_t i = 1; i <= m && base > 0; ++i)
    for (std::size_t j = i + 1; j <= m; ++j) {
      std::vector<BigReal> chi(m, BigReal::zero(wp));
      chi[i - 1] = BigReal(1L, wp);
      chi[j - 1] = BigReal(-1L, wp);
      auto with = funcs;
      with.push_back(chi);
      if (numeric_rank(with, cutoff) == base) out.kernel_roots.push_back({i, j});
    }
  return out;
}

}  // namespace diagorbit
