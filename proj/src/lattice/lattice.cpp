#include "diagorbit/lattice/lattice.hpp"

#include <algorithm>

#include "diagorbit/arith/integer_linalg.hpp"
#include "diagorbit/arith/lll.hpp"
#include "diagorbit/error.hpp"

namespace diagorbit {

RealMatrix ExactGenerators::columns(int prec) const {
  return m_.map([prec](const ExactReal& x) { return x.eval(prec); });
}

namespace {

// Rows of G n, each with about `prec` correct bits despite cancellation.
std::vector<BigReal> combine(const GeneratorSource& src, const std::vector<Integer>& n, int prec) {
  const std::size_t d = src.dim();
  long nbits = 0;
  for (const auto& v : n) nbits = std::max(nbits, bit_length(v));
  int guard = static_cast<int>(nbits) + 32;
  std::vector<BigReal> out(d);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const int wp = prec + guard;
    RealMatrix g = src.columns(wp);
    long worst = 0;
    bool retry = false;
    for (std::size_t i = 0; i < d; ++i) {
      BigReal acc = BigReal::zero(wp), mag = BigReal::zero(wp);
      for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] == 0) continue;
        BigReal term = g(i, k) * n[k];
        acc += term;
        mag += abs(term);
      }
      if (!mag.is_zero()) {
        if (acc.is_zero()) {
          if (guard <= 4 * prec) retry = true;
        } else {
          worst = std::max(worst, static_cast<long>(mpfr_get_exp(mag.raw()) - mpfr_get_exp(acc.raw())));
        }
      }
      out[i] = acc.with_precision(prec);
    }
    if (!retry && worst + 8 < guard) return out;
    guard = std::max(2 * guard, static_cast<int>(worst) + 32);
  }
  throw Error(ErrorCode::kPrecisionExhausted, "lattice point coordinates did not stabilize");
}

}  // namespace

LatticeBasis::LatticeBasis(RealMatrix columns) : b_(std::move(columns)) {
  if (!b_.square()) throw Error(ErrorCode::kDimensionMismatch, "basis matrix must be square");
  if (b_.rows() < 1) throw Error(ErrorCode::kInvalidInput, "empty basis");
  prec_ = matrix_precision(b_);
}

LatticeBasis LatticeBasis::identity(std::size_t d, int prec) {
  RealMatrix m(d, d, BigReal::zero(prec));
  for (std::size_t i = 0; i < d; ++i) m(i, i) = BigReal(1L, prec);
  return LatticeBasis(m);
}

LatticeBasis LatticeBasis::from_generators(std::shared_ptr<const GeneratorSource> source, IntMatrix combination,
                                           int prec) {
  if (combination.rows() != source->count() || combination.cols() != source->dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "combination matrix shape");
  }
  LatticeBasis x;
  Provenance p;
  const std::size_t d = source->dim();
  p.source = std::move(source);
  p.combination = std::move(combination);
  p.row_log_scale.assign(d, BigReal::zero(prec + 64));
  x.prov_ = std::move(p);
  x.prec_ = prec;
  x.b_ = x.materialize(prec);
  return x;
}

RealMatrix LatticeBasis::materialize(int prec) const {
  if (!prov_) return with_precision(b_, prec);
  const Provenance& p = *prov_;
  const std::size_t d = p.source->dim();
  const int wp = prec + 16;
  RealMatrix m(d, d, BigReal::zero(wp));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<BigReal> col = combine(*p.source, p.combination.col(j), wp);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (p.row_log_scale[i].is_zero()) continue;
    BigReal f = exp(p.row_log_scale[i].with_precision(wp + 32));
    for (std::size_t j = 0; j < d; ++j) m(i, j) *= f;
  }
  if (p.normalized) {
    BigReal det = abs(diagorbit::determinant(m));
    if (det.is_zero()) throw Error(ErrorCode::kSingularBasis, "singular basis");
    BigReal c = root(1L / det, static_cast<unsigned long>(d));
    for (auto i = 0u; i < d; ++i)
      for (auto j = 0u; j < d; ++j) m(i, j) *= c;
  }
  return with_precision(m, prec);
}

LatticeBasis LatticeBasis::at_precision(int prec) const {
  LatticeBasis x = *this;
  x.prec_ = prec;
  x.b_ = materialize(prec);
  if (x.prov_) {
    for (auto& t : x.prov_->row_log_scale) t = t.with_precision(std::max(t.precision(), prec + 64));
  }
  return x;
}

std::vector<BigReal> LatticeBasis::point(const std::vector<Integer>& c, int prec) const {
  const std::size_t d = dim();
  if (c.size() != d) throw Error(ErrorCode::kDimensionMismatch, "coefficient vector length");
  if (!prov_) {
    std::vector<BigReal> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      BigReal acc = BigReal::zero(prec + 64);
      for (std::size_t j = 0; j < d; ++j)
        if (c[j] != 0) acc += b_(i, j).with_precision(prec + 64) * c[j];
      v[i] = acc.with_precision(prec);
    }
    return v;
  }
  const Provenance& p = *prov_;
  std::vector<Integer> n(p.source->count(), Integer(0));
  for (std::size_t k = 0; k < n.size(); ++k)
    for (std::size_t j = 0; j < d; ++j) n[k] += p.combination(k, j) * c[j];
  const int wp = prec + 16;
  std::vector<BigReal> v = combine(*p.source, n, wp);
  for (std::size_t i = 0; i < d; ++i) {
    if (!p.row_log_scale[i].is_zero()) v[i] *= exp(p.row_log_scale[i].with_precision(wp + 32));
  }
  if (p.normalized) {
    BigReal c0 = norm_scalar(wp);
    for (auto& x : v) x *= c0;
  }
  for (auto& x : v) x = x.with_precision(prec);
  return v;
}

LatticeBasis LatticeBasis::change_basis(const IntMatrix& u) const {
  const std::size_t d = dim();
  if (u.rows() != d || u.cols() != d) throw Error(ErrorCode::kDimensionMismatch, "change of basis shape");
  LatticeBasis x = *this;
  if (prov_) {
    x.prov_->combination = prov_->combination * u;
    x.b_ = x.materialize(prec_);
    return x;
  }
  RealMatrix m(d, d, BigReal::zero(prec_));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      BigReal acc = BigReal::zero(prec_ + 64);
      for (std::size_t k = 0; k < d; ++k)
        if (u(k, j) != 0) acc += b_(i, k).with_precision(prec_ + 64) * u(k, j);
      m(i, j) = acc.with_precision(prec_);
    }
  x.b_ = std::move(m);
  return x;
}

LatticeBasis LatticeBasis::scale_rows(const std::vector<BigReal>& log_scale) const {
  const std::size_t d = dim();
  if (log_scale.size() != d) throw Error(ErrorCode::kDimensionMismatch, "diagonal length differs from dimension");
  LatticeBasis x = *this;
  if (prov_) {
    for (std::size_t i = 0; i < d; ++i) {
      const BigReal& t = prov_->row_log_scale[i];
      x.prov_->row_log_scale[i] = t.with_precision(std::max(t.precision(), prec_ + 64)) + log_scale[i];
    }
    x.b_ = x.materialize(prec_);
    return x;
  }
  for (std::size_t i = 0; i < d; ++i) {
    BigReal f = exp(log_scale[i].with_precision(prec_ + 32));
    for (std::size_t j = 0; j < d; ++j) x.b_(i, j) = (b_(i, j) * f).with_precision(prec_);
  }
  return x;
}

BigReal LatticeBasis::norm_scalar(int prec) const {
  LatticeBasis raw = *this;
  raw.prov_->normalized = false;
  BigReal det = abs(diagorbit::determinant(raw.materialize(prec)));
  if (det.is_zero()) throw Error(ErrorCode::kSingularBasis, "singular basis");
  return root(1L / det, static_cast<unsigned long>(dim()));
}

LatticeBasis LatticeBasis::normalized() const {
  LatticeBasis x = *this;
  x.prov_->normalized = true;
  x.b_ = x.materialize(prec_);
  return x;
}

LatticeBasis LatticeBasis::without_provenance() const { return LatticeBasis(b_); }

BigReal LatticeBasis::determinant() const { return diagorbit::determinant(b_); }

LatticeBasis dual(const LatticeBasis& x) {
  RealMatrix m = x.has_provenance() ? x.at_precision(x.precision() + 64).matrix() : x.matrix();
  RealMatrix inv = inverse(m).transpose();
  return LatticeBasis(with_precision(inv, x.precision()));
}

LatticeBasis normalize_covolume(const LatticeBasis& x) {
  if (x.has_provenance()) return x.normalized();
  const std::size_t d = x.dim();
  BigReal det = abs(x.determinant());
  if (det.is_zero()) throw Error(ErrorCode::kSingularBasis, "singular basis");
  BigReal c = root(1L / det, static_cast<unsigned long>(d));
  RealMatrix m = x.matrix();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) *= c;
  return LatticeBasis(m);
}

}  // namespace diagorbit
