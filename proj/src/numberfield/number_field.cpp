#include "diagorbit/numberfield/number_field.hpp"

#include "diagorbit/arith/integer_linalg.hpp"
#include "diagorbit/error.hpp"

namespace diagorbit {

std::shared_ptr<const NumberField> NumberField::create(const IntPoly& minpoly, int prec) {
  if (minpoly.degree() < 2) throw Error(ErrorCode::kInvalidInput, "number field needs degree >= 2");
  PolyRoots roots = poly_roots(minpoly, prec);
  auto f = std::make_shared<NumberField>();
  f->minpoly_ = minpoly;
  f->r_ = roots.r;
  f->s_ = roots.s;
  f->roots_ = roots.handles;
  for (int i = 0; i < roots.r; ++i) {
    f->real_fields_.push_back(std::make_shared<const RealField>(RealField{minpoly, roots.handles[i]}));
  }
  return f;
}

std::shared_ptr<const RealField> NumberField::real_field(int i) const {
  if (i < 0 || i >= r_) throw Error(ErrorCode::kBadIndex, "not a real embedding index");
  return real_fields_[i];
}

namespace {

// Bits lost to cancellation in a sum with absolute magnitude `mag`; -1 when acc is zero.
long cancellation(const BigReal& acc, const BigReal& mag) {
  if (mag.is_zero()) return 0;
  if (acc.is_zero()) return -1;
  return mpfr_get_exp(mag.raw()) - mpfr_get_exp(acc.raw());
}

}  // namespace

BigComplex NumberField::embed(int i, const Coords& x, int prec) const {
  if (i < 0 || i >= r_ + s_) throw Error(ErrorCode::kBadIndex, "embedding index out of range");
  if (x.size() != static_cast<std::size_t>(degree())) throw Error(ErrorCode::kDimensionMismatch, "coordinate length");
  int guard = 32;
  for (int attempt = 0; attempt < 10; ++attempt) {
    const int wp = prec + guard;
    BigComplex z = roots_[i].value(wp);
    BigComplex pw(BigReal(1L, wp), BigReal::zero(wp));
    BigReal re = BigReal::zero(wp), im = BigReal::zero(wp);
    BigReal mre = BigReal::zero(wp), mim = BigReal::zero(wp);
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] != 0) {
        BigReal c(x[k], wp);
        BigReal tr = c * pw.re, ti = c * pw.im;
        re += tr;
        im += ti;
        mre += abs(tr);
        mim += abs(ti);
      }
      pw *= z;
    }
    const bool is_real = i < r_;
    long lr = cancellation(re, mre), li = is_real ? 0 : cancellation(im, mim);
    bool exhausted = guard > 4 * prec;
    bool zero_pending = (lr < 0 || li < 0) && !exhausted;
    long lost = std::max(lr, li);
    if (!zero_pending && (lost + 8 < guard || exhausted)) {
      if (lr < 0) re = BigReal::zero(wp);
      if (is_real || li < 0) im = BigReal::zero(wp);
      return {re.with_precision(prec), im.with_precision(prec)};
    }
    guard = zero_pending ? 2 * guard : static_cast<int>(lost) + 32;
  }
  throw Error(ErrorCode::kPrecisionExhausted, "embedding evaluation did not stabilize");
}

FieldElement FieldElement::one(FieldPtr f) {
  int d = f->degree();
  return {std::move(f), nf_const(d, Rational(1))};
}

FieldElement FieldElement::gen(FieldPtr f) {
  int d = f->degree();
  return {std::move(f), nf_gen(d)};
}

FieldElement FieldElement::inverse() const { return {field, nf_inv(field->minpoly(), coords)}; }
Rational FieldElement::norm() const { return nf_norm(field->minpoly(), coords); }
Rational FieldElement::trace() const { return nf_trace(field->minpoly(), coords); }

FieldElement operator+(const FieldElement& a, const FieldElement& b) { return {a.field, nf_add(a.coords, b.coords)}; }
FieldElement operator-(const FieldElement& a, const FieldElement& b) { return {a.field, nf_sub(a.coords, b.coords)}; }
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return {a.field, nf_mul(a.field->minpoly(), a.coords, b.coords)};
}

FieldElement pow(const FieldElement& a, const Integer& n) {
  FieldElement base = n < 0 ? a.inverse() : a;
  Integer e = n < 0 ? Integer(-n) : n;
  FieldElement out = FieldElement::one(a.field);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) out = out * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return out;
}

bool operator==(const FieldElement& a, const FieldElement& b) { return a.coords == b.coords; }

KLattice::KLattice(FieldPtr field, std::vector<Coords> basis) : field_(std::move(field)), basis_(std::move(basis)) {
  const std::size_t d = field_->degree();
  if (basis_.size() != d) throw Error(ErrorCode::kDependentBasis, "a lattice in K needs exactly d basis elements");
  coords_ = RatMatrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    if (basis_[j].size() != d) throw Error(ErrorCode::kDimensionMismatch, "basis element coordinate length");
    coords_.set_col(j, basis_[j]);
  }
  if (rank(coords_) < d) throw Error(ErrorCode::kDependentBasis, "basis elements are linearly dependent over Q");
  coords_inv_ = inverse(coords_);
}

KLattice KLattice::standard(FieldPtr field) {
  const int d = field->degree();
  std::vector<Coords> basis;
  for (int j = 0; j < d; ++j) {
    Coords c(d, Rational(0));
    c[j] = 1;
    basis.push_back(c);
  }
  return KLattice(std::move(field), std::move(basis));
}

std::vector<Rational> KLattice::lattice_coordinates(const Coords& x) const { return coords_inv_ * x; }

std::vector<BigReal> geometric_embedding(const NumberField& f, const Coords& x, int prec) {
  std::vector<BigReal> out;
  out.reserve(f.degree());
  for (int i = 0; i < f.r(); ++i) out.push_back(f.embed(i, x, prec).re);
  for (int j = 0; j < f.s(); ++j) {
    BigComplex z = f.embed(f.r() + j, x, prec);
    out.push_back(z.re);
    out.push_back(z.im);
  }
  return out;
}

RealMatrix psi_matrix(const NumberField& f, const Coords& x, int prec) {
  const std::size_t d = f.degree();
  RealMatrix m(d, d, BigReal::zero(prec));
  for (int i = 0; i < f.r(); ++i) m(i, i) = f.embed(i, x, prec).re;
  for (int j = 0; j < f.s(); ++j) {
    BigComplex z = f.embed(f.r() + j, x, prec);
    const std::size_t k = f.r() + 2 * j;
    m(k, k) = z.re;
    m(k, k + 1) = -z.im;
    m(k + 1, k) = z.im;
    m(k + 1, k + 1) = z.re;
  }
  return m;
}

RealMatrix embedding_matrix(const KLattice& kl, int prec) {
  const std::size_t d = kl.basis().size();
  RealMatrix m(d, d, BigReal::zero(prec));
  for (std::size_t j = 0; j < d; ++j) m.set_col(j, geometric_embedding(*kl.field(), kl.basis()[j], prec));
  return m;
}

LatticeBasis lattice_from_basis(const KLattice& kl, int prec) {
  const std::size_t d = kl.basis().size();
  auto src = std::make_shared<const EmbeddingGenerators>(kl);
  return LatticeBasis::from_generators(src, IntMatrix::identity(d), prec).normalized();
}

std::optional<IntMatrix> multiplication_action(const KLattice& kl, const Coords& x) {
  const std::size_t d = kl.basis().size();
  const IntPoly& f = kl.field()->minpoly();
  IntMatrix out(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rational> y = kl.lattice_coordinates(nf_mul(f, x, kl.basis()[j]));
    for (std::size_t i = 0; i < d; ++i) {
      if (y[i].get_den() != 1) return std::nullopt;
      out(i, j) = y[i].get_num();
    }
  }
  return out;
}

bool order_elements_check(const KLattice& kl, const Coords& x) { return multiplication_action(kl, x).has_value(); }

std::vector<Coords> associated_order_basis(const KLattice& kl) {
  // O = intersection of alpha_j^{-1} Lambda; intersect through duals: (L1 n L2)* = L1* + L2*.
  const std::size_t d = kl.basis().size();
  const IntPoly& f = kl.field()->minpoly();
  RatMatrix duals(d * d, d);
  for (std::size_t j = 0; j < d; ++j) {
    Coords inv = nf_inv(f, kl.basis()[j]);
    RatMatrix rows(d, d);
    for (std::size_t k = 0; k < d; ++k) rows.set_row(k, nf_mul(f, inv, kl.basis()[k]));
    RatMatrix dual_rows = rational_lattice_dual(rows);
    for (std::size_t k = 0; k < d; ++k) duals.set_row(j * d + k, dual_rows.row(k));
  }
  RatMatrix order = rational_lattice_dual(rational_lattice_basis(duals));
  std::vector<Coords> out;
  for (std::size_t k = 0; k < d; ++k) out.push_back(order.row(k));
  return out;
}

}  // namespace diagorbit
