#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "diagorbit/arith/algebraic.hpp"
#include "diagorbit/arith/big_complex.hpp"
#include "diagorbit/lattice/lattice.hpp"

namespace diagorbit {

// Q(theta) for an irreducible integer polynomial, with embeddings in a fixed order:
// the r real roots ascending, then s complex roots (im > 0).
class NumberField {
 public:
  static std::shared_ptr<const NumberField> create(const IntPoly& minpoly, int prec = default_precision());

  const IntPoly& minpoly() const { return minpoly_; }
  int degree() const { return minpoly_.degree(); }
  int r() const { return r_; }
  int s() const { return s_; }
  const std::vector<RootHandle>& embeddings() const { return roots_; }
  // The real field Q(sigma_i(theta)) for a real embedding i < r.
  std::shared_ptr<const RealField> real_field(int i) const;

  // sigma_i(x) with about prec correct bits in each nonzero component.
  BigComplex embed(int i, const Coords& x, int prec) const;

 private:
  IntPoly minpoly_;
  int r_ = 0;
  int s_ = 0;
  std::vector<RootHandle> roots_;
  std::vector<std::shared_ptr<const RealField>> real_fields_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

struct FieldElement {
  FieldPtr field;
  Coords coords;

  static FieldElement one(FieldPtr f);
  static FieldElement gen(FieldPtr f);
  FieldElement inverse() const;
  Rational norm() const;
  Rational trace() const;
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator*(const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldElement& a, const Integer& n);
bool operator==(const FieldElement& a, const FieldElement& b);

// Z-span of d Q-independent field elements.
class KLattice {
 public:
  // Throws DependentBasis when the elements are Q-dependent.
  KLattice(FieldPtr field, std::vector<Coords> basis);
  static KLattice standard(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Coords>& basis() const { return basis_; }
  // Columns are the basis coordinates.
  const RatMatrix& coordinate_matrix() const { return coords_; }
  // Coordinates of x in the lattice basis (rational).
  std::vector<Rational> lattice_coordinates(const Coords& x) const;

 private:
  FieldPtr field_;
  std::vector<Coords> basis_;
  RatMatrix coords_;
  RatMatrix coords_inv_;
};

// (sigma_1, ..., sigma_r, Re sigma_{r+1}, Im sigma_{r+1}, ...).
std::vector<BigReal> geometric_embedding(const NumberField& f, const Coords& x, int prec);
// diag(sigma_1(x), ..., sigma_r(x), R_{sigma_{r+1}(x)}, ...).
RealMatrix psi_matrix(const NumberField& f, const Coords& x, int prec);
// Columns phi(alpha_j).
RealMatrix embedding_matrix(const KLattice& kl, int prec);

// Generators phi(alpha_1), ..., phi(alpha_d), evaluated exactly on demand.
class EmbeddingGenerators : public GeneratorSource {
 public:
  explicit EmbeddingGenerators(KLattice kl) : kl_(std::move(kl)) {}
  std::size_t dim() const override { return kl_.basis().size(); }
  std::size_t count() const override { return kl_.basis().size(); }
  RealMatrix columns(int prec) const override { return embedding_matrix(kl_, prec); }

 private:
  KLattice kl_;
};

// x_Lambda: phi of the basis, covolume normalized, generators kept as provenance.
LatticeBasis lattice_from_basis(const KLattice& kl, int prec = default_precision());

// Integer matrix of multiplication by x in the lattice basis, if x Lambda is inside Lambda.
std::optional<IntMatrix> multiplication_action(const KLattice& kl, const Coords& x);
bool order_elements_check(const KLattice& kl, const Coords& x);
// Basis (power-basis coordinates) of the associated order {x : x Lambda in Lambda}.
std::vector<Coords> associated_order_basis(const KLattice& kl);

}  // namespace diagorbit
