#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diagorbit/arith/algebraic.hpp"
#include "diagorbit/arith/matrix.hpp"

namespace diagorbit {

// A finite set of exactly known generator vectors in R^d, evaluable at any precision.
class GeneratorSource {
 public:
  virtual ~GeneratorSource() = default;
  virtual std::size_t dim() const = 0;
  virtual std::size_t count() const = 0;
  // dim() x count() matrix; column k is generator k.
  virtual RealMatrix columns(int prec) const = 0;
};

// Generators given by a matrix of exact reals.
class ExactGenerators : public GeneratorSource {
 public:
  explicit ExactGenerators(Matrix<ExactReal> m) : m_(std::move(m)) {}
  std::size_t dim() const override { return m_.rows(); }
  std::size_t count() const override { return m_.cols(); }
  RealMatrix columns(int prec) const override;
  const Matrix<ExactReal>& entries() const { return m_; }

 private:
  Matrix<ExactReal> m_;
};

// How a basis was produced: columns = diag(e^{t_i}) * c * G * combination, where G holds
// the generators and c is |det(G * combination)|^{-1/d} when normalized (else 1).
struct Provenance {
  std::shared_ptr<const GeneratorSource> source;
  IntMatrix combination;                 // count x d
  std::vector<BigReal> row_log_scale;    // t_i, length d
  bool normalized = false;
};

// A point of X_d (or a lattice of any covolume): d x d basis with the lattice spanned
// by the columns.
class LatticeBasis {
 public:
  LatticeBasis() = default;
  explicit LatticeBasis(RealMatrix columns);
  static LatticeBasis identity(std::size_t d, int prec);
  static LatticeBasis from_generators(std::shared_ptr<const GeneratorSource> source,
                                      IntMatrix combination, int prec);

  std::size_t dim() const { return b_.rows(); }
  int precision() const { return prec_; }
  const RealMatrix& matrix() const { return b_; }
  std::vector<BigReal> column(std::size_t j) const { return b_.col(j); }
  bool has_provenance() const { return prov_.has_value(); }
  const std::optional<Provenance>& provenance() const { return prov_; }

  // Same lattice recomputed at a new precision (exactly, when provenance is present).
  LatticeBasis at_precision(int prec) const;
  // Lattice point B c, recomputed from provenance when available.
  std::vector<BigReal> point(const std::vector<Integer>& c, int prec) const;
  // B U for an integer matrix U (unimodular for a change of basis).
  LatticeBasis change_basis(const IntMatrix& u) const;
  // diag(e^{t_1}, ..., e^{t_d}) B.
  LatticeBasis scale_rows(const std::vector<BigReal>& log_scale) const;
  // Covolume-one rescaling recorded in the provenance (requires provenance).
  LatticeBasis normalized() const;
  // Drops provenance.
  LatticeBasis without_provenance() const;

  BigReal determinant() const;

 private:
  RealMatrix materialize(int prec) const;
  BigReal norm_scalar(int prec) const;

  RealMatrix b_;
  int prec_ = kDefaultPrecision;
  std::optional<Provenance> prov_;
};

// Inverse transpose; SingularBasis for a singular basis.
LatticeBasis dual(const LatticeBasis& x);
// Scales by |det|^{-1/d}; SingularBasis for a singular basis.
LatticeBasis normalize_covolume(const LatticeBasis& x);

struct ReducedBasis {
  LatticeBasis basis;
  IntMatrix transform;  // reduced = input * transform, det = +-1
};

// LLL with delta = 0.99 on the columns.
ReducedBasis reduce(const LatticeBasis& x, double delta = 0.99);

struct MinimaReport {
  std::vector<BigReal> minima;                 // lambda_1 <= ... (one entry for shortest_vector)
  std::vector<std::vector<Integer>> witnesses;  // coefficients with respect to the input basis
  BigReal radius;                              // enumeration radius used for the last minimum
  long nodes = 0;                              // enumeration tree nodes visited

  const BigReal& systole() const { return minima.front(); }
};

inline constexpr std::size_t kMaxEnumerationDim = 6;
inline constexpr long kMaxEnumerationNodes = 50'000'000;

MinimaReport shortest_vector(const LatticeBasis& x);
MinimaReport successive_minima(const LatticeBasis& x);

// Euclidean length of B c at precision prec.
BigReal vector_length(const LatticeBasis& x, const std::vector<Integer>& c, int prec);

// Frobenius distance between basis matrices.
BigReal basis_distance(const LatticeBasis& a, const LatticeBasis& b);

}  // namespace diagorbit
