#pragma once

#include <string>
#include <vector>

#include "diagorbit/flows/diagonal.hpp"

namespace diagorbit {

// Root lambda_ij, 1-based as in the text (i != j).
struct RootIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  bool positive() const { return i < j; }
  bool operator==(const RootIndex&) const = default;
  std::string to_string() const;
};

// True when lambda_a > lambda_b: larger j - i first, ties by smaller i.
bool root_greater(const RootIndex& a, const RootIndex& b);
// All roots, largest first.
std::vector<RootIndex> root_order(std::size_t d);

// Traceless d x d matrix with its root space decomposition X = X_a + sum X_ij.
class LieElement {
 public:
  LieElement() = default;
  explicit LieElement(RealMatrix x);
  std::size_t dim() const { return x_.rows(); }
  const RealMatrix& matrix() const { return x_; }
  RealMatrix diagonal_part() const;
  const BigReal& component(const RootIndex& r) const { return x_(r.i - 1, r.j - 1); }
  // Elementary matrix E_ij (1-based).
  static LieElement elementary(std::size_t d, std::size_t i, std::size_t j, int prec);

 private:
  RealMatrix x_;
};

// Ad_{exp v} X by conjugation with the diagonal matrices.
RealMatrix adjoint_conjugation(const TracelessDiag& v, const LieElement& x);
// Ad_{exp v} X from X_a + sum e^{lambda_ij(v)} X_ij.
RealMatrix adjoint_formula(const TracelessDiag& v, const LieElement& x);

struct ConeCertificate {
  RootIndex root;                   // (i0, j0)
  TracelessDiag v0;
  BigReal margin;                   // min over active terms of lambda_{i0j0}(v0) - lambda_ij(v0); X_a counts as 0
  BigReal normalized_margin;        // the same for v0 / |v0|
  RealMatrix nilpotent;             // X_{i0j0} E_{i0j0}
  LieElement x;                     // chosen element of h
  std::vector<double> residuals;    // |Ad_{exp(t v0)}(e^{-lambda(v0) t} X) - X_{i0j0}| at t = 1..10
  double slope = 0;                 // least-squares slope of log residual in t (-inf when all vanish)
  bool reversed = false;            // built after conjugating by the order-reversing permutation
};

// DiagonalSubalgebra when every element of the span is diagonal.
ConeCertificate cone_construct(const std::vector<LieElement>& h_basis);

}  // namespace diagorbit
