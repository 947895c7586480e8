#pragma once

#include <vector>

#include "diagorbit/arith/big_complex.hpp"
#include "diagorbit/lattice/lattice.hpp"

namespace diagorbit {

// Element of the Lie algebra of A: traceless diagonal (t_1, ..., t_d). The constructor
// applies the projection x -> x - (tr x / d) I.
class TracelessDiag {
 public:
  TracelessDiag() = default;
  explicit TracelessDiag(std::vector<BigReal> entries);

  std::size_t dim() const { return t_.size(); }
  const std::vector<BigReal>& entries() const { return t_; }
  const BigReal& operator[](std::size_t i) const { return t_[i]; }
  TracelessDiag scaled(const BigReal& s) const;
  TracelessDiag operator+(const TracelessDiag& o) const;
  BigReal norm() const;
  // lambda_ij(v) = t_i - t_j (0-based indices).
  BigReal root(std::size_t i, std::size_t j) const;

 private:
  std::vector<BigReal> t_;
};

// log a_k(t): k entries (d-k)t then d-k entries -kt. BadIndex unless 1 <= k <= d-1.
TracelessDiag a_k_flow(std::size_t k, const BigReal& t, std::size_t d);

// diag(e^{t_1}, ..., e^{t_d}) x, keeping provenance.
LatticeBasis apply_diag(const TracelessDiag& v, const LatticeBasis& x);

// Element diag(a_1..a_r, R_{w_1}..R_{w_s}) of T^(r,s).
struct TorusParam {
  int r = 0;
  int s = 0;
  std::vector<BigReal> a;      // > 0
  std::vector<BigComplex> w;   // nonzero

  std::size_t dim() const { return static_cast<std::size_t>(r + 2 * s); }
  // DeterminantViolation unless prod a_i prod |w_j|^2 = 1 to 2^{-P/2}; InvalidInput for a_i <= 0.
  void validate(int prec = default_precision()) const;
  RealMatrix matrix(int prec) const;
  TorusParam compose(const TorusParam& o) const;
};

// Real 2x2 block R_w = (Re w, -Im w; Im w, Re w).
RealMatrix rotation_block(const BigComplex& w);

LatticeBasis torus_apply(const TorusParam& t, const LatticeBasis& x);
// Diagonal of theta g theta^{-1}: (a_1..a_r, w_1, conj w_1, ..., w_s, conj w_s).
std::vector<BigComplex> torus_tilde(const TorusParam& t);
// chi_ij(diag) = a_i / a_j (0-based).
BigComplex torus_chi(const std::vector<BigComplex>& diag, std::size_t i, std::size_t j);

// g x for a general matrix g; the result has no provenance.
LatticeBasis apply_matrix(const RealMatrix& g, const LatticeBasis& x);

// g in P_k^+ (sign > 0: lower-left (d-k) x k block zero) or P_k^- (sign < 0: upper-right
// k x (d-k) block zero), to 2^{-P/2}.
bool parabolic_check(const RealMatrix& g, std::size_t k, int sign);

}  // namespace diagorbit
