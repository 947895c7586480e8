#pragma once

#include "diagorbit/numberfield/number_field.hpp"

namespace diagorbit {

// g_v = c p Phi with g_v the row shear (1 v^t; 0 I), v = sigma_1(alpha_2..alpha_d),
// Phi the embedding matrix of the basis, and p in P_1^- with det p = 1.
struct Theorem5Factor {
  BigReal c;
  RealMatrix p;
  RealMatrix phi;
  RealMatrix m;    // g_v Phi^{-1} = c p
  RealMatrix g_v;
  BigReal max_first_row_off;  // max_{j>1} |p_{1j}|
};

// Requires r >= 1 and alpha_1 = 1. ShapeViolation when the first row of p is not
// (b, 0, ..., 0) to 2^{-P/2}, or when det M < 0 in even dimension.
Theorem5Factor theorem5_factor(const KLattice& kl, int prec = default_precision());

// Row shear g_v = (1 v^t; 0 I_{d-1}) and column shear h_v = (1 0; v I_{d-1}).
RealMatrix row_shear(const std::vector<BigReal>& v);
RealMatrix column_shear(const std::vector<BigReal>& v);

}  // namespace diagorbit
