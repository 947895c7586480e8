#pragma once

#include <vector>

#include "diagorbit/arith/matrix.hpp"

namespace diagorbit {

// Row-style Hermite normal form: the nonzero rows of the result span the same
// Z-module as the rows of m; pivots positive, entries above a pivot reduced to
// [0, pivot). Zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);
// As above, also returning U (unimodular, rows(m) x rows(m)) with U * m = [H; 0].
IntMatrix hermite_normal_form(const IntMatrix& m, IntMatrix& transform);

// Basis (as rows) of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);
// Basis (as rows) of {x in Z^n : m x = 0} for a rational matrix m.
IntMatrix integer_kernel(const RatMatrix& m);

// Extends a primitive integer vector to a unimodular matrix whose first row is v.
IntMatrix unimodular_completion(const std::vector<Integer>& v);

// Row basis of the Z-module generated by the rows of a rational matrix.
RatMatrix rational_lattice_basis(const RatMatrix& generators);
// Dual of a full-rank rational lattice given by basis rows: rows of (B^{-1})^T.
RatMatrix rational_lattice_dual(const RatMatrix& basis);

Integer gcd_all(const std::vector<Integer>& v);
Integer lcm_denominators(const RatMatrix& m);

}  // namespace diagorbit
