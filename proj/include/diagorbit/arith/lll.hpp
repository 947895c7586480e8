#pragma once

#include <vector>

#include "diagorbit/arith/matrix.hpp"

namespace diagorbit {

struct LLLResult {
  RealMatrix reduced;  // rows
  IntMatrix transform;  // reduced = transform * input, det = +-1
};

// LLL reduction of the rows of `rows` (linearly independent) with parameter delta.
// Gram-Schmidt data is kept at the precision of the input plus a guard; the reduced rows
// are recomputed from the exact transform at the end. Rows with index < fixed_prefix are
// never swapped with later rows, so the span of that prefix is preserved.
LLLResult lll_rows(const RealMatrix& rows, double delta = 0.99, std::size_t fixed_prefix = 0);

// Gram-Schmidt orthogonalization of rows: returns squared norms of b*_i and fills mu.
std::vector<BigReal> gram_schmidt(const RealMatrix& rows, RealMatrix& mu);

// Small integer vectors c with sum c_i x_i close to 0, from LLL on [I | 2^scale_bits x].
// Rows of the result are candidates ordered by the reduced basis.
IntMatrix integer_relation_candidates(const std::vector<BigReal>& x, int scale_bits);

}  // namespace diagorbit
