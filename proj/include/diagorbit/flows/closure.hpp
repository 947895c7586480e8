#pragma once

#include <vector>

#include "diagorbit/flows/roots.hpp"

namespace diagorbit {

struct ClosureResult {
  std::size_t dimension = 0;
  std::vector<std::vector<Integer>> certificates;  // integer functionals (lattice coordinates) vanishing on W
  std::vector<RootIndex> kernel_roots;             // i < j with the closure inside Ker chi_ij
};

// Closure of the image of the subspace W (rows of w) in the torus R^m / L, where L is
// spanned by the rows of `lattice`. Certificates are found as integer relations of
// the coordinates of W in the lattice basis, from a rational approximation with
// error 2^{-P/2}; UncertifiedInput when a candidate is neither clearly a relation nor
// clearly not one. When m equals the number of labels d the closure is tested against
// each Ker chi_ij with coordinates read as log-diagonal entries.
ClosureResult subspace_closure(const RealMatrix& lattice, const RealMatrix& w, int prec = default_precision());

}  // namespace diagorbit
