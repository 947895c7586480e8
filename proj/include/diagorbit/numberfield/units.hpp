#pragma once

#include <string>
#include <vector>

#include "diagorbit/numberfield/number_field.hpp"

namespace diagorbit {

struct UnitGroupData {
  std::vector<Coords> generators;  // independent positive units
  RealMatrix log_matrix;           // row k: (log|sigma_1(u_k)|, ..., log|sigma_{r+s}(u_k)|)
  int rank = 0;
  int expected_rank = 0;           // r + s - 1
  long height_bound = 0;
  std::vector<Coords> units;       // every positive non-torsion unit found, deduplicated
  long candidates = 0;             // order elements with norm +-1 before positivity

  bool complete() const { return rank == expected_rank; }
};

// Units of the associated order with coordinates in [-H, H] (order basis), made
// positive by squaring, then reduced to a basis of the subgroup they generate.
UnitGroupData unit_search(const KLattice& kl, long height_bound, int prec = default_precision());

// (log|sigma_i(u)|)_{i < r+s}.
std::vector<BigReal> unit_log_vector(const NumberField& f, const Coords& u, int prec);

enum class CompactnessVerdict { kCertifiedCompact, kInconclusive };
CompactnessVerdict torus_orbit_compactness(const KLattice& kl, const UnitGroupData& units,
                                           int prec = default_precision());

enum class CmVerdict { kYes, kNo, kInconclusive };
struct CmReport {
  CmVerdict verdict = CmVerdict::kInconclusive;
  int real_unit_rank = 0;  // rank of found units with all embeddings real
  long height_bound = 0;
};
CmReport is_cm(const NumberField& f, const UnitGroupData& units, int prec = default_precision());

std::string verdict_name(CompactnessVerdict v);
std::string verdict_name(CmVerdict v);

}  // namespace diagorbit
