#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "diagorbit/arith/algebraic.hpp"
#include "diagorbit/lattice/lattice.hpp"

namespace diagorbit {

// Distance from c . x to the nearest integer, exact for rational inputs and inputs in one
// number field, with cancellation handled otherwise.
BigReal distance_to_integers(const std::vector<Integer>& c, const std::vector<ExactReal>& x, int prec);

// |n| <n alpha - gamma> <n beta - delta>.
BigReal littlewood_product(const ExactReal& alpha, const ExactReal& beta, const Integer& n, const ExactReal& gamma,
                           const ExactReal& delta, int prec = default_precision());

// |n| prod_i <n v_i - gamma_i>.
BigReal propC1_value(const std::vector<ExactReal>& v, const std::vector<ExactReal>& gamma, const Integer& n,
                     int prec = default_precision());
// (prod_i |n_i|) <sum_i n_i v_i - gamma>.
BigReal propC2_value(const std::vector<ExactReal>& v, const ExactReal& gamma, const std::vector<Integer>& n,
                     int prec = default_precision());

struct SearchRecord {
  std::vector<Integer> witness;      // n (one entry) or the vector n
  BigReal value;
  std::vector<ExactReal> target;     // gamma vector, or the single gamma
};

struct RecordTrace {
  std::vector<SearchRecord> records;  // strictly decreasing values
  long bound = 0;                     // N
};

// Scans 0 < |n| <= N in the order 1, -1, 2, -2, ...; a record is a value strictly below
// every earlier one. InvalidInput for N < 1 or mismatched lengths.
RecordTrace propC1_search(const std::vector<ExactReal>& v, const std::vector<ExactReal>& gamma, long N,
                          int prec = default_precision());
// Scans n with nonzero entries and 0 < prod |n_i| <= N, by increasing product and then
// lexicographically.
RecordTrace propC2_search(const std::vector<ExactReal>& v, const ExactReal& gamma, long N,
                          int prec = default_precision());

// Columns rank, witness, value, target; vector witnesses and targets are joined with ';'.
void write_record_csv(std::ostream& out, const RecordTrace& trace);

struct GDPWitness {
  std::vector<Integer> coeffs;   // with respect to the input basis
  std::vector<BigReal> u;        // lattice point
  std::vector<ExactReal> w;
  BigReal product;               // prod (u_i + w_i)
  BigReal target;
  BigReal error;                 // |product - target|
};

// Lattice points u = B c with c bounded by coeff_bound against the reduced basis and
// |prod (u_i + w_i) - target| < eps. The box is searched with bounds 1, 2, 4, ...,
// coeff_bound; within the first box holding a hit, the witness minimizing
// (max |c_i|, c lexicographically) is returned.
std::optional<GDPWitness> gdp_probe(const LatticeBasis& x, const std::vector<ExactReal>& w, const ExactReal& target,
                                    const BigReal& eps, long coeff_bound);

}  // namespace diagorbit
