#pragma once

#include <json.hpp>

#include "diagorbit/lattice/lattice.hpp"

namespace diagorbit {

// Significant decimal digits that round-trip a binary float of `prec` bits.
int round_trip_digits(int prec);
std::string decimal_string(const BigReal& x);

// {"d", "basis_columns", "precision_bits"}; basis_columns[j] is column j.
nlohmann::json lattice_to_json(const LatticeBasis& x);
LatticeBasis lattice_from_json(const nlohmann::json& j);

}  // namespace diagorbit
