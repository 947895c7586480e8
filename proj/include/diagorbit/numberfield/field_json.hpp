#pragma once

#include <json.hpp>

#include "diagorbit/numberfield/number_field.hpp"

namespace diagorbit {

// {"minpoly": [descending integer coefficients], "basis": [[power-basis rationals as strings]]}.
nlohmann::json field_to_json(const KLattice& kl);
KLattice field_from_json(const nlohmann::json& j, int prec = default_precision());

// "1,0,0,-2" -> t^3 - 2.
IntPoly parse_minpoly(const std::string& text);
// Rational from "p", "p/q" or a terminating decimal.
Rational parse_rational(const std::string& text);

}  // namespace diagorbit
