#include "diagorbit/lattice/lattice_json.hpp"

#include <cmath>

#include "diagorbit/error.hpp"

namespace diagorbit {

int round_trip_digits(int prec) { return static_cast<int>(std::ceil(prec * 0.30102999566398120)) + 1; }

std::string decimal_string(const BigReal& x) {
  if (x.is_zero()) return BigReal::zero(x.precision()).to_string(round_trip_digits(x.precision()));
  return x.to_string(round_trip_digits(x.precision()));
}

nlohmann::json lattice_to_json(const LatticeBasis& x) {
  nlohmann::json cols = nlohmann::json::array();
  for (std::size_t j = 0; j < x.dim(); ++j) {
    nlohmann::json c = nlohmann::json::array();
    for (const auto& v : x.column(j)) c.push_back(decimal_string(v));
    cols.push_back(std::move(c));
  }
  return {{"d", x.dim()}, {"basis_columns", std::move(cols)}, {"precision_bits", x.precision()}};
}

LatticeBasis lattice_from_json(const nlohmann::json& j) {
  try {
    const std::size_t d = j.at("d").get<std::size_t>();
    const int prec = j.at("precision_bits").get<int>();
    const auto& cols = j.at("basis_columns");
    if (cols.size() != d) throw Error(ErrorCode::kDimensionMismatch, "basis_columns length differs from d");
    RealMatrix m(d, d, BigReal::zero(prec));
    for (std::size_t c = 0; c < d; ++c) {
      if (cols[c].size() != d) throw Error(ErrorCode::kDimensionMismatch, "column length differs from d");
      for (std::size_t r = 0; r < d; ++r) m(r, c) = BigReal::from_string(cols[c][r].get<std::string>(), prec);
    }
    return LatticeBasis(m);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("lattice JSON: ") + e.what());
  }
}

}  // namespace diagorbit
