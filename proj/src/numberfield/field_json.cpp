#include "diagorbit/numberfield/field_json.hpp"

#include <sstream>

#include "diagorbit/error.hpp"

namespace diagorbit {

nlohmann::json field_to_json(const KLattice& kl) {
  nlohmann::json mp = nlohmann::json::array();
  for (const auto& c : kl.field()->minpoly().descending()) mp.push_back(c.get_si());
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& b : kl.basis()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& q : b) row.push_back(q.get_str());
    basis.push_back(std::move(row));
  }
  return {{"minpoly", std::move(mp)}, {"basis", std::move(basis)}};
}

Rational parse_rational(const std::string& text) {
  try {
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      Rational q(text, 10);
      q.canonicalize();
      if (q.get_den() == 0) throw Error(ErrorCode::kInvalidInput, "zero denominator: " + text);
      return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t decimals = text.size() - dot - 1;
    Integer den = 1;
    for (std::size_t k = 0; k < decimals; ++k) den *= 10;
    return make_rational(Integer(digits, 10), den);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::kInvalidInput, "not a rational number: " + text);
  }
}

IntPoly parse_minpoly(const std::string& text) {
  std::vector<Integer> desc;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      desc.emplace_back(item, 10);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::kInvalidInput, "bad polynomial coefficient: " + item);
    }
  }
  if (desc.size() < 2) throw Error(ErrorCode::kInvalidInput, "polynomial needs degree >= 1");
  return IntPoly::from_descending(desc);
}

KLattice field_from_json(const nlohmann::json& j, int prec) {
  try {
    std::vector<Integer> desc;
    for (const auto& c : j.at("minpoly")) desc.emplace_back(c.get<long>());
    FieldPtr f = NumberField::create(IntPoly::from_descending(desc), prec);
    if (!j.contains("basis")) return KLattice::standard(f);
    std::vector<Coords> basis;
    for (const auto& row : j.at("basis")) {
      Coords c;
      for (const auto& q : row) c.push_back(parse_rational(q.is_string() ? q.get<std::string>() : q.dump()));
      basis.push_back(std::move(c));
    }
    return KLattice(f, std::move(basis));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("field JSON: ") + e.what());
  }
}

}  // namespace diagorbit
