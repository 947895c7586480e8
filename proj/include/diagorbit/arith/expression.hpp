#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "diagorbit/arith/algebraic.hpp"

namespace diagorbit {

// Parser for algebraic literals: integers, decimals, + - * /, parentheses, sqrtN, cbrtN,
// sqrt(N), cbrt(N) and root(c_n, ..., c_0, index) with the minimal polynomial listed from
// the leading coefficient and index counting real roots in ascending order from 0.
// All algebraic atoms of one expression must lie in a common field; an atom is moved into
// the field of another when its generator is found there exactly. The same atom text
// yields the same field object across calls on one parser.
class ExpressionParser {
 public:
  explicit ExpressionParser(int prec = default_precision()) : prec_(prec) {}

  // InvalidInput on syntax errors, mixed fields and division by zero.
  ExactReal parse(std::string_view text);

 private:
  friend class ExpressionReader;
  std::shared_ptr<const RealField> atom_field(const std::string& key, const IntPoly& minpoly, int index);

  int prec_;
  std::map<std::string, std::shared_ptr<const RealField>> atoms_;
};

// Splits on commas outside parentheses and parses each entry.
std::vector<ExactReal> parse_exact_list(std::string_view text, ExpressionParser& parser);

// Coordinates in `target` of the generator of `source`, if that generator lies in the
// target field: an integer relation found numerically, then checked exactly against the
// minimal polynomial of `source`.
std::optional<Coords> embed_generator(const RealField& source, const RealField& target, int prec);

// x rewritten in `target` (rational x always succeeds).
std::optional<ExactReal> move_to_field(const ExactReal& x, const std::shared_ptr<const RealField>& target, int prec);

}  // namespace diagorbit
