#pragma once

#include <vector>

#include "diagorbit/arith/algebraic.hpp"
#include "diagorbit/arith/big_real.hpp"

namespace diagorbit {

struct CFExpansion {
  std::vector<Integer> quotients;  // a_0; a_1, a_2, ...
  std::vector<Integer> p;          // convergent numerators p_0, p_1, ...
  std::vector<Integer> q;          // convergent denominators
  bool precision_exhausted = false;  // next quotient could not be certified
  bool terminated = false;           // input is rational and fully expanded

  std::size_t size() const { return quotients.size(); }
  Rational convergent(std::size_t i) const { return Rational(p[i], q[i]); }
};

// Expansion of any number inside [lo, hi]; stops when the interval no longer determines
// the next partial quotient.
CFExpansion cf_expand_interval(Rational lo, Rational hi, std::size_t n_terms);
CFExpansion cf_expand(const Rational& x, std::size_t n_terms);
// Treats x as exact up to one unit in the last place.
CFExpansion cf_expand(const BigReal& x, std::size_t n_terms);
// Evaluates x at `prec` bits and expands the certified enclosure.
CFExpansion cf_expand(const ExactReal& x, std::size_t n_terms, int prec = default_precision());

// Expands until a convergent denominator exceeds `bound` (or the expansion stops).
CFExpansion cf_expand_to_denominator(const ExactReal& x, const Integer& bound,
                                     int prec = default_precision());

}  // namespace diagorbit
