#include "diagorbit/arith/continued_fraction.hpp"

#include "diagorbit/error.hpp"

namespace diagorbit {

namespace {

Integer floor_q(const Rational& x) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return f;
}

void push_quotient(CFExpansion& cf, const Integer& a) {
  std::size_t n = cf.quotients.size();
  cf.quotients.push_back(a);
  Integer pm1 = n >= 1 ? cf.p[n - 1] : Integer(1);
  Integer qm1 = n >= 1 ? cf.q[n - 1] : Integer(0);
  Integer pm2 = n >= 2 ? cf.p[n - 2] : (n == 1 ? Integer(1) : Integer(0));
  Integer qm2 = n >= 2 ? cf.q[n - 2] : (n == 1 ? Integer(0) : Integer(1));
  cf.p.push_back(a * pm1 + pm2);
  cf.q.push_back(a * qm1 + qm2);
}

// Enclosure [lo, hi] of x from a value with relative error at most 2^(slack - prec).
std::pair<Rational, Rational> enclosure(const BigReal& x, int slack) {
  Rational c = x.to_rational();
  if (x.is_zero()) return {c, c};
  BigReal r = abs(x) * BigReal::pow2(slack - x.precision(), 64);
  Rational rad = r.to_rational();
  return {c - rad, c + rad};
}

}  // namespace

CFExpansion cf_expand_interval(Rational lo, Rational hi, std::size_t n_terms) {
  if (n_terms < 1) throw Error(ErrorCode::kInvalidInput, "n_terms must be >= 1");
  if (lo > hi) std::swap(lo, hi);
  CFExpansion cf;
  while (cf.size() < n_terms) {
    Integer a = floor_q(lo);
    if (lo == hi) {
      push_quotient(cf, a);
      Rational frac = lo - a;
      if (frac == 0) {
        cf.terminated = true;
        break;
      }
      lo = hi = 1 / frac;
      continue;
    }
    if (floor_q(hi) != a || lo == a) {
      cf.precision_exhausted = true;
      break;
    }
    push_quotient(cf, a);
    Rational nlo = 1 / (hi - a);
    Rational nhi = 1 / (lo - a);
    lo = nlo;
    hi = nhi;
  }
  return cf;
}

CFExpansion cf_expand(const Rational& x, std::size_t n_terms) { return cf_expand_interval(x, x, n_terms); }

CFExpansion cf_expand(const BigReal& x, std::size_t n_terms) {
  auto [lo, hi] = enclosure(x, 1);
  return cf_expand_interval(lo, hi, n_terms);
}

CFExpansion cf_expand(const ExactReal& x, std::size_t n_terms, int prec) {
  if (auto q = x.as_rational()) return cf_expand(*q, n_terms);
  auto [lo, hi] = enclosure(x.eval(prec), x.is_exact() ? 3 : 1);
  return cf_expand_interval(lo, hi, n_terms);
}

CFExpansion cf_expand_to_denominator(const ExactReal& x, const Integer& bound, int prec) {
  std::size_t n = 16;
  while (true) {
    CFExpansion cf = cf_expand(x, n, prec);
    if (cf.terminated || cf.precision_exhausted || cf.q.back() > bound) return cf;
    n *= 2;
  }
}

}  // namespace diagorbit
