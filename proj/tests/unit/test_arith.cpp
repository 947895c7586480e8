#include <random>

#include "diagorbit/arith/algebraic.hpp"
#include "diagorbit/arith/continued_fraction.hpp"
#include "diagorbit/arith/expression.hpp"
#include "diagorbit/arith/integer_linalg.hpp"
#include "diagorbit/arith/lll.hpp"
#include "diagorbit/arith/poly.hpp"
#include "diagorbit/error.hpp"
#include "doctest.h"

using namespace diagorbit;

namespace {

IntPoly poly(std::initializer_list<long> desc) {
  std::vector<Integer> v;
  for (long c : desc) v.emplace_back(c);
  return IntPoly::from_descending(v);
}

Coords co(std::initializer_list<Rational> v) { return Coords(v); }

// Counts sign changes of p on a fine rational grid: independent real-root oracle.
int grid_root_count(const IntPoly& p, long lo, long hi, long steps) {
  int count = 0;
  int last = sgn(p.eval(Rational(lo)));
  for (long k = 1; k <= steps; ++k) {
    Rational x = Rational(lo) + Rational(hi - lo) * Rational(k, steps);
    int s = sgn(p.eval(x));
    if (s != 0 && last != 0 && s != last) ++count;
    if (s != 0) last = s;
  }
  return count;
}

}  // namespace

TEST_CASE("BigReal basics") {
  BigReal x(2L, 256);
  BigReal r = sqrt(x);
  CHECK(abs(r * r - 2) < BigReal::pow2(-250, 64));
  CHECK(BigReal(7L, 128).to_fixed(3) == "7.000");
  CHECK((-BigReal(0L, 64)).to_fixed(2) == "0.00");
  CHECK(BigReal(Rational(1, 4), 64).to_rational() == Rational(1, 4));
  CHECK(dist_to_integer(BigReal(2.75, 64)) == 0.25);
  CHECK(root(BigReal(-8L, 128), 3) == -2L);
}

TEST_CASE("poly_roots: t^3 - 2") {
  PolyRoots pr = poly_roots(poly({1, 0, 0, -2}), 256);
  CHECK(pr.r == 1);
  CHECK(pr.s == 1);
  // Oracle: the real root brackets by sign change at 1.259921 +- 1e-6.
  IntPoly p = poly({1, 0, 0, -2});
  CHECK(sgn(p.eval(Rational(1259920, 1000000))) < 0);
  CHECK(sgn(p.eval(Rational(1259922, 1000000))) > 0);
  CHECK(std::abs(pr.values[0].re.to_double() - 1.259921) < 1e-6);
  CHECK(pr.values[0].im.is_zero());
  CHECK(std::abs(pr.values[1].re.to_double() + 0.629960524947) < 1e-9);
  CHECK(std::abs(pr.values[1].im.to_double() - 1.091123635971) < 1e-9);
}

TEST_CASE("poly_roots: t^2 + 1 and totally real cubic") {
  PolyRoots pi = poly_roots(poly({1, 0, 1}), 128);
  CHECK(pi.r == 0);
  CHECK(pi.s == 1);
  CHECK(abs(pi.values[0].re) < BigReal::pow2(-100, 64));
  CHECK(abs(pi.values[0].im - 1) < BigReal::pow2(-100, 64));

  IntPoly p = poly({1, 0, -3, -1});
  PolyRoots pr = poly_roots(p, 256);
  CHECK(pr.r == 3);
  CHECK(grid_root_count(p, -3, 3, 6000) == 3);
  CHECK(pr.values[0].re < pr.values[1].re);
  CHECK(pr.values[1].re < pr.values[2].re);
}

TEST_CASE("poly_roots: errors") {
  CHECK_THROWS_WITH_AS(poly_roots(poly({1, -2, 1})), doctest::Contains("NotSquarefree"), Error);
  CHECK_THROWS_WITH_AS(poly_roots(poly({1, 0, -4})), doctest::Contains("RationalRoot"), Error);
  CHECK_THROWS_WITH_AS(poly_roots(poly({3, -1, -6, 2})), doctest::Contains("RationalRoot"), Error);
}

TEST_CASE("poly_roots: rebuilt monic polynomial matches input") {
  std::vector<IntPoly> polys = {poly({1, 0, 0, -2}), poly({1, 0, -3, -1}), poly({1, 0, 0, 0, 1}),
                                poly({1, 0, 0, 1, 1}), poly({2, 0, 0, -3, 5}), poly({1, 0, 0, 0, -1, -1})};
  for (const auto& p : polys) {
    if (!is_squarefree(p)) continue;
    PolyRoots pr = poly_roots(p, 256);
    CHECK(pr.r + 2 * pr.s == p.degree());
    CHECK(pr.r == grid_root_count(p, -20, 20, 40000));
    auto rebuilt = rebuild_monic(pr, 256);
    for (int i = 0; i <= p.degree(); ++i) {
      BigReal want(Rational(p[i], p.lead()), 256);
      BigReal err = abs(rebuilt[static_cast<std::size_t>(i)] - want);
      CHECK(err <= BigReal::pow2(-128, 64) * max(BigReal(1L, 64), abs(want)));
    }
  }
}

TEST_CASE("root handles re-evaluate at higher precision") {
  PolyRoots pr = poly_roots(poly({1, 0, 0, -2}), 128);
  BigReal hi = pr.handles[0].real_value(1024);
  CHECK(abs(pow(hi, 3L) - 2) < BigReal::pow2(-1000, 64));
  BigComplex z = pr.handles[1].value(1024);
  BigComplex z3 = z * z * z;
  CHECK(abs(z3.re - 2) < BigReal::pow2(-1000, 64));
  CHECK(abs(z3.im) < BigReal::pow2(-1000, 64));
}

TEST_CASE("nf arithmetic in Q(cbrt2)") {
  IntPoly f = poly({1, 0, 0, -2});
  CHECK(nf_mul(f, co({0, 1, 0}), co({0, 0, 1})) == co({2, 0, 0}));
  CHECK(nf_inv(f, co({0, 1, 0})) == co({0, 0, Rational(1, 2)}));
  // Oracle: resultant(t^3 - 2, (t - 1)) with monic normalization.
  Rational norm = nf_norm(f, co({-1, 1, 0}));
  CHECK(norm == 1);
  CHECK(sylvester_resultant(RatPoly(f), RatPoly(std::vector<Rational>{-1, 1})) == norm);
  CHECK(nf_trace(f, co({0, 0, 1})) == 0);
  CHECK(nf_trace(f, co({5, 0, 0})) == 15);
  CHECK_THROWS_AS(nf_inv(f, co({0, 0, 0})), Error);
}

TEST_CASE("nf norm is multiplicative and agrees with the resultant") {
  std::vector<IntPoly> fields = {poly({1, 0, 0, -2}), poly({1, 0, -3, -1}), poly({1, 0, 0, 0, 1}),
                                 poly({1, 0, 0, 1, 1}), poly({2, 1, 0, -3})};
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> coef(-6, 6);
  for (const auto& f : fields) {
    const int d = f.degree();
    for (int trial = 0; trial < 20; ++trial) {
      Coords x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
      for (auto& v : x) v = make_rational(coef(rng), 1 + (coef(rng) + 6) % 3);
      for (auto& v : y) v = coef(rng);
      if (nf_is_zero(x) || nf_is_zero(y)) continue;
      CHECK(nf_norm(f, nf_mul(f, x, y)) == nf_norm(f, x) * nf_norm(f, y));
      // Resultant oracle: N(x) = (-1)^{d deg x} Res(x, f) / lc(f)^{deg x}... via Res(f, x).
      RatPoly px(x);
      Rational res = sylvester_resultant(RatPoly(f), px);
      Rational lc = Rational(f.lead());
      Rational expected = res;
      for (int k = 0; k < px.degree(); ++k) expected /= lc;
      CHECK(nf_norm(f, x) == expected);
      // Trace oracle: trace of the multiplication matrix.
      RatMatrix m = nf_mul_matrix(f, x);
      Rational tr = 0;
      for (int i = 0; i < d; ++i) tr += m(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
      CHECK(nf_trace(f, x) == tr);
      Coords inv = nf_inv(f, x);
      CHECK(nf_mul(f, x, inv) == nf_const(d, 1));
    }
  }
}

TEST_CASE("continued fractions: exact rationals") {
  CFExpansion cf = cf_expand(Rational(7, 3), 10);
  CHECK(cf.quotients == std::vector<Integer>{2, 3});
  CHECK(cf.terminated);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    long b = 1 + static_cast<long>(rng() % 1000000);
    long a = static_cast<long>(rng() % 2000001) - 1000000;
    Rational q(a, b);
    q.canonicalize();
    CFExpansion e = cf_expand(q, 1000);
    CHECK(e.terminated);
    CHECK(e.convergent(e.size() - 1) == q);
  }
}

TEST_CASE("continued fractions: quadratic irrationals against brute-force best approximations") {
  PolyRoots pr = poly_roots(poly({1, 0, -2}), 256);
  auto field = std::make_shared<RealField>(RealField{poly({1, 0, -2}), pr.handles[1]});
  ExactReal sqrt2(field, co({0, 1}));
  CFExpansion cf = cf_expand(sqrt2, 30);
  REQUIRE(cf.size() == 30);
  CHECK(cf.quotients[0] == 1);
  for (std::size_t i = 1; i < cf.size(); ++i) CHECK(cf.quotients[i] == 2);
  CHECK(cf.convergent(1) == Rational(3, 2));
  CHECK(cf.convergent(2) == Rational(7, 5));
  CHECK(cf.convergent(3) == Rational(17, 12));
  // Invariant p_i q_{i-1} - p_{i-1} q_i = (-1)^{i-1}.
  for (std::size_t i = 1; i < cf.size(); ++i) {
    Integer det = cf.p[i] * cf.q[i - 1] - cf.p[i - 1] * cf.q[i];
    CHECK(det == ((i - 1) % 2 == 0 ? 1 : -1));
  }
  // Oracle: best approximations of the second kind with q <= 100 by brute force.
  double s2 = std::sqrt(2.0);
  double best = 1e9;
  std::vector<long> best_q;
  for (long q = 1; q <= 100; ++q) {
    double v = std::abs(q * s2 - std::round(q * s2));
    if (v < best) {
      best = v;
      best_q.push_back(q);
    }
  }
  std::vector<long> cf_q;
  for (const auto& q : cf.q)
    if (q <= 100) cf_q.push_back(q.get_si());
  CHECK(best_q == cf_q);

  PolyRoots pg = poly_roots(poly({1, -1, -1}), 256);
  auto gfield = std::make_shared<RealField>(RealField{poly({1, -1, -1}), pg.handles[1]});
  CFExpansion g = cf_expand(ExactReal(gfield, co({0, 1})), 40);
  for (const auto& a : g.quotients) CHECK(a == 1);
}

TEST_CASE("continued fractions stop when precision runs out") {
  BigReal x = sqrt(BigReal(2L, 64));
  CFExpansion cf = cf_expand(x, 1000);
  CHECK(cf.precision_exhausted);
  CHECK(cf.size() > 10);
  CHECK(cf.size() < 60);
}

TEST_CASE("HNF, kernel, completion") {
  IntMatrix m{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  IntMatrix u;
  IntMatrix h = hermite_normal_form(m, u);
  CHECK(abs(determinant(u)) == 1);
  Integer dm = abs(determinant(m));
  Integer dh = 1;
  for (std::size_t i = 0; i < h.rows(); ++i) dh *= h(i, i);
  CHECK(dm == dh);

  IntMatrix a{{1, 1, -2}};
  IntMatrix k = integer_kernel(a);
  CHECK(k.rows() == 2);
  for (std::size_t i = 0; i < k.rows(); ++i) CHECK(k(i, 0) + k(i, 1) - 2 * k(i, 2) == 0);

  IntMatrix c = unimodular_completion({Integer(3), Integer(5), Integer(7)});
  CHECK(abs(determinant(c)) == 1);
  CHECK(c(0, 0) == 3);
  CHECK(c(0, 1) == 5);
  CHECK(c(0, 2) == 7);
}

TEST_CASE("LLL and integer relations") {
  RealMatrix b{{BigReal(1L), BigReal(0L)}, {BigReal(1000000L), BigReal(1L)}};
  LLLResult r = lll_rows(b);
  CHECK(abs(determinant(r.transform)) == 1);
  CHECK(norm2(r.reduced.row(0)) == 1L);

  BigReal s2 = sqrt(BigReal(2L, 256));
  std::vector<BigReal> x{s2, (1 + s2) / 2L, BigReal(1L, 256)};
  IntMatrix cand = integer_relation_candidates(x, 160);
  std::vector<Integer> rel = cand.row(0);
  if (rel[0] < 0)
    for (auto& v : rel) v = -v;
  CHECK(rel == std::vector<Integer>{1, -2, 1});
}

TEST_CASE("algebraic literals") {
  const int P = 256;
  ExpressionParser p(P);
  BigReal eps = BigReal::pow2(-P + 8, 64);
  BigReal r2 = sqrt(BigReal(2L, P));

  ExactReal a = p.parse("sqrt2");
  CHECK(a.kind() == ExactReal::Kind::kAlgebraic);
  CHECK(abs(a.eval(P) - r2) < eps);
  ExactReal b = p.parse("(1+sqrt2)/2");
  CHECK(b.field() == a.field());
  CHECK(b.coords() == Coords{make_rational(1, 2), make_rational(1, 2)});
  CHECK(abs(p.parse("−sqrt(2)·3").eval(P) + r2 * 3) < eps);

  CHECK(*p.parse("sqrt4").as_rational() == 2);
  CHECK(*p.parse("cbrt27 - 1/3").as_rational() == make_rational(8, 3));
  CHECK(*p.parse("1e6").as_rational() == 1000000);
  CHECK(*p.parse("0.25").as_rational() == make_rational(1, 4));
  CHECK(*p.parse("-2.5e-1").as_rational() == make_rational(-1, 4));

  ExactReal c4 = p.parse("cbrt4");
  CHECK(c4.field()->minpoly == IntPoly::from_descending({1, 0, 0, -4}));
  // cbrt4 is moved into Q(cbrt2) exactly.
  CHECK(*p.parse("cbrt2*cbrt2 - cbrt4").as_rational() == 0);
  CHECK(p.parse("cbrt2 + cbrt4").coords() == Coords{0, 1, 1});

  ExactReal neg = p.parse("root(1,0,-2,0)");
  CHECK(abs(neg.eval(P) + r2) < eps);
  CHECK(*p.parse("root(1,0,-2,0) + sqrt2").as_rational() == 0);
  ExactReal phi = p.parse("root(1,-1,-1,1)");
  CHECK(abs(phi.eval(P) - (1 + sqrt(BigReal(5L, P))) / 2) < eps);
  CHECK(*p.parse("(1+sqrt5)/2 - root(1,-1,-1,1)").as_rational() == 0);

  for (const char* bad : {"sqrt2+sqrt3", "1/0", "sqrt", "2*", "(1", "root(1,0,-2,5)", "sqrt-2", "x"}) {
    CHECK_THROWS_AS(p.parse(bad), Error);
  }
  std::vector<ExactReal> list = parse_exact_list("cbrt2, cbrt4", p);
  REQUIRE(list.size() == 2);
  CHECK(abs(list[1].eval(P) - root(BigReal(4L, P), 3)) < eps);
  CHECK(parse_exact_list("root(1,0,-3,-1,2),1/2", p).size() == 2);
}
