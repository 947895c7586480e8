#include <cmath>
#include <complex>
#include <random>

#include "diagorbit/error.hpp"
#include "diagorbit/numberfield/field_json.hpp"
#include "diagorbit/numberfield/number_field.hpp"
#include "diagorbit/numberfield/theorem5.hpp"
#include "diagorbit/numberfield/units.hpp"
#include "doctest.h"

using namespace diagorbit;

namespace {

constexpr int P = 256;

FieldPtr field(const std::string& desc) { return NumberField::create(parse_minpoly(desc), P); }

Coords co(std::initializer_list<Rational> v) { return Coords(v); }

Coords random_coords(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 6);
  Coords c;
  for (int i = 0; i < d; ++i) c.push_back(make_rational(num(rng), den(rng)));
  return c;
}

BigReal tol() { return BigReal::pow2(-P / 2, 64); }

BigReal max_diff(const RealMatrix& a, const RealMatrix& b) { return max_abs_entry(a - b); }

BigReal max_diff(const std::vector<BigReal>& a, const std::vector<BigReal>& b) {
  BigReal m = BigReal::zero(64);
  for (std::size_t i = 0; i < a.size(); ++i) m = max(m, abs(a[i] - b[i]));
  return m;
}

// Discriminant from the resultant of f and f' (monic f).
Rational discriminant(const IntPoly& f) {
  RatPoly a(f), b(f.derivative());
  Rational res = sylvester_resultant(a, b);
  int n = f.degree();
  return (n * (n - 1) / 2) % 2 ? Rational(-res) : res;
}

}  // namespace

TEST_CASE("geometric embedding of Q(cbrt 2)") {
  FieldPtr f = field("1,0,0,-2");
  CHECK(f->r() == 1);
  CHECK(f->s() == 1);
  std::vector<BigReal> one = geometric_embedding(*f, co({1, 0, 0}), P);
  CHECK(one[0] == 1);
  CHECK(one[1] == 1);
  CHECK(one[2] == 0);
  std::vector<BigReal> zero = geometric_embedding(*f, co({0, 0, 0}), P);
  for (const auto& z : zero) CHECK(z.is_zero());

  // Independent double oracle: cbrt(2) and cbrt(2) e^{2 pi i / 3}.
  const double c = std::cbrt(2.0);
  const std::complex<double> w = c * std::polar(1.0, 2 * M_PI / 3);
  std::vector<BigReal> th = geometric_embedding(*f, co({0, 1, 0}), P);
  CHECK(th[0].to_double() == doctest::Approx(c).epsilon(1e-15));
  CHECK(th[1].to_double() == doctest::Approx(w.real()).epsilon(1e-15));
  CHECK(th[2].to_double() == doctest::Approx(w.imag()).epsilon(1e-15));
  CHECK(th[1].to_fixed(4) == "-0.6300");
  CHECK(th[2].to_fixed(4) == "1.0911");
}

TEST_CASE("psi is a homomorphism compatible with phi") {
  std::mt19937_64 rng(17);
  for (const char* desc : {"1,0,0,-2", "1,0,-3,-1", "1,0,0,0,1", "1,0,1", "1,0,0,0,-1,-1"}) {
    FieldPtr f = field(desc);
    const int d = f->degree();
    RealMatrix id = psi_matrix(*f, nf_const(d, 1), P);
    CHECK(id == RealMatrix::identity(d).map([](const BigReal& x) { return x.with_precision(P); }));
    for (int trial = 0; trial < 50; ++trial) {
      Coords x = random_coords(rng, d), y = random_coords(rng, d);
      Coords xy = nf_mul(f->minpoly(), x, y);
      RealMatrix px = psi_matrix(*f, x, P), py = psi_matrix(*f, y, P);
      BigReal scale = 1 + max_abs_entry(px) * max_abs_entry(py);
      CHECK(max_diff(psi_matrix(*f, xy, P), px * py) < tol() * scale);
      std::vector<BigReal> lhs = px * geometric_embedding(*f, y, P);
      CHECK(max_diff(lhs, geometric_embedding(*f, xy, P)) < tol() * scale);
    }
  }
}

TEST_CASE("psi of a unit has determinant one") {
  FieldPtr f = field("1,0,0,-2");
  Coords u = nf_inv(f->minpoly(), co({-1, 1, 0}));
  CHECK(abs(determinant(psi_matrix(*f, u, P)) - 1) < tol());
}

TEST_CASE("embedding determinant matches the discriminant") {
  for (const char* desc : {"1,0,0,-2", "1,0,-3,-1", "1,0,0,0,1", "1,0,1", "1,0,0,0,-1,-1", "1,-1,-1,-1"}) {
    FieldPtr f = field(desc);
    KLattice kl = KLattice::standard(f);
    BigReal det = abs(determinant(embedding_matrix(kl, P)));
    BigReal expect = sqrt(abs(BigReal(discriminant(f->minpoly()), P))) / BigReal::pow2(f->s(), P);
    CHECK(abs(det / expect - 1) < tol());
    LatticeBasis x = lattice_from_basis(kl, P);
    CHECK(abs(abs(x.determinant()) - 1) < tol());
  }
}

TEST_CASE("lattice_from_basis examples") {
  FieldPtr f = field("1,0,0,-2");
  KLattice kl = KLattice::standard(f);
  LatticeBasis x = lattice_from_basis(kl, P);
  RealMatrix phi = embedding_matrix(kl, P);
  BigReal scale = x.matrix()(0, 0) / phi(0, 0);
  BigReal expect = root(1L / (sqrt(BigReal(108L, P)) / 2), 3);
  CHECK(abs(scale - expect) < tol());
  CHECK(scale.to_fixed(4) == "0.5774");

  FieldPtr gi = field("1,0,1");
  LatticeBasis zi = lattice_from_basis(KLattice::standard(gi), P);
  CHECK(max_diff(zi.matrix(), RealMatrix::identity(2).map([](const BigReal& v) { return v.with_precision(P); })) <
        tol());

  CHECK_THROWS_AS(KLattice(f, {co({1, 0, 0}), co({2, 0, 0})}), Error);
  try {
    KLattice(f, {co({1, 0, 0}), co({2, 0, 0}), co({0, 1, 0})});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDependentBasis);
  }
}

TEST_CASE("orders") {
  FieldPtr f = field("1,0,0,-2");
  KLattice z = KLattice::standard(f);
  CHECK(order_elements_check(z, co({0, 1, 0})));
  CHECK_FALSE(order_elements_check(z, co({0, make_rational(1, 2), 0})));
  CHECK(order_elements_check(z, co({1, 1, 1})));

  std::vector<Coords> order = associated_order_basis(z);
  RatMatrix m(3, 3);
  for (std::size_t k = 0; k < 3; ++k) m.set_row(k, order[k]);
  CHECK(abs(determinant(m)) == 1);

  // Lambda = Z + 2 Z theta + 4 Z theta^2: brute-force the order over small elements.
  KLattice lam(f, {co({1, 0, 0}), co({0, 2, 0}), co({0, 0, 4})});
  std::vector<Coords> ob = associated_order_basis(lam);
  RatMatrix om(3, 3);
  for (std::size_t k = 0; k < 3; ++k) om.set_col(k, ob[k]);
  RatMatrix om_inv = inverse(om);
  for (long a = -2; a <= 2; ++a)
    for (long b = -4; b <= 4; ++b)
      for (long c = -4; c <= 4; ++c) {
        Coords x = co({a, make_rational(b, 2), make_rational(c, 4)});
        std::vector<Rational> y = om_inv * x;
        bool in_order = std::all_of(y.begin(), y.end(), [](const Rational& q) { return q.get_den() == 1; });
        CHECK(order_elements_check(lam, x) == in_order);
      }
}

TEST_CASE("unit search") {
  struct Case {
    const char* desc;
    long h;
    int rank;
  };
  for (const Case& c : {Case{"1,0,0,-2", 5, 1}, Case{"1,0,1", 5, 0}, Case{"1,0,-3,-1", 5, 2}, Case{"1,0,0,0,1", 5, 1}}) {
    FieldPtr f = field(c.desc);
    KLattice kl = KLattice::standard(f);
    UnitGroupData u = unit_search(kl, c.h, P);
    CHECK(u.rank == c.rank);
    CHECK(u.expected_rank == c.rank);
    CHECK(torus_orbit_compactness(kl, u, P) == CompactnessVerdict::kCertifiedCompact);
    for (std::size_t k = 0; k < u.generators.size(); ++k) {
      const Coords& g = u.generators[k];
      CHECK(abs(nf_norm(f->minpoly(), g)) == 1);
      auto act = multiplication_action(kl, g);
      REQUIRE(act.has_value());
      CHECK(abs(determinant(*act)) == 1);
      BigReal sum = BigReal::zero(P);
      for (int i = 0; i < f->r() + f->s(); ++i) sum += u.log_matrix(k, i) * (i < f->r() ? 1L : 2L);
      CHECK(abs(sum) < tol());
      for (int i = 0; i < f->r(); ++i) CHECK(f->embed(i, g, 64).re.sign() > 0);
    }
  }
  FieldPtr f = field("1,0,0,-2");
  UnitGroupData u = unit_search(KLattice::standard(f), 5, P);
  CHECK(std::find(u.units.begin(), u.units.end(), co({-1, 1, 0})) != u.units.end());
}

TEST_CASE("small height bound is inconclusive") {
  // Q(cbrt 10): no unit with coordinates in [-1, 1].
  FieldPtr f = field("1,0,0,-10");
  KLattice kl = KLattice::standard(f);
  UnitGroupData u = unit_search(kl, 1, P);
  CHECK(u.rank == 0);
  CHECK_FALSE(u.complete());
  CHECK(torus_orbit_compactness(kl, u, P) == CompactnessVerdict::kInconclusive);
}

TEST_CASE("CM detection") {
  FieldPtr f = field("1,0,0,-2");
  CHECK(is_cm(*f, unit_search(KLattice::standard(f), 3, P), P).verdict == CmVerdict::kNo);
  FieldPtr z8 = field("1,0,0,0,1");
  CmReport yes = is_cm(*z8, unit_search(KLattice::standard(z8), 3, P), P);
  CHECK(yes.verdict == CmVerdict::kYes);
  CHECK(yes.real_unit_rank == 1);
  FieldPtr g = field("1,0,0,1,1");
  UnitGroupData ug = unit_search(KLattice::standard(g), 20, P);
  CHECK(ug.complete());
  CmReport no = is_cm(*g, ug, P);
  CHECK(no.verdict == CmVerdict::kNo);
  CHECK(no.height_bound == 20);
}

TEST_CASE("theorem 5 factorization") {
  FieldPtr f = field("1,0,0,-2");
  Theorem5Factor t = theorem5_factor(KLattice::standard(f), P);
  CHECK(abs(t.m(0, 0) - 1) < tol());
  CHECK(abs(t.m(0, 1)) < tol());
  CHECK(abs(t.m(0, 2)) < tol());
  BigReal expect = root(1L / (sqrt(BigReal(108L, P)) / 2), 3);
  CHECK(abs(abs(t.c) - expect) < tol());
  CHECK(max_abs_entry((t.p * t.phi).scaled(t.c) - t.g_v) < tol());

  FieldPtr tr = field("1,0,-3,-1");
  Theorem5Factor u = theorem5_factor(KLattice::standard(tr), P);
  CHECK(abs(determinant(u.p) - 1) < tol());
  CHECK(u.max_first_row_off < tol());
  CHECK(max_abs_entry((u.p * u.phi).scaled(u.c) - u.g_v) < tol());

  CHECK_THROWS_AS(theorem5_factor(KLattice::standard(field("1,0,1")), P), Error);
  CHECK_THROWS_AS(theorem5_factor(KLattice(f, {co({0, 1, 0}), co({1, 0, 0}), co({0, 0, 1})}), P), Error);
}

TEST_CASE("field JSON") {
  FieldPtr f = field("1,0,0,-2");
  KLattice kl(f, {co({1, 0, 0}), co({0, make_rational(1, 2), 0}), co({1, 0, 3})});
  nlohmann::json j = field_to_json(kl);
  CHECK(j.dump() == R"({"basis":[["1","0","0"],["0","1/2","0"],["1","0","3"]],"minpoly":[1,0,0,-2]})");
  KLattice back = field_from_json(j, P);
  CHECK(back.basis() == kl.basis());
  CHECK(parse_rational("-1.25") == make_rational(-5, 4));
  CHECK(parse_rational("6/4") == make_rational(3, 2));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("010") == 10);
  CHECK(parse_minpoly("1, 0, 010, -2") == IntPoly::from_descending({1, 0, 10, -2}));
  CHECK_THROWS_AS(parse_rational("x"), Error);
}
