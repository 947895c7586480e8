#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "diagorbit/arith/expression.hpp"
#include "diagorbit/dioph/dioph.hpp"
#include "diagorbit/error.hpp"
#include "diagorbit/irregular/irregular.hpp"
#include "doctest.h"

using namespace diagorbit;

namespace {

constexpr int P = 256;

std::vector<ExactReal> parse(const std::string& s) {
  ExpressionParser p(P);
  return parse_exact_list(s, p);
}

ExactReal one(const std::string& s) { return parse(s).front(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::kInvalidInput;
}

BigReal near_dist(const BigReal& x) { return abs(x - round(x)); }

double dist(long double x) { return static_cast<double>(std::fabs(x - std::nearbyint(x))); }

std::vector<long> witnesses(const RecordTrace& t) {
  std::vector<long> out;
  for (const auto& r : t.records) out.push_back(r.witness.front().get_si());
  return out;
}

// Sequential record scan in long double over a prepared candidate order.
template <class Value>
std::vector<std::size_t> oracle_records(std::size_t count, Value value) {
  std::vector<std::size_t> out;
  double best = INFINITY;
  for (std::size_t i = 0; i < count; ++i) {
    double x = value(i);
    if (x < best * (1 - 1e-9)) {
      best = x;
      out.push_back(i);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("littlewood product values") {
  std::vector<ExactReal> v = parse("cbrt2,cbrt4");
  BigReal val = littlewood_product(v[0], v[1], Integer(1), ExactReal(), ExactReal(), P);
  BigReal a = root(BigReal(2L, P), 3), b = root(BigReal(4L, P), 3);
  CHECK(abs(val - near_dist(a) * near_dist(b)) < BigReal::pow2(-P + 8, 64));
  CHECK(std::fabs(val.to_double() - 0.1072) < 5e-5);

  // Rational inputs hit zero exactly.
  std::vector<ExactReal> h = parse("1/2,1/3");
  CHECK(littlewood_product(h[0], h[1], Integer(6), ExactReal(), ExactReal(), P).is_zero());
  CHECK(propC1_value(h, parse("1/2,0"), Integer(3), P).is_zero());
  CHECK(propC2_value(h, one("5/6"), {Integer(1), Integer(1)}, P).is_zero());
  CHECK(propC2_value(h, one("0"), {Integer(2), Integer(3)}, P).is_zero());

  CHECK(code_of([&] { littlewood_product(v[0], v[1], Integer(0), ExactReal(), ExactReal(), P); }) ==
        ErrorCode::kInvalidInput);
  CHECK(code_of([&] { propC1_value(v, parse("0"), Integer(1), P); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("distance to integers near half and across fields") {
  // 1/2 + 2^-200 sits just above a half: the distance is 1/2 - 2^-200.
  Rational q = Rational(1, 2) + Rational(Integer(1), Integer(1) << 200);
  BigReal d = distance_to_integers({Integer(1)}, {ExactReal(q)}, P);
  CHECK(abs(d - (BigReal(Rational(1, 2), P) - BigReal::pow2(-200, P))) < BigReal::pow2(-P + 4, 64));
  // sqrt2 and a float value of pi mix fields.
  std::vector<ExactReal> x{one("sqrt2"), ExactReal::from_float(BigReal::pi(P))};
  BigReal e = distance_to_integers({Integer(1000), Integer(-7)}, x, P);
  BigReal ref = near_dist(sqrt(BigReal(2L, P)) * 1000 - BigReal::pi(P) * 7);
  CHECK(abs(e - ref) < BigReal::pow2(-P + 20, 64));
}

TEST_CASE("record value invariants") {
  std::vector<ExactReal> v = parse("cbrt2,cbrt4");
  std::vector<ExactReal> g = parse("0.3,0.7");
  std::vector<ExactReal> g1 = parse("1.3,-0.3");
  std::vector<ExactReal> gneg = parse("-0.3,-0.7");
  for (long n : {1L, -3L, 17L, 1001L, -99991L}) {
    BigReal a = propC1_value(v, g, Integer(n), P);
    CHECK(abs(a - propC1_value(v, g1, Integer(n), P)) < BigReal::pow2(-P / 2, 64));
    CHECK(abs(a - propC1_value(v, gneg, Integer(-n), P)) < BigReal::pow2(-P / 2, 64));
    BigReal hi = propC1_value(v, g, Integer(n), 2 * P);
    CHECK(abs(a - hi) < BigReal::pow2(-P / 2, 64));
  }
  std::vector<Integer> n{Integer(12), Integer(-5)};
  BigReal a = propC2_value(v, one("0.3"), n, P);
  CHECK(abs(a - propC2_value(v, one("-0.7"), n, P)) < BigReal::pow2(-P / 2, 64));
  CHECK(abs(a - propC2_value(v, one("-0.3"), {Integer(-12), Integer(5)}, P)) < BigReal::pow2(-P / 2, 64));
}

TEST_CASE("propC1 record scans") {
  std::vector<ExactReal> h = parse("1/2,1/2");
  RecordTrace t = propC1_search(h, parse("0,0"), 2, P);
  CHECK(witnesses(t) == std::vector<long>{1, 2});
  CHECK(t.records[0].value == BigReal(Rational(1, 4), P));
  CHECK(t.records[1].value.is_zero());
  CHECK(t.bound == 2);

  std::vector<ExactReal> v = parse("cbrt2,cbrt4");
  RecordTrace t1 = propC1_search(v, parse("0.3,0.7"), 1, P);
  for (long w : witnesses(t1)) CHECK(std::labs(w) == 1);

  CHECK(code_of([&] { propC1_search(v, parse("0,0"), 0, P); }) == ErrorCode::kInvalidInput);

  // Brute-force oracle on scans that cross the parallel chunk boundaries.
  std::mt19937_64 rng(7);
  const char* vecs[] = {"cbrt2,cbrt4", "sqrt2,sqrt3", "sqrt5,cbrt3"};
  for (const char* vs : vecs) {
    std::vector<ExactReal> x = parse(vs);
    for (int trial = 0; trial < 3; ++trial) {
      std::uniform_int_distribution<int> den(1, 9);
      int g0 = den(rng), g1 = den(rng);
      std::vector<ExactReal> gamma{ExactReal(Rational(g0, 10)), ExactReal(Rational(g1, 10))};
      if (trial == 0) gamma = parse("0,0");
      const long N = 20000;
      RecordTrace got = propC1_search(x, gamma, N, P);
      long double a = x[0].eval(P).to_double(), b = x[1].eval(P).to_double();
      long double ga = gamma[0].eval(P).to_double(), gb = gamma[1].eval(P).to_double();
      auto n_of = [](std::size_t i) { return static_cast<long>(i / 2 + 1) * (i % 2 ? -1 : 1); };
      auto idx = oracle_records(2 * N, [&](std::size_t i) {
        long double n = n_of(i);
        return std::fabs(static_cast<double>(n)) * dist(n * a - ga) * dist(n * b - gb);
      });
      std::vector<long> expect;
      for (auto i : idx) expect.push_back(n_of(i));
      CHECK(witnesses(got) == expect);
    }
  }
}

TEST_CASE("propC2 record scans") {
  std::vector<ExactReal> h = parse("1/2,1/3");
  RecordTrace t = propC2_search(h, one("5/6"), 10, P);
  REQUIRE(!t.records.empty());
  CHECK(t.records.back().value.is_zero());
  CHECK(t.records.back().witness == std::vector<Integer>{Integer(-1), Integer(1)});

  RecordTrace t1 = propC2_search(parse("sqrt2,sqrt3"), one("0.4"), 1, P);
  for (const auto& r : t1.records)
    for (const auto& e : r.witness) CHECK(abs(e) == 1);

  // Oracle: every n with nonzero entries and product <= N, sorted by (product, n).
  std::vector<ExactReal> x = parse("cbrt2,cbrt4");
  const long N = 3000;
  for (const char* gs : {"0", "0.25"}) {
    ExactReal gamma = one(gs);
    RecordTrace got = propC2_search(x, gamma, N, P);
    std::vector<std::pair<long, std::vector<long>>> all;
    for (long i = -N; i <= N; ++i)
      for (long j = -N; j <= N; ++j)
        if (i != 0 && j != 0 && std::labs(i * j) <= N) all.push_back({std::labs(i * j), {i, j}});
    std::sort(all.begin(), all.end());
    long double a = x[0].eval(P).to_double(), b = x[1].eval(P).to_double(), g = gamma.eval(P).to_double();
    auto idx = oracle_records(all.size(), [&](std::size_t k) {
      const auto& n = all[k].second;
      return static_cast<double>(all[k].first) * dist(n[0] * a + n[1] * b - g);
    });
    REQUIRE(got.records.size() == idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const auto& n = all[idx[k]].second;
      CHECK(got.records[k].witness == std::vector<Integer>{Integer(n[0]), Integer(n[1])});
    }
  }
}

TEST_CASE("record csv") {
  RecordTrace t = propC1_search(parse("1/2,1/2"), parse("0,1/3"), 2, P);
  std::ostringstream out;
  write_record_csv(out, t);
  std::string s = out.str();
  CHECK(s.rfind("rank,witness,value,target\n", 0) == 0);
  CHECK(s.find("\n1,1,") != std::string::npos);
  CHECK(s.find(",0;1/3\n") != std::string::npos);
  RecordTrace t2 = propC2_search(parse("1/2,1/3"), one("5/6"), 1, P);
  std::ostringstream out2;
  write_record_csv(out2, t2);
  CHECK(out2.str().find("\n1,-1;-1,") != std::string::npos);
}

TEST_CASE("gdp probe") {
  LatticeBasis z3 = LatticeBasis::identity(3, P);
  std::vector<ExactReal> half = parse("0.5,0.5,0.5");
  CHECK(!gdp_probe(z3, half, one("0"), BigReal(0.1, P), 64));
  // Parity oracle: |prod (c_i + 1/2)| >= 1/8 with equality at c_i in {0, -1}.
  auto hit = gdp_probe(z3, half, one("0"), BigReal(0.13, P), 64);
  REQUIRE(hit);
  CHECK(abs(abs(hit->product) - BigReal(Rational(1, 8), P)) < BigReal::pow2(-P + 8, 64));
  for (const auto& c : hit->coeffs) CHECK((c == 0 || c == -1));

  auto e1 = gdp_probe(z3, parse("0,0,0"), one("0"), BigReal(0.1, P), 64);
  REQUIRE(e1);
  CHECK(e1->coeffs == std::vector<Integer>{Integer(1), Integer(0), Integer(0)});
  CHECK(e1->product.is_zero());

  CHECK(code_of([&] { gdp_probe(z3, parse("0,0"), one("0"), BigReal(0.1, P), 8); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { gdp_probe(z3, half, one("0"), BigReal(0.0, P), 8); }) == ErrorCode::kInvalidInput);

  // Positive control on a shear lattice; the witness recomputes from its coefficients.
  LatticeBasis zv = make_zv(parse("cbrt2,cbrt4"), P);
  ExactReal target = ExactReal::from_float(BigReal::pi(P));
  auto w = gdp_probe(zv, parse("0,0,0"), target, BigReal(0.01, P), 1000);
  REQUIRE(w);
  std::vector<BigReal> u = zv.point(w->coeffs, P);
  BigReal prod(1L, P);
  for (const auto& e : u) prod *= e;
  CHECK(abs(prod - BigReal::pi(P)) < BigReal(0.01, P));
  CHECK(abs(prod - w->product) < BigReal::pow2(-P / 2, 64));

  // Brute-force oracle in reduced coordinates for random planar lattices.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ent(-2, 2);
  for (int trial = 0; trial < 15; ++trial) {
    RealMatrix m(2, 2, BigReal::zero(P));
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = BigReal(ent(rng), P);
    if (abs(determinant(m)) < BigReal(0.2, P)) continue;
    LatticeBasis x(m);
    std::vector<ExactReal> shift{ExactReal(Rational(1, 3)), ExactReal(Rational(-1, 5))};
    const double target_d = 0.7, eps_d = 0.05;
    const long bound = 12;
    auto got = gdp_probe(x, shift, ExactReal(Rational(7, 10)), BigReal(eps_d, P), bound);
    ReducedBasis red = reduce(x);
    std::optional<std::vector<long>> best;
    auto key = [](const std::vector<long>& c) {
      return std::make_tuple(std::max(std::labs(c[0]), std::labs(c[1])), std::labs(c[0]) + std::labs(c[1]));
    };
    // Smallest stage box containing a hit decides, mirroring the doubling schedule.
    for (long b : {1L, 2L, 4L, 8L, 12L}) {
      for (long i = -b; i <= b; ++i)
        for (long j = -b; j <= b; ++j) {
          if (i == 0 && j == 0) continue;
          double p = 1;
          for (std::size_t r = 0; r < 2; ++r)
            p *= red.basis.matrix()(r, 0).to_double() * i + red.basis.matrix()(r, 1).to_double() * j +
                 shift[r].eval(P).to_double();
          if (std::fabs(p - target_d) >= eps_d) continue;
          std::vector<long> c{i, j};
          if (!best || key(c) < key(*best) || (key(c) == key(*best) && c > *best)) best = c;
        }
      if (best) break;
    }
    REQUIRE(got.has_value() == best.has_value());
    if (!best) continue;
    std::vector<Integer> in(2, Integer(0));
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t k = 0; k < 2; ++k) in[r] += red.transform(r, k) * (*best)[k];
    CHECK(got->coeffs == in);
  }
}
