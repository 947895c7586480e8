#include "diagorbit/irregular/irregular.hpp"

#include <algorithm>
#include <cmath>

#include "diagorbit/arith/continued_fraction.hpp"
#include "diagorbit/arith/expression.hpp"
#include "diagorbit/arith/integer_linalg.hpp"
#include "diagorbit/arith/lll.hpp"
#include "diagorbit/error.hpp"
#include "diagorbit/flows/diagonal.hpp"
#include "diagorbit/flows/trajectory.hpp"
#include "diagorbit/util/parallel.hpp"

namespace diagorbit {

namespace {

LatticeBasis shear_lattice(const std::vector<ExactReal>& v, bool column, int prec) {
  const std::size_t d = v.size() + 1;
  Matrix<ExactReal> m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = ExactReal(Rational(i == j ? 1 : 0));
  for (std::size_t i = 1; i < d; ++i) {
    if (column) {
      m(i, 0) = v[i - 1];
    } else {
      m(0, i) = v[i - 1];
    }
  }
  return LatticeBasis::from_generators(std::make_shared<ExactGenerators>(m), IntMatrix::identity(d), prec);
}

}  // namespace

LatticeBasis make_xv(const std::vector<ExactReal>& v, int prec) { return shear_lattice(v, true, prec); }
LatticeBasis make_zv(const std::vector<ExactReal>& v, int prec) { return shear_lattice(v, false, prec); }

// ---- rational relations ----

namespace {

RationalRelation relation_from(const Rational& c1, const Rational& c0) {
  Integer q;
  mpz_lcm(q.get_mpz_t(), c1.get_den_mpz_t(), c0.get_den_mpz_t());
  RationalRelation r;
  r.q = q;
  r.p1 = Integer(c1 * q);
  r.p2 = Integer(c0 * q);
  return r;
}

// y = c1 x + c0 with coordinates in a common field (index 0 is the constant term).
std::optional<RationalRelation> solve_affine(const Coords& x, const Coords& y) {
  std::size_t k = 1;
  while (k < x.size() && x[k] == 0) ++k;
  if (k == x.size()) {
    for (std::size_t i = 1; i < y.size(); ++i)
      if (y[i] != 0) return std::nullopt;
    return relation_from(Rational(0), y[0]);
  }
  Rational c1 = y[k] / x[k];
  Coords rest = nf_sub(y, nf_scale(x, c1));
  for (std::size_t i = 1; i < rest.size(); ++i)
    if (rest[i] != 0) return std::nullopt;
  return relation_from(c1, rest[0]);
}

std::optional<std::pair<Coords, Coords>> common_coords(const ExactReal& a, const ExactReal& b, int prec) {
  if (!a.is_exact() || !b.is_exact()) return std::nullopt;
  auto qa = a.as_rational(), qb = b.as_rational();
  if (qa && qb) return std::make_pair(Coords{*qa}, Coords{*qb});
  std::vector<std::shared_ptr<const RealField>> targets;
  if (!qa) targets.push_back(a.field());
  if (!qb) targets.push_back(b.field());
  std::sort(targets.begin(), targets.end(), [](const auto& f, const auto& g) { return f->degree() > g->degree(); });
  for (const auto& f : targets) {
    auto ma = move_to_field(a, f, prec), mb = move_to_field(b, f, prec);
    if (ma && mb) return std::make_pair(ma->coords(), mb->coords());
  }
  return std::nullopt;
}

}  // namespace

RelationPair rational_relation(const ExactReal& alpha, const ExactReal& beta, const Integer& q_max, int prec) {
  if (q_max < 1) throw Error(ErrorCode::kInvalidInput, "q_max must be >= 1");
  RelationPair out;
  auto keep = [&](std::optional<RationalRelation> r) {
    if (r && r->q > q_max) r.reset();
    return r;
  };
  if (auto common = common_coords(alpha, beta, prec)) {
    // Linear independence of 1, alpha, beta is decided exactly from field coordinates;
    // fields that do not nest fall through to the numerical search.
    out.exact = true;
    out.forward = keep(solve_affine(common->first, common->second));
    out.reverse = keep(solve_affine(common->second, common->first));
    return out;
  }
  std::vector<ExactReal> x{ExactReal(Rational(1)), alpha, beta};
  std::vector<BigReal> xv;
  for (const auto& e : x) xv.push_back(e.eval(prec + 32));
  IntMatrix rel = integer_relation_candidates(xv, prec / 2);
  const long height_bits = prec / 16;
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    std::vector<Integer> c = rel.row(r);
    long h = 0;
    for (const auto& v : c) h = std::max(h, bit_length(v));
    if (h > height_bits) continue;
    BigReal res = abs(eval_combination(c, x, prec));
    if (res > BigReal::pow2(-3 * prec / 4, 64)) continue;
    // c0 + c1 alpha + c2 beta = 0
    if (c[2] != 0 && !out.forward) {
      Rational c1 = make_rational(-c[1], c[2]), c0 = make_rational(-c[0], c[2]);
      out.forward = keep(relation_from(c1, c0));
    }
    if (c[1] != 0 && !out.reverse) {
      Rational c1 = make_rational(-c[2], c[1]), c0 = make_rational(-c[0], c[1]);
      out.reverse = keep(relation_from(c1, c0));
    }
  }
  return out;
}

// ---- membership ----

namespace {

struct Axis {
  bool found = false;
  std::vector<Integer> c;   // coefficients in the basis of y
  BigReal defect;           // length of the block part of y c
  BigReal u;                // axis coordinate of y c, made positive
  IntMatrix adapt;          // columns (w1, w2, c)
};

// Primitive vector of y (nearly) on the coordinate axis `axis`, from an integer relation
// among the block coordinates of the basis columns.
Axis find_axis(const LatticeBasis& y, std::size_t axis) {
  const int prec = y.precision();
  const std::size_t d = 3;
  std::vector<std::size_t> blk;
  for (std::size_t i = 0; i < d; ++i)
    if (i != axis) blk.push_back(i);
  const int wp = prec + 32;
  RealMatrix rows(d, d + 2, BigReal::zero(wp));
  BigReal scale = BigReal::pow2(prec / 2, wp);
  for (std::size_t i = 0; i < d; ++i) {
    rows(i, i) = BigReal(1L, wp);
    for (std::size_t k = 0; k < 2; ++k) rows(i, d + k) = y.matrix()(blk[k], i).with_precision(wp) * scale;
  }
  LLLResult red = lll_rows(rows);
  Axis best;
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<Integer> c = red.transform.row(r);
    long h = 0;
    for (const auto& v : c) h = std::max(h, bit_length(v));
    if (h > prec / 16) continue;
    std::vector<BigReal> p = y.point(c, prec);
    BigReal defect = sqrt(p[blk[0]] * p[blk[0]] + p[blk[1]] * p[blk[1]]);
    if (p[axis].is_zero()) continue;
    if (best.found && defect >= best.defect) continue;
    best.found = true;
    best.c = c;
    best.defect = defect;
    best.u = p[axis];
  }
  if (!best.found) return best;
  if (best.u.sign() < 0) {
    for (auto& v : best.c) v = -v;
    best.u = -best.u;
  }
  best.adapt = IntMatrix(d, d);
  // Keep the presented columns where possible: replace one with unit coefficient by c.
  std::size_t unit = d;
  for (std::size_t k = d; k-- > 0;)
    if (abs(best.c[k]) == 1) unit = k;
  if (unit < d) {
    std::size_t col = 0;
    for (std::size_t k = 0; k < d; ++k) {
      if (k == unit) continue;
      best.adapt(k, col++) = 1;
    }
    for (std::size_t i = 0; i < d; ++i) best.adapt(i, 2) = best.c[i];
    return best;
  }
  IntMatrix comp = unimodular_completion(best.c);
  for (std::size_t i = 0; i < d; ++i) {
    best.adapt(i, 0) = comp(1, i);
    best.adapt(i, 1) = comp(2, i);
    best.adapt(i, 2) = comp(0, i);
  }
  return best;
}

Integer mod_q(const Integer& a, const Integer& q) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t());
  return r;
}

struct MembershipCore {
  MMembershipVerdict verdict;
  bool ambiguous = false;
};

MembershipCore membership_core(const LatticeBasis& x, const Integer& q, int family, double tol) {
  if (x.dim() != 3) throw Error(ErrorCode::kDimensionMismatch, "membership is defined for d = 3");
  if (family != 1 && family != 2) throw Error(ErrorCode::kInvalidInput, "family must be 1 or 2");
  if (q < 1) throw Error(ErrorCode::kInvalidInput, "q must be positive");
  if (!(tol > 0)) throw Error(ErrorCode::kInvalidInput, "tolerance must be positive");
  const int prec = x.precision();
  const std::size_t axis = family == 1 ? 2 : 1;
  MembershipCore out;
  MMembershipVerdict& v = out.verdict;
  v.family = family;
  v.q = q;
  v.l1 = v.l2 = 0;
  const LatticeBasis& y = x;
  Axis ax = find_axis(y, axis);
  const BigReal lo(tol / 10, prec), hi(tol * 10, prec);
  if (!ax.found) {
    v.residual = BigReal(1L, prec);
    return out;
  }
  // A-normalization: the axis generator is rescaled to length 1.
  BigReal residual = ax.defect / ax.u;
  BigReal qb(q, prec);
  auto dist = [&](const BigReal& coord) {
    BigReal z = coord / ax.u * qb;
    return abs(z - round(z)) / qb;
  };
  for (std::size_t j = 0; j < 3; ++j) residual = max(residual, dist(y.matrix()(axis, j)));
  LatticeBasis w = y.change_basis(ax.adapt);
  Integer l[2];
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<BigReal> p = w.column(j);
    residual = max(residual, dist(p[axis]));
    l[j] = mod_q((p[axis] / ax.u * qb).round_integer(), q);
  }
  v.residual = residual;
  v.in_s_form = ax.defect <= lo;
  v.l1 = l[0];
  v.l2 = l[1];
  Integer g;
  mpz_gcd(g.get_mpz_t(), l[0].get_mpz_t(), l[1].get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_mpz_t());
  out.ambiguous = residual > lo && residual < hi;
  v.member = residual <= lo && g == 1;
  return out;
}

}  // namespace

MMembershipVerdict m_membership(const LatticeBasis& x, const Integer& q, int family, double tol) {
  MembershipCore c = membership_core(x, q, family, tol);
  if (c.ambiguous) {
    throw Error(ErrorCode::kToleranceAmbiguous,
                "membership residual " + c.verdict.residual.to_string(6) + " is within a factor 10 of the tolerance");
  }
  return c.verdict;
}

// ---- Dirichlet pairs and the short witness ----

DirichletPair dirichlet_pair(const ExactReal& theta, const BigReal& T, int prec) {
  if (T < 1) throw Error(ErrorCode::kInvalidInput, "window T must be >= 1");
  Integer bound = T.floor_integer();
  CFExpansion cf = cf_expand_to_denominator(theta, bound, prec);
  if (cf.size() == 0) throw Error(ErrorCode::kPrecisionExhausted, "continued fraction uncertain at the first term");
  std::size_t i = cf.size() - 1;
  while (i > 0 && cf.q[i] > bound) --i;
  // Without a certified next denominator beyond T the 1/T estimate is not guaranteed.
  if (i + 1 == cf.size() && !cf.terminated) {
    throw Error(ErrorCode::kPrecisionExhausted, "continued fraction uncertain before reaching T; raise precision");
  }
  DirichletPair d;
  d.k = cf.q[i];
  d.m = -cf.p[i];
  d.value = abs(eval_combination({d.k, d.m}, {theta, ExactReal(Rational(1))}, prec));
  d.window = T;
  return d;
}

ShortyWitness shorty_witness(const std::vector<ExactReal>& v, const RationalRelation& rel, const BigReal& t,
                             const BigReal& s, int prec) {
  if (v.size() != 2) throw Error(ErrorCode::kDimensionMismatch, "v must have two entries");
  if (t.sign() < 0 || s.sign() < 0) throw Error(ErrorCode::kInvalidInput, "t and s must be >= 0");
  BigReal check = eval_combination({rel.q, -rel.p1, -rel.p2}, {v[1], v[0], ExactReal(Rational(1))}, prec);
  if (rel.q < 1 || abs(check) > BigReal::pow2(-prec / 2, 64)) {
    throw Error(ErrorCode::kPreconditionViolated, "relation does not hold for v");
  }
  const int wp = prec + 32;
  BigReal tw = t.with_precision(wp), sw = s.with_precision(wp);
  BigReal T = tw >= sw ? exp(tw + sw / 2) : exp(sw + tw / 2);
  ShortyWitness w;
  w.pair = dirichlet_pair(v[0], T, prec);
  const Integer &k = w.pair.k, &m = w.pair.m;
  w.n = {rel.q * k, rel.q * m, rel.p1 * m - rel.p2 * k};
  LatticeBasis a = make_xv(v, prec).scale_rows({-(tw + sw), sw, tw});
  w.image = a.point(w.n, prec);
  w.length = norm2(w.image);
  w.sup_norm = BigReal::zero(prec);
  for (const auto& c : w.image) w.sup_norm = max(w.sup_norm, abs(c));
  Integer p1 = abs(rel.p1);
  w.bound = BigReal(p1 > rel.q ? p1 : rel.q, prec) * exp(-min(tw, sw) / 2);
  w.bound = w.bound.with_precision(prec);
  if (w.sup_norm > w.bound * (1 + BigReal::pow2(-prec / 2, 64))) {
    throw Error(ErrorCode::kBoundViolated, "short witness exceeds its bound");
  }
  return w;
}

// ---- projection ----

LatticeBasis project_pi(const LatticeBasis& x) {
  if (x.dim() != 3) throw Error(ErrorCode::kDimensionMismatch, "projection is defined for d = 3");
  const int prec = x.precision();
  LatticeBasis y = reduce(x).basis;
  Axis ax = find_axis(y, 2);
  const BigReal eps = BigReal::pow2(-prec / 2, 64);
  if (!ax.found || ax.defect > eps || abs(ax.u - 1) > eps) {
    throw Error(ErrorCode::kNotInSOrbit, "lattice has no basis of the form (* * 0; * * 0; * * 1)");
  }
  LatticeBasis w = y.change_basis(ax.adapt);
  RealMatrix b(2, 2, BigReal::zero(prec));
  for (std::size_t j = 0; j < 2; ++j) {
    std::vector<Integer> c(3, Integer(0));
    c[j] = 1;
    std::vector<BigReal> p = w.point(c, prec + 64);
    for (std::size_t i = 0; i < 2; ++i) b(i, j) = p[i].with_precision(prec);
  }
  if (determinant(b).sign() < 0)
    for (std::size_t i = 0; i < 2; ++i) b(i, 0) = -b(i, 0);
  return LatticeBasis(b);
}

// ---- experiment driver ----

std::vector<BigReal> family_direction(int family, int prec) {
  if (family == 1) return {BigReal(-1L, prec), BigReal(1L, prec), BigReal::zero(prec)};
  if (family == 2) return {BigReal(-1L, prec), BigReal::zero(prec), BigReal(1L, prec)};
  throw Error(ErrorCode::kInvalidInput, "family must be 1 or 2");
}

namespace {

// Golden-section search for a maximum of the systole on [a, b].
BigReal refine_max(const LatticeBasis& x, const TracelessDiag& dir, BigReal a, BigReal b, int iterations) {
  auto f = [&](const BigReal& t) { return shortest_vector(apply_diag(dir.scaled(t), x)).systole(); };
  const int prec = x.precision();
  const BigReal g = (sqrt(BigReal(5L, prec)) - 1) / 2;
  BigReal c = b - g * (b - a), d = a + g * (b - a);
  BigReal fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace

OmegaReport omega_experiment(const std::vector<ExactReal>& v, int family, const BigReal& t_max,
                             const OmegaOptions& opt, int prec) {
  if (v.size() != 2) throw Error(ErrorCode::kDimensionMismatch, "v must have two entries");
  if (family != 1 && family != 2) throw Error(ErrorCode::kInvalidInput, "family must be 1 or 2");
  if (t_max.sign() <= 0 || !(opt.step > 0) || opt.grid_points < 1) {
    throw Error(ErrorCode::kInvalidInput, "t_max, step and grid size must be positive");
  }
  if (v[0].is_rational() || v[1].is_rational()) {
    throw Error(ErrorCode::kPreconditionViolated, "alpha and beta must be irrational");
  }
  RelationPair rel = rational_relation(v[0], v[1], opt.q_max, prec);
  if (!rel.forward || !rel.reverse) {
    throw Error(ErrorCode::kPreconditionViolated, "1, alpha, beta are not linearly dependent over Q");
  }
  OmegaReport rep;
  rep.v = v;
  rep.family = family;
  rep.relation = family == 1 ? *rel.forward : *rel.reverse;
  rep.rho = opt.rho;
  rep.tol = opt.tol;
  rep.t_max = t_max;

  const LatticeBasis x = make_xv(v, prec);
  const TracelessDiag dir(family_direction(family, prec));
  const long steps = std::max(1L, std::lround(std::ceil(t_max.to_double() / opt.step)));
  std::vector<TrajectorySample> samples = trajectory(x, dir, t_max, steps, BigReal(opt.rho, prec));

  // Interior local maxima of the sampled systole (a plateau counts once, at its start).
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    if (!samples[i].recurrence || !(samples[i].systole > samples[i - 1].systole)) continue;
    std::size_t j = i;
    while (j + 1 < samples.size() && samples[j + 1].systole == samples[i].systole) ++j;
    if (j + 1 < samples.size() && samples[j + 1].systole < samples[i].systole) peaks.push_back(i);
  }

  rep.recurrences.resize(peaks.size());
  const Integer q = rep.relation.q;
  parallel_for(peaks.size(), [&](std::size_t k) {
    PrecisionScope scope(prec);
    std::size_t i = peaks[k];
    BigReal t = refine_max(x, dir, samples[i - 1].t, samples[i + 1].t, 40);
    LatticeBasis y = apply_diag(dir.scaled(t), x);
    Recurrence& r = rep.recurrences[k];
    r.t = t;
    r.systole = shortest_vector(y).systole();
    MembershipCore c = membership_core(reduce(y).basis, q, family, opt.tol);
    r.verdict = c.ambiguous ? "ambiguous" : (c.verdict.member ? "member" : "not_member");
    r.l1 = c.verdict.l1;
    r.l2 = c.verdict.l2;
    r.residual = c.verdict.residual;
  });
  for (const auto& r : rep.recurrences) {
    rep.residual_min = rep.residual_min ? min(*rep.residual_min, r.residual) : r.residual;
    rep.residual_max = rep.residual_max ? max(*rep.residual_max, r.residual) : r.residual;
  }

  // Off-ray grid: diag(e^{-t-s}, e^s, e^t) x_v against the short witness bound.
  const std::size_t g = static_cast<std::size_t>(opt.grid_points);
  rep.offray_grid.resize(g * g);
  parallel_for(g * g, [&](std::size_t idx) {
    PrecisionScope scope(prec);
    std::size_t a = idx / g, b = idx % g;
    BigReal t = g == 1 ? t_max.with_precision(prec) : t_max.with_precision(prec) * static_cast<long>(a) / static_cast<long>(g - 1);
    BigReal s = g == 1 ? t_max.with_precision(prec) : t_max.with_precision(prec) * static_cast<long>(b) / static_cast<long>(g - 1);
    OffRayCell& cell = rep.offray_grid[idx];
    cell.t = t;
    cell.s = s;
    ShortyWitness w = shorty_witness(v, *rel.forward, t, s, prec);
    cell.witness_length = w.length;
    cell.bound = w.bound;
    cell.systole = shortest_vector(x.scale_rows({-(t + s), s, t})).systole();
    cell.holds = w.sup_norm <= w.bound * (1 + BigReal::pow2(-prec / 2, 64)) && cell.systole <= w.length;
  });
  return rep;
}

namespace {

nlohmann::json num(const BigReal& x) { return x.to_string(17); }

nlohmann::json integer_json(const Integer& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

}  // namespace

nlohmann::json omega_report_json(const OmegaReport& r) {
  nlohmann::json j;
  j["v"] = nlohmann::json::array();
  for (const auto& e : r.v) j["v"].push_back(e.eval(128).to_string(30));
  j["relation"] = {{"p1", integer_json(r.relation.p1)}, {"p2", integer_json(r.relation.p2)}, {"q", integer_json(r.relation.q)}};
  j["family"] = r.family;
  j["rho"] = r.rho;
  j["tol"] = r.tol;
  j["t_max"] = num(r.t_max);
  j["recurrences"] = nlohmann::json::array();
  for (const auto& e : r.recurrences) {
    j["recurrences"].push_back({{"t", num(e.t)},
                                {"systole", num(e.systole)},
                                {"member", e.verdict == "member"},
                                {"verdict", e.verdict},
                                {"l1", integer_json(e.l1)},
                                {"l2", integer_json(e.l2)},
                                {"residual", num(e.residual)}});
  }
  j["residual_min"] = r.residual_min ? num(*r.residual_min) : nlohmann::json(nullptr);
  j["residual_max"] = r.residual_max ? num(*r.residual_max) : nlohmann::json(nullptr);
  j["offray_grid"] = nlohmann::json::array();
  for (const auto& c : r.offray_grid) {
    j["offray_grid"].push_back({{"t", num(c.t)},
                                {"s", num(c.s)},
                                {"systole", num(c.systole)},
                                {"witness_length", num(c.witness_length)},
                                {"bound", num(c.bound)},
                                {"holds", c.holds}});
  }
  return j;
}

}  // namespace diagorbit
