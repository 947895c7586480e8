#include "diagorbit/dioph/dioph.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/Polynomials>

#include "diagorbit/error.hpp"
#include "diagorbit/lattice/lattice_json.hpp"
#include "diagorbit/util/parallel.hpp"

namespace diagorbit {

namespace {

// Signed value of c . x when every entry is rational or lies in one common field.
std::optional<BigReal> exact_signed(const std::vector<Integer>& c, const std::vector<ExactReal>& x, int prec) {
  std::shared_ptr<const RealField> field;
  for (const auto& e : x) {
    if (!e.is_exact()) return std::nullopt;
    if (e.kind() == ExactReal::Kind::kAlgebraic) {
      if (field && field != e.field()) return std::nullopt;
      field = e.field();
    }
  }
  if (!field) {
    Rational acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += *x[i].as_rational() * Rational(c[i]);
    return BigReal(acc, prec);
  }
  Coords acc = nf_const(field->degree(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Coords xi = x[i].kind() == ExactReal::Kind::kAlgebraic ? x[i].coords() : nf_const(field->degree(), *x[i].as_rational());
    acc = nf_add(acc, nf_scale(xi, Rational(c[i])));
  }
  return ExactReal(field, acc).eval(prec);
}

long double to_ld(const BigReal& x) { return mpfr_get_ld(x.raw(), MPFR_RNDN); }

bool strictly_below(const BigReal& a, const BigReal& b, int prec) {
  if (!b.is_finite()) return true;
  return a < b * (1 - BigReal::pow2(-prec / 2, 64));
}

constexpr long double kUlp = 0x1p-60L;

}  // namespace

BigReal distance_to_integers(const std::vector<Integer>& c, const std::vector<ExactReal>& x, int prec) {
  if (c.size() != x.size()) throw Error(ErrorCode::kDimensionMismatch, "combination length");
  std::optional<BigReal> z0 = exact_signed(c, x, prec);
  Integer k = (z0 ? *z0 : eval_combination(c, x, 64)).round_integer();
  std::vector<Integer> cc = c;
  std::vector<ExactReal> xx = x;
  cc.push_back(-k);
  xx.push_back(ExactReal(Rational(1)));
  std::optional<BigReal> z = exact_signed(cc, xx, prec);
  BigReal v = z ? *z : eval_combination(cc, xx, prec);
  if (v > 0.5) v -= 1;
  if (v < -0.5) v += 1;
  return abs(v);
}

BigReal littlewood_product(const ExactReal& alpha, const ExactReal& beta, const Integer& n, const ExactReal& gamma,
                           const ExactReal& delta, int prec) {
  if (n == 0) throw Error(ErrorCode::kInvalidInput, "n must be nonzero");
  return propC1_value({alpha, beta}, {gamma, delta}, n, prec);
}

BigReal propC1_value(const std::vector<ExactReal>& v, const std::vector<ExactReal>& gamma, const Integer& n,
                     int prec) {
  if (v.size() != gamma.size()) throw Error(ErrorCode::kDimensionMismatch, "v and gamma lengths differ");
  BigReal acc(Integer(abs(n)), prec);
  for (std::size_t i = 0; i < v.size(); ++i) acc *= distance_to_integers({n, -1}, {v[i], gamma[i]}, prec);
  return acc;
}

BigReal propC2_value(const std::vector<ExactReal>& v, const ExactReal& gamma, const std::vector<Integer>& n, int prec) {
  if (v.size() != n.size()) throw Error(ErrorCode::kDimensionMismatch, "v and n lengths differ");
  Integer p = 1;
  for (const auto& e : n) p *= abs(e);
  std::vector<Integer> c = n;
  std::vector<ExactReal> x = v;
  c.push_back(-1);
  x.push_back(gamma);
  return distance_to_integers(c, x, prec) * p;
}

namespace {

// Per-chunk record lists merged in scan order; the merge keeps a chunk record only when it
// beats everything before it, which reproduces the sequential scan.
RecordTrace merge_chunks(const std::vector<std::vector<SearchRecord>>& chunks, long N, int prec) {
  RecordTrace out;
  out.bound = N;
  BigReal best = BigReal::infinity(1, prec);
  for (const auto& chunk : chunks)
    for (const auto& r : chunk) {
      if (!strictly_below(r.value, best, prec)) continue;
      best = r.value;
      out.records.push_back(r);
    }
  return out;
}

}  // namespace

RecordTrace propC1_search(const std::vector<ExactReal>& v, const std::vector<ExactReal>& gamma, long N, int prec) {
  if (N < 1) throw Error(ErrorCode::kInvalidInput, "N must be >= 1");
  if (v.size() != gamma.size() || v.empty()) throw Error(ErrorCode::kDimensionMismatch, "v and gamma lengths differ");
  const std::size_t m = v.size();
  std::vector<long double> vl(m), gl(m);
  for (std::size_t i = 0; i < m; ++i) {
    vl[i] = to_ld(v[i].eval(128));
    gl[i] = to_ld(gamma[i].eval(128));
  }
  const long total = 2 * N;
  const long chunk = std::max(4096L, total / 256 + 1);
  const std::size_t nchunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
  std::vector<std::vector<SearchRecord>> found(nchunks);
  parallel_for(nchunks, [&](std::size_t ci) {
    PrecisionScope scope(prec);
    BigReal record = BigReal::infinity(1, prec);
    long double record_ld = INFINITY;
    const long lo = static_cast<long>(ci) * chunk, hi = std::min(total, lo + chunk);
    for (long idx = lo; idx < hi; ++idx) {
      const long n = (idx / 2 + 1) * (idx % 2 ? -1 : 1);
      const long double nl = static_cast<long double>(n);
      long double bound = std::fabs(nl);
      for (std::size_t i = 0; i < m; ++i) {
        long double x = nl * vl[i] - gl[i];
        long double d = std::fabs(x - std::nearbyint(x));
        long double err = (std::fabs(nl * vl[i]) + std::fabs(gl[i]) + 1) * kUlp;
        bound *= std::max(0.0L, d - err);
      }
      if (bound >= record_ld) continue;
      BigReal val = propC1_value(v, gamma, Integer(n), prec);
      if (!strictly_below(val, record, prec)) continue;
      record = val;
      record_ld = to_ld(val) * (1 + 1e-12L);
      found[ci].push_back({{Integer(n)}, val, gamma});
    }
  });
  return merge_chunks(found, N, prec);
}

namespace {

// Positive tuples (a_1..a_m) with product in [lo, hi].
void tuples_in_range(std::size_t m, long lo, long hi, std::vector<long>& prefix, long prod,
                     std::vector<std::vector<long>>& out) {
  if (prefix.size() + 1 == m) {
    long first = std::max(1L, (lo + prod - 1) / prod), last = hi / prod;
    for (long a = first; a <= last; ++a) {
      prefix.push_back(a);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (long a = 1; prod * a <= hi; ++a) {
    prefix.push_back(a);
    tuples_in_range(m, lo, hi, prefix, prod * a, out);
    prefix.pop_back();
  }
}

}  // namespace

RecordTrace propC2_search(const std::vector<ExactReal>& v, const ExactReal& gamma, long N, int prec) {
  if (N < 1) throw Error(ErrorCode::kInvalidInput, "N must be >= 1");
  if (v.empty()) throw Error(ErrorCode::kDimensionMismatch, "v must be nonempty");
  const std::size_t m = v.size();
  std::vector<long double> vl(m);
  for (std::size_t i = 0; i < m; ++i) vl[i] = to_ld(v[i].eval(128));
  const long double gl = to_ld(gamma.eval(128));
  const long chunk = std::max(256L, N / 256 + 1);
  const std::size_t nchunks = static_cast<std::size_t>((N + chunk - 1) / chunk);
  std::vector<std::vector<SearchRecord>> found(nchunks);
  parallel_for(nchunks, [&](std::size_t ci) {
    PrecisionScope scope(prec);
    const long lo = 1 + static_cast<long>(ci) * chunk, hi = std::min(N, lo + chunk - 1);
    std::vector<std::vector<long>> pos;
    std::vector<long> prefix;
    tuples_in_range(m, lo, hi, prefix, 1, pos);
    std::vector<std::pair<long, std::vector<long>>> cand;
    for (const auto& t : pos) {
      long p = 1;
      for (long a : t) p *= a;
      for (unsigned long signs = 0; signs < (1ul << m); ++signs) {
        std::vector<long> n = t;
        for (std::size_t i = 0; i < m; ++i)
          if (signs & (1ul << i)) n[i] = -n[i];
        cand.emplace_back(p, std::move(n));
      }
    }
    std::sort(cand.begin(), cand.end());
    BigReal record = BigReal::infinity(1, prec);
    long double record_ld = INFINITY;
    for (const auto& [p, n] : cand) {
      long double s = -gl, mag = std::fabs(gl) + 1;
      for (std::size_t i = 0; i < m; ++i) {
        s += static_cast<long double>(n[i]) * vl[i];
        mag += std::fabs(static_cast<long double>(n[i]) * vl[i]);
      }
      long double d = std::fabs(s - std::nearbyint(s));
      long double bound = static_cast<long double>(p) * std::max(0.0L, d - mag * kUlp);
      if (bound >= record_ld) continue;
      std::vector<Integer> ni(n.begin(), n.end());
      BigReal val = propC2_value(v, gamma, ni, prec);
      if (!strictly_below(val, record, prec)) continue;
      record = val;
      record_ld = to_ld(val) * (1 + 1e-12L);
      found[ci].push_back({ni, val, {gamma}});
    }
  });
  return merge_chunks(found, N, prec);
}

void write_record_csv(std::ostream& out, const RecordTrace& trace) {
  out << "rank,witness,value,target\n";
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const SearchRecord& r = trace.records[i];
    out << i + 1 << ',';
    for (std::size_t k = 0; k < r.witness.size(); ++k) out << (k ? ";" : "") << r.witness[k].get_str();
    out << ',' << decimal_string(r.value) << ',';
    for (std::size_t k = 0; k < r.target.size(); ++k) {
      out << (k ? ";" : "");
      if (auto q = r.target[k].as_rational()) {
        out << q->get_str();
      } else {
        out << decimal_string(r.target[k].eval(r.value.precision()));
      }
    }
    out << "\n";
  }
}

// ---- GDP probe ----

namespace {

using Coeffs = std::vector<long>;

// Preference among hits: smaller (max |c_i|, sum |c_i|), then lexicographically greater.
bool better(const Coeffs& a, const Coeffs& b) {
  long ma = 0, mb = 0, sa = 0, sb = 0;
  for (long x : a) ma = std::max(ma, std::labs(x)), sa += std::labs(x);
  for (long x : b) mb = std::max(mb, std::labs(x)), sb += std::labs(x);
  if (ma != mb) return ma < mb;
  if (sa != sb) return sa < sb;
  return a > b;
}

// Real roots of sum_k p[k] c^k (ascending coefficients) polished by Newton steps.
std::vector<long double> real_roots(std::vector<long double> p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  std::vector<long double> out;
  if (p.size() <= 1) return out;
  if (p.size() == 2) {
    out.push_back(-p[0] / p[1]);
    return out;
  }
  Eigen::Matrix<double, Eigen::Dynamic, 1> coeffs(static_cast<Eigen::Index>(p.size()));
  for (std::size_t k = 0; k < p.size(); ++k) coeffs(static_cast<Eigen::Index>(k)) = static_cast<double>(p[k]);
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
  for (const auto& z : solver.roots()) {
    if (std::abs(z.imag()) > 1e-6 * (1 + std::abs(z.real()))) continue;
    long double r = z.real();
    for (int it = 0; it < 4; ++it) {
      long double f = 0, df = 0;
      for (std::size_t k = p.size(); k-- > 0;) {
        df = df * r + f;
        f = f * r + p[k];
      }
      if (df == 0) break;
      r -= f / df;
    }
    out.push_back(r);
  }
  return out;
}

struct ProbeContext {
  std::size_t d;
  std::vector<std::vector<long double>> b;  // reduced basis, b[i][j]
  std::vector<long double> w;
  long double target;
  long double eps;
};

// Integer values of the last coefficient worth certifying for a fixed prefix.
std::vector<long> last_candidates(const ProbeContext& ctx, const Coeffs& prefix, long bound) {
  const std::size_t d = ctx.d;
  // f(c) = prod_i (a_i + s_i c)
  std::vector<long double> poly{1};
  for (std::size_t i = 0; i < d; ++i) {
    long double a = ctx.w[i];
    for (std::size_t j = 0; j + 1 < d; ++j) a += ctx.b[i][j] * static_cast<long double>(prefix[j]);
    long double s = ctx.b[i][d - 1];
    std::vector<long double> next(poly.size() + 1, 0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k] * a;
      next[k + 1] += poly[k] * s;
    }
    poly = std::move(next);
  }
  auto eval = [&](long double c) {
    long double f = 0;
    for (std::size_t k = poly.size(); k-- > 0;) f = f * c + poly[k];
    return f;
  };
  std::vector<long double> cuts{static_cast<long double>(-bound) - 1, static_cast<long double>(bound) + 1};
  std::vector<long> near;
  for (int sign : {-1, 0, 1}) {
    std::vector<long double> q = poly;
    q[0] -= ctx.target + sign * ctx.eps;
    for (long double r : real_roots(q)) {
      if (std::fabs(r) > bound + 1) continue;
      cuts.push_back(r);
      if (sign == 0) {
        near.push_back(static_cast<long>(std::floor(r)));
        near.push_back(static_cast<long>(std::ceil(r)));
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<long> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    long double a = cuts[k], b = cuts[k + 1];
    if (!(std::fabs(eval((a + b) / 2) - ctx.target) < ctx.eps)) continue;
    long lo = std::max(-bound, static_cast<long>(std::ceil(a))), hi = std::min(bound, static_cast<long>(std::floor(b)));
    if (lo > hi) continue;
    long c = lo > 0 ? lo : (hi < 0 ? hi : 0);
    for (long e : {c, c + 1, c - 1, -c})
      if (e >= lo && e <= hi) out.push_back(e);
  }
  for (long e : near)
    if (std::labs(e) <= bound) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<GDPWitness> gdp_probe(const LatticeBasis& x, const std::vector<ExactReal>& w, const ExactReal& target,
                                    const BigReal& eps, long coeff_bound) {
  const std::size_t d = x.dim();
  if (w.size() != d) throw Error(ErrorCode::kDimensionMismatch, "shift length differs from dimension");
  if (eps.sign() <= 0) throw Error(ErrorCode::kInvalidInput, "eps must be positive");
  if (coeff_bound < 1) throw Error(ErrorCode::kInvalidInput, "coefficient bound must be >= 1");
  const int prec = x.precision();
  ReducedBasis red = reduce(x);
  ProbeContext ctx;
  ctx.d = d;
  ctx.b.assign(d, std::vector<long double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) ctx.b[i][j] = to_ld(red.basis.matrix()(i, j));
  for (const auto& e : w) ctx.w.push_back(to_ld(e.eval(128)));
  const BigReal tv = target.eval(prec);
  ctx.target = to_ld(tv);
  ctx.eps = to_ld(eps);

  auto certify = [&](const Coeffs& c, GDPWitness& out) {
    std::vector<Integer> cr(c.begin(), c.end()), ci(d, Integer(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) ci[i] += red.transform(i, j) * cr[j];
    std::vector<BigReal> u = x.point(ci, prec + 32);
    BigReal prod(1L, prec + 32);
    for (std::size_t i = 0; i < d; ++i) prod *= u[i] + w[i].eval(prec + 32);
    BigReal err = abs(prod - tv);
    if (!(err < eps)) return false;
    out.coeffs = ci;
    out.u.clear();
    for (auto& e : u) out.u.push_back(e.with_precision(prec));
    out.w = w;
    out.product = prod.with_precision(prec);
    out.target = tv;
    out.error = err.with_precision(prec);
    return true;
  };

  std::vector<long> stages;
  for (long b = 1; b < coeff_bound; b *= 2) stages.push_back(b);
  stages.push_back(coeff_bound);
  for (long bound : stages) {
    const long width = 2 * bound + 1;
    const std::size_t first_count = d == 1 ? 1 : static_cast<std::size_t>(width);
    std::vector<std::optional<std::pair<Coeffs, GDPWitness>>> best(first_count);
    parallel_for(first_count, [&](std::size_t k) {
      PrecisionScope scope(prec);
      Coeffs prefix(d - 1, 0);
      if (d > 1) prefix[0] = static_cast<long>(k) - bound;
      // Odometer over prefix[1..d-2].
      for (std::size_t j = 1; j + 1 < d; ++j) prefix[j] = -bound;
      while (true) {
        for (long last : last_candidates(ctx, prefix, bound)) {
          Coeffs c = prefix;
          c.push_back(last);
          if (std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) continue;
          if (best[k] && !better(c, best[k]->first)) continue;
          GDPWitness wit;
          if (certify(c, wit)) best[k] = std::make_pair(c, wit);
        }
        std::size_t j = 1;
        while (j + 1 < d && prefix[j] == bound) prefix[j++] = -bound;
        if (j + 1 >= d) break;
        ++prefix[j];
      }
    });
    std::optional<std::pair<Coeffs, GDPWitness>> pick;
    for (auto& b : best)
      if (b && (!pick || better(b->first, pick->first))) pick = b;
    if (pick) return pick->second;
  }
  return std::nullopt;
}

}  // namespace diagorbit
