#include "diagorbit/numberfield/units.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>

#include "diagorbit/arith/lll.hpp"
#include "diagorbit/error.hpp"
#include "diagorbit/util/parallel.hpp"

namespace diagorbit {

std::vector<BigReal> unit_log_vector(const NumberField& f, const Coords& u, int prec) {
  std::vector<BigReal> out;
  for (int i = 0; i < f.r() + f.s(); ++i) out.push_back(log(f.embed(i, u, prec + 16).abs()).with_precision(prec));
  return out;
}

namespace {

Coords combine_coords(const std::vector<Coords>& basis, const std::vector<long>& n) {
  const std::size_t d = basis.size();
  Coords out(d, Rational(0));
  for (std::size_t k = 0; k < d; ++k) {
    if (n[k] == 0) continue;
    for (std::size_t i = 0; i < d; ++i) out[i] += basis[k][i] * n[k];
  }
  return out;
}

// Integer vectors in [-H, H]^d (first nonzero entry positive) whose norm is numerically +-1.
std::vector<std::vector<long>> norm_one_candidates(const NumberField& f, const std::vector<Coords>& order, long h) {
  const std::size_t d = order.size();
  const int places = f.r() + f.s();
  std::vector<std::vector<std::complex<double>>> e(places, std::vector<std::complex<double>>(d));
  for (int i = 0; i < places; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      BigComplex z = f.embed(i, order[k], 64);
      e[i][k] = {z.re.to_double(), z.im.to_double()};
    }
  const long side = 2 * h + 1;
  long total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= side;
  const std::size_t chunks = 256;
  std::vector<std::vector<std::vector<long>>> found(chunks);
  const int r = f.r();
  parallel_for(chunks, [&](std::size_t c) {
    long begin = total * static_cast<long>(c) / static_cast<long>(chunks);
    long end = total * static_cast<long>(c + 1) / static_cast<long>(chunks);
    std::vector<long> n(d);
    for (long idx = begin; idx < end; ++idx) {
      long rest = idx;
      for (std::size_t k = 0; k < d; ++k) {
        n[k] = rest % side - h;
        rest /= side;
      }
      auto first = std::find_if(n.begin(), n.end(), [](long v) { return v != 0; });
      if (first == n.end() || *first < 0) continue;
      double norm = 1, mag = 1;
      for (int i = 0; i < places; ++i) {
        std::complex<double> z = 0;
        double m = 0;
        for (std::size_t k = 0; k < d; ++k) {
          z += static_cast<double>(n[k]) * e[i][k];
          m += std::abs(static_cast<double>(n[k])) * std::abs(e[i][k]);
        }
        if (i < r) {
          norm *= z.real();
          mag *= m;
        } else {
          norm *= std::norm(z);
          mag *= m * m;
        }
      }
      if (std::abs(std::abs(norm) - 1) < 1e-6 + 1e-12 * mag) found[c].push_back(n);
    }
  });
  std::vector<std::vector<long>> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

BigReal max_abs(const std::vector<BigReal>& v) {
  BigReal m = BigReal::zero(v.front().precision());
  for (const auto& x : v) m = max(m, abs(x));
  return m;
}

// sqrt(det(L L^T)) for the rows of L.
BigReal log_covolume(const std::vector<std::vector<BigReal>>& logs) {
  const std::size_t k = logs.size();
  if (k == 0) return BigReal(1L, 64);
  RealMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) g(i, j) = dot(logs[i], logs[j]);
  return sqrt(abs(determinant(g)));
}

struct Basis {
  std::vector<Coords> gens;
  std::vector<std::vector<BigReal>> logs;
};

// Basis of the log lattice generated by the exact units `cands`, via LLL on [delta I | L]:
// rows whose log part vanishes are relations (torsion), the rest generate.
Basis reduce_units(const FieldPtr& f, const std::vector<Coords>& cands, int prec) {
  const std::size_t m = cands.size();
  const std::size_t places = f->r() + f->s();
  std::vector<std::vector<BigReal>> logs;
  for (const auto& u : cands) logs.push_back(unit_log_vector(*f, u, prec));
  RealMatrix rows(m, m + places, BigReal::zero(prec));
  BigReal delta = BigReal::pow2(-prec / 4, prec);
  for (std::size_t i = 0; i < m; ++i) {
    rows(i, i) = delta;
    for (std::size_t j = 0; j < places; ++j) rows(i, m + j) = logs[i][j];
  }
  LLLResult red = lll_rows(rows);
  const BigReal thresh = BigReal::pow2(-prec / 2, 64);
  Basis out;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<BigReal> l(places);
    for (std::size_t j = 0; j < places; ++j) l[j] = red.reduced(i, m + j);
    if (max_abs(l) < thresh) continue;
    FieldElement u = FieldElement::one(f);
    for (std::size_t k = 0; k < m; ++k) {
      if (red.transform(i, k) != 0) u = u * pow(FieldElement{f, cands[k]}, red.transform(i, k));
    }
    out.gens.push_back(u.coords);
    out.logs.push_back(unit_log_vector(*f, u.coords, prec));
  }
  return out;
}

bool rational_less(const Coords& a, const Coords& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Numerical rank of a set of vectors by Gram-Schmidt with a relative cutoff.
int numeric_rank(const std::vector<std::vector<BigReal>>& vs, const BigReal& cutoff) {
  std::vector<std::vector<BigReal>> ortho;
  for (auto v : vs) {
    for (const auto& q : ortho) {
      BigReal c = dot(v, q) / dot(q, q);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
    }
    if (max_abs(v) > cutoff) ortho.push_back(v);
  }
  return static_cast<int>(ortho.size());
}

}  // namespace

UnitGroupData unit_search(const KLattice& kl, long height_bound, int prec) {
  if (height_bound < 1) throw Error(ErrorCode::kInvalidInput, "height bound must be >= 1");
  const FieldPtr& f = kl.field();
  const IntPoly& mp = f->minpoly();
  std::vector<Coords> order = associated_order_basis(kl);
  UnitGroupData out;
  out.height_bound = height_bound;
  out.expected_rank = f->r() + f->s() - 1;

  const BigReal torsion_tol = BigReal::pow2(-prec / 2, 64);
  std::vector<Coords> units;
  for (const auto& n : norm_one_candidates(*f, order, height_bound)) {
    Coords u = combine_coords(order, n);
    Rational nm = nf_norm(mp, u);
    if (nm != 1 && nm != -1) continue;
    ++out.candidates;
    // The box holds u and -u; keep a positive one when it exists, else square.
    int negative = 0;
    for (int i = 0; i < f->r(); ++i) negative += f->embed(i, u, 64).re.sign() < 0;
    if (negative == f->r() && negative > 0) {
      u = nf_scale(u, Rational(-1));
    } else if (negative > 0) {
      u = nf_mul(mp, u, u);
    }
    if (max_abs(unit_log_vector(*f, u, prec)) < torsion_tol) continue;
    units.push_back(u);
  }
  std::sort(units.begin(), units.end(), rational_less);
  units.erase(std::unique(units.begin(), units.end()), units.end());

  // Visit small units first so the basis stays small.
  std::vector<std::pair<BigReal, Coords>> keyed;
  for (const auto& u : units) keyed.emplace_back(max_abs(unit_log_vector(*f, u, prec)), u);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.units.clear();
  for (const auto& [h, u] : keyed) out.units.push_back(u);

  Basis basis;
  BigReal covol = BigReal::infinity(1, prec);
  for (const auto& w : out.units) {
    std::vector<Coords> cands = basis.gens;
    cands.push_back(w);
    Basis next = reduce_units(f, cands, prec);
    if (next.gens.size() > static_cast<std::size_t>(out.expected_rank)) {
      throw Error(ErrorCode::kPrecisionExhausted, "unit log vectors exceed the Dirichlet rank; raise precision");
    }
    BigReal next_covol = log_covolume(next.logs);
    if (next.gens.size() > basis.gens.size() || next_covol < covol * (1 - BigReal::pow2(-prec / 4, 64))) {
      basis = std::move(next);
      covol = next_covol;
    }
  }
  out.generators = basis.gens;
  out.rank = static_cast<int>(basis.gens.size());
  const std::size_t places = f->r() + f->s();
  out.log_matrix = RealMatrix(basis.logs.size(), places, BigReal::zero(prec));
  for (std::size_t i = 0; i < basis.logs.size(); ++i) out.log_matrix.set_row(i, basis.logs[i]);
  return out;
}

CompactnessVerdict torus_orbit_compactness(const KLattice& kl, const UnitGroupData& units, int prec) {
  const FieldPtr& f = kl.field();
  const int n = f->r() + f->s() - 1;
  if (n == 0) return CompactnessVerdict::kCertifiedCompact;
  if (units.rank != n || units.log_matrix.rows() != static_cast<std::size_t>(n)) return CompactnessVerdict::kInconclusive;
  // Rational approximation Q of the first n columns with |Q - L| <= eps entrywise.
  const long bits = prec / 2;
  const BigReal scale = BigReal::pow2(bits, prec);
  RatMatrix q(n, n);
  Rational mx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      q(i, j) = make_rational((units.log_matrix(i, j) * scale).round_integer(), Integer(1) << bits);
      mx = std::max(mx, Rational(abs(q(i, j))));
    }
  const Rational eps = make_rational(2, Integer(1) << bits);
  // |det(Q + E) - det Q| <= n * n! * (max + eps)^(n-1) * eps.
  Rational bound = eps * n;
  for (int k = 1; k <= n; ++k) bound *= k;
  for (int k = 1; k < n; ++k) bound *= mx + eps;
  Rational det = determinant(q);
  return abs(det) > bound ? CompactnessVerdict::kCertifiedCompact : CompactnessVerdict::kInconclusive;
}

CmReport is_cm(const NumberField& f, const UnitGroupData& units, int prec) {
  CmReport rep;
  rep.height_bound = units.height_bound;
  if (f.r() > 0 || f.degree() % 2 != 0) {
    rep.verdict = CmVerdict::kNo;
    return rep;
  }
  std::vector<Coords> pool = units.units;
  for (const auto& g : units.generators) pool.push_back(nf_mul(f.minpoly(), g, g));
  const BigReal tol = BigReal::pow2(-prec / 2, 64);
  std::vector<std::vector<BigReal>> real_logs;
  for (const auto& u : pool) {
    bool all_real = true;
    for (int i = 0; i < f.s() && all_real; ++i) {
      BigComplex z = f.embed(i, u, prec);
      all_real = abs(z.im) <= tol * z.abs();
    }
    if (all_real) real_logs.push_back(unit_log_vector(f, u, prec));
  }
  rep.real_unit_rank = numeric_rank(real_logs, BigReal::pow2(-prec / 4, 64));
  if (rep.real_unit_rank >= f.s() - 1) {
    rep.verdict = CmVerdict::kYes;
  } else if (units.complete()) {
    rep.verdict = CmVerdict::kNo;
  } else {
    rep.verdict = CmVerdict::kInconclusive;
  }
  return rep;
}

std::string verdict_name(CompactnessVerdict v) {
  return v == CompactnessVerdict::kCertifiedCompact ? "certified_compact" : "inconclusive";
}

std::string verdict_name(CmVerdict v) {
  switch (v) {
    case CmVerdict::kYes:
      return "yes";
    case CmVerdict::kNo:
      return "no";
    case CmVerdict::kInconclusive:
      break;
  }
  return "inconclusive";
}

}  // namespace diagorbit
