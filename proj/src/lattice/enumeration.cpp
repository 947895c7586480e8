#include <algorithm>
#include <cmath>

#include "diagorbit/arith/integer_linalg.hpp"
#include "diagorbit/arith/lll.hpp"
#include "diagorbit/error.hpp"
#include "diagorbit/lattice/lattice.hpp"

namespace diagorbit {

ReducedBasis reduce(const LatticeBasis& x, double delta) {
  LLLResult r = lll_rows(x.matrix().transpose(), delta);
  IntMatrix u = r.transform.transpose();
  return {x.change_basis(u), u};
}

BigReal vector_length(const LatticeBasis& x, const std::vector<Integer>& c, int prec) {
  std::vector<BigReal> v = x.point(c, prec);
  return norm2(v);
}

BigReal basis_distance(const LatticeBasis& a, const LatticeBasis& b) {
  return frobenius_norm(a.matrix() - b.matrix());
}

namespace {

constexpr double kRadiusSlack = 1e-8;

// Schnorr-Euchner enumeration over a basis given by Gram-Schmidt data in double.
// Finds coefficient vectors whose entries at indices >= fixed are not all zero and whose
// squared length is within (1 + slack) of the minimum; the radius shrinks as leaves are found.
class Enumerator {
 public:
  Enumerator(std::vector<std::vector<double>> mu, std::vector<double> bb, std::size_t fixed, double radius2)
      : mu_(std::move(mu)), bb_(std::move(bb)), fixed_(fixed), n_(bb_.size()), r2_(radius2), x_(n_, 0) {}

  void run() { descend(n_ - 1, 0.0); }

  struct Leaf {
    std::vector<long> x;
    double norm2;
  };
  const std::vector<Leaf>& leaves() const { return leaves_; }
  double best() const { return best_; }
  long nodes() const { return nodes_; }

 private:
  void descend(std::size_t i, double above) {
    if (++nodes_ > kMaxEnumerationNodes) {
      throw Error(ErrorCode::kEnumerationLimit, "enumeration exceeded node budget");
    }
    if (i + 1 == fixed_) {
      bool top = false;
      for (std::size_t j = fixed_; j < n_; ++j) top = top || x_[j] != 0;
      if (!top) return;
    }
    double c = 0;
    for (std::size_t j = i + 1; j < n_; ++j) c -= static_cast<double>(x_[j]) * mu_[j][i];
    long x0 = std::lround(c);
    long up = x0, down = x0 - 1;
    while (true) {
      double du = std::abs(static_cast<double>(up) - c);
      double dd = std::abs(static_cast<double>(down) - c);
      long v;
      if (du <= dd) {
        v = up++;
      } else {
        v = down--;
      }
      double diff = static_cast<double>(v) - c;
      double l = above + diff * diff * bb_[i];
      if (l > r2_) break;
      x_[i] = v;
      if (i == 0) {
        leaf(l);
      } else {
        descend(i - 1, l);
      }
    }
    x_[i] = 0;
  }

  void leaf(double l) {
    if (fixed_ == 0 && std::all_of(x_.begin(), x_.end(), [](long v) { return v == 0; })) return;
    leaves_.push_back({x_, l});
    if (l < best_) {
      best_ = l;
      r2_ = std::min(r2_, l * (1 + kRadiusSlack) + 1e-300);
    }
  }

  std::vector<std::vector<double>> mu_;
  std::vector<double> bb_;
  std::size_t fixed_;
  std::size_t n_;
  double r2_;
  std::vector<long> x_;
  std::vector<Leaf> leaves_;
  double best_ = INFINITY;
  long nodes_ = 0;
};

// Sign normalization: first nonzero entry positive.
std::vector<Integer> sign_normalize(std::vector<Integer> c) {
  for (const auto& v : c) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& w : c) w = -w;
    break;
  }
  return c;
}

struct Candidate {
  std::vector<Integer> coeffs;  // input basis
  BigReal length;
};

// Shortest vectors of `basis` (columns; an adapted basis whose first `fixed` columns span
// a sublattice S) outside S, expressed through `to_input` in input coordinates.
Candidate enumerate_min(const LatticeBasis& basis, std::size_t fixed, const IntMatrix& to_input,
                        const LatticeBasis& input, long& nodes, BigReal& radius_used) {
  const std::size_t d = basis.dim();
  const int prec = basis.precision();
  RealMatrix rows = basis.matrix().transpose();
  RealMatrix mu;
  std::vector<BigReal> bb = gram_schmidt(rows, mu);
  // Scale so that double exponents stay tame.
  BigReal scale = bb[0];
  for (const auto& v : bb) scale = max(scale, v);
  std::vector<double> bbd(d);
  std::vector<std::vector<double>> mud(d, std::vector<double>(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    bbd[i] = (bb[i] / scale).to_double();
    if (!(bbd[i] > 0)) throw Error(ErrorCode::kSingularBasis, "degenerate Gram-Schmidt data");
    for (std::size_t j = 0; j < i; ++j) mud[i][j] = mu(i, j).to_double();
  }
  // Initial radius: shortest basis column outside S.
  BigReal r2 = BigReal::infinity(1, prec);
  for (std::size_t j = fixed; j < d; ++j) r2 = min(r2, dot(rows.row(j), rows.row(j)));
  double r2d = (r2 / scale).to_double() * (1 + kRadiusSlack) * (1 + 1e-12);
  Enumerator e(mud, bbd, fixed, r2d);
  e.run();
  nodes += e.nodes();
  radius_used = sqrt(BigReal(r2d, 64) * scale);
  if (e.leaves().empty()) throw Error(ErrorCode::kPrecisionExhausted, "enumeration found no vector");

  double cutoff = e.best() * (1 + kRadiusSlack) * (1 + 1e-12);
  std::vector<Candidate> cands;
  for (const auto& leaf : e.leaves()) {
    if (leaf.norm2 > cutoff) continue;
    std::vector<Integer> local(d);
    for (std::size_t i = 0; i < d; ++i) local[i] = leaf.x[i];
    std::vector<Integer> in(d, Integer(0));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) in[i] += to_input(i, j) * local[j];
    in = sign_normalize(in);
    bool dup = false;
    for (const auto& c : cands) dup = dup || c.coeffs == in;
    if (dup) continue;
    cands.push_back({in, vector_length(input, in, prec)});
  }
  BigReal best = cands.front().length;
  for (const auto& c : cands) best = min(best, c.length);
  BigReal tie = best * (1 + BigReal::pow2(-prec / 2, 64));
  const Candidate* pick = nullptr;
  for (const auto& c : cands) {
    if (c.length > tie) continue;
    if (!pick || std::lexicographical_compare(pick->coeffs.begin(), pick->coeffs.end(), c.coeffs.begin(),
                                              c.coeffs.end())) {
      pick = &c;
    }
  }
  return {pick->coeffs, best};
}

void check_dim(const LatticeBasis& x) {
  if (x.dim() > kMaxEnumerationDim) {
    throw Error(ErrorCode::kDimensionTooLarge, "enumeration supports d <= 6");
  }
}

}  // namespace

MinimaReport shortest_vector(const LatticeBasis& x) {
  check_dim(x);
  ReducedBasis r = reduce(x);
  MinimaReport rep;
  BigReal radius;
  Candidate c = enumerate_min(r.basis, 0, r.transform, x, rep.nodes, radius);
  rep.minima.push_back(c.length);
  rep.witnesses.push_back(c.coeffs);
  rep.radius = radius;
  return rep;
}

MinimaReport successive_minima(const LatticeBasis& x) {
  check_dim(x);
  const std::size_t d = x.dim();
  MinimaReport rep = shortest_vector(x);
  for (std::size_t k = 1; k < d; ++k) {
    // Primitive sublattice S spanned (over Q) by the witnesses so far.
    IntMatrix chosen(k, d);
    for (std::size_t i = 0; i < k; ++i) chosen.set_row(i, rep.witnesses[i]);
    IntMatrix perp = integer_kernel(chosen);        // (d-k) x d
    IntMatrix s = integer_kernel(perp);             // k x d, basis of S
    // Unimodular V with V s^T = [H; 0]; columns of V^{-1} adapt Z^d to S.
    IntMatrix v;
    hermite_normal_form(s.transpose(), v);
    RatMatrix vinv = inverse(to_rational(v));
    IntMatrix adapt = vinv.map([](const Rational& q) { return Integer(q.get_num()); });
    LatticeBasis y = x.change_basis(adapt);
    LLLResult red = lll_rows(y.matrix().transpose(), 0.99, k);
    IntMatrix u = red.transform.transpose();
    LatticeBasis z = y.change_basis(u);
    IntMatrix to_input = adapt * u;
    BigReal radius;
    Candidate c = enumerate_min(z, k, to_input, x, rep.nodes, radius);
    rep.minima.push_back(c.length);
    rep.witnesses.push_back(c.coeffs);
    rep.radius = radius;
  }
  return rep;
}

}  // namespace diagorbit
