#include "diagorbit/arith/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diagorbit/error.hpp"

namespace diagorbit {

// ---- IntPoly ----

IntPoly::IntPoly(std::vector<Integer> ascending) : c_(std::move(ascending)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  if (c_.empty()) throw Error(ErrorCode::kInvalidInput, "zero polynomial");
}

IntPoly IntPoly::from_descending(const std::vector<Integer>& descending) {
  return IntPoly(std::vector<Integer>(descending.rbegin(), descending.rend()));
}

std::vector<Integer> IntPoly::descending() const { return {c_.rbegin(), c_.rend()}; }

Rational IntPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigReal IntPoly::eval(const BigReal& x) const {
  BigReal acc = BigReal::zero(x.precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigComplex IntPoly::eval(const BigComplex& x) const {
  int prec = x.precision();
  BigComplex acc(BigReal::zero(prec), BigReal::zero(prec));
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * x;
    acc.re = acc.re + *it;
  }
  return acc;
}

std::complex<double> IntPoly::eval(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() == 1) throw Error(ErrorCode::kInvalidInput, "derivative of a constant");
  std::vector<Integer> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return IntPoly(d);
}

Integer IntPoly::height() const {
  Integer h = 0;
  for (const auto& v : c_) h = std::max(h, Integer(abs(v)));
  return h;
}

std::string IntPoly::to_string(char var) const {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    Integer m = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (m != 1 || i == 0) os << m.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

// ---- RatPoly ----

RatPoly::RatPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }

RatPoly::RatPoly(const IntPoly& p) {
  for (const auto& v : p.coeffs()) c_.emplace_back(v);
  trim();
}

RatPoly RatPoly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(k) + 1, Rational(0));
  v.back() = c;
  return RatPoly(v);
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

BigReal RatPoly::eval(const BigReal& x) const {
  BigReal acc = BigReal::zero(x.precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + BigReal(*it, x.precision());
  return acc;
}

RatPoly RatPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return RatPoly(d);
}

RatPoly RatPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (1 / lead());
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return RatPoly(r);
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return RatPoly(r);
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return RatPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RatPoly(r);
}

RatPoly RatPoly::operator*(const Rational& s) const {
  std::vector<Rational> r = c_;
  for (auto& v : r) v *= s;
  return RatPoly(r);
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
  if (b.is_zero()) throw Error(ErrorCode::kInvalidInput, "polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) {
    quot = RatPoly();
    rem = a;
    return;
  }
  std::vector<Rational> q(static_cast<std::size_t>(dq) + 1, Rational(0));
  Rational inv = 1 / b.lead();
  for (int k = dq; k >= 0; --k) {
    Rational f = r[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  quot = RatPoly(q);
  rem = RatPoly(r);
}

RatPoly operator%(const RatPoly& a, const RatPoly& b) {
  RatPoly q, r;
  divmod(a, b, q, r);
  return r;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    RatPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

RatPoly ext_gcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0 = RatPoly::constant(1), s1;
  RatPoly t0, t1 = RatPoly::constant(1);
  while (!r1.is_zero()) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s2 = s0 - q * s1;
    RatPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = RatPoly();
    t = RatPoly();
    return r0;
  }
  Rational inv = 1 / r0.lead();
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

bool is_squarefree(const IntPoly& p) {
  if (p.degree() <= 1) return true;
  RatPoly g = gcd(RatPoly(p), RatPoly(p.derivative()));
  return g.degree() == 0;
}

// ---- Sturm sequences ----

namespace {

std::vector<RatPoly> sturm_sequence(const IntPoly& p) {
  std::vector<RatPoly> seq{RatPoly(p), RatPoly(p).derivative()};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    RatPoly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(r * Rational(-1));
  }
  return seq;
}

int sign_changes(const std::vector<RatPoly>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : seq) {
    int s = sgn(q.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
  auto seq = sturm_sequence(p);
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

Rational root_bound(const IntPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, make_rational(abs(p[i]), abs(p.lead())));
  return m + 1;
}

int count_real_roots(const IntPoly& p) {
  Rational b = root_bound(p);
  return sturm_count(p, -b, b);
}

// ---- RootHandle ----

struct RootHandle::Impl {
  IntPoly p;
  IntPoly dp;
  bool real = true;
  Rational lo, hi;
  BigComplex seed;
  mutable std::mutex mu;
  mutable std::map<int, BigComplex> cache;
};

RootHandle RootHandle::real_root(IntPoly p, Rational lo, Rational hi) {
  RootHandle h;
  h.impl_ = std::make_shared<Impl>();
  h.impl_->dp = p.degree() >= 1 ? p.derivative() : p;
  h.impl_->p = std::move(p);
  h.impl_->real = true;
  h.impl_->lo = std::move(lo);
  h.impl_->hi = std::move(hi);
  return h;
}

RootHandle RootHandle::complex_root(IntPoly p, BigComplex seed) {
  RootHandle h;
  h.impl_ = std::make_shared<Impl>();
  h.impl_->dp = p.derivative();
  h.impl_->p = std::move(p);
  h.impl_->real = false;
  h.impl_->seed = std::move(seed);
  return h;
}

bool RootHandle::is_real() const { return impl_->real; }
const IntPoly& RootHandle::poly() const { return impl_->p; }
const Rational& RootHandle::lo() const { return impl_->lo; }
const Rational& RootHandle::hi() const { return impl_->hi; }

namespace {

BigReal refine_real(const IntPoly& p, const IntPoly& dp, const Rational& lo, const Rational& hi,
                    int prec) {
  const int wp = prec + 32;
  if (lo == hi) return BigReal(lo, prec);
  if (p.degree() == 1) return BigReal(make_rational(-p[0], p[1]), prec);
  BigReal a(lo, wp), b(hi, wp);
  BigReal x = (a + b) / 2L;
  bool ok = true;
  for (int it = 0; it < 400; ++it) {
    BigReal fx = p.eval(x);
    BigReal dfx = dp.eval(x);
    if (dfx.is_zero()) {
      ok = false;
      break;
    }
    BigReal dx = fx / dfx;
    x -= dx;
    if (x < a || x > b) {
      ok = false;
      break;
    }
    if (dx.is_zero() || abs(dx) <= abs(x) * BigReal::pow2(4 - wp, 64)) break;
  }
  int sa = p.eval(a).sign();
  if (ok) {
    BigReal eps = abs(x) * BigReal::pow2(-(prec + 4), 64);
    BigReal l = x - eps, r = x + eps;
    int sl = p.eval(l).sign(), sr = p.eval(r).sign();
    if (sl != 0 && sr != 0 && sl != sr) return x.with_precision(prec);
  }
  // Bisection fallback: always converges on an isolating interval.
  for (int it = 0; it < wp + 8; ++it) {
    BigReal m = (a + b) / 2L;
    int sm = p.eval(m).sign();
    if (sm == 0) return m.with_precision(prec);
    if (sm == sa) {
      a = m;
    } else {
      b = m;
    }
  }
  return ((a + b) / 2L).with_precision(prec);
}

BigComplex newton_complex(const IntPoly& p, const IntPoly& dp, BigComplex z, int prec) {
  const int wp = prec + 32;
  int level = std::min(std::max(64, z.precision()), wp);
  while (true) {
    z = BigComplex(z.re.with_precision(level), z.im.with_precision(level));
    for (int it = 0; it < 60; ++it) {
      BigComplex f = p.eval(z);
      BigComplex df = dp.eval(z);
      if (df.re.is_zero() && df.im.is_zero()) break;
      BigComplex dz = f / df;
      z -= dz;
      BigReal tol = z.abs() * BigReal::pow2(6 - level, 64);
      if (dz.abs() <= tol) break;
    }
    if (level >= wp) break;
    level = std::min(2 * level, wp);
  }
  return BigComplex(z.re.with_precision(prec), z.im.with_precision(prec));
}

}  // namespace

BigComplex RootHandle::value(int prec) const {
  std::unique_lock<std::mutex> lock(impl_->mu);
  auto it = impl_->cache.find(prec);
  if (it != impl_->cache.end()) return it->second;
  BigComplex start = impl_->seed;
  if (!impl_->real) {
    auto below = impl_->cache.lower_bound(prec);
    if (below != impl_->cache.begin()) start = std::prev(below)->second;
  }
  lock.unlock();
  BigComplex v;
  if (impl_->real) {
    v = BigComplex(refine_real(impl_->p, impl_->dp, impl_->lo, impl_->hi, prec), BigReal::zero(prec));
  } else {
    v = newton_complex(impl_->p, impl_->dp, start, prec);
  }
  lock.lock();
  impl_->cache.emplace(prec, v);
  return v;
}

BigReal RootHandle::real_value(int prec) const {
  if (!is_real()) throw Error(ErrorCode::kInvalidInput, "root is not real");
  return value(prec).re;
}

// ---- poly_roots ----

namespace {

void isolate(const std::vector<RatPoly>& seq, const IntPoly& p, const Rational& lo, const Rational& hi,
             int vlo, int vhi, std::vector<std::pair<Rational, Rational>>& out) {
  int n = vlo - vhi;
  if (n == 0) return;
  if (n == 1) {
    out.emplace_back(lo, hi);
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (p.eval(mid) == 0) {
    throw Error(ErrorCode::kRationalRootFound, "rational root " + mid.get_str());
  }
  int vmid = sign_changes(seq, mid);
  isolate(seq, p, lo, mid, vlo, vmid, out);
  isolate(seq, p, mid, hi, vmid, vhi, out);
}

std::vector<std::complex<double>> aberth(const IntPoly& p) {
  const int n = p.degree();
  double lead = p.lead().get_d();
  // Initial radius from the Cauchy bound, points on a slightly rotated circle.
  double bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(p[i].get_d() / lead));
  double radius = std::min(1.0 + bound, 1e6);
  radius = std::max(radius * 0.5, 0.5);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * k / n + 0.4;
    z[static_cast<std::size_t>(k)] = std::polar(radius, ang);
  }
  IntPoly dp = p.derivative();
  for (int iter = 0; iter < 2000; ++iter) {
    double maxstep = 0;
    for (int k = 0; k < n; ++k) {
      auto& zk = z[static_cast<std::size_t>(k)];
      std::complex<double> f = p.eval(zk);
      std::complex<double> df = dp.eval(zk);
      if (std::abs(f) == 0) continue;
      std::complex<double> ratio = f / df;
      std::complex<double> sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
      }
      std::complex<double> step = ratio / (1.0 - ratio * sum);
      zk -= step;
      maxstep = std::max(maxstep, std::abs(step) / std::max(1.0, std::abs(zk)));
    }
    if (maxstep < 1e-15) break;
  }
  return z;
}

bool complex_less(const BigComplex& a, const BigComplex& b) {
  if (a.re != b.re) return a.re < b.re;
  return a.im < b.im;
}

}  // namespace

PolyRoots poly_roots(const IntPoly& p, int prec) {
  const int d = p.degree();
  if (d < 1) throw Error(ErrorCode::kInvalidInput, "polynomial must have degree >= 1");
  if (!is_squarefree(p)) throw Error(ErrorCode::kNotSquarefree, "gcd(p, p') is not constant: " + p.to_string());
  PolyRoots out;
  if (d == 1) {
    Rational root(-p[0], p[1]);
    root.canonicalize();
    out.handles.push_back(RootHandle::real_root(p, root, root));
    out.values.emplace_back(BigReal(root, prec));
    out.r = 1;
    return out;
  }
  if (p[0] == 0) throw Error(ErrorCode::kRationalRootFound, "rational root 0");

  auto seq = sturm_sequence(p);
  Rational b = root_bound(p);
  std::vector<std::pair<Rational, Rational>> intervals;
  isolate(seq, p, -b, b, sign_changes(seq, -b), sign_changes(seq, b), intervals);
  // Shrink each isolating interval to width below 2^-40 by exact bisection.
  const Rational width_goal(Integer(1), Integer(1) << 40);
  for (auto& [lo, hi] : intervals) {
    int slo = sgn(p.eval(lo));
    while (hi - lo > width_goal) {
      Rational mid = (lo + hi) / 2;
      int sm = sgn(p.eval(mid));
      if (sm == 0) throw Error(ErrorCode::kRationalRootFound, "rational root " + mid.get_str());
      if (sm == slo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  out.r = static_cast<int>(intervals.size());
  if ((d - out.r) % 2 != 0) throw Error(ErrorCode::kPrecisionExhausted, "root count parity mismatch");
  out.s = (d - out.r) / 2;

  for (const auto& [lo, hi] : intervals) {
    RootHandle h = RootHandle::real_root(p, lo, hi);
    BigReal x = h.real_value(prec);
    // A rational root a/b has b | lead, so it equals round(lead*x)/lead.
    Integer num = (BigReal(p.lead(), prec + 64) * x.with_precision(prec + 64)).round_integer();
    Rational cand(num, p.lead());
    cand.canonicalize();
    if (p.eval(cand) == 0) throw Error(ErrorCode::kRationalRootFound, "rational root " + cand.get_str());
    out.handles.push_back(h);
    out.values.emplace_back(x, BigReal::zero(prec));
  }

  if (out.s > 0) {
    auto approx = aberth(p);
    std::sort(approx.begin(), approx.end(), [](auto a, auto c) { return std::abs(a.imag()) > std::abs(c.imag()); });
    std::vector<std::pair<BigComplex, RootHandle>> cpx;
    for (int k = 0; k < 2 * out.s; ++k) {
      auto z = approx[static_cast<std::size_t>(k)];
      if (z.imag() <= 0) continue;
      BigComplex seed(BigReal(z.real(), 64), BigReal(z.imag(), 64));
      RootHandle h = RootHandle::complex_root(p, seed);
      BigComplex v = h.value(prec);
      if (v.im.sign() <= 0) throw Error(ErrorCode::kPrecisionExhausted, "complex root collapsed to real axis");
      cpx.emplace_back(v, h);
    }
    if (static_cast<int>(cpx.size()) != out.s) {
      throw Error(ErrorCode::kPrecisionExhausted, "could not separate complex conjugate pairs");
    }
    std::sort(cpx.begin(), cpx.end(), [](const auto& a, const auto& c) { return complex_less(a.first, c.first); });
    for (std::size_t k = 1; k < cpx.size(); ++k) {
      BigComplex diff = cpx[k].first - cpx[k - 1].first;
      if (diff.abs() < BigReal::pow2(-prec / 2, 64)) {
        throw Error(ErrorCode::kPrecisionExhausted, "Newton refinement converged to a repeated root");
      }
    }
    for (auto& [v, h] : cpx) {
      out.values.push_back(v);
      out.handles.push_back(h);
    }
  }

  // Certify |p(root)| < 2^(-P/2) * scale.
  BigReal height(p.height(), prec);
  for (const auto& v : out.values) {
    BigReal r = max(BigReal(1L, prec), v.abs());
    BigReal scale = height * pow(r, static_cast<long>(d));
    BigReal res = p.eval(BigComplex(v.re.with_precision(prec + 32), v.im.with_precision(prec + 32))).abs();
    if (res >= scale * BigReal::pow2(-prec / 2, 64)) {
      throw Error(ErrorCode::kPrecisionExhausted, "root residual exceeds certification bound");
    }
  }
  return out;
}

std::vector<BigReal> rebuild_monic(const PolyRoots& roots, int prec) {
  std::vector<BigComplex> coef{BigComplex(BigReal(1L, prec), BigReal::zero(prec))};
  auto mul_linear = [&](const BigComplex& z) {
    std::vector<BigComplex> next(coef.size() + 1, BigComplex(BigReal::zero(prec), BigReal::zero(prec)));
    for (std::size_t i = 0; i < coef.size(); ++i) {
      next[i + 1] += coef[i];
      next[i] -= coef[i] * z;
    }
    coef = std::move(next);
  };
  for (const auto& v : roots.values) {
    BigComplex z(v.re.with_precision(prec), v.im.with_precision(prec));
    mul_linear(z);
    if (!v.im.is_zero()) mul_linear(z.conj());
  }
  std::vector<BigReal> out;
  for (const auto& c : coef) out.push_back(c.re);
  return out;
}

}  // namespace diagorbit
