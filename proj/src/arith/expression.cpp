#include "diagorbit/arith/expression.hpp"

#include <cctype>

#include "diagorbit/arith/lll.hpp"
#include "diagorbit/error.hpp"

namespace diagorbit {

namespace {

std::string normalize(std::string_view text) {
  std::string s(text);
  auto replace = [&s](const std::string& from, const std::string& to) {
    for (std::size_t p = s.find(from); p != std::string::npos; p = s.find(from, p + to.size())) s.replace(p, from.size(), to);
  };
  replace("−", "-");
  replace("·", "*");
  replace("⋅", "*");
  return s;
}

bool same_field(const RealField& a, const RealField& b) {
  return a.minpoly == b.minpoly && a.root.lo() == b.root.lo() && a.root.hi() == b.root.hi();
}

// Value of a polynomial with integer coefficients at y in Q[t]/(f).
Coords eval_in_field(const IntPoly& g, const Coords& y, const IntPoly& f) {
  const int n = f.degree();
  Coords acc = nf_const(n, 0);
  for (int i = g.degree(); i >= 0; --i) {
    acc = nf_mul(f, acc, y);
    acc[0] += Rational(g[i]);
  }
  return acc;
}

struct Value {
  Rational q;
  std::shared_ptr<const RealField> field;
  Coords c;
  bool algebraic() const { return field != nullptr; }
};

}  // namespace

std::optional<Coords> embed_generator(const RealField& source, const RealField& target, int prec) {
  const int n = target.degree(), m = source.degree();
  if (m < 1 || n % m != 0) return std::nullopt;
  if (same_field(source, target)) return nf_gen(n);
  for (int bits : {prec, 2 * prec}) {
    std::vector<BigReal> x;
    BigReal theta = target.root.real_value(bits + 64), pw(1L, bits + 64);
    for (int i = 0; i < n; ++i) {
      x.push_back(pw);
      pw *= theta;
    }
    BigReal eta = source.root.real_value(bits + 64);
    x.push_back(eta);
    IntMatrix rel = integer_relation_candidates(x, bits / 2);
    for (std::size_t r = 0; r < rel.rows(); ++r) {
      const Integer& last = rel(r, static_cast<std::size_t>(n));
      if (last == 0) continue;
      Coords y(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = make_rational(-rel(r, static_cast<std::size_t>(i)), last);
      if (!nf_is_zero(eval_in_field(source.minpoly, y, target.minpoly))) continue;
      BigReal val = ExactReal(std::make_shared<const RealField>(target), y).eval(bits);
      if (abs(val - eta) <= BigReal::pow2(-bits / 2, 64) * (1 + abs(eta))) return y;
    }
  }
  return std::nullopt;
}

std::optional<ExactReal> move_to_field(const ExactReal& x, const std::shared_ptr<const RealField>& target, int prec) {
  if (auto q = x.as_rational()) return ExactReal(target, nf_const(target->degree(), *q));
  if (x.kind() != ExactReal::Kind::kAlgebraic) return std::nullopt;
  if (x.field() == target || same_field(*x.field(), *target)) return ExactReal(target, x.coords());
  std::optional<Coords> g = embed_generator(*x.field(), *target, prec);
  if (!g) return std::nullopt;
  Coords acc = nf_const(target->degree(), 0), pw = nf_const(target->degree(), 1);
  for (const Rational& c : x.coords()) {
    acc = nf_add(acc, nf_scale(pw, c));
    pw = nf_mul(target->minpoly, pw, *g);
  }
  return ExactReal(target, acc);
}

class ExpressionReader {
 public:
  ExpressionReader(ExpressionParser& owner, std::string text) : owner_(owner), s_(std::move(text)) {}

  Value run() {
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kInvalidInput, "cannot parse '" + s_ + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool keyword(const std::string& k) {
    skip();
    if (s_.compare(pos_, k.size(), k) != 0) return false;
    pos_ += k.size();
    return true;
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (eat('+')) {
        v = combine(v, term(), '+');
      } else if (eat('-')) {
        v = combine(v, term(), '-');
      } else {
        return v;
      }
    }
  }
  Value term() {
    Value v = factor();
    while (true) {
      if (eat('*')) {
        v = combine(v, factor(), '*');
      } else if (eat('/')) {
        v = combine(v, factor(), '/');
      } else {
        return v;
      }
    }
  }
  Value factor() {
    if (eat('-')) return combine(Value{Rational(0), nullptr, {}}, factor(), '-');
    if (eat('+')) return factor();
    if (eat('(')) {
      Value v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (keyword("sqrt")) return radical(2);
    if (keyword("cbrt")) return radical(3);
    if (keyword("root")) return root_atom();
    return Value{number(), nullptr, {}};
  }

  Rational number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    if (start == pos_) fail("expected a number");
    std::string tok = s_.substr(start, pos_ - start);
    std::string mant = tok, expo = "0";
    if (auto e = tok.find_first_of("eE"); e != std::string::npos) {
      mant = tok.substr(0, e);
      expo = tok.substr(e + 1);
    }
    std::size_t dot = mant.find('.');
    Integer den = 1;
    if (dot != std::string::npos) {
      std::string frac = mant.substr(dot + 1);
      if (frac.find('.') != std::string::npos) fail("malformed number " + tok);
      mant = mant.substr(0, dot) + frac;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    }
    if (mant.empty()) fail("malformed number " + tok);
    Integer num(mant, 10);
    long e = std::stol(expo);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
    if (e >= 0) {
      num *= p;
    } else {
      den *= p;
    }
    return make_rational(num, den);
  }

  Integer integer_arg() {
    bool neg = eat('-');
    Rational r = number();
    if (r.get_den() != 1) fail("integer expected");
    return neg ? Integer(-r.get_num()) : Integer(r.get_num());
  }

  Value radical(int k) {
    bool paren = eat('(');
    Integer n = integer_arg();
    if (paren && !eat(')')) fail("missing ')'");
    if (n <= 0 && k == 2) fail("sqrt needs a positive integer");
    Integer r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k)) != 0) return Value{Rational(r), nullptr, {}};
    std::vector<Integer> desc(static_cast<std::size_t>(k) + 1, Integer(0));
    desc[0] = 1;
    desc.back() = -n;
    IntPoly f = IntPoly::from_descending(desc);
    int index = k == 2 ? 1 : 0;
    std::string key = (k == 2 ? "sqrt" : "cbrt") + n.get_str();
    auto field = owner_.atom_field(key, f, index);
    return Value{Rational(0), field, nf_gen(field->degree())};
  }

  Value root_atom() {
    if (!eat('(')) fail("root needs '('");
    std::vector<Integer> args{integer_arg()};
    while (eat(',')) args.push_back(integer_arg());
    if (!eat(')')) fail("missing ')'");
    if (args.size() < 3) fail("root needs a polynomial of degree >= 1 and an index");
    long index = args.back().get_si();
    args.pop_back();
    IntPoly f = IntPoly::from_descending(args);
    std::string key = "root:" + f.to_string() + ":" + std::to_string(index);
    auto field = owner_.atom_field(key, f, static_cast<int>(index));
    if (field->degree() == 1) fail("root of a linear polynomial; write the rational directly");
    return Value{Rational(0), field, nf_gen(field->degree())};
  }

  Value lift(const Value& v, const std::shared_ptr<const RealField>& f) {
    if (!v.algebraic()) return Value{Rational(0), f, nf_const(f->degree(), v.q)};
    if (v.field == f) return v;
    auto moved = move_to_field(ExactReal(v.field, v.c), f, owner_.prec_);
    if (!moved) fail("atoms lie in different number fields");
    return Value{Rational(0), f, moved->coords()};
  }

  Value combine(Value a, Value b, char op) {
    if (!a.algebraic() && !b.algebraic()) {
      switch (op) {
        case '+': return Value{a.q + b.q, nullptr, {}};
        case '-': return Value{a.q - b.q, nullptr, {}};
        case '*': return Value{a.q * b.q, nullptr, {}};
        default:
          if (b.q == 0) fail("division by zero");
          return Value{Rational(a.q / b.q), nullptr, {}};
      }
    }
    std::shared_ptr<const RealField> f;
    if (!a.algebraic()) {
      f = b.field;
    } else if (!b.algebraic()) {
      f = a.field;
    } else {
      f = a.field->degree() >= b.field->degree() ? a.field : b.field;
    }
    a = lift(a, f);
    b = lift(b, f);
    Coords c;
    switch (op) {
      case '+': c = nf_add(a.c, b.c); break;
      case '-': c = nf_sub(a.c, b.c); break;
      case '*': c = nf_mul(f->minpoly, a.c, b.c); break;
      default:
        if (nf_is_zero(b.c)) fail("division by zero");
        c = nf_mul(f->minpoly, a.c, nf_inv(f->minpoly, b.c));
    }
    return Value{Rational(0), f, c};
  }

  ExpressionParser& owner_;
  std::string s_;
  std::size_t pos_ = 0;
};

std::shared_ptr<const RealField> ExpressionParser::atom_field(const std::string& key, const IntPoly& minpoly, int index) {
  if (auto it = atoms_.find(key); it != atoms_.end()) return it->second;
  PolyRoots roots = poly_roots(minpoly, prec_);
  if (index < 0 || index >= roots.r) {
    throw Error(ErrorCode::kInvalidInput, "real root index out of range for " + minpoly.to_string());
  }
  auto field = std::make_shared<const RealField>(RealField{minpoly, roots.handles[static_cast<std::size_t>(index)]});
  atoms_[key] = field;
  return field;
}

ExactReal ExpressionParser::parse(std::string_view text) {
  Value v = ExpressionReader(*this, normalize(text)).run();
  if (!v.algebraic()) return ExactReal(v.q);
  ExactReal x(v.field, v.c);
  if (auto q = x.as_rational()) return ExactReal(*q);
  return x;
}

std::vector<ExactReal> parse_exact_list(std::string_view text, ExpressionParser& parser) {
  std::vector<ExactReal> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.push_back(parser.parse(text.substr(start, i - start)));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return out;
}

}  // namespace diagorbit
