#include "diagorbit/arith/big_complex.hpp"

namespace diagorbit {

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigComplex& o) { return *this = *this / o; }

std::string BigComplex::to_string(int digits) const {
  std::string s = re.to_string(digits);
  if (im.sign() < 0) {
    s += " - " + (-im).to_string(digits) + "i";
  } else {
    s += " + " + im.to_string(digits) + "i";
  }
  return s;
}

BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  BigReal den = b.norm_sq();
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

BigComplex operator*(const BigComplex& a, const BigReal& b) { return {a.re * b, a.im * b}; }

BigComplex exp(const BigComplex& z) { return polar(exp(z.re), z.im); }

BigComplex polar(const BigReal& r, const BigReal& theta) { return {r * cos(theta), r * sin(theta)}; }

}  // namespace diagorbit
