#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "diagorbit/arith/big_real.hpp"

namespace diagorbit {

struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex() = default;
  BigComplex(BigReal r) : re(std::move(r)), im(BigReal::zero(re.precision())) {}  // NOLINT
  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

  int precision() const { return std::max(re.precision(), im.precision()); }
  bool is_real() const { return im.is_zero(); }
  BigComplex conj() const { return {re, -im}; }
  BigReal norm_sq() const { return re * re + im * im; }
  BigReal abs() const { return sqrt(norm_sq()); }
  BigReal arg() const { return atan2(im, re); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);
  BigComplex operator-() const { return {-re, -im}; }

  std::string to_string(int digits = 20) const;
};

BigComplex operator+(BigComplex a, const BigComplex& b);
BigComplex operator-(BigComplex a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigReal& b);

BigComplex exp(const BigComplex& z);
BigComplex polar(const BigReal& r, const BigReal& theta);

}  // namespace diagorbit
