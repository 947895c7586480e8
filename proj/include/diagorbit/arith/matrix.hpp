#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "diagorbit/arith/big_real.hpp"
#include "diagorbit/error.hpp"

namespace diagorbit {

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }
  void set_col(std::size_t j, const std::vector<T>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <typename F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<T>()))> {
    Matrix<decltype(f(std::declval<T>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::kDimensionMismatch, "matrix product shape");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        T acc = (*this)(i, 0) * o(0, j);
        for (std::size_t k = 1; k < cols_; ++k) acc += (*this)(i, k) * o(k, j);
        r(i, j) = acc;
      }
    return r;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (cols_ != v.size()) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector shape");
    std::vector<T> r;
    r.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc = (*this)(i, 0) * v[0];
      for (std::size_t k = 1; k < cols_; ++k) acc += (*this)(i, k) * v[k];
      r.push_back(acc);
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    check_same(o);
    Matrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same(o);
    Matrix r(*this);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
    return r;
  }
  Matrix scaled(const T& s) const {
    Matrix r(*this);
    for (auto& v : r.data_) v *= s;
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorCode::kDimensionMismatch, "matrix sum shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<BigReal>;
using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;

RealMatrix to_real(const RatMatrix& m, int prec);
RealMatrix to_real(const IntMatrix& m, int prec);
RealMatrix with_precision(const RealMatrix& m, int prec);
RatMatrix to_rational(const IntMatrix& m);

// Partial-pivot elimination at the precision of the entries.
BigReal determinant(const RealMatrix& m);
// Throws SingularBasis when a pivot vanishes.
RealMatrix inverse(const RealMatrix& m);
BigReal frobenius_norm(const RealMatrix& m);
BigReal max_abs_entry(const RealMatrix& m);
BigReal dot(const std::vector<BigReal>& a, const std::vector<BigReal>& b);
BigReal norm2(const std::vector<BigReal>& v);

Rational determinant(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
// Throws SingularBasis for a singular matrix.
RatMatrix inverse(const RatMatrix& m);
// Solves m x = b for square nonsingular m.
std::vector<Rational> solve(const RatMatrix& m, const std::vector<Rational>& b);
// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

// Fraction-free Bareiss elimination.
Integer determinant(const IntMatrix& m);

int matrix_precision(const RealMatrix& m);

}  // namespace diagorbit
