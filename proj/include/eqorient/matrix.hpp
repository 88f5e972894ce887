#pragma once

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eqorient {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const T& x) { return x == 0; });
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix p(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
      }
    return p;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Kronecker product a ⊗ b.
  friend Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j) == 0) continue;
        for (std::size_t p = 0; p < b.rows_; ++p)
          for (std::size_t q = 0; q < b.cols_; ++q)
            k(i * b.rows_ + p, j * b.cols_ + q) = a(i, j) * b(p, q);
      }
    return k;
  }

  /// Block-diagonal sum a ⊕ b.
  friend Matrix direct_sum(const Matrix& a, const Matrix& b) {
    Matrix s(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) s(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j)
        s(a.rows_ + i, a.cols_ + j) = b(i, j);
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t r = 0; r < m.rows_; ++r) {
      if (r) os << "; ";
      for (std::size_t c = 0; c < m.cols_; ++c) {
        if (c) os << ' ';
        os << m(r, c);
      }
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

/// Reduce every entry into [0, modulus). A zero modulus leaves `m` untouched.
inline IntMatrix reduce_mod(IntMatrix m, const Integer& modulus) {
  if (modulus == 0) return m;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer v = m(r, c) % modulus;
      if (v < 0) v += modulus;
      m(r, c) = v;
    }
  return m;
}

/// Inverse of a square rational matrix by Gauss-Jordan; nullopt-like empty
/// matrix when singular.
inline RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) return RationalMatrix();
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Rational p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const Rational f = a(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace eqorient
