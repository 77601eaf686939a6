#pragma once

// Exact scalar types and the small dense linear algebra the rest of the
// library is built on.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hyperlat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense row-major matrix. Only what the library needs; not a general
/// purpose linear algebra type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < m.rows_; ++i)
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i].at(j);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& other) const {
    Matrix r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < other.cols_; ++j) r(i, j) += a * other(k, j);
      }
    return r;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    std::vector<T> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix operator-(const Matrix& other) const {
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= other.data_[i];
    return r;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator<(const Matrix& other) const {
    if (rows_ != other.rows_) return rows_ < other.rows_;
    if (cols_ != other.cols_) return cols_ < other.cols_;
    return data_ < other.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);

Integer gcd_of(const IntVector& v);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

/// Divides out the content. Zero vectors are returned unchanged.
IntVector primitive(const IntVector& v);
/// Clears denominators, then divides out the content. Direction is kept.
IntVector primitive(const RatVector& v);

/// Sup norm.
Integer height(const IntVector& v);

/// Flips sign so the first nonzero coordinate is positive.
IntVector sign_normalized(IntVector v);

/// Ordering used to pick a single witness from a set of vectors: smallest
/// height, then fewest nonzero coordinates, then support on earlier basis
/// vectors, then plain lexicographic order.
bool simpler_vector(const IntVector& a, const IntVector& b);
/// Smaller height first, then lexicographic.
bool height_less(const IntVector& a, const IntVector& b);

/// "(a,b,c)"
std::string vector_string(const IntVector& v);

Integer determinant(const IntMatrix& m);  // Bareiss, exact
std::optional<RatMatrix> inverse(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);
/// Basis of {x : m x = 0}, in reduced echelon order (deterministic).
std::vector<RatVector> kernel(const RatMatrix& m);

Integer pow_int(const Integer& base, unsigned exp);
Integer isqrt(const Integer& n);  // floor sqrt, n >= 0
bool is_square(const Integer& n);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);
double to_double(const Rational& v);

/// Narrow to int64, nullopt when out of range.
std::optional<std::int64_t> to_int64(const Integer& v);

}  // namespace hyperlat
