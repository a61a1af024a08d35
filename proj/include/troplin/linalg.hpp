#pragma once

// Exact integer and rational linear algebra. Nothing in the library touches
// floating point; every quantity is either an Integer or a Rational.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "troplin/error.hpp"

namespace troplin {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Accepts "p", "p/q" and finite decimals such as "-2.5". Throws ParseError.
Rational parse_rational(std::string_view text);

Integer floor(const Rational& r);
/// r reduced into [0, modulus). modulus must be positive.
Rational mod(const Rational& r, const Rational& modulus);

RatVector to_rational(std::span<const Integer> v);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols = 0) {
    Matrix m(rows.size(), rows.empty() ? cols : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_)
        throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_)
      throw Error(ErrorCode::DimensionMismatch, "row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_)
      throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T acc(0);
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(ErrorCode::DimensionMismatch, "matrix product mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);

/// Row-style Hermite normal form: U unimodular, H = U * M, H in row echelon
/// form with positive pivots and every entry above a pivot in [0, pivot).
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// Saturated Z-basis of {x in Z^n : M x = 0}, returned in Hermite normal form.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

/// Q-basis of {x in Q^n : M x = 0}, one vector per free column of the RREF.
std::vector<RatVector> rational_kernel(const RatMatrix& m);

struct RowEchelon {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
};

RowEchelon reduced_row_echelon(const RatMatrix& m);
std::size_t rank(const RatMatrix& m);

/// Rows of the result are a basis of the row span of `vectors`.
std::vector<RatVector> span_basis(std::span<const RatVector> vectors,
                                  std::size_t dim);

bool in_span(std::span<const RatVector> basis, std::span<const Rational> v);

Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);

/// Inverse of a square rational matrix; throws DegenerateLattice if singular.
RatMatrix inverse(const RatMatrix& m);
/// Inverse of a unimodular integer matrix; throws NotUnimodular otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

Integer content(std::span<const Integer> v);

struct PrimitivePart {
  IntVector direction;
  Integer multiple;
};

/// v = multiple * direction with gcd(direction) = 1. Throws ZeroVector.
PrimitivePart primitive_part(std::span<const Integer> v);

/// Primitive integer direction of a nonzero rational vector together with the
/// positive rational scalar s with v = s * direction.
struct RationalDirection {
  IntVector direction;
  Rational scale;
};
RationalDirection rational_direction(std::span<const Rational> v);

bool is_zero(std::span<const Rational> v);
bool is_zero(std::span<const Integer> v);

/// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

}  // namespace troplin
