#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latnab/errors.hpp"

namespace latnab {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p" or "p/q" with optional sign; result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// num/den in lowest terms; den must be nonzero.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}
inline Rational ratio(long num, long den) { return ratio(Integer(num), Integer(den)); }

Integer lcm(const Integer& a, const Integer& b);
Integer denominator_lcm(std::span<const Rational> values);
bool is_integer(const Rational& q);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DomainError("matrix data has wrong length");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return Matrix();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("inconsistent row lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<T> row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;
using RationalVector = std::vector<Rational>;

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
RationalMatrix scaled(const RationalMatrix& m, const Rational& factor);
// Row vector times matrix.
RationalVector row_times(std::span<const Rational> v, const RationalMatrix& m);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);

RationalMatrix to_rational(const IntegerMatrix& m);
// M = N / den with den the lcm of all entry denominators.
std::pair<IntegerMatrix, Integer> clear_denominators(const RationalMatrix& m);
bool is_symmetric(const RationalMatrix& m);

Rational det(const RationalMatrix& m);
Integer det(const IntegerMatrix& m);
// Solves M x = v.
RationalVector solve(const RationalMatrix& m, std::span<const Rational> v);
RationalMatrix inverse(const RationalMatrix& m);
std::size_t rank(const RationalMatrix& m);
std::size_t rank(const IntegerMatrix& m);

// Row-style Hermite normal form H = U M: echelon, positive pivots,
// entries above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntegerMatrix h;
  IntegerMatrix u;
};
HermiteForm hnf(const IntegerMatrix& m);
// Same normal form for an arbitrary generating set; zero rows dropped.
IntegerMatrix hnf_of_generators(const IntegerMatrix& generators);
bool is_hnf(const IntegerMatrix& h);

struct SmithForm {
  IntegerMatrix d;
  IntegerMatrix s;
  IntegerMatrix t;
  std::vector<Integer> invariant_factors() const;
};
// D = S M T with diagonal d1 | d2 | ... and S, T unimodular.
SmithForm snf(const IntegerMatrix& m);

}  // namespace latnab
