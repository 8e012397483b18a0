#pragma once

#include "gabriel/integer.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gabriel {

/// Dense integer matrix; vectors act as rows (v * M).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Matrix diagonal(std::span<const Integer> entries);
  static Matrix vstack(const Matrix& top, const Matrix& bottom);
  static Matrix hstack(const Matrix& left, const Matrix& right);
  static Matrix block_diag(const Matrix& a, const Matrix& b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  Vec col(std::size_t c) const;
  void set_row(std::size_t r, const Vec& v);
  void append_row(const Vec& v);
  Matrix select_rows(std::span<const std::size_t> idx) const;
  Matrix select_cols(std::span<const std::size_t> idx) const;
  Matrix row_range(std::size_t begin, std::size_t end) const;
  Matrix col_range(std::size_t begin, std::size_t end) const;
  Matrix transpose() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k);
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);

  bool is_zero() const;
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Integer& k, const Matrix& a);
/// Row vector times matrix.
Vec operator*(const Vec& v, const Matrix& m);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Integer& k, const Vec& v);

/// P * A * Q = D with D diagonal, d_1 | d_2 | ... nonnegative; P, Q unimodular.
struct SmithForm {
  Matrix P;
  Matrix Q;
  Matrix Qinv;
  std::vector<Integer> diag;  // length min(rows, cols), zeros after rank
  std::size_t rank = 0;
};

SmithForm smith(const Matrix& a);

/// Row basis of {x : x * A = 0}.
Matrix left_kernel(const Matrix& a);

/// Some x with x * A = b, if one exists.
std::optional<Vec> solve_left(const Matrix& a, const Vec& b);

/// Hermite normal form of the row lattice: echelon, positive pivots, entries above pivots reduced. Zero rows dropped.
Matrix hermite_rows(const Matrix& a);

/// Determinant by fraction-free elimination.
Integer determinant(const Matrix& a);

}  // namespace gabriel
