#include "gabriel/matrix.hpp"

#include "gabriel/errors.hpp"

#include <sstream>
#include <utility>

namespace gabriel {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(ErrorKind::InvalidArgument, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const Integer> entries) {
  Matrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Matrix Matrix::vstack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) {
    Matrix m = bottom;
    if (m.cols_ != top.cols_ && bottom.rows() == 0) m.cols_ = top.cols_;
    return m;
  }
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) fail(ErrorKind::InvalidArgument, "vstack column mismatch");
  Matrix m(top.rows() + bottom.rows(), top.cols());
  std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
  std::copy(bottom.data_.begin(), bottom.data_.end(), m.data_.begin() + static_cast<long>(top.data_.size()));
  return m;
}

Matrix Matrix::hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows()) fail(ErrorKind::InvalidArgument, "hstack row mismatch");
  Matrix m(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c = 0; c < left.cols(); ++c) m(r, c) = left(r, c);
    for (std::size_t c = 0; c < right.cols(); ++c) m(r, left.cols() + c) = right(r, c);
  }
  return m;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.cols() + c) = b(r, c);
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<long>(r * cols_), data_.begin() + static_cast<long>((r + 1) * cols_));
}

Vec Matrix::col(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_row(std::size_t r, const Vec& v) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

void Matrix::append_row(const Vec& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) fail(ErrorKind::InvalidArgument, "append_row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

Matrix Matrix::select_rows(std::span<const std::size_t> idx) const {
  Matrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> idx) const {
  Matrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
  return m;
}

Matrix Matrix::row_range(std::size_t begin, std::size_t end) const {
  Matrix m(end - begin, cols_);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r - begin, c) = (*this)(r, c);
  return m;
}

Matrix Matrix::col_range(std::size_t begin, std::size_t end) const {
  Matrix m(rows_, end - begin);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = begin; c < end; ++c) m(r, c - begin) = (*this)(r, c);
  return m;
}

Matrix Matrix::transpose() const {
  Matrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void Matrix::add_row(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const Integer& s = (*this)(src, c);
    if (s != 0) (*this)(dst, c) += k * s;
  }
}

void Matrix::add_col(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer& s = (*this)(r, src);
    if (s != 0) (*this)(r, dst) += k * s;
  }
}

void Matrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? "," : "") << (*this)(r, c);
    out << "]";
  }
  out << "]";
  return out.str();
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
  Matrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Integer& y = b(k, j);
        if (y != 0) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) += b(i, j);
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) -= b(i, j);
  return m;
}

Matrix operator*(const Integer& k, const Matrix& a) {
  Matrix m = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) *= k;
  return m;
}

Vec operator*(const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) fail(ErrorKind::InvalidArgument, "vector-matrix dimension mismatch");
  Vec out(m.cols());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Integer& y = m(k, j);
      if (y != 0) out[j] += v[k] * y;
    }
  }
  return out;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vec operator*(const Integer& k, const Vec& v) {
  Vec out = v;
  for (auto& x : out) x *= k;
  return out;
}

namespace {

// Quotient rounded to nearest so remainders stay small.
Integer round_div(const Integer& a, const Integer& b) {
  if (b < 0) return round_div(-a, -b);
  return floor_div(2 * a + b, 2 * b);
}

}  // namespace

SmithForm smith(const Matrix& input) {
  Matrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm s{Matrix::identity(m), Matrix::identity(n), Matrix::identity(n), {}, 0};
  std::size_t t = 0;
  while (t < m && t < n) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    bool found = false;
    std::size_t pr = t, pc = t;
    Integer best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        const Integer& x = a(i, j);
        if (x != 0 && (!found || abs(x) < best)) {
          found = true;
          best = abs(x);
          pr = i;
          pc = j;
        }
      }
    if (!found) break;
    a.swap_rows(t, pr);
    s.P.swap_rows(t, pr);
    a.swap_cols(t, pc);
    s.Q.swap_cols(t, pc);
    s.Qinv.swap_rows(t, pc);
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = round_div(a(i, t), a(t, t));
        a.add_row(i, t, -q);
        s.P.add_row(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = round_div(a(t, j), a(t, t));
        a.add_col(j, t, -q);
        s.Q.add_col(j, t, -q);
        s.Qinv.add_row(t, j, q);
        if (a(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        // Divisibility of the trailing block by the pivot.
        std::size_t bad_row = m;
        for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a(i, j) % a(t, t) != 0) {
              bad_row = i;
              break;
            }
        if (bad_row == m) break;
        a.add_row(t, bad_row, 1);
        s.P.add_row(t, bad_row, 1);
        dirty = true;
      }
      // Move the smallest entry of row t / column t to the pivot.
      std::size_t br = t, bc = t;
      Integer small = abs(a(t, t));
      for (std::size_t i = t + 1; i < m; ++i)
        if (a(i, t) != 0 && abs(a(i, t)) < small) {
          small = abs(a(i, t));
          br = i;
          bc = t;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (a(t, j) != 0 && abs(a(t, j)) < small) {
          small = abs(a(t, j));
          br = t;
          bc = j;
        }
      if (br != t) {
        a.swap_rows(t, br);
        s.P.swap_rows(t, br);
      }
      if (bc != t) {
        a.swap_cols(t, bc);
        s.Q.swap_cols(t, bc);
        s.Qinv.swap_rows(t, bc);
      }
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      s.P.negate_row(t);
    }
    ++t;
  }
  s.rank = t;
  s.diag.assign(std::min(m, n), Integer(0));
  for (std::size_t i = 0; i < t; ++i) s.diag[i] = a(i, i);
  return s;
}

Matrix left_kernel(const Matrix& a) {
  SmithForm s = smith(a);
  Matrix k(a.rows() - s.rank, a.rows());
  for (std::size_t i = s.rank; i < a.rows(); ++i)
    for (std::size_t c = 0; c < a.rows(); ++c) k(i - s.rank, c) = s.P(i, c);
  return hermite_rows(k);
}

std::optional<Vec> solve_left(const Matrix& a, const Vec& b) {
  if (b.size() != a.cols()) fail(ErrorKind::InvalidArgument, "solve_left dimension mismatch");
  if (a.rows() == 0) {
    if (is_zero(b)) return Vec{};
    return std::nullopt;
  }
  SmithForm s = smith(a);
  // x = y P with y D = b Q.
  Vec bq = b * s.Q;
  Vec y(a.rows());
  for (std::size_t i = 0; i < a.cols(); ++i) {
    if (i < s.rank) {
      if (bq[i] % s.diag[i] != 0) return std::nullopt;
      y[i] = bq[i] / s.diag[i];
    } else if (bq[i] != 0) {
      return std::nullopt;
    }
  }
  return y * s.P;
}

Matrix hermite_rows(const Matrix& input) {
  Matrix a = input;
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t piv = m;
      for (std::size_t i = r; i < m; ++i)
        if (a(i, c) != 0 && (piv == m || abs(a(i, c)) < abs(a(piv, c)))) piv = i;
      if (piv == m) break;
      a.swap_rows(r, piv);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a(i, c) == 0) continue;
        Integer q = floor_div(a(i, c), a(r, c));
        a.add_row(i, r, -q);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r < m && a(r, c) != 0) {
      if (a(r, c) < 0) a.negate_row(r);
      for (std::size_t i = 0; i < r; ++i) {
        Integer q = floor_div(a(i, c), a(r, c));
        a.add_row(i, r, -q);
      }
      ++r;
    }
  }
  return a.row_range(0, r);
}

Integer determinant(const Matrix& input) {
  if (input.rows() != input.cols()) fail(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  Matrix a = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace gabriel
