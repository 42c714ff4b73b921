#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "lefrank/error.hpp"
#include "lefrank/rational.hpp"

namespace lefrank {

using VectorQ = std::vector<Rational>;

// Dense rational matrix, row major.  A 0xN or Nx0 matrix is a legal value and
// shows up constantly as the action on a missing weight space.
class MatrixQ {
 public:
  MatrixQ() : rows_(0), cols_(0) {}
  MatrixQ(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static MatrixQ identity(std::size_t n) {
    MatrixQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static MatrixQ from_rows(const std::vector<VectorQ>& rows) {
    if (rows.empty()) return MatrixQ();
    MatrixQ m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw invalid_input("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  VectorQ row(std::size_t i) const {
    VectorQ r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  MatrixQ transpose() const {
    MatrixQ t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  MatrixQ operator*(const MatrixQ& rhs) const {
    if (cols_ != rhs.rows_) throw internal_error("matrix product shape mismatch");
    MatrixQ p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Rational& a = at(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
          if (rhs.at(k, j) == 0) continue;
          p.at(i, j) += a * rhs.at(k, j);
        }
      }
    return p;
  }

  VectorQ operator*(const VectorQ& v) const {
    if (cols_ != v.size()) throw internal_error("matrix-vector shape mismatch");
    VectorQ r(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(i, j) != 0 && v[j] != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  MatrixQ operator+(const MatrixQ& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw internal_error("matrix sum shape mismatch");
    MatrixQ s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + rhs.data_[i];
    return s;
  }

  MatrixQ operator-(const MatrixQ& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
      throw internal_error("matrix difference shape mismatch");
    MatrixQ s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - rhs.data_[i];
    return s;
  }

  MatrixQ scaled(const Rational& c) const {
    MatrixQ s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = c * data_[i];
    return s;
  }

  bool operator==(const MatrixQ& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }
  bool operator!=(const MatrixQ& rhs) const { return !(*this == rhs); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  // Vertical stack: rows of this followed by rows of below.
  MatrixQ stacked(const MatrixQ& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (cols_ != below.cols_) throw internal_error("stack width mismatch");
    MatrixQ s(rows_ + below.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) s.at(rows_ + i, j) = below.at(i, j);
    return s;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

// In-place Gauss-Jordan.  Returns the pivot columns; afterwards m is in
// reduced row echelon form with zero rows trimmed off.
inline std::vector<std::size_t> rref_in_place(MatrixQ& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  MatrixQ work = m;
  for (std::size_t c = 0; c < work.cols() && r < work.rows(); ++c) {
    std::size_t p = r;
    while (p < work.rows() && work.at(p, c) == 0) ++p;
    if (p == work.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < work.cols(); ++j) std::swap(work.at(p, j), work.at(r, j));
    Rational inv = 1 / work.at(r, c);
    for (std::size_t j = c; j < work.cols(); ++j) work.at(r, j) *= inv;
    for (std::size_t i = 0; i < work.rows(); ++i) {
      if (i == r || work.at(i, c) == 0) continue;
      Rational f = work.at(i, c);
      for (std::size_t j = c; j < work.cols(); ++j) work.at(i, j) -= f * work.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  MatrixQ trimmed(pivots.size(), work.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < work.cols(); ++j) trimmed.at(i, j) = work.at(i, j);
  m = trimmed;
  return pivots;
}

inline MatrixQ rref(MatrixQ m) {
  rref_in_place(m);
  return m;
}

inline std::size_t rank(MatrixQ m) { return rref_in_place(m).size(); }

// One solution of Ax = b, or nullopt when inconsistent.  Free variables are
// set to zero, so the result is deterministic.
inline std::optional<VectorQ> solve(const MatrixQ& a, const VectorQ& b) {
  if (a.rows() != b.size()) throw internal_error("solve shape mismatch");
  MatrixQ aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = rref_in_place(aug);
  VectorQ x(a.cols(), Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.cols()) return std::nullopt;
    x[pivots[i]] = aug.at(i, a.cols());
  }
  return x;
}

inline std::optional<MatrixQ> inverse(const MatrixQ& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  std::size_t n = a.rows();
  MatrixQ aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots = rref_in_place(aug);
  if (pivots.size() != n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  MatrixQ inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

}  // namespace lefrank
