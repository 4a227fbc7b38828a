// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "hpefie/rational.hpp"

namespace hpefie {

// Small dense matrix over the exact rationals. Row-major.
class RationalMatrix {
 public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  void append_column(const std::vector<Rational>& col) {
    RationalMatrix b(rows_ == 0 ? col.size() : rows_, cols_ + 1);
    for (std::size_t i = 0; i < b.rows(); ++i) {
      for (std::size_t j = 0; j < cols_; ++j) b(i, j) = (*this)(i, j);
      b(i, cols_) = col[i];
    }
    *this = std::move(b);
  }

  // In-place reduced row echelon form; returns pivot column indices.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t piv = row;
      while (piv < rows_ && (*this)(piv, col) == 0) ++piv;
      if (piv == rows_) continue;
      if (piv != row)
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
      const Rational inv = Rational(1) / (*this)(row, col);
      for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row) continue;
        const Rational f = (*this)(i, col);
        if (f == 0) continue;
        for (std::size_t j = col; j < cols_; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    RationalMatrix m = *this;
    return m.rref().size();
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

// Solves A x = b exactly; returns one solution (free variables set to zero),
// or nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_exact(const RationalMatrix& A,
                                                        const std::vector<Rational>& b) {
  RationalMatrix m(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) m(i, j) = A(i, j);
    m(i, A.cols()) = b[i];
  }
  const auto pivots = m.rref();
  if (!pivots.empty() && pivots.back() == A.cols()) return std::nullopt;
  std::vector<Rational> x(A.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m(r, A.cols());
  return x;
}

// Exact membership of the column vector t in the column span of S.
inline bool in_span(const RationalMatrix& S, const std::vector<Rational>& t) {
  return solve_exact(S, t).has_value();
}

// Basis of the nullspace of A (as columns).
inline std::vector<std::vector<Rational>> nullspace(const RationalMatrix& A) {
  RationalMatrix m = A;
  const auto pivots = m.rref();
  std::vector<bool> is_piv(A.cols(), false);
  for (auto p : pivots) is_piv[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < A.cols(); ++free) {
    if (is_piv[free]) continue;
    std::vector<Rational> v(A.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hpefie
