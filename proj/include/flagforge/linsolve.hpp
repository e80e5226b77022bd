#pragma once

// Exact Gauss-Jordan elimination over Q.

#include "flagforge/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace flagforge {

/// Dense augmented system A x = b with rational entries.
class LinearSystem {
 public:
  LinearSystem(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)), b_(rows, Rational(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t r, std::size_t c) { return a_.at(r * cols_ + c); }
  const Rational& at(std::size_t r, std::size_t c) const { return a_.at(r * cols_ + c); }
  Rational& rhs(std::size_t r) { return b_.at(r); }

  struct Reduction {
    std::vector<std::size_t> pivot_columns;  // one per nonzero row, increasing
    bool consistent = true;
  };

  /// Reduces [A | b] in place to reduced row echelon form. Pivots are taken in
  /// column order, and within a column from the first eligible row.
  Reduction reduce() {
    Reduction out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t pivot = row;
      while (pivot < rows_ && at(pivot, col) == 0) ++pivot;
      if (pivot == rows_) continue;
      if (pivot != row) swap_rows(pivot, row);
      const Rational inv = 1 / at(row, col);
      for (std::size_t c = col; c < cols_; ++c) at(row, c) *= inv;
      b_[row] *= inv;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || at(r, col) == 0) continue;
        const Rational factor = at(r, col);
        for (std::size_t c = col; c < cols_; ++c) {
          if (at(row, c) != 0) at(r, c) -= factor * at(row, c);
        }
        b_[r] -= factor * b_[row];
      }
      out.pivot_columns.push_back(col);
      ++row;
    }
    for (std::size_t r = row; r < rows_; ++r) {
      if (b_[r] != 0) out.consistent = false;
    }
    return out;
  }

  /// One solution with every free variable set to zero, or nullopt if inconsistent.
  std::optional<std::vector<Rational>> solve() {
    const Reduction red = reduce();
    if (!red.consistent) return std::nullopt;
    std::vector<Rational> x(cols_, Rational(0));
    for (std::size_t r = 0; r < red.pivot_columns.size(); ++r) x[red.pivot_columns[r]] = b_[r];
    return x;
  }

  std::size_t rank() { return reduce().pivot_columns.size(); }

 private:
  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    std::swap(b_[i], b_[j]);
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> a_;
  std::vector<Rational> b_;
};

}  // namespace flagforge
