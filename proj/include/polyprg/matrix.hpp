#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "polyprg/field.hpp"

namespace polyprg {

/// Dense row-major matrix over a ring type R (FieldElem, UPoly, MPoly).
template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const R& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const R> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

inline FieldElem exact_quotient(FieldElem a, FieldElem b) { return a / b; }

/// Sylvester matrix of a = sum a_i y^i (degree d1) and b = sum b_i y^i
/// (degree d2): d2 columns carrying a shifted down one row per column, then
/// d1 columns carrying b, with a_0 and b_0 in the top row.
template <class R>
Matrix<R> sylvester_matrix(std::span<const R> a, std::span<const R> b, const R& zero) {
  const std::size_t d1 = a.size() - 1;
  const std::size_t d2 = b.size() - 1;
  const std::size_t n = d1 + d2;
  Matrix<R> m(n, n, zero);
  for (std::size_t j = 0; j < d2; ++j) {
    for (std::size_t i = 0; i <= d1; ++i) m(j + i, j) = a[i];
  }
  for (std::size_t j = 0; j < d1; ++j) {
    for (std::size_t i = 0; i <= d2; ++i) m(j + i, d2 + j) = b[i];
  }
  return m;
}

/// Fraction-free (Bareiss) determinant; every division is exact in R.
template <class R>
R determinant_bareiss(Matrix<R> m, const R& one) {
  const std::size_t n = m.rows();
  if (n == 0) return one;
  bool negate = false;
  R prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return one - one;
      m.swap_rows(k, piv);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = exact_quotient(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      }
    }
    prev = m(k, k);
  }
  R det = m(n - 1, n - 1);
  return negate ? (one - one) - det : det;
}

/// Reduced row echelon form over a field with pivots chosen as the first
/// nonzero entry in row order. Returns the pivot columns.
std::vector<std::size_t> rref_in_place(Matrix<FieldElem>& m);

/// Row-reduced basis of the right nullspace {v : M v = 0}; each basis vector
/// is a row of the result, in reduced echelon form.
Matrix<FieldElem> nullspace(const Matrix<FieldElem>& m, const FieldCtx& field);

/// Nonzero rows of the reduced echelon form of the row span.
Matrix<FieldElem> row_space_rref(const Matrix<FieldElem>& m, const FieldCtx& field);

std::size_t rank(const Matrix<FieldElem>& m);

}  // namespace polyprg
