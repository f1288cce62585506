#include "polyprg/matrix.hpp"

namespace polyprg {

std::vector<std::size_t> rref_in_place(Matrix<FieldElem>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(r, piv);
    const FieldElem inv = m(r, c).inv();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const FieldElem factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Matrix<FieldElem> row_space_rref(const Matrix<FieldElem>& m, const FieldCtx& field) {
  Matrix<FieldElem> work = m;
  const auto pivots = rref_in_place(work);
  Matrix<FieldElem> out(pivots.size(), m.cols(), field.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = work(i, j);
  }
  return out;
}

Matrix<FieldElem> nullspace(const Matrix<FieldElem>& m, const FieldCtx& field) {
  Matrix<FieldElem> work = m;
  const auto pivots = rref_in_place(work);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<FieldElem> basis(n - pivots.size(), n, field.zero());
  std::size_t b = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(b, f) = field.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(b, pivots[r]) = -work(r, f);
    ++b;
  }
  return row_space_rref(basis, field);
}

std::size_t rank(const Matrix<FieldElem>& m) {
  Matrix<FieldElem> work = m;
  return rref_in_place(work).size();
}

}  // namespace polyprg
