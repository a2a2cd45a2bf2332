#include "polycalc/linalg.hpp"

#include <algorithm>

namespace polycalc {

std::vector<std::size_t> rref(Matrix& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i) {
      if (sgn(rows[i][c]) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Matrix nullspace(const Matrix& rows, std::size_t cols) {
  Matrix m = rows;
  const std::vector<std::size_t> pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(primitive(v));
  }
  return basis;
}

std::size_t rank(Matrix rows, std::size_t cols) {
  return rref(rows, cols).size();
}

}  // namespace polycalc
