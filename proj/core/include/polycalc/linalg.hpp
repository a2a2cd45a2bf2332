#pragma once

#include <cstddef>
#include <vector>

#include "polycalc/rational.hpp"

namespace polycalc {

// In-place reduced row echelon form; zero rows are removed. Returns the pivot
// column of each remaining row.
std::vector<std::size_t> rref(Matrix& rows, std::size_t cols);

// Canonical basis of {x : Mx = 0}: one vector per free column of rref(M),
// scaled to primitive integers with a positive free coordinate.
Matrix nullspace(const Matrix& rows, std::size_t cols);

std::size_t rank(Matrix rows, std::size_t cols);

}  // namespace polycalc
