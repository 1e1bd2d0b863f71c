#pragma once

#include <vector>

#include "superlocc/state.hpp"

namespace superlocc {

struct SvdResult {
  // Non-increasing, each >= 0. Length min(rows, cols).
  std::vector<double> values;
  // Columns are right singular vectors of the factor that was orthogonalized;
  // Gram = V diag(values^2) V^T where Gram is the smaller of m^T m and m m^T.
  Matrix vectors;
  bool transposed = false;
  int sweeps = 0;
};

/// One-sided Jacobi SVD on the smaller Gram factor. Stops when every column
/// pair's normalized off-diagonal mass drops below 1e-13.
/// Throws InputError on non-finite or empty input, NumericalError if the
/// sweep limit is hit.
SvdResult jacobi_svd(const Matrix& m);

std::vector<double> singular_values(const Matrix& m);

}  // namespace superlocc
