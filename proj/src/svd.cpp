#include "superlocc/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "superlocc/errors.hpp"

namespace superlocc {

namespace {

constexpr double kOffDiagonalTolerance = 1e-13;
constexpr int kMaxSweeps = 64;
// Columns shorter than this fraction of the Frobenius norm are numerically
// zero; their rounding noise would otherwise keep triggering rotations.
constexpr double kNegligibleColumn = 1e-15;

}  // namespace

SvdResult jacobi_svd(const Matrix& m) {
  if (m.empty()) throw InputError(ErrorKind::EmptyInput, "singular_values: empty matrix");
  for (double x : m.data()) {
    if (!std::isfinite(x)) throw InputError(ErrorKind::NonFinite, "singular_values: non-finite entry");
  }

  SvdResult result;
  // Orthogonalize the columns of a tall factor, so the Gram matrix is n x n
  // with n = min(rows, cols).
  result.transposed = m.cols() > m.rows();
  Matrix a = result.transposed ? m.transposed() : m;
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  Matrix v = Matrix::identity(n);
  double frob_sq = 0.0;
  for (double x : a.data()) frob_sq += x * x;
  const double negligible = kNegligibleColumn * kNegligibleColumn * frob_sq;

  bool rotated = true;
  int sweep = 0;
  while (rotated) {
    if (sweep == kMaxSweeps) throw NumericalError("jacobi_svd: no convergence after 64 sweeps");
    ++sweep;
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        if (apq == 0.0 || app <= negligible || aqq <= negligible ||
            std::abs(apq) <= kOffDiagonalTolerance * std::sqrt(app * aqq)) {
          continue;
        }
        rotated = true;

        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const double x = a(i, p), y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double x = v(i, p), y = v(i, q);
          v(i, p) = c * x - s * y;
          v(i, q) = s * x + c * y;
        }
      }
    }
  }
  result.sweeps = sweep;

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    double sq = 0.0;
    for (std::size_t i = 0; i < rows; ++i) sq += a(i, j) * a(i, j);
    norms[j] = std::sqrt(sq);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  result.values.resize(n);
  result.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.values[k] = norms[order[k]];
    for (std::size_t i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
  }
  return result;
}

std::vector<double> singular_values(const Matrix& m) { return jacobi_svd(m).values; }

}  // namespace superlocc
