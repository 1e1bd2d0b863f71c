#include "superlocc/state.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "superlocc/errors.hpp"
#include "superlocc/svd.hpp"

namespace superlocc {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw InputError(ErrorKind::DimensionMismatch,
                     "matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                         std::to_string(rows_ * cols_));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

SchmidtVector make_schmidt_vector(std::span<const double> raw) {
  if (raw.empty()) throw InputError(ErrorKind::EmptyInput, "Schmidt vector needs at least one entry");
  double total = 0.0;
  for (double x : raw) {
    if (!std::isfinite(x)) throw InputError(ErrorKind::NonFinite, "Schmidt vector entry is not finite");
    if (x < 0.0) throw InputError(ErrorKind::NegativeEntry, "Schmidt vector entry is negative");
    total += x;
  }
  if (!(total > 0.0)) throw InputError(ErrorKind::ZeroSum, "Schmidt vector entries are all zero");

  std::vector<double> probs(raw.begin(), raw.end());
  for (double& x : probs) x /= total;
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return SchmidtVector(std::move(probs));
}

namespace {

void check_norm(double squared_norm) {
  if (std::abs(squared_norm - 1.0) > kNormTolerance) {
    throw InputError(ErrorKind::InvalidState,
                     "state is not normalized (squared norm " + std::to_string(squared_norm) + ")");
  }
}

}  // namespace

PureState PureState::from_amplitudes(std::vector<double> amplitudes) {
  if (amplitudes.empty()) throw InputError(ErrorKind::EmptyInput, "state has no amplitudes");
  double sq = 0.0;
  for (double a : amplitudes) {
    if (!std::isfinite(a)) throw InputError(ErrorKind::NonFinite, "amplitude is not finite");
    if (a < 0.0) throw InputError(ErrorKind::NegativeEntry, "shared-basis amplitudes must be non-negative");
    sq += a * a;
  }
  check_norm(sq);
  PureState s;
  s.form_ = StateForm::SharedBasisVector;
  s.amplitudes_ = std::move(amplitudes);
  s.norm_ = std::sqrt(sq);
  return s;
}

PureState PureState::from_probabilities(std::span<const double> probs) {
  std::vector<double> amps(probs.size());
  std::transform(probs.begin(), probs.end(), amps.begin(), [](double p) {
    if (p < 0.0) throw InputError(ErrorKind::NegativeEntry, "probability is negative");
    return std::sqrt(p);
  });
  return from_amplitudes(std::move(amps));
}

PureState PureState::from_matrix(Matrix coefficients) {
  if (coefficients.empty()) throw InputError(ErrorKind::EmptyInput, "coefficient matrix is empty");
  double sq = 0.0;
  for (double a : coefficients.data()) {
    if (!std::isfinite(a)) throw InputError(ErrorKind::NonFinite, "coefficient is not finite");
    sq += a * a;
  }
  check_norm(sq);
  PureState s;
  s.form_ = StateForm::CoefficientMatrix;
  s.matrix_ = std::move(coefficients);
  s.norm_ = std::sqrt(sq);
  return s;
}

std::span<const double> PureState::amplitudes() const {
  if (!is_vector()) throw InputError(ErrorKind::FormMismatch, "state is in matrix form");
  return amplitudes_;
}

const Matrix& PureState::matrix() const {
  if (is_vector()) throw InputError(ErrorKind::FormMismatch, "state is in shared-basis vector form");
  return matrix_;
}

std::size_t PureState::rows() const noexcept { return is_vector() ? amplitudes_.size() : matrix_.rows(); }
std::size_t PureState::cols() const noexcept { return is_vector() ? amplitudes_.size() : matrix_.cols(); }

Matrix PureState::as_matrix() const { return is_vector() ? Matrix::diagonal(amplitudes_) : matrix_; }

SchmidtVector schmidt_of_state(const PureState& state) {
  std::vector<double> probs;
  if (state.is_vector()) {
    const auto amps = state.amplitudes();
    probs.reserve(amps.size());
    for (double a : amps) probs.push_back(a * a);
  } else {
    probs = singular_values(state.matrix());
    for (double& s : probs) s *= s;
  }
  return make_schmidt_vector(probs);
}

}  // namespace superlocc
