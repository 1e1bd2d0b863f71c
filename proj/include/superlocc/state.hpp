#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace superlocc {

/// Absolute tolerance for normalization of Schmidt vectors and states.
inline constexpr double kNormTolerance = 1e-12;

/// Dense row-major real matrix. Only used for tiny (<= ~16x16) problems.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Squared Schmidt coefficients: non-negative, non-increasing, summing to 1.
/// Only constructible through make_schmidt_vector, so the invariants always hold.
class SchmidtVector {
 public:
  // Empty placeholder; every non-empty instance comes from make_schmidt_vector.
  SchmidtVector() = default;

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  friend bool operator==(const SchmidtVector&, const SchmidtVector&) = default;

 private:
  friend SchmidtVector make_schmidt_vector(std::span<const double> raw);
  explicit SchmidtVector(std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// Normalizes and sorts non-increasing. Rejects empty input, negative or
/// non-finite entries, and an all-zero vector.
SchmidtVector make_schmidt_vector(std::span<const double> raw);
inline SchmidtVector make_schmidt_vector(std::initializer_list<double> raw) {
  return make_schmidt_vector(std::span<const double>(raw.begin(), raw.size()));
}

enum class StateForm { SharedBasisVector, CoefficientMatrix };

/// A bipartite pure state with real amplitudes.
///
/// SharedBasisVector holds non-negative amplitudes c_i of sum_i c_i |ii>, in
/// physical basis order (not sorted: superposition aligns components by index).
/// CoefficientMatrix holds the full d1 x d2 coefficient matrix, signs allowed.
class PureState {
 public:
  // Empty placeholder (zero amplitudes); not a valid state.
  PureState() = default;

  static PureState from_amplitudes(std::vector<double> amplitudes);
  static PureState from_probabilities(std::span<const double> probs);
  static PureState from_matrix(Matrix coefficients);

  StateForm form() const noexcept { return form_; }
  bool is_vector() const noexcept { return form_ == StateForm::SharedBasisVector; }

  // Vector form only.
  std::span<const double> amplitudes() const;
  // Matrix form only.
  const Matrix& matrix() const;

  /// Number of basis labels (vector form) or rows x cols (matrix form).
  std::size_t rows() const noexcept;
  std::size_t cols() const noexcept;

  double norm() const noexcept { return norm_; }

  /// Vector form embedded as a diagonal coefficient matrix; matrix form unchanged.
  Matrix as_matrix() const;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  StateForm form_ = StateForm::SharedBasisVector;
  std::vector<double> amplitudes_;
  Matrix matrix_;
  double norm_ = 0.0;
};

/// Squared amplitudes (vector form) or squared singular values (matrix form),
/// sorted and normalized.
SchmidtVector schmidt_of_state(const PureState& state);

}  // namespace superlocc
