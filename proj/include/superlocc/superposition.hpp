#pragma once

#include <cmath>
#include <utility>

#include "superlocc/state.hpp"

namespace superlocc {

/// Overlaps above this are flagged as "not orthogonal" in reports.
inline constexpr double kOrthogonalityTolerance = 1e-9;

/// alpha |psi> + beta |phi>, with alpha, beta >= 0 and alpha^2 + beta^2 = 1.
struct SuperpositionSpec {
  double alpha = 1.0;
  double beta = 0.0;
  PureState psi;
  PureState phi;

  /// Throws InputError on bad weights or mismatched components.
  void validate() const;
};

struct SuperpositionResult {
  PureState state;       // normalized
  SchmidtVector schmidt;
  double overlap = 0.0;  // <psi|phi>
  double norm_factor = 1.0;  // K = alpha^2 + beta^2 + 2 alpha beta <psi|phi>
  // Vector form: whether c_i^2 in basis order was already non-increasing.
  bool basis_order_sorted = true;

  bool orthogonal() const { return std::abs(overlap) <= kOrthogonalityTolerance; }
};

/// Sum of amplitude products (vector form) or Frobenius inner product
/// (matrix form). Throws InputError on form or dimension mismatch.
double overlap(const PureState& psi, const PureState& phi);

/// Throws InputError(VanishingSuperposition) when K <= 1e-12.
SuperpositionResult superpose(const SuperpositionSpec& spec);

/// Same as superpose, but always goes through the coefficient matrix and SVD
/// (vector-form inputs are embedded as diagonal matrices).
SuperpositionResult superpose_via_matrix(const SuperpositionSpec& spec);

std::pair<SuperpositionResult, SuperpositionResult> superpose_pair_for_case(const SuperpositionSpec& a,
                                                                            const SuperpositionSpec& b);

}  // namespace superlocc
