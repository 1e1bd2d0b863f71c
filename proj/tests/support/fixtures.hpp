#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "superlocc/state.hpp"

namespace fixtures {

// Vector-form state from squared amplitudes in basis order.
inline superlocc::PureState from_probs(std::initializer_list<double> probs) {
  return superlocc::PureState::from_probabilities(std::vector<double>(probs));
}

inline superlocc::PureState from_matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
  return superlocc::PureState::from_matrix(superlocc::Matrix(rows, cols, std::move(data)));
}

inline std::vector<double> to_vec(const superlocc::SchmidtVector& v) { return {v.begin(), v.end()}; }

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace fixtures
