#pragma once

#include <optional>
#include <string_view>

#include "superlocc/state.hpp"

namespace superlocc {

enum class MeasureKind { EntropyOfEntanglement, ConcurrenceSquared, Negativity, LogNegativity, RenyiEntropy };

struct MeasureResult {
  MeasureKind kind;
  double value;
  std::string_view units;  // "bits", "nats", or "dimensionless"
  std::optional<double> parameter;  // Renyi order or log base
};

std::string_view to_string(MeasureKind kind);

/// Shannon entropy of the Schmidt probabilities, in bits. 0 log 0 = 0.
double entropy_of_entanglement(const SchmidtVector& v);

/// 2 (1 - sum mu_i^2) = 4 sum_{i<j} mu_i mu_j.
double concurrence_squared(const SchmidtVector& v);

/// ((sum sqrt(mu_i))^2 - 1) / 2, the pure-state value of
/// (||rho^{T_B}||_1 - 1) / 2.
double negativity(const SchmidtVector& v);

/// log_base (sum sqrt(mu_i))^2. Throws InputError unless base > 1.
double log_negativity(const SchmidtVector& v, double base = 2.0);

/// ln(sum mu_i^delta) / (1 - delta) in nats; delta == 1 gives the von Neumann
/// entropy in nats. Throws InputError for negative or non-finite delta.
double renyi_entropy(const SchmidtVector& v, double delta);

/// Dispatch by kind. `parameter` is the Renyi order or the log-negativity base.
MeasureResult measure(MeasureKind kind, const SchmidtVector& v, std::optional<double> parameter = {});

}  // namespace superlocc
