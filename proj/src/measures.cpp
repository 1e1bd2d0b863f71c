#include "superlocc/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "superlocc/errors.hpp"

namespace superlocc {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::EntropyOfEntanglement: return "entropy_of_entanglement";
    case MeasureKind::ConcurrenceSquared: return "concurrence_squared";
    case MeasureKind::Negativity: return "negativity";
    case MeasureKind::LogNegativity: return "log_negativity";
    case MeasureKind::RenyiEntropy: return "renyi_entropy";
  }
  return "?";
}

double entropy_of_entanglement(const SchmidtVector& v) {
  double h = 0.0;
  for (double p : v) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double concurrence_squared(const SchmidtVector& v) {
  // 4 sum_{i<j} mu_i mu_j; avoids the cancellation in 1 - sum mu_i^2.
  double pairs = 0.0;
  double prefix = 0.0;
  for (double p : v) {
    pairs += p * prefix;
    prefix += p;
  }
  const double d = static_cast<double>(v.size());
  return std::min(4.0 * pairs, 2.0 * (d - 1.0) / d);
}

namespace {

double root_sum(const SchmidtVector& v) {
  double s = 0.0;
  for (double p : v) s += std::sqrt(p);
  return s;
}

}  // namespace

double negativity(const SchmidtVector& v) {
  const double s = root_sum(v);
  return std::max(0.0, (s * s - 1.0) / 2.0);
}

double log_negativity(const SchmidtVector& v, double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InputError(ErrorKind::InvalidParameter, "log_negativity: base must be finite and > 1");
  }
  const double trace_norm = 2.0 * negativity(v) + 1.0;
  return std::log2(trace_norm) / std::log2(base);
}

double renyi_entropy(const SchmidtVector& v, double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InputError(ErrorKind::InvalidParameter, "renyi_entropy: order must be finite and >= 0");
  }
  if (delta == 1.0) return entropy_of_entanglement(v) * std::numbers::ln2;
  double s = 0.0;
  for (double p : v) {
    if (p > 0.0) s += std::pow(p, delta);
  }
  return std::max(0.0, std::log(s) / (1.0 - delta));
}

MeasureResult measure(MeasureKind kind, const SchmidtVector& v, std::optional<double> parameter) {
  switch (kind) {
    case MeasureKind::EntropyOfEntanglement:
      return {kind, entropy_of_entanglement(v), "bits", std::nullopt};
    case MeasureKind::ConcurrenceSquared:
      return {kind, concurrence_squared(v), "dimensionless", std::nullopt};
    case MeasureKind::Negativity:
      return {kind, negativity(v), "dimensionless", std::nullopt};
    case MeasureKind::LogNegativity: {
      const double base = parameter.value_or(2.0);
      return {kind, log_negativity(v, base), "dimensionless", base};
    }
    case MeasureKind::RenyiEntropy:
      if (!parameter) throw InputError(ErrorKind::InvalidParameter, "renyi_entropy needs an order");
      return {kind, renyi_entropy(v, *parameter), "nats", parameter};
  }
  throw InputError(ErrorKind::InvalidParameter, "unknown measure");
}

}  // namespace superlocc
