#include "superlocc/majorization.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

#include "superlocc/errors.hpp"

namespace superlocc {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "Equivalent";
    case Verdict::ConvertibleAtoB: return "ConvertibleAtoB";
    case Verdict::ConvertibleBtoA: return "ConvertibleBtoA";
    case Verdict::Incomparable: return "Incomparable";
  }
  return "?";
}

Verdict verdict_from_string(std::string_view s) {
  for (Verdict v : {Verdict::Equivalent, Verdict::ConvertibleAtoB, Verdict::ConvertibleBtoA, Verdict::Incomparable}) {
    if (to_string(v) == s) return v;
  }
  throw InputError(ErrorKind::Malformed, "unknown verdict '" + std::string(s) + "'");
}

Verdict swapped(Verdict v) {
  switch (v) {
    case Verdict::ConvertibleAtoB: return Verdict::ConvertibleBtoA;
    case Verdict::ConvertibleBtoA: return Verdict::ConvertibleAtoB;
    default: return v;
  }
}

bool majorizes(const SchmidtVector& y, const SchmidtVector& x) {
  const std::size_t d = std::max(x.size(), y.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    sx += k < x.size() ? x[k] : 0.0;
    sy += k < y.size() ? y[k] : 0.0;
    if (sx > sy + kMajorizationSlack) return false;
  }
  return true;
}

Verdict classify_pair(const SchmidtVector& chi, const SchmidtVector& eta) {
  const bool forward = majorizes(eta, chi);
  const bool backward = majorizes(chi, eta);
  if (forward && backward) return Verdict::Equivalent;
  if (forward) return Verdict::ConvertibleAtoB;
  if (backward) return Verdict::ConvertibleBtoA;
  return Verdict::Incomparable;
}

namespace {

void require_strict_triple(const SchmidtVector& v, const char* name) {
  if (v.size() != 3) {
    throw InputError(ErrorKind::DimensionMismatch,
                     std::string("incomparable_3x3_shortcut: ") + name + " must have dimension 3");
  }
  if (!(v[0] - v[1] > kMajorizationSlack && v[1] - v[2] > kMajorizationSlack && v[2] > kMajorizationSlack)) {
    throw InputError(ErrorKind::PreconditionViolated,
                     std::string("incomparable_3x3_shortcut: ") + name + " is not strictly ordered and positive");
  }
}

bool strictly_greater(double a, double b) { return a - b > kMajorizationSlack; }

}  // namespace

bool incomparable_3x3_shortcut(const SchmidtVector& gamma, const SchmidtVector& delta) {
  require_strict_triple(gamma, "gamma");
  require_strict_triple(delta, "delta");
  return (strictly_greater(gamma[0], delta[0]) && strictly_greater(gamma[2], delta[2])) ||
         (strictly_greater(delta[0], gamma[0]) && strictly_greater(delta[2], gamma[2]));
}

std::vector<Verdict> classify_batch(std::span<const SchmidtPair> pairs, Execution exec) {
  std::vector<Verdict> out(pairs.size());
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(static) num_threads(exec.threads())
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& [a, b] = pairs[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = classify_pair(a, b);
  }
  return out;
}

namespace serial {

std::vector<Verdict> classify_batch(std::span<const SchmidtPair> pairs) {
  std::vector<Verdict> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back(classify_pair(a, b));
  return out;
}

}  // namespace serial

}  // namespace superlocc
