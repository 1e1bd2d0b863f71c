#include "superlocc/superposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>

#include "superlocc/errors.hpp"

namespace superlocc {

namespace {

constexpr double kVanishingNorm = 1e-12;

bool same_shape(const PureState& a, const PureState& b) {
  return a.form() == b.form() && a.rows() == b.rows() && a.cols() == b.cols();
}

// K is taken as the squared norm of the unnormalized combination, which equals
// alpha^2 + beta^2 + 2 alpha beta <psi|phi> up to rounding but stays accurate
// under heavy cancellation.
double checked_norm_factor(std::span<const double> combined) {
  double k = 0.0;
  for (double x : combined) k += x * x;
  if (!(k > kVanishingNorm)) {
    throw InputError(ErrorKind::VanishingSuperposition,
                     "superposition vanishes (squared norm " + std::to_string(k) + ")");
  }
  return k;
}

}  // namespace

void SuperpositionSpec::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InputError(ErrorKind::InvalidWeights, "weights must be finite and non-negative");
  }
  if (std::abs(alpha * alpha + beta * beta - 1.0) > kNormTolerance) {
    throw InputError(ErrorKind::InvalidWeights, "weights must satisfy alpha^2 + beta^2 = 1");
  }
  if (psi.form() != phi.form()) throw InputError(ErrorKind::FormMismatch, "components have different forms");
  if (!same_shape(psi, phi)) throw InputError(ErrorKind::DimensionMismatch, "components have different dimensions");
}

double overlap(const PureState& psi, const PureState& phi) {
  if (psi.form() != phi.form()) throw InputError(ErrorKind::FormMismatch, "overlap: different forms");
  if (!same_shape(psi, phi)) throw InputError(ErrorKind::DimensionMismatch, "overlap: different dimensions");
  const auto x = psi.is_vector() ? psi.amplitudes() : psi.matrix().data();
  const auto y = phi.is_vector() ? phi.amplitudes() : phi.matrix().data();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

SuperpositionResult superpose(const SuperpositionSpec& spec) {
  spec.validate();
  if (!spec.psi.is_vector()) return superpose_via_matrix(spec);

  const double ov = overlap(spec.psi, spec.phi);
  if (spec.beta == 0.0 || spec.alpha == 0.0) {
    // One weight is zero: the superposition is the other component, untouched.
    const PureState& only = spec.beta == 0.0 ? spec.psi : spec.phi;
    const auto amps = only.amplitudes();
    const bool sorted = std::is_sorted(amps.begin(), amps.end(), std::greater<>());
    const double k = spec.alpha * spec.alpha + spec.beta * spec.beta;
    return {only, schmidt_of_state(only), ov, k, sorted};
  }
  const auto a = spec.psi.amplitudes();
  const auto b = spec.phi.amplitudes();

  std::vector<double> c(a.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = spec.alpha * a[i] + spec.beta * b[i];
  const double k = checked_norm_factor(c);
  const double scale = 1.0 / std::sqrt(k);
  bool sorted = true;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] *= scale;
    if (i > 0 && c[i] > c[i - 1]) sorted = false;
  }
  SchmidtVector schmidt = schmidt_of_state(PureState::from_amplitudes(c));
  return {PureState::from_amplitudes(std::move(c)), std::move(schmidt), ov, k, sorted};
}

SuperpositionResult superpose_via_matrix(const SuperpositionSpec& spec) {
  spec.validate();
  const Matrix mpsi = spec.psi.as_matrix();
  const Matrix mphi = spec.phi.as_matrix();

  double ov = 0.0;
  for (std::size_t i = 0; i < mpsi.data().size(); ++i) ov += mpsi.data()[i] * mphi.data()[i];

  Matrix m(mpsi.rows(), mpsi.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = spec.alpha * mpsi(r, c) + spec.beta * mphi(r, c);
  const double k = checked_norm_factor(m.data());
  const double scale = 1.0 / std::sqrt(k);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) *= scale;

  PureState state = PureState::from_matrix(std::move(m));
  SchmidtVector schmidt = schmidt_of_state(state);
  return {std::move(state), std::move(schmidt), ov, k, true};
}

std::pair<SuperpositionResult, SuperpositionResult> superpose_pair_for_case(const SuperpositionSpec& a,
                                                                            const SuperpositionSpec& b) {
  return {superpose(a), superpose(b)};
}

}  // namespace superlocc
