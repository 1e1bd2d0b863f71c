#include <doctest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "superlocc/errors.hpp"
#include "superlocc/measures.hpp"
#include "superlocc/random.hpp"
#include "superlocc/superposition.hpp"

using namespace superlocc;
using doctest::Approx;
using fixtures::from_matrix;
using fixtures::from_probs;
using fixtures::kInvSqrt2;

namespace {

SuperpositionSpec equal_weights(PureState psi, PureState phi) {
  return {kInvSqrt2, kInvSqrt2, std::move(psi), std::move(phi)};
}

double state_norm_sq(const PureState& s) {
  const auto data = s.is_vector() ? s.amplitudes() : s.matrix().data();
  double n = 0.0;
  for (double x : data) n += x * x;
  return n;
}

}  // namespace

TEST_CASE("overlap examples") {
  CHECK(overlap(from_probs({1, 0, 0}), from_probs({0, 1, 0})) == 0.0);
  CHECK(overlap(from_probs({0.5, 0.3, 0.2}), from_probs({0.5, 0.3, 0.2})) == Approx(1.0).epsilon(1e-15));
  CHECK(overlap(from_probs({0.5, 0.5, 0}), from_probs({0.5, 0, 0.5})) == Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(overlap(from_probs({1, 0}), from_probs({1, 0, 0})), InputError);
  CHECK_THROWS_AS(overlap(from_probs({1, 0}), from_matrix(1, 2, {1, 0})), InputError);
}

TEST_CASE("|00> + |11> is maximally entangled") {
  const auto r = superpose(equal_weights(from_probs({1, 0}), from_probs({0, 1})));
  CHECK(r.schmidt[0] == Approx(0.5).epsilon(1e-15));
  CHECK(r.schmidt[1] == Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(entropy_of_entanglement(r.schmidt) - 1.0) <= 1e-12);
  CHECK(r.overlap == 0.0);
  CHECK(r.orthogonal());
}

TEST_CASE("two Bell states superpose to a product state") {
  const double h = kInvSqrt2;
  const auto r = superpose(equal_weights(from_matrix(2, 2, {h, 0, 0, h}), from_matrix(2, 2, {h, 0, 0, -h})));
  CHECK(r.schmidt[0] == Approx(1.0).epsilon(1e-14));
  CHECK(r.schmidt[1] <= 1e-14);
  CHECK(std::abs(entropy_of_entanglement(r.schmidt)) <= 1e-12);
  CHECK(std::abs(r.norm_factor - 1.0) <= 1e-12);
}

TEST_CASE("superposing a state with itself") {
  const auto psi = from_probs({0.5, 0.3, 0.2});
  const auto r = superpose(equal_weights(psi, psi));
  CHECK(r.norm_factor == Approx(2.0).epsilon(1e-14));
  CHECK(r.overlap == Approx(1.0).epsilon(1e-15));
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.schmidt[i] == Approx(schmidt_of_state(psi)[i]).epsilon(1e-14));
}

TEST_CASE("alpha = 1, beta = 0 reproduces psi exactly") {
  RandomSource rng(21);
  for (int t = 0; t < 100; ++t) {
    const auto psi = PureState::from_probabilities(sample_simplex_on_support(4, {0, 1, 2, 3}, rng));
    const auto phi = PureState::from_probabilities(sample_simplex_on_support(4, {0, 1, 2, 3}, rng));
    const auto r = superpose({1.0, 0.0, psi, phi});
    CHECK(r.schmidt == schmidt_of_state(psi));
    CHECK(r.norm_factor == 1.0);
  }
}

TEST_CASE("invalid specs are rejected") {
  const auto a = from_probs({1, 0});
  CHECK_THROWS_AS(superpose({0.5, 0.5, a, a}), InputError);
  CHECK_THROWS_AS(superpose({-kInvSqrt2, kInvSqrt2, a, a}), InputError);
  CHECK_THROWS_AS(superpose(equal_weights(a, from_probs({1, 0, 0}))), InputError);
  CHECK_THROWS_AS(superpose(equal_weights(a, from_matrix(2, 2, {1, 0, 0, 0}))), InputError);
}

TEST_CASE("a cancelling superposition is reported as vanishing") {
  const auto plus = from_matrix(1, 2, {0.6, 0.8});
  const auto minus = from_matrix(1, 2, {-0.6, -0.8});
  try {
    superpose(equal_weights(plus, minus));
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.kind() == ErrorKind::VanishingSuperposition);
  }
}

TEST_CASE("pair for case: intro example and a (0.6,0.4,0)/(0,0,1) partner") {
  const auto a = equal_weights(from_probs({1, 0}), from_probs({0, 1}));
  const auto b = equal_weights(from_probs({0.6, 0.4, 0}), from_probs({0, 0, 1}));
  const auto [ra, rb] = superpose_pair_for_case(a, b);
  CHECK(ra.schmidt == superpose(a).schmidt);
  CHECK(rb.norm_factor == Approx(1.0).epsilon(1e-15));
  CHECK(rb.schmidt[0] == Approx(0.5).epsilon(1e-14));
  CHECK(rb.schmidt[1] == Approx(0.3).epsilon(1e-14));
  CHECK(rb.schmidt[2] == Approx(0.2).epsilon(1e-14));
  CHECK_FALSE(rb.basis_order_sorted);

  const auto [same1, same2] = superpose_pair_for_case(b, b);
  CHECK(same1.schmidt == same2.schmidt);
  CHECK(same1.norm_factor == same2.norm_factor);
}

TEST_CASE("normalization bookkeeping on random instances") {
  RandomSource rng(22);
  for (int t = 0; t < 2000; ++t) {
    const Weights w = sample_weights(rng);
    const auto psi = PureState::from_probabilities(sample_simplex_on_support(3, {0, 1, 2}, rng));
    const auto phi = PureState::from_probabilities(sample_simplex_on_support(3, {0, 1, 2}, rng));
    const auto r = superpose({w.alpha, w.beta, psi, phi});
    CHECK(std::abs(state_norm_sq(r.state) - 1.0) <= 1e-12);
    CHECK(std::abs(r.norm_factor - (1.0 + 2.0 * w.alpha * w.beta * r.overlap)) <= 1e-12);
    CHECK(r.schmidt == schmidt_of_state(r.state));
  }
  // Disjoint supports: the overlap vanishes and K = 1.
  for (int t = 0; t < 200; ++t) {
    const Weights w = sample_weights(rng);
    const auto psi = PureState::from_probabilities(sample_simplex_on_support(4, {0, 1}, rng));
    const auto phi = PureState::from_probabilities(sample_simplex_on_support(4, {2, 3}, rng));
    const auto r = superpose({w.alpha, w.beta, psi, phi});
    CHECK(r.overlap == 0.0);
    CHECK(std::abs(r.norm_factor - 1.0) <= 1e-12);
  }
}

TEST_CASE("shared-basis and matrix paths agree") {
  RandomSource rng(23);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t d = 2 + rng.next_u64() % 4;
    std::vector<std::size_t> all(d);
    for (std::size_t i = 0; i < d; ++i) all[i] = i;
    const Weights w = sample_weights(rng);
    const SuperpositionSpec spec{w.alpha, w.beta, PureState::from_probabilities(sample_simplex_on_support(d, all, rng)),
                                 PureState::from_probabilities(sample_simplex_on_support(d, all, rng))};
    const auto direct = superpose(spec);
    const auto via = superpose_via_matrix(spec);
    for (std::size_t i = 0; i < d; ++i) CHECK(std::abs(direct.schmidt[i] - via.schmidt[i]) <= 1e-10);
    CHECK(std::abs(direct.norm_factor - via.norm_factor) <= 1e-12);
  }
}
