#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <vector>

#include "fixtures.hpp"
#include "superlocc/errors.hpp"
#include "superlocc/random.hpp"
#include "superlocc/state.hpp"
#include "superlocc/svd.hpp"

using namespace superlocc;
using doctest::Approx;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.kind();
  }
  FAIL("expected InputError");
  return ErrorKind::Malformed;
}

void check_schmidt_invariants(const SchmidtVector& v) {
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i] >= 0.0);
    if (i + 1 < v.size()) CHECK(v[i] >= v[i + 1]);
    total += v[i];
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("make_schmidt_vector sorts and normalizes") {
  CHECK(fixtures::to_vec(make_schmidt_vector({0.2, 0.5, 0.3})) == std::vector<double>{0.5, 0.3, 0.2});
  const auto uniform = make_schmidt_vector({2.0, 2.0, 2.0});
  for (double p : uniform) CHECK(p == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(fixtures::to_vec(make_schmidt_vector({0.0, 1.0})) == std::vector<double>{1.0, 0.0});
}

TEST_CASE("make_schmidt_vector rejects each bad input with its own kind") {
  CHECK(kind_of([] { make_schmidt_vector(std::vector<double>{}); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { make_schmidt_vector({0.5, -0.1}); }) == ErrorKind::NegativeEntry);
  CHECK(kind_of([] { make_schmidt_vector({0.0, 0.0}); }) == ErrorKind::ZeroSum);
  CHECK(kind_of([] { make_schmidt_vector({NAN, 1.0}); }) == ErrorKind::NonFinite);
}

TEST_CASE("pure states enforce unit norm") {
  CHECK(kind_of([] { PureState::from_amplitudes({0.5, 0.5}); }) == ErrorKind::InvalidState);
  CHECK(kind_of([] { PureState::from_amplitudes({-0.6, 0.8}); }) == ErrorKind::NegativeEntry);
  CHECK(kind_of([] { PureState::from_amplitudes({}); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { fixtures::from_matrix(2, 2, {1, 1, 1, 1}); }) == ErrorKind::InvalidState);
  CHECK(kind_of([] { Matrix(2, 2, std::vector<double>{1.0}); }) == ErrorKind::DimensionMismatch);

  const PureState s = PureState::from_amplitudes({0.6, 0.8});
  CHECK(s.norm() == Approx(1.0));
  CHECK(kind_of([&] { (void)s.matrix(); }) == ErrorKind::FormMismatch);
  const PureState m = fixtures::from_matrix(1, 2, {0.6, -0.8});
  CHECK(kind_of([&] { (void)m.amplitudes(); }) == ErrorKind::FormMismatch);
}

TEST_CASE("schmidt_of_state on both forms") {
  const auto v = schmidt_of_state(fixtures::from_probs({0.6, 0.4, 0.0}));
  CHECK(v[0] == Approx(0.6).epsilon(1e-15));
  CHECK(v[1] == Approx(0.4).epsilon(1e-15));
  CHECK(v[2] == 0.0);

  const double h = fixtures::kInvSqrt2;
  const auto bell = schmidt_of_state(fixtures::from_matrix(2, 2, {h, 0, 0, h}));
  CHECK(bell[0] == Approx(0.5).epsilon(1e-14));
  CHECK(bell[1] == Approx(0.5).epsilon(1e-14));

  // [[0.5,0.5],[0.5,0.5]] = u v^T with u = v = (1/sqrt2)(1,1): rank one, sigma = 1.
  const auto rank1 = schmidt_of_state(fixtures::from_matrix(2, 2, {0.5, 0.5, 0.5, 0.5}));
  CHECK(rank1[0] == Approx(1.0).epsilon(1e-14));
  CHECK(rank1[1] <= 1e-14);
}

TEST_CASE("vector-form Schmidt vector equals make_schmidt_vector of the squares exactly") {
  RandomSource rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto probs = sample_simplex_on_support(4, {0, 1, 2, 3}, rng);
    const PureState s = PureState::from_probabilities(probs);
    std::vector<double> sq;
    for (double a : s.amplitudes()) sq.push_back(a * a);
    CHECK(schmidt_of_state(s) == make_schmidt_vector(sq));
  }
}

TEST_CASE("singular_values examples") {
  CHECK(singular_values(Matrix::identity(3)) == std::vector<double>{1, 1, 1});
  const std::vector<double> diag{3, 2, 1};
  CHECK(singular_values(Matrix::diagonal(diag)) == std::vector<double>{3, 2, 1});
  const auto swap = singular_values(Matrix(2, 2, {0, 1, 1, 0}));
  CHECK(swap[0] == Approx(1.0));
  CHECK(swap[1] == Approx(1.0));
  CHECK_THROWS_AS(singular_values(Matrix(1, 1, {INFINITY})), InputError);
  CHECK_THROWS_AS(singular_values(Matrix()), InputError);
}

TEST_CASE("Jacobi SVD agrees with Eigen's JacobiSVD and is transpose-invariant") {
  RandomSource rng(2024);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + rng.next_u64() % 6;
    const std::size_t cols = 1 + rng.next_u64() % 6;
    std::vector<double> data(rows * cols);
    for (double& x : data) x = 2.0 * rng.uniform() - 1.0;
    // Every third matrix gets a rank deficiency.
    if (t % 3 == 0 && rows > 1) {
      for (std::size_t c = 0; c < cols; ++c) data[cols + c] = 0.5 * data[c];
    }
    const Matrix m(rows, cols, data);

    Eigen::MatrixXd e(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) e(r, c) = m(r, c);
    const Eigen::VectorXd expected = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues();

    const auto got = singular_values(m);
    const auto got_t = singular_values(m.transposed());
    REQUIRE(got.size() == static_cast<std::size_t>(expected.size()));
    double frob = 0.0, sum_sq = 0.0;
    for (double x : data) frob += x * x;
    for (std::size_t k = 0; k < got.size(); ++k) {
      CHECK(std::abs(got[k] - expected[static_cast<Eigen::Index>(k)]) <= 1e-12);
      CHECK(std::abs(got[k] - got_t[k]) <= 1e-12);
      if (k + 1 < got.size()) CHECK(got[k] >= got[k + 1]);
      sum_sq += got[k] * got[k];
    }
    CHECK(std::abs(sum_sq - frob) <= 1e-12 * std::max(1.0, frob));
  }
}

TEST_CASE("Jacobi SVD vectors diagonalize the Gram matrix") {
  const Matrix m(3, 2, {1, 2, 3, 4, 5, 6});
  const SvdResult r = jacobi_svd(m);
  // m^T m = V diag(s^2) V^T
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      double gram = 0.0, rebuilt = 0.0;
      for (std::size_t k = 0; k < 3; ++k) gram += m(k, i) * m(k, j);
      for (std::size_t k = 0; k < 2; ++k) rebuilt += r.vectors(i, k) * r.values[k] * r.values[k] * r.vectors(j, k);
      CHECK(std::abs(gram - rebuilt) <= 1e-12 * 100.0);
    }
  }
}

TEST_CASE("simplex sampling") {
  RandomSource a(7), b(7);
  CHECK(fixtures::to_vec(sample_schmidt_simplex(1, a)) == std::vector<double>{1.0});
  CHECK_FALSE(sample_schmidt_simplex(3, a) == sample_schmidt_simplex(3, b));  // a has advanced, b has not
  RandomSource c(7), d(7);
  CHECK(sample_schmidt_simplex(3, c) == sample_schmidt_simplex(3, d));
  CHECK_THROWS_AS(sample_schmidt_simplex(0, c), InputError);

  RandomSource s(99);
  for (int t = 0; t < 1000; ++t) {
    const auto v = sample_schmidt_simplex(3, s, true);
    check_schmidt_invariants(v);
    CHECK(v[2] >= kStrictGap);
    CHECK(v[0] - v[1] >= kStrictGap);
    CHECK(v[1] - v[2] >= kStrictGap);
  }
}

TEST_CASE("flat Dirichlet: mean of the largest of three entries is 11/18") {
  RandomSource rng(12345);
  constexpr int n = 100000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t) sum += sample_schmidt_simplex(3, rng)[0];
  CHECK(std::abs(sum / n - 11.0 / 18.0) <= 0.01);
}

TEST_CASE("random streams are reproducible and separated") {
  RandomSource a(5, 1), b(5, 1), c(5, 2);
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  RandomSource base(5);
  RandomSource s1 = base.substream(3), s2 = base.substream(3), s3 = base.substream(4);
  const auto y = s1.next_u64();
  CHECK(y == s2.next_u64());
  CHECK(y != s3.next_u64());
  for (int t = 0; t < 1000; ++t) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const Weights w = sample_weights(a);
    CHECK(w.alpha > 0.0);
    CHECK(w.alpha < 1.0);
    CHECK(std::abs(w.alpha * w.alpha + w.beta * w.beta - 1.0) <= 1e-12);
  }
}

TEST_CASE("support sampling leaves labels outside the support at zero") {
  RandomSource rng(3);
  const auto p = sample_simplex_on_support(3, {0, 2}, rng);
  CHECK(p[1] == 0.0);
  CHECK(p[0] > 0.0);
  CHECK(p[0] + p[2] == Approx(1.0));
  CHECK_THROWS_AS(sample_simplex_on_support(3, {}, rng), InputError);
  CHECK_THROWS_AS(sample_simplex_on_support(3, {3}, rng), InputError);
}
