#pragma once

#include <cstdint>
#include <random>

#include "superlocc/state.hpp"

namespace superlocc {

/// Reproducible random stream identified by (seed, stream).
///
/// Parallel sweeps never share a source: sample i of a sweep draws from
/// substream(i), so results do not depend on how samples land on workers.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  RandomSource substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  double exponential();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

inline constexpr double kStrictGap = 1e-6;

/// Uniform (flat Dirichlet) draw from the d-dimensional probability simplex,
/// sorted. With strict set, redraws until every entry and every adjacent gap
/// is at least kStrictGap.
SchmidtVector sample_schmidt_simplex(std::size_t d, RandomSource& rng, bool strict = false);

/// Like sample_schmidt_simplex but in a random (unsorted) order over `support`
/// labels out of `d`; the rest are zero. Used for disjoint-support sampling.
std::vector<double> sample_simplex_on_support(std::size_t d, const std::vector<std::size_t>& support,
                                              RandomSource& rng);

struct Weights {
  double alpha = 1.0;
  double beta = 0.0;
};

/// alpha ~ U(0,1) (open), beta = sqrt(1 - alpha^2).
Weights sample_weights(RandomSource& rng);

}  // namespace superlocc
