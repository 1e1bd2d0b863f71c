#include "superlocc/random.hpp"

#include <cmath>

#include "superlocc/errors.hpp"

namespace superlocc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(splitmix64(seed ^ splitmix64(stream))) {}

RandomSource RandomSource::substream(std::uint64_t index) const {
  return RandomSource(seed_, splitmix64(stream_ + 0x632BE59BD9B4E019ULL) ^ splitmix64(~index));
}

double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomSource::uniform_open() {
  double u = 0.0;
  while (u == 0.0) u = uniform();
  return u;
}

double RandomSource::exponential() { return -std::log(uniform_open()); }

namespace {

bool strictly_spread(const SchmidtVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < kStrictGap) return false;
    if (i + 1 < v.size() && v[i] - v[i + 1] < kStrictGap) return false;
  }
  return true;
}

}  // namespace

SchmidtVector sample_schmidt_simplex(std::size_t d, RandomSource& rng, bool strict) {
  if (d == 0) throw InputError(ErrorKind::InvalidParameter, "simplex dimension must be positive");
  std::vector<double> draw(d);
  for (;;) {
    for (double& x : draw) x = rng.exponential();
    SchmidtVector v = make_schmidt_vector(draw);
    if (!strict || strictly_spread(v)) return v;
  }
}

std::vector<double> sample_simplex_on_support(std::size_t d, const std::vector<std::size_t>& support,
                                              RandomSource& rng) {
  if (support.empty()) throw InputError(ErrorKind::EmptyInput, "support must be non-empty");
  std::vector<double> probs(d, 0.0);
  double total = 0.0;
  for (std::size_t i : support) {
    if (i >= d) throw InputError(ErrorKind::DimensionMismatch, "support label out of range");
    probs[i] = rng.exponential();
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

Weights sample_weights(RandomSource& rng) {
  double alpha = 0.0;
  while (alpha == 0.0 || alpha >= 1.0) alpha = rng.uniform_open();
  return {alpha, std::sqrt(1.0 - alpha * alpha)};
}

}  // namespace superlocc
