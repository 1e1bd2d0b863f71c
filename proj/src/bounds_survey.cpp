#include <algorithm>
#include <cstddef>
#include <limits>
#include <sstream>

#include "superlocc/bounds.hpp"
#include "superlocc/errors.hpp"
#include "superlocc/format.hpp"

namespace superlocc {

namespace {

constexpr std::size_t kDim = 3;
// Samples per parallel work block. Block boundaries are fixed, so the merged
// summary does not depend on the worker count.
constexpr std::size_t kBlock = 512;

PureState draw_component(std::size_t support_mask, RandomSource& rng, bool orthogonal_only) {
  if (!orthogonal_only) {
    const SchmidtVector v = sample_schmidt_simplex(kDim, rng);
    return PureState::from_probabilities(v.probs());
  }
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < kDim; ++i) {
    if (support_mask & (std::size_t{1} << i)) support.push_back(i);
  }
  return PureState::from_probabilities(sample_simplex_on_support(kDim, support, rng));
}

// psi on a random non-empty proper subset of the labels, phi on the rest.
std::pair<PureState, PureState> draw_components(RandomSource& rng, bool orthogonal_only) {
  constexpr std::size_t kFull = (std::size_t{1} << kDim) - 1;
  const std::size_t mask = orthogonal_only ? 1 + rng.next_u64() % (kFull - 1) : kFull;
  PureState psi = draw_component(mask, rng, orthogonal_only);
  PureState phi = draw_component(kFull & ~mask, rng, orthogonal_only);
  return {std::move(psi), std::move(phi)};
}

void check_filter(const SurveyFilter& filter, std::span<const BoundId> theorems) {
  const bool needs_delta = std::any_of(theorems.begin(), theorems.end(),
                                       [](BoundId id) { return id == BoundId::T5 || id == BoundId::T6; });
  if (needs_delta && (!(filter.delta >= 0.0) || filter.delta == 1.0)) {
    throw InputError(ErrorKind::InvalidParameter, "survey: Renyi order must be >= 0 and != 1");
  }
  if (!(filter.base > 1.0)) throw InputError(ErrorKind::InvalidParameter, "survey: log base must be > 1");
}

struct Partial {
  std::vector<TheoremSummary> theorems;
};

Partial empty_partial(std::span<const BoundId> theorems) {
  Partial p;
  for (BoundId id : theorems) {
    TheoremSummary t;
    t.theorem = id;
    t.worst_margin = std::numeric_limits<double>::infinity();
    p.theorems.push_back(std::move(t));
  }
  return p;
}

void accumulate(Partial& p, std::size_t index, const RandomSource& rng, const SurveyFilter& filter,
                std::span<const BoundId> theorems) {
  const auto [inst, partner] = sample_bound_instances(rng, index, filter);
  for (std::size_t k = 0; k < theorems.size(); ++k) {
    BoundReport report = evaluate_bound(theorems[k], inst, &partner);
    TheoremSummary& t = p.theorems[k];
    ++t.n;
    if (report.holds) ++t.held;
    if (report.orthogonal) {
      ++t.orthogonal_n;
      if (report.holds) ++t.orthogonal_held;
    }
    t.worst_margin = std::min(t.worst_margin, report.worst_margin());
    if (!report.holds && t.certificates.size() < kMaxCertificates) {
      t.certificate_ids.push_back(index);
      t.certificates.push_back(std::move(report));
    }
  }
}

// Appends `later` (covering higher instance indices) onto `into`.
void merge(Partial& into, Partial&& later) {
  for (std::size_t k = 0; k < into.theorems.size(); ++k) {
    TheoremSummary& a = into.theorems[k];
    TheoremSummary& b = later.theorems[k];
    a.n += b.n;
    a.held += b.held;
    a.orthogonal_n += b.orthogonal_n;
    a.orthogonal_held += b.orthogonal_held;
    a.worst_margin = std::min(a.worst_margin, b.worst_margin);
    for (std::size_t c = 0; c < b.certificates.size() && a.certificates.size() < kMaxCertificates; ++c) {
      a.certificate_ids.push_back(b.certificate_ids[c]);
      a.certificates.push_back(std::move(b.certificates[c]));
    }
  }
}

SurveySummary wrap(const RandomSource& rng, std::size_t n, const SurveyFilter& filter, Partial&& p) {
  SurveySummary s;
  s.seed = rng.seed();
  s.stream = rng.stream();
  s.n = n;
  s.filter = filter;
  s.theorems = std::move(p.theorems);
  return s;
}

}  // namespace

std::pair<BoundInstance, BoundInstance> sample_bound_instances(const RandomSource& rng, std::size_t index,
                                                               const SurveyFilter& filter) {
  RandomSource local = rng.substream(index);
  const Weights w = sample_weights(local);
  auto [psi, phi] = draw_components(local, filter.orthogonal_only);
  auto [psi_p, phi_p] = draw_components(local, filter.orthogonal_only);

  BoundOptions options;
  options.delta = filter.delta;
  options.log_base = filter.base;
  options.exclude_zero_coefficients = filter.exclude_zero_coefficients;
  return {BoundInstance::make({w.alpha, w.beta, std::move(psi), std::move(phi)}, options),
          BoundInstance::make({w.alpha, w.beta, std::move(psi_p), std::move(phi_p)}, options)};
}

SurveySummary survey_bounds(const RandomSource& rng, std::size_t n, const SurveyFilter& filter,
                            std::span<const BoundId> theorems, Execution exec) {
  if (n == 0) throw InputError(ErrorKind::InvalidParameter, "survey_bounds: n must be >= 1");
  check_filter(filter, theorems);

  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<Partial> partials(blocks, empty_partial(theorems));
  const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic) num_threads(exec.threads())
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    Partial& p = partials[static_cast<std::size_t>(b)];
    for (std::size_t i = lo; i < hi; ++i) accumulate(p, i, rng, filter, theorems);
  }

  Partial total = empty_partial(theorems);
  for (Partial& p : partials) merge(total, std::move(p));
  return wrap(rng, n, filter, std::move(total));
}

namespace serial {

SurveySummary survey_bounds(const RandomSource& rng, std::size_t n, const SurveyFilter& filter,
                            std::span<const BoundId> theorems) {
  if (n == 0) throw InputError(ErrorKind::InvalidParameter, "survey_bounds: n must be >= 1");
  check_filter(filter, theorems);
  Partial total = empty_partial(theorems);
  for (std::size_t i = 0; i < n; ++i) accumulate(total, i, rng, filter, theorems);
  return wrap(rng, n, filter, std::move(total));
}

}  // namespace serial

std::string survey_to_csv(const SurveySummary& summary) {
  std::ostringstream out;
  out << "theorem,n,hold_rate,worst_margin,certificate_ids,orthogonal_n,orthogonal_hold_rate\n";
  for (const TheoremSummary& t : summary.theorems) {
    out << to_string(t.theorem) << ',' << t.n << ',' << format_exact(t.hold_rate()) << ','
        << format_exact(t.worst_margin) << ',';
    for (std::size_t i = 0; i < t.certificate_ids.size(); ++i) out << (i ? ";" : "") << t.certificate_ids[i];
    out << ',' << t.orthogonal_n << ',' << format_exact(t.orthogonal_hold_rate()) << '\n';
  }
  return out.str();
}

}  // namespace superlocc
