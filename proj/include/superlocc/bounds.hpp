#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "superlocc/parallel.hpp"
#include "superlocc/random.hpp"
#include "superlocc/superposition.hpp"

namespace superlocc {

/// A bound "holds" when every margin is at least -kBoundSlack.
inline constexpr double kBoundSlack = 1e-9;

enum class BoundId { T1, T2, T3, T4, T5, T6, T7, T8, T9, Chain11 };

inline constexpr std::array<BoundId, 10> kAllBounds = {BoundId::T1, BoundId::T2, BoundId::T3, BoundId::T4,
                                                      BoundId::T5, BoundId::T6, BoundId::T7, BoundId::T8,
                                                      BoundId::T9, BoundId::Chain11};

std::string_view to_string(BoundId id);
BoundId bound_from_string(std::string_view s);

struct BoundOptions {
  std::optional<double> delta;  // Renyi order for T5/T6
  double log_base = 2.0;        // log base for T3/T4
  // Drop zero entries from the min/max coefficient scans of T2, T4, T6, T9.
  bool exclude_zero_coefficients = false;

  friend bool operator==(const BoundOptions&, const BoundOptions&) = default;
};

struct BoundInstance {
  SuperpositionSpec spec;
  SuperpositionResult gamma;
  BoundOptions options;

  static BoundInstance make(SuperpositionSpec spec, BoundOptions options = {});
};

/// Both sides of one bound evaluated on one instance.
///
/// Lower side reads lower_lhs <= lower_rhs, upper side upper_lhs <= upper_rhs.
/// The measure of the superposed state sits on the inner end of each side, and
/// margins are rhs - lhs, so a negative margin is a violation. Chain11 carries
/// its six terms and five adjacent-link margins instead.
struct BoundReport {
  BoundId theorem = BoundId::T1;
  std::optional<double> lower_lhs, lower_rhs, upper_lhs, upper_rhs;
  std::optional<double> margin_lower, margin_upper;
  std::vector<double> chain_terms;
  std::vector<double> chain_margins;
  bool holds = true;
  bool orthogonal = true;
  std::vector<std::string> notes;

  // Snapshot: enough to re-derive every field.
  BoundInstance instance;
  std::optional<BoundInstance> partner;  // Chain11 only

  /// Smallest present margin (+inf if none).
  double worst_margin() const;
};

std::pair<BoundReport, BoundReport> eval_negativity_bounds(const BoundInstance& inst);
std::pair<BoundReport, BoundReport> eval_logneg_bounds(const BoundInstance& inst);
std::pair<BoundReport, BoundReport> eval_renyi_bounds(const BoundInstance& inst);
std::tuple<BoundReport, BoundReport, BoundReport> eval_entropy_bounds(const BoundInstance& inst);

/// The six-term negativity chain for two superpositions sharing the same
/// weights. Terms are transcribed literally, including the mixed min/max
/// labels on the upper end.
BoundReport eval_chain_inequality(const BoundInstance& inst_a, const BoundInstance& inst_b);

/// Evaluate one bound. Chain11 needs a partner instance.
BoundReport evaluate_bound(BoundId id, const BoundInstance& inst, const BoundInstance* partner = nullptr);

/// Re-evaluate a report from its snapshot.
BoundReport replay(const BoundReport& report);

struct SurveyFilter {
  bool orthogonal_only = false;
  double delta = 2.0;
  double base = 2.0;
  bool exclude_zero_coefficients = false;
};

inline constexpr std::size_t kMaxCertificates = 10;

struct TheoremSummary {
  BoundId theorem = BoundId::T1;
  std::size_t n = 0;
  std::size_t held = 0;
  std::size_t orthogonal_n = 0;
  std::size_t orthogonal_held = 0;
  double worst_margin = 0.0;
  std::vector<std::size_t> certificate_ids;  // instance indices, first kMaxCertificates violations
  std::vector<BoundReport> certificates;

  double hold_rate() const { return n ? static_cast<double>(held) / static_cast<double>(n) : 0.0; }
  double orthogonal_hold_rate() const {
    return orthogonal_n ? static_cast<double>(orthogonal_held) / static_cast<double>(orthogonal_n) : 0.0;
  }
};

struct SurveySummary {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::size_t n = 0;
  SurveyFilter filter;
  std::vector<TheoremSummary> theorems;
};

/// Two 3x3 shared-basis instances with common weights, drawn from
/// rng.substream(index). With orthogonal_only, psi and phi (and psi', phi')
/// get disjoint supports.
std::pair<BoundInstance, BoundInstance> sample_bound_instances(const RandomSource& rng, std::size_t index,
                                                               const SurveyFilter& filter);

/// Throws InputError when n == 0.
SurveySummary survey_bounds(const RandomSource& rng, std::size_t n, const SurveyFilter& filter,
                            std::span<const BoundId> theorems = kAllBounds, Execution exec = {});

namespace serial {
SurveySummary survey_bounds(const RandomSource& rng, std::size_t n, const SurveyFilter& filter,
                            std::span<const BoundId> theorems = kAllBounds);
}  // namespace serial

/// Columns: theorem,n,hold_rate,worst_margin,certificate_ids,orthogonal_n,orthogonal_hold_rate
std::string survey_to_csv(const SurveySummary& summary);

}  // namespace superlocc
