#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "superlocc/bounds.hpp"
#include "superlocc/scenarios.hpp"
#include "superlocc/state.hpp"

namespace superlocc {

// State files are JSON:
//
//   {"version": 1, "form": "vector", "amplitudes": [0.6, 0.8], "label": "x"}
//   {"version": 1, "form": "matrix", "amplitudes": [[0.5, 0.5], [0.5, 0.5]]}
//
// Numbers are emitted with 17 significant digits, so parse(emit(s)) == s.

inline constexpr int kStateFileVersion = 1;
/// Norm deviations up to this are renormalized with a warning.
inline constexpr double kRenormalizeLimit = 1e-9;

struct ParseOptions {
  // Renormalize any finite non-zero norm instead of rejecting it.
  bool renormalize = false;
};

struct ParsedState {
  PureState state;
  std::optional<std::string> label;
  std::vector<std::string> warnings;
};

/// Throws InputError(Malformed) on bad JSON or shape, InvalidState when the
/// norm is off by more than kRenormalizeLimit and renormalize is not set.
ParsedState parse_state_file(std::string_view text, const ParseOptions& options = {});
std::string emit_state_file(const PureState& state, const std::optional<std::string>& label = {});

/// Bound instance documents:
///
///   {"version": 1, "alpha": a, "beta": b, "psi": STATE, "phi": STATE,
///    "delta": 2, "log_base": 2, "exclude_zero_coefficients": false,
///    "partner": {"alpha": a', "beta": b', "psi": STATE, "phi": STATE}}
///
/// STATE is an embedded state document. delta, log_base, the flag and
/// partner are optional.
struct BoundInstanceFile {
  BoundInstance instance;
  std::optional<BoundInstance> partner;
};

BoundInstanceFile parse_bound_instance(std::string_view text, const ParseOptions& options = {});
std::string emit_bound_instance(const BoundInstance& instance, const BoundInstance* partner = nullptr);

/// A bound counterexample: the instance document plus the recorded margins.
std::string emit_bound_certificate(const BoundReport& report, std::size_t index);
/// Re-evaluates a certificate document; true if every recorded value matches.
bool replay_bound_certificate(std::string_view text);

std::string emit_scenario_certificate(const ScenarioCertificate& cert);
ScenarioCertificate parse_scenario_certificate(std::string_view text);

/// Documents written one per line (JSON lines).
std::vector<std::string> split_lines(std::string_view text);

}  // namespace superlocc
