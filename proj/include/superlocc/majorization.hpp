#pragma once

#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "superlocc/parallel.hpp"
#include "superlocc/state.hpp"

namespace superlocc {

/// Slack on every partial-sum comparison; within-slack counts as "<=".
inline constexpr double kMajorizationSlack = 1e-12;

enum class Verdict { Equivalent, ConvertibleAtoB, ConvertibleBtoA, Incomparable };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

inline bool comparable(Verdict v) { return v != Verdict::Incomparable; }

/// Verdict with A and B swapped.
Verdict swapped(Verdict v);

/// True iff x is majorized by y (x ≺ y): every prefix sum of x is at most
/// the matching prefix sum of y. The shorter vector is zero-padded.
bool majorizes(const SchmidtVector& y, const SchmidtVector& x);

/// Nielsen's criterion in both directions. ConvertibleAtoB means chi can be
/// turned into eta with certainty by LOCC (lambda_chi ≺ lambda_eta).
Verdict classify_pair(const SchmidtVector& chi, const SchmidtVector& eta);

/// Sufficient test for incomparability of two strictly ordered, strictly
/// positive 3-dimensional vectors: one vector has both the larger top entry
/// and the larger bottom entry. Throws InputError if d != 3 or ordering is
/// not strict.
bool incomparable_3x3_shortcut(const SchmidtVector& gamma, const SchmidtVector& delta);

using SchmidtPair = std::pair<SchmidtVector, SchmidtVector>;

/// Batch classification kernel (OpenMP over pairs).
std::vector<Verdict> classify_batch(std::span<const SchmidtPair> pairs, Execution exec = {});

namespace serial {
std::vector<Verdict> classify_batch(std::span<const SchmidtPair> pairs);
}  // namespace serial

}  // namespace superlocc
