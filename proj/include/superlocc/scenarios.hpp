#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "superlocc/majorization.hpp"
#include "superlocc/parallel.hpp"
#include "superlocc/random.hpp"
#include "superlocc/superposition.hpp"

namespace superlocc {

/// Strict comparisons in row conditions need this much separation.
inline constexpr double kConditionGap = 1e-12;

// Case I:   (psi,psi') incomparable, (phi,phi') incomparable.
// Case II:  (psi,psi') comparable,   (phi,phi') incomparable.
// Case III: (psi,psi') incomparable, phi' = phi.
// Case IV:  (psi,psi') comparable,   phi' = phi.
// Case V:   (psi,psi') comparable,   (phi,phi') comparable.
enum class Case { I, II, III, IV, V };

std::string_view to_string(Case c);
Case case_from_string(std::string_view s);

/// Relation between the weights of the two superpositions.
enum class WeightRelation { Equal, AlphaGreater, AlphaLess, Any };

enum class Weight { Alpha, Beta, AlphaPrime, BetaPrime };

/// Components: psi (a_i), phi (b_i), psi' (alpha_i), phi' (beta_i).
enum class Component { Psi, Phi, PsiPrime, PhiPrime };

struct Coefficient {
  Component component;
  std::size_t index;
};

enum class Relation { Less, Greater, NotEqual };

/// Product of squared weights and named coefficients, e.g. beta'^2 * beta_0
/// or a_2 * b_2.
struct ProductTerm {
  std::vector<Weight> squared_weights;
  std::vector<Coefficient> coefficients;
};

struct ProductCompare {
  ProductTerm lhs;
  Relation op;
  ProductTerm rhs;
};

/// (u sqrt(x) + v sqrt(y))^2 op threshold.
struct AmplitudeHalf {
  Weight u;
  Coefficient x;
  Weight v;
  Coefficient y;
  Relation op;
  double threshold = 0.5;
};

struct RowCondition {
  std::variant<ProductCompare, AmplitudeHalf> form;
  std::string text;
};

enum class PairClass { Comparable, Incomparable };
enum class Order { Greater, Less, Tie };

std::string_view to_string(PairClass p);
std::string_view to_string(Order o);

struct ScenarioRow {
  Case scenario = Case::I;
  std::string id;
  WeightRelation weights = WeightRelation::Equal;
  // Disjunction of conjunctions; empty means no extra conditions.
  std::vector<std::vector<RowCondition>> alternatives;
  bool conditions_unspecified = false;
  std::optional<PairClass> predicted_pair;
  std::optional<Order> predicted_concurrence_order;  // C2(Gamma) vs C2(Gamma')
  std::string note;
};

/// Parses the row-definition document. One row per line:
///
///   case | id | weights | conditions | pair | concurrence [| note]
///
/// weights: equal, alpha>alpha', alpha<alpha', any
/// conditions: '-', 'unspecified', or groups joined by OR, each a
///   ';'-separated list of `F*F*.. OP F*F*..` (F a squared weight like
///   beta'^2 or a coefficient a0 b0 ap0 bp0) or
///   `(U*sqrt(X)+V*sqrt(Y))^2 OP 0.5`, OP one of < > <>
/// pair: COMPARABLE, INCOMPARABLE, '-'
/// concurrence: C2(G)>C2(G'), C2(G)<C2(G'), '-'
///
/// Blank lines and '#' comments are skipped. Throws InputError with the line
/// number on any schema violation.
std::vector<ScenarioRow> load_scenario_rows(std::string_view document);

/// The shipped row definitions (data/scenario_rows.txt), compiled in.
std::string_view builtin_scenario_rows();

/// Concrete weights and component states for one row check.
struct ScenarioInstance {
  double alpha = 1.0, beta = 0.0, alpha_p = 1.0, beta_p = 0.0;
  PureState psi, phi, psi_p, phi_p;

  double weight(Weight w) const;
  const PureState& component(Component c) const;
  /// Squared amplitude at a basis label.
  double coefficient(Coefficient c) const;

  friend bool operator==(const ScenarioInstance&, const ScenarioInstance&) = default;
};

/// Weights and strictly ordered 3x3 components (largest coefficient at label
/// 0) drawn for a case. alpha and alpha' are drawn independently, except under
/// WeightRelation::Equal where alpha' = alpha. In Cases III and IV phi' is phi.
ScenarioInstance sample_scenario_instance(Case scenario, WeightRelation weights, RandomSource& rng);

bool check_row_conditions(const ScenarioRow& row, const ScenarioInstance& inst);

struct Observation {
  Verdict verdict = Verdict::Incomparable;  // Gamma vs Gamma'
  PairClass pair = PairClass::Incomparable;
  Order concurrence_order = Order::Tie;
  double c2_gamma = 0.0, c2_gamma_p = 0.0;
  double overlap = 0.0, overlap_p = 0.0;
  // Sorting the superposed squared amplitudes permuted basis labels.
  bool permuted = false;

  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation observe(const ScenarioInstance& inst);

struct WitnessResult {
  bool found = false;
  std::optional<ScenarioInstance> instance;
  std::optional<Observation> observed;
  std::optional<PairClass> predicted_pair;
  std::optional<Order> predicted_order;
  std::size_t samples_tried = 0;
  std::size_t sample_index = 0;

  bool pair_agrees() const;
  bool order_agrees() const;
};

/// Stream for a row, derived from its case and id only.
RandomSource row_stream(const RandomSource& rng, const ScenarioRow& row);

/// Samples rng.substream(i) for i = 0, 1, ... until the row's conditions hold
/// or the budget runs out. The first passing index wins.
WitnessResult search_witness(const ScenarioRow& row, std::size_t budget, const RandomSource& rng,
                             Execution exec = {});

/// A sampled instance whose observation disagreed with the row's prediction.
struct ScenarioCertificate {
  Case scenario = Case::I;
  std::string row_id;
  std::size_t sample_index = 0;
  ScenarioInstance instance;
  Observation observed;
};

/// Recomputes the observation; true if it matches the certificate.
bool replay(const ScenarioCertificate& cert);

struct RowReport {
  ScenarioRow row;
  std::size_t samples = 0;
  std::size_t satisfiable = 0;
  std::size_t agreement = 0;
  std::size_t pair_agreement = 0;
  std::size_t order_agreement = 0;
  std::array<std::size_t, 3> order_counts{};  // Greater, Less, Tie
  std::size_t observed_incomparable = 0;
  std::size_t permuted = 0;
  double overlap_sum = 0.0;  // sum over satisfying samples of (|<psi|phi>| + |<psi'|phi'>|) / 2
  std::vector<std::size_t> disagreement_ids;  // first kMaxRowCertificates
  std::vector<ScenarioCertificate> certificates;

  double mean_abs_overlap() const { return satisfiable ? overlap_sum / static_cast<double>(satisfiable) : 0.0; }
};

inline constexpr std::size_t kMaxRowCertificates = 10;

struct TableReport {
  std::uint64_t seed = 0;
  std::size_t samples_per_row = 0;
  std::vector<RowReport> rows;
};

/// Draws samples_per_row instances per row and tallies predictions against
/// observations. Throws InputError when samples_per_row == 0.
TableReport validate_tables(std::span<const ScenarioRow> rows, std::size_t samples_per_row, const RandomSource& rng,
                            Execution exec = {});

namespace serial {
WitnessResult search_witness(const ScenarioRow& row, std::size_t budget, const RandomSource& rng);
TableReport validate_tables(std::span<const ScenarioRow> rows, std::size_t samples_per_row, const RandomSource& rng);
}  // namespace serial

std::string table_report_to_csv(const TableReport& report);

}  // namespace superlocc
