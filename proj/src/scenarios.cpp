#include "superlocc/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <sstream>
#include <string>

#include "superlocc/errors.hpp"
#include "superlocc/format.hpp"
#include "superlocc/measures.hpp"

namespace superlocc {

namespace {

constexpr std::size_t kDim = 3;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) return out;
    pos = next + sep.size();
  }
}

class RowParser {
 public:
  explicit RowParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(ErrorKind::Malformed, "row definitions, line " + std::to_string(line_) + ": " + what);
  }

  Case scenario(std::string_view s) const {
    try {
      return case_from_string(s);
    } catch (const InputError&) {
      fail("unknown case '" + std::string(s) + "'");
    }
  }

  WeightRelation weights(std::string_view s) const {
    if (s == "equal") return WeightRelation::Equal;
    if (s == "alpha>alpha'") return WeightRelation::AlphaGreater;
    if (s == "alpha<alpha'") return WeightRelation::AlphaLess;
    if (s == "any") return WeightRelation::Any;
    fail("unknown weight relation '" + std::string(s) + "'");
  }

  std::optional<Weight> weight_name(std::string_view s) const {
    if (s == "alpha") return Weight::Alpha;
    if (s == "beta") return Weight::Beta;
    if (s == "alpha'") return Weight::AlphaPrime;
    if (s == "beta'") return Weight::BetaPrime;
    return std::nullopt;
  }

  Weight weight(std::string_view s) const {
    if (auto w = weight_name(s)) return *w;
    fail("unknown weight '" + std::string(s) + "'");
  }

  std::optional<Coefficient> coefficient_name(std::string_view s) const {
    if (s.empty() || !std::isdigit(static_cast<unsigned char>(s.back()))) return std::nullopt;
    const auto name = s.substr(0, s.size() - 1);
    const std::size_t index = static_cast<std::size_t>(s.back() - '0');
    Component c;
    if (name == "a") c = Component::Psi;
    else if (name == "b") c = Component::Phi;
    else if (name == "ap") c = Component::PsiPrime;
    else if (name == "bp") c = Component::PhiPrime;
    else return std::nullopt;
    if (index >= kDim) fail("coefficient index out of range in '" + std::string(s) + "'");
    return Coefficient{c, index};
  }

  Coefficient coefficient(std::string_view s) const {
    if (auto c = coefficient_name(s)) return *c;
    fail("unknown coefficient '" + std::string(s) + "'");
  }

  ProductTerm product(std::string_view s) const {
    ProductTerm term;
    for (std::string_view factor : split(s, "*")) {
      if (factor.size() > 2 && factor.substr(factor.size() - 2) == "^2") {
        term.squared_weights.push_back(weight(factor.substr(0, factor.size() - 2)));
      } else {
        term.coefficients.push_back(coefficient(factor));
      }
    }
    if (term.coefficients.empty()) fail("product term without a coefficient: '" + std::string(s) + "'");
    return term;
  }

  RowCondition condition(std::string_view text) const {
    const auto op_pos = text.find_first_of("<>");
    if (op_pos == std::string_view::npos) fail("condition without comparison: '" + std::string(text) + "'");
    Relation op = text[op_pos] == '<' ? Relation::Less : Relation::Greater;
    std::size_t op_len = 1;
    if (text.substr(op_pos, 2) == "<>") {
      op = Relation::NotEqual;
      op_len = 2;
    }
    const auto lhs = trim(text.substr(0, op_pos));
    const auto rhs = trim(text.substr(op_pos + op_len));
    if (rhs.find_first_of("<>") != std::string_view::npos) fail("more than one comparison: '" + std::string(text) + "'");

    if (!lhs.empty() && lhs.front() == '(') {
      static const std::regex pattern(R"(^\(\s*([a-z']+)\s*\*\s*sqrt\(\s*([a-z]+[0-9])\s*\)\s*\+\s*([a-z']+)\s*\*\s*sqrt\(\s*([a-z]+[0-9])\s*\)\s*\)\s*\^2$)");
      std::match_results<std::string_view::const_iterator> m;
      if (!std::regex_match(lhs.begin(), lhs.end(), m, pattern)) {
        fail("expected (U*sqrt(X)+V*sqrt(Y))^2, got '" + std::string(lhs) + "'");
      }
      AmplitudeHalf h{weight(std::string_view(&*m[1].first, m[1].length())),
                      coefficient(std::string_view(&*m[2].first, m[2].length())),
                      weight(std::string_view(&*m[3].first, m[3].length())),
                      coefficient(std::string_view(&*m[4].first, m[4].length())), op, 0.0};
      const std::string number(rhs);
      char* end = nullptr;
      h.threshold = std::strtod(number.c_str(), &end);
      if (number.empty() || *end != '\0') fail("bad threshold '" + number + "'");
      return {h, std::string(text)};
    }
    if (op == Relation::NotEqual) fail("'<>' only applies to amplitude conditions");
    return {ProductCompare{product(lhs), op, product(rhs)}, std::string(text)};
  }

  std::vector<std::vector<RowCondition>> conditions(std::string_view s, bool& unspecified) const {
    unspecified = false;
    std::vector<std::vector<RowCondition>> alternatives;
    if (s == "-") return alternatives;
    if (s == "unspecified") {
      unspecified = true;
      return alternatives;
    }
    for (std::string_view group : split(s, " OR ")) {
      std::vector<RowCondition> all;
      for (std::string_view c : split(group, ";")) {
        if (c.empty()) fail("empty condition");
        all.push_back(condition(c));
      }
      alternatives.push_back(std::move(all));
    }
    return alternatives;
  }

  std::optional<PairClass> pair(std::string_view s) const {
    if (s == "-") return std::nullopt;
    if (s == "COMPARABLE") return PairClass::Comparable;
    if (s == "INCOMPARABLE") return PairClass::Incomparable;
    fail("unknown pair nature '" + std::string(s) + "'");
  }

  std::optional<Order> order(std::string_view s) const {
    if (s == "-") return std::nullopt;
    if (s == "C2(G)>C2(G')") return Order::Greater;
    if (s == "C2(G)<C2(G')") return Order::Less;
    fail("unknown concurrence prediction '" + std::string(s) + "'");
  }

 private:
  std::size_t line_;
};

bool compare(double lhs, Relation op, double rhs) {
  switch (op) {
    case Relation::Less: return rhs - lhs > kConditionGap;
    case Relation::Greater: return lhs - rhs > kConditionGap;
    case Relation::NotEqual: return std::abs(lhs - rhs) > kConditionGap;
  }
  return false;
}

double evaluate(const ProductTerm& t, const ScenarioInstance& inst) {
  double v = 1.0;
  for (Weight w : t.squared_weights) v *= inst.weight(w) * inst.weight(w);
  for (Coefficient c : t.coefficients) v *= inst.coefficient(c);
  return v;
}

bool holds(const RowCondition& c, const ScenarioInstance& inst) {
  if (const auto* p = std::get_if<ProductCompare>(&c.form)) {
    return compare(evaluate(p->lhs, inst), p->op, evaluate(p->rhs, inst));
  }
  const auto& h = std::get<AmplitudeHalf>(c.form);
  const double s = inst.weight(h.u) * std::sqrt(inst.coefficient(h.x)) + inst.weight(h.v) * std::sqrt(inst.coefficient(h.y));
  return compare(s * s, h.op, h.threshold);
}

bool weights_match(WeightRelation rel, const ScenarioInstance& inst) {
  switch (rel) {
    case WeightRelation::Equal:
      return std::abs(inst.alpha - inst.alpha_p) <= kConditionGap && std::abs(inst.beta - inst.beta_p) <= kConditionGap;
    case WeightRelation::AlphaGreater:
      return inst.alpha - inst.alpha_p > kConditionGap && inst.beta_p - inst.beta > kConditionGap;
    case WeightRelation::AlphaLess:
      return inst.alpha_p - inst.alpha > kConditionGap && inst.beta - inst.beta_p > kConditionGap;
    case WeightRelation::Any: return true;
  }
  return false;
}

bool shares_phi(Case c) { return c == Case::III || c == Case::IV; }

bool case_preconditions(Case c, const ScenarioInstance& inst) {
  const bool psi_comparable = comparable(classify_pair(schmidt_of_state(inst.psi), schmidt_of_state(inst.psi_p)));
  if (shares_phi(c)) {
    if (!(inst.phi_p == inst.phi)) return false;
    return c == Case::III ? !psi_comparable : psi_comparable;
  }
  const bool phi_comparable = comparable(classify_pair(schmidt_of_state(inst.phi), schmidt_of_state(inst.phi_p)));
  switch (c) {
    case Case::I: return !psi_comparable && !phi_comparable;
    case Case::II: return psi_comparable && !phi_comparable;
    case Case::V: return psi_comparable && phi_comparable;
    default: return false;
  }
}

PureState draw_strict_component(RandomSource& rng) {
  return PureState::from_probabilities(sample_schmidt_simplex(kDim, rng, true).probs());
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool agrees(std::optional<PairClass> predicted, PairClass observed) { return !predicted || *predicted == observed; }
bool agrees(std::optional<Order> predicted, Order observed) { return !predicted || *predicted == observed; }

}  // namespace

std::string_view to_string(Case c) {
  switch (c) {
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
    case Case::IV: return "IV";
    case Case::V: return "V";
  }
  return "?";
}

Case case_from_string(std::string_view s) {
  for (Case c : {Case::I, Case::II, Case::III, Case::IV, Case::V}) {
    if (to_string(c) == s) return c;
  }
  throw InputError(ErrorKind::InvalidParameter, "unknown case '" + std::string(s) + "'");
}

std::string_view to_string(PairClass p) { return p == PairClass::Comparable ? "COMPARABLE" : "INCOMPARABLE"; }

std::string_view to_string(Order o) {
  switch (o) {
    case Order::Greater: return "greater";
    case Order::Less: return "less";
    case Order::Tie: return "tie";
  }
  return "?";
}

std::vector<ScenarioRow> load_scenario_rows(std::string_view document) {
  std::vector<ScenarioRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const auto end = document.find('\n', pos);
    const auto raw = document.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? document.size() + 1 : end + 1;
    ++line_no;

    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const RowParser parse(line_no);
    const auto fields = split(line, "|");
    if (fields.size() != 6 && fields.size() != 7) {
      parse.fail("expected 6 or 7 '|'-separated fields, got " + std::to_string(fields.size()));
    }
    ScenarioRow row;
    row.scenario = parse.scenario(fields[0]);
    row.id = std::string(fields[1]);
    if (row.id.empty()) parse.fail("empty row id");
    row.weights = parse.weights(fields[2]);
    row.alternatives = parse.conditions(fields[3], row.conditions_unspecified);
    row.predicted_pair = parse.pair(fields[4]);
    row.predicted_concurrence_order = parse.order(fields[5]);
    if (fields.size() == 7) row.note = std::string(fields[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

double ScenarioInstance::weight(Weight w) const {
  switch (w) {
    case Weight::Alpha: return alpha;
    case Weight::Beta: return beta;
    case Weight::AlphaPrime: return alpha_p;
    case Weight::BetaPrime: return beta_p;
  }
  return 0.0;
}

const PureState& ScenarioInstance::component(Component c) const {
  switch (c) {
    case Component::Psi: return psi;
    case Component::Phi: return phi;
    case Component::PsiPrime: return psi_p;
    case Component::PhiPrime: return phi_p;
  }
  return psi;
}

double ScenarioInstance::coefficient(Coefficient c) const {
  const double amp = component(c.component).amplitudes()[c.index];
  return amp * amp;
}

ScenarioInstance sample_scenario_instance(Case scenario, WeightRelation weights, RandomSource& rng) {
  ScenarioInstance inst;
  const Weights w = sample_weights(rng);
  const Weights wp = weights == WeightRelation::Equal ? w : sample_weights(rng);
  inst.alpha = w.alpha;
  inst.beta = w.beta;
  inst.alpha_p = wp.alpha;
  inst.beta_p = wp.beta;
  inst.psi = draw_strict_component(rng);
  inst.phi = draw_strict_component(rng);
  inst.psi_p = draw_strict_component(rng);
  inst.phi_p = shares_phi(scenario) ? inst.phi : draw_strict_component(rng);
  return inst;
}

bool check_row_conditions(const ScenarioRow& row, const ScenarioInstance& inst) {
  if (!weights_match(row.weights, inst)) return false;
  if (!case_preconditions(row.scenario, inst)) return false;
  if (row.alternatives.empty()) return true;
  return std::any_of(row.alternatives.begin(), row.alternatives.end(), [&](const auto& group) {
    return std::all_of(group.begin(), group.end(), [&](const RowCondition& c) { return holds(c, inst); });
  });
}

Observation observe(const ScenarioInstance& inst) {
  const auto [gamma, gamma_p] =
      superpose_pair_for_case({inst.alpha, inst.beta, inst.psi, inst.phi}, {inst.alpha_p, inst.beta_p, inst.psi_p, inst.phi_p});
  Observation o;
  o.verdict = classify_pair(gamma.schmidt, gamma_p.schmidt);
  o.pair = comparable(o.verdict) ? PairClass::Comparable : PairClass::Incomparable;
  o.c2_gamma = concurrence_squared(gamma.schmidt);
  o.c2_gamma_p = concurrence_squared(gamma_p.schmidt);
  if (o.c2_gamma - o.c2_gamma_p > kConditionGap) o.concurrence_order = Order::Greater;
  else if (o.c2_gamma_p - o.c2_gamma > kConditionGap) o.concurrence_order = Order::Less;
  else o.concurrence_order = Order::Tie;
  o.overlap = gamma.overlap;
  o.overlap_p = gamma_p.overlap;
  o.permuted = !gamma.basis_order_sorted || !gamma_p.basis_order_sorted;
  return o;
}

bool WitnessResult::pair_agrees() const { return observed && agrees(predicted_pair, observed->pair); }
bool WitnessResult::order_agrees() const { return observed && agrees(predicted_order, observed->concurrence_order); }

RandomSource row_stream(const RandomSource& rng, const ScenarioRow& row) {
  return rng.substream(fnv1a(std::string(to_string(row.scenario)) + "/" + row.id));
}

bool replay(const ScenarioCertificate& cert) { return observe(cert.instance) == cert.observed; }

namespace {

std::optional<ScenarioInstance> try_sample(const ScenarioRow& row, const RandomSource& stream, std::size_t index) {
  RandomSource local = stream.substream(index);
  ScenarioInstance inst = sample_scenario_instance(row.scenario, row.weights, local);
  if (!check_row_conditions(row, inst)) return std::nullopt;
  return inst;
}

WitnessResult make_witness(const ScenarioRow& row, std::optional<ScenarioInstance> inst, std::size_t index,
                           std::size_t budget) {
  WitnessResult w;
  w.predicted_pair = row.predicted_pair;
  w.predicted_order = row.predicted_concurrence_order;
  if (!inst) {
    w.samples_tried = budget;
    return w;
  }
  w.found = true;
  w.sample_index = index;
  w.samples_tried = index + 1;
  w.observed = observe(*inst);
  w.instance = std::move(inst);
  return w;
}

void check_budget(std::size_t budget) {
  if (budget == 0) throw InputError(ErrorKind::InvalidParameter, "sample budget must be >= 1");
}

// Samples per parallel work block; fixed so merged reports do not depend on
// the worker count.
constexpr std::size_t kBlock = 512;

void tally(RowReport& r, const ScenarioRow& row, const RandomSource& stream, std::size_t index) {
  auto inst = try_sample(row, stream, index);
  if (!inst) return;
  ++r.satisfiable;
  const Observation o = observe(*inst);
  const bool pair_ok = agrees(row.predicted_pair, o.pair);
  const bool order_ok = agrees(row.predicted_concurrence_order, o.concurrence_order);
  if (pair_ok) ++r.pair_agreement;
  if (order_ok) ++r.order_agreement;
  if (pair_ok && order_ok) {
    ++r.agreement;
  } else if (r.certificates.size() < kMaxRowCertificates) {
    r.disagreement_ids.push_back(index);
    r.certificates.push_back({row.scenario, row.id, index, std::move(*inst), o});
  }
  ++r.order_counts[static_cast<std::size_t>(o.concurrence_order)];
  if (o.pair == PairClass::Incomparable) ++r.observed_incomparable;
  if (o.permuted) ++r.permuted;
  r.overlap_sum += 0.5 * (std::abs(o.overlap) + std::abs(o.overlap_p));
}

void merge(RowReport& into, RowReport&& later) {
  into.satisfiable += later.satisfiable;
  into.agreement += later.agreement;
  into.pair_agreement += later.pair_agreement;
  into.order_agreement += later.order_agreement;
  for (std::size_t k = 0; k < 3; ++k) into.order_counts[k] += later.order_counts[k];
  into.observed_incomparable += later.observed_incomparable;
  into.permuted += later.permuted;
  into.overlap_sum += later.overlap_sum;
  for (std::size_t c = 0; c < later.certificates.size() && into.certificates.size() < kMaxRowCertificates; ++c) {
    into.disagreement_ids.push_back(later.disagreement_ids[c]);
    into.certificates.push_back(std::move(later.certificates[c]));
  }
}

RowReport empty_report(const ScenarioRow& row, std::size_t samples) {
  RowReport r;
  r.row = row;
  r.samples = samples;
  return r;
}

}  // namespace

WitnessResult search_witness(const ScenarioRow& row, std::size_t budget, const RandomSource& rng, Execution exec) {
  check_budget(budget);
  const int threads = exec.threads();
  const std::size_t window = static_cast<std::size_t>(threads) * kBlock;
  for (std::size_t lo = 0; lo < budget; lo += window) {
    const std::size_t hi = std::min(budget, lo + window);
    std::vector<std::optional<ScenarioInstance>> hits(hi - lo);
    const auto n = static_cast<std::ptrdiff_t>(hi - lo);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      hits[static_cast<std::size_t>(k)] = try_sample(row, rng, lo + static_cast<std::size_t>(k));
    }
    for (std::size_t k = 0; k < hits.size(); ++k) {
      if (hits[k]) return make_witness(row, std::move(hits[k]), lo + k, budget);
    }
  }
  return make_witness(row, std::nullopt, 0, budget);
}

TableReport validate_tables(std::span<const ScenarioRow> rows, std::size_t samples_per_row, const RandomSource& rng,
                            Execution exec) {
  check_budget(samples_per_row);
  TableReport report;
  report.seed = rng.seed();
  report.samples_per_row = samples_per_row;
  const std::size_t blocks = (samples_per_row + kBlock - 1) / kBlock;
  for (const ScenarioRow& row : rows) {
    const RandomSource stream = row_stream(rng, row);
    std::vector<RowReport> partials(blocks, empty_report(row, 0));
    const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(dynamic) num_threads(exec.threads())
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
      const std::size_t hi = std::min(samples_per_row, lo + kBlock);
      for (std::size_t i = lo; i < hi; ++i) tally(partials[static_cast<std::size_t>(b)], row, stream, i);
    }
    RowReport total = empty_report(row, samples_per_row);
    for (RowReport& p : partials) merge(total, std::move(p));
    report.rows.push_back(std::move(total));
  }
  return report;
}

namespace serial {

WitnessResult search_witness(const ScenarioRow& row, std::size_t budget, const RandomSource& rng) {
  check_budget(budget);
  for (std::size_t i = 0; i < budget; ++i) {
    if (auto inst = try_sample(row, rng, i)) return make_witness(row, std::move(inst), i, budget);
  }
  return make_witness(row, std::nullopt, 0, budget);
}

TableReport validate_tables(std::span<const ScenarioRow> rows, std::size_t samples_per_row, const RandomSource& rng) {
  check_budget(samples_per_row);
  TableReport report;
  report.seed = rng.seed();
  report.samples_per_row = samples_per_row;
  for (const ScenarioRow& row : rows) {
    const RandomSource stream = row_stream(rng, row);
    // Same per-block accumulation as the parallel kernel, so the floating-point
    // overlap sum comes out bit-identical.
    RowReport total = empty_report(row, samples_per_row);
    for (std::size_t lo = 0; lo < samples_per_row; lo += kBlock) {
      RowReport part = empty_report(row, 0);
      for (std::size_t i = lo; i < std::min(samples_per_row, lo + kBlock); ++i) tally(part, row, stream, i);
      merge(total, std::move(part));
    }
    report.rows.push_back(std::move(total));
  }
  return report;
}

}  // namespace serial

std::string table_report_to_csv(const TableReport& report) {
  std::ostringstream out;
  out << "case,row,weights,predicted_pair,predicted_order,samples,satisfiable,agreement,pair_agreement,"
         "order_agreement,order_greater,order_less,order_tie,observed_incomparable,permuted,mean_abs_overlap,"
         "certificate_ids\n";
  for (const RowReport& r : report.rows) {
    const ScenarioRow& row = r.row;
    static constexpr std::string_view kWeights[] = {"equal", "alpha>alpha'", "alpha<alpha'", "any"};
    out << to_string(row.scenario) << ',' << row.id << ',' << kWeights[static_cast<int>(row.weights)] << ','
        << (row.predicted_pair ? to_string(*row.predicted_pair) : "-") << ','
        << (row.predicted_concurrence_order ? to_string(*row.predicted_concurrence_order) : "-") << ','
        << r.samples << ',' << r.satisfiable << ',' << r.agreement << ',' << r.pair_agreement << ','
        << r.order_agreement << ',' << r.order_counts[0] << ',' << r.order_counts[1] << ',' << r.order_counts[2]
        << ',' << r.observed_incomparable << ',' << r.permuted << ',' << format_exact(r.mean_abs_overlap()) << ',';
    for (std::size_t i = 0; i < r.disagreement_ids.size(); ++i) out << (i ? ";" : "") << r.disagreement_ids[i];
    out << '\n';
  }
  return out.str();
}

}  // namespace superlocc
