#include "superlocc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "superlocc/errors.hpp"
#include "superlocc/format.hpp"
#include "superlocc/measures.hpp"

namespace superlocc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWeightMatch = 1e-12;

double x_log2_x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double log_in(double x, double base) { return std::log2(x) / std::log2(base); }

void require_3x3_vector(const BoundInstance& inst, BoundId id) {
  const auto& s = inst.spec;
  if (!s.psi.is_vector() || !s.phi.is_vector() || s.psi.rows() != 3 || s.phi.rows() != 3) {
    throw InputError(ErrorKind::PreconditionViolated,
                     std::string(to_string(id)) + " needs 3x3 shared-basis (vector form) components");
  }
}

void require_positive_weights(const BoundInstance& inst, BoundId id) {
  if (!(inst.spec.alpha * inst.spec.beta > 0.0)) {
    throw InputError(ErrorKind::PreconditionViolated,
                     std::string(to_string(id)) + " needs alpha * beta > 0 (log of the weight product)");
  }
}

double require_delta(const BoundInstance& inst, BoundId id) {
  if (!inst.options.delta) {
    throw InputError(ErrorKind::InvalidParameter, std::string(to_string(id)) + " needs a Renyi order delta");
  }
  const double delta = *inst.options.delta;
  if (!(delta >= 0.0) || !std::isfinite(delta) || delta == 1.0) {
    throw InputError(ErrorKind::InvalidParameter,
                     std::string(to_string(id)) + ": Renyi order must be finite, >= 0 and != 1");
  }
  return delta;
}

// {sqrt(a_i), sqrt(b_i)}: the component amplitudes.
std::vector<double> component_roots(const BoundInstance& inst) {
  std::vector<double> roots;
  for (const PureState* s : {&inst.spec.psi, &inst.spec.phi}) {
    for (double a : s->amplitudes()) {
      if (a > 0.0 || !inst.options.exclude_zero_coefficients) roots.push_back(a);
    }
  }
  return roots;
}

SchmidtVector schmidt_psi(const BoundInstance& inst) { return schmidt_of_state(inst.spec.psi); }
SchmidtVector schmidt_phi(const BoundInstance& inst) { return schmidt_of_state(inst.spec.phi); }

BoundReport start(BoundId id, const BoundInstance& inst) {
  BoundReport r;
  r.theorem = id;
  r.instance = inst;
  r.orthogonal = inst.gamma.orthogonal();
  if (!r.orthogonal) r.notes.emplace_back("components not orthogonal (|overlap| > 1e-9)");
  return r;
}

void set_lower(BoundReport& r, double bound, double value) {
  r.lower_lhs = bound;
  r.lower_rhs = value;
  r.margin_lower = value - bound;
}

void set_upper(BoundReport& r, double value, double bound) {
  r.upper_lhs = value;
  r.upper_rhs = bound;
  r.margin_upper = bound - value;
}

BoundReport finish(BoundReport r) {
  r.holds = true;
  for (const auto& m : {r.margin_lower, r.margin_upper}) {
    if (m && !(*m >= -kBoundSlack)) r.holds = false;
  }
  for (double m : r.chain_margins) {
    if (!(m >= -kBoundSlack)) r.holds = false;
  }
  if (r.lower_lhs && std::isinf(*r.lower_lhs) && *r.lower_lhs < 0) {
    r.notes.emplace_back("lower side is -inf (zero coefficient); holds vacuously");
  }
  if (r.lower_lhs && std::isinf(*r.lower_lhs) && *r.lower_lhs > 0) {
    r.notes.emplace_back("lower side is +inf (zero coefficient)");
  }
  return r;
}

}  // namespace

std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::T1: return "T1";
    case BoundId::T2: return "T2";
    case BoundId::T3: return "T3";
    case BoundId::T4: return "T4";
    case BoundId::T5: return "T5";
    case BoundId::T6: return "T6";
    case BoundId::T7: return "T7";
    case BoundId::T8: return "T8";
    case BoundId::T9: return "T9";
    case BoundId::Chain11: return "Chain11";
  }
  return "?";
}

BoundId bound_from_string(std::string_view s) {
  for (BoundId id : kAllBounds) {
    if (to_string(id) == s) return id;
  }
  throw InputError(ErrorKind::InvalidParameter, "unknown bound '" + std::string(s) + "'");
}

BoundInstance BoundInstance::make(SuperpositionSpec spec, BoundOptions options) {
  SuperpositionResult gamma = superpose(spec);
  return {std::move(spec), std::move(gamma), options};
}

double BoundReport::worst_margin() const {
  double w = kInf;
  if (margin_lower) w = std::min(w, *margin_lower);
  if (margin_upper) w = std::min(w, *margin_upper);
  for (double m : chain_margins) w = std::min(w, m);
  return w;
}

namespace {

BoundReport eval_t1(const BoundInstance& inst) {
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const double n_gamma = negativity(inst.gamma.schmidt);
  BoundReport r = start(BoundId::T1, inst);
  const double mixed = alpha * alpha * negativity(schmidt_psi(inst)) + beta * beta * negativity(schmidt_phi(inst));
  set_lower(r, mixed, n_gamma);
  set_upper(r, n_gamma, mixed + alpha * beta);
  return finish(std::move(r));
}

BoundReport eval_t2(const BoundInstance& inst) {
  require_3x3_vector(inst, BoundId::T2);
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const double n_gamma = negativity(inst.gamma.schmidt);
  BoundReport r = start(BoundId::T2, inst);
  const auto roots = component_roots(inst);
  const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
  const double scale = 9.0 * (alpha + beta) * (alpha + beta);
  set_lower(r, 0.5 * (scale * *lo * *lo - 1.0), n_gamma);
  set_upper(r, n_gamma, 0.5 * (scale * *hi * *hi - 1.0));
  return finish(std::move(r));
}

BoundReport eval_t3(const BoundInstance& inst) {
  require_positive_weights(inst, BoundId::T3);
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const double base = inst.options.log_base;
  BoundReport r = start(BoundId::T3, inst);
  const double avg = 0.5 * (log_negativity(schmidt_psi(inst), base) + log_negativity(schmidt_phi(inst), base));
  set_lower(r, avg + 2.0 + log_in(alpha * beta, base), log_negativity(inst.gamma.schmidt, base));
  r.notes.push_back("bare log read in base " + format_exact(base));
  return finish(std::move(r));
}

BoundReport eval_t4(const BoundInstance& inst) {
  require_3x3_vector(inst, BoundId::T4);
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const double base = inst.options.log_base;
  const double ln_gamma = log_negativity(inst.gamma.schmidt, base);
  BoundReport r = start(BoundId::T4, inst);
  const auto roots = component_roots(inst);
  const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
  const double prefactor = 3.0 * (alpha + beta);
  // log of zero is -inf: the lower side then holds vacuously.
  set_lower(r, 2.0 * log_in(prefactor * *lo, base), ln_gamma);
  set_upper(r, ln_gamma, 2.0 * log_in(prefactor * *hi, base));
  return finish(std::move(r));
}

BoundReport eval_t5(const BoundInstance& inst) {
  const double delta = require_delta(inst, BoundId::T5);
  require_positive_weights(inst, BoundId::T5);
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  BoundReport r = start(BoundId::T5, inst);
  const double offset = std::log(3.0 * std::pow(alpha * beta, 2.0 * delta)) / (1.0 - delta);
  set_lower(r, offset + renyi_entropy(schmidt_psi(inst), delta) + renyi_entropy(schmidt_phi(inst), delta),
            renyi_entropy(inst.gamma.schmidt, delta));
  return finish(std::move(r));
}

BoundReport eval_t6(const BoundInstance& inst) {
  const double delta = require_delta(inst, BoundId::T6);
  if (!inst.spec.psi.is_vector()) {
    throw InputError(ErrorKind::PreconditionViolated, "T6 needs shared-basis (vector form) components");
  }
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const double s_gamma = renyi_entropy(inst.gamma.schmidt, delta);
  BoundReport r = start(BoundId::T6, inst);
  const auto a = inst.spec.psi.amplitudes();
  const auto b = inst.spec.phi.amplitudes();
  // Unnormalized superposed amplitudes alpha sqrt(a_i) + beta sqrt(b_i).
  std::vector<double> eta;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = alpha * a[i] + beta * b[i];
    if (e > 0.0 || !inst.options.exclude_zero_coefficients) eta.push_back(e);
  }
  const auto [lo, hi] = std::minmax_element(eta.begin(), eta.end());
  const double coef = 2.0 * delta / (1.0 - delta);
  const auto side = [coef](double x) { return coef == 0.0 ? 0.0 : coef * std::log(x); };
  set_lower(r, side(*lo), s_gamma);
  set_upper(r, s_gamma, side(*hi));
  if (*r.lower_lhs > *r.upper_rhs) r.notes.emplace_back("crossed interval: lower side exceeds upper side");
  return finish(std::move(r));
}

struct EntropyParts {
  double gamma, psi, phi;
};

EntropyParts entropies(const BoundInstance& inst) {
  return {entropy_of_entanglement(inst.gamma.schmidt), entropy_of_entanglement(schmidt_psi(inst)),
          entropy_of_entanglement(schmidt_phi(inst))};
}

BoundReport eval_t7(const BoundInstance& inst) {
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const auto e = entropies(inst);
  BoundReport r = start(BoundId::T7, inst);
  const double root_mix = alpha * std::sqrt(e.psi + 1.0) + beta * std::sqrt(e.phi + 1.0);
  set_upper(r, e.gamma, root_mix * root_mix);
  return finish(std::move(r));
}

BoundReport eval_t8(const BoundInstance& inst) {
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  const auto e = entropies(inst);
  BoundReport r = start(BoundId::T8, inst);
  set_upper(r, e.gamma, alpha * e.psi + beta * e.phi - x_log2_x(alpha) - x_log2_x(beta));
  return finish(std::move(r));
}

BoundReport eval_t9(const BoundInstance& inst) {
  require_3x3_vector(inst, BoundId::T9);
  const double alpha = inst.spec.alpha, beta = inst.spec.beta;
  BoundReport r = start(BoundId::T9, inst);
  const auto roots = component_roots(inst);
  const double hi = *std::max_element(roots.begin(), roots.end());
  set_upper(r, entropy_of_entanglement(inst.gamma.schmidt), 2.0 * std::log2(3.0 * (alpha + beta)) * hi);
  r.notes.push_back("read as log2(3(alpha+beta)); alternative parse (log2 3)(alpha+beta) gives upper " +
                    format_exact(2.0 * std::log2(3.0) * (alpha + beta) * hi));
  return finish(std::move(r));
}

}  // namespace

std::pair<BoundReport, BoundReport> eval_negativity_bounds(const BoundInstance& inst) {
  return {eval_t1(inst), eval_t2(inst)};
}

std::pair<BoundReport, BoundReport> eval_logneg_bounds(const BoundInstance& inst) {
  return {eval_t3(inst), eval_t4(inst)};
}

std::pair<BoundReport, BoundReport> eval_renyi_bounds(const BoundInstance& inst) {
  return {eval_t5(inst), eval_t6(inst)};
}

std::tuple<BoundReport, BoundReport, BoundReport> eval_entropy_bounds(const BoundInstance& inst) {
  return {eval_t7(inst), eval_t8(inst), eval_t9(inst)};
}

BoundReport eval_chain_inequality(const BoundInstance& inst_a, const BoundInstance& inst_b) {
  require_3x3_vector(inst_a, BoundId::Chain11);
  require_3x3_vector(inst_b, BoundId::Chain11);
  const double alpha = inst_a.spec.alpha, beta = inst_a.spec.beta;
  if (std::abs(alpha - inst_b.spec.alpha) > kWeightMatch || std::abs(beta - inst_b.spec.beta) > kWeightMatch) {
    throw InputError(ErrorKind::PreconditionViolated, "Chain11 needs alpha = alpha' and beta = beta'");
  }

  // Coefficients a_i, b_i (first superposition) and alpha_i, beta_i (second),
  // in basis order, as squared amplitudes.
  const auto coef = [](const PureState& s, std::size_t i) { return s.amplitudes()[i] * s.amplitudes()[i]; };
  const auto& psi = inst_a.spec.psi;
  const auto& phi = inst_a.spec.phi;
  const auto& psi_p = inst_b.spec.psi;
  const auto& phi_p = inst_b.spec.phi;

  const double scale = 9.0 * (alpha + beta) * (alpha + beta);
  const auto term = [scale](double x) { return 0.5 * (scale * x * x - 1.0); };
  const double n_a = negativity(inst_a.gamma.schmidt);
  const double n_b = negativity(inst_b.gamma.schmidt);

  BoundReport r = start(BoundId::Chain11, inst_a);
  r.partner = inst_b;
  r.orthogonal = inst_a.gamma.orthogonal() && inst_b.gamma.orthogonal();
  if (r.orthogonal != inst_a.gamma.orthogonal()) {
    r.notes.emplace_back("partner components not orthogonal (|overlap| > 1e-9)");
  }
  r.chain_terms = {
      term(std::min(coef(psi_p, 2), coef(phi_p, 2))),
      term(std::min(coef(psi, 2), coef(phi, 2))),
      std::min(n_a, n_b),
      std::max(n_a, n_b),
      term(std::max(coef(psi_p, 0), coef(phi_p, 0))),
      term(std::min(coef(psi, 0), coef(phi, 0))),
  };
  for (std::size_t k = 0; k + 1 < r.chain_terms.size(); ++k) {
    r.chain_margins.push_back(r.chain_terms[k + 1] - r.chain_terms[k]);
  }
  r.lower_lhs = r.chain_terms[1];
  r.lower_rhs = r.chain_terms[2];
  r.upper_lhs = r.chain_terms[3];
  r.upper_rhs = r.chain_terms[4];
  r.notes.emplace_back("coefficients taken as written (squared amplitudes, not their roots)");
  r.notes.emplace_back("link 5 compares max(alpha_0,beta_0) with min(a_0,b_0) as labelled");
  for (std::size_t k = 0; k < r.chain_margins.size(); ++k) {
    if (!(r.chain_margins[k] >= -kBoundSlack)) r.notes.push_back("link " + std::to_string(k + 1) + " violated");
  }
  return finish(std::move(r));
}

BoundReport evaluate_bound(BoundId id, const BoundInstance& inst, const BoundInstance* partner) {
  switch (id) {
    case BoundId::T1: return eval_t1(inst);
    case BoundId::T2: return eval_t2(inst);
    case BoundId::T3: return eval_t3(inst);
    case BoundId::T4: return eval_t4(inst);
    case BoundId::T5: return eval_t5(inst);
    case BoundId::T6: return eval_t6(inst);
    case BoundId::T7: return eval_t7(inst);
    case BoundId::T8: return eval_t8(inst);
    case BoundId::T9: return eval_t9(inst);
    case BoundId::Chain11:
      if (!partner) throw InputError(ErrorKind::PreconditionViolated, "Chain11 needs a partner instance");
      return eval_chain_inequality(inst, *partner);
  }
  throw InputError(ErrorKind::InvalidParameter, "unknown bound");
}

BoundReport replay(const BoundReport& report) {
  const BoundInstance inst = BoundInstance::make(report.instance.spec, report.instance.options);
  if (report.partner) {
    const BoundInstance partner = BoundInstance::make(report.partner->spec, report.partner->options);
    return evaluate_bound(report.theorem, inst, &partner);
  }
  return evaluate_bound(report.theorem, inst);
}

}  // namespace superlocc
