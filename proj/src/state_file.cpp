#include "superlocc/state_file.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "superlocc/errors.hpp"
#include "superlocc/format.hpp"

namespace superlocc {

namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& what) { throw InputError(ErrorKind::Malformed, what); }

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    malformed(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) malformed("expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

// Non-finite values travel as the strings "inf", "-inf" and "nan".
double number(const json& v, std::string_view what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  malformed("'" + std::string(what) + "' is not a number");
}

std::string emit_number(double x) {
  if (std::isfinite(x)) return format_exact(x);
  return '"' + format_exact(x) + '"';
}

std::vector<double> number_row(const json& v, std::string_view what) {
  if (!v.is_array()) malformed("'" + std::string(what) + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& x : v) {
    if (!x.is_number()) malformed("'" + std::string(what) + "' holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

void emit_row(std::ostringstream& out, std::span<const double> xs) {
  out << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << format_exact(xs[i]);
  out << ']';
}

double norm_of(std::span<const double> xs) {
  double sq = 0.0;
  for (double x : xs) sq += x * x;
  return std::sqrt(sq);
}

// Accepts the amplitudes unchanged when the norm is within kNormTolerance,
// otherwise rescales (with a warning) or rejects.
void fix_norm(std::vector<double>& amps, const ParseOptions& options, std::vector<std::string>& warnings) {
  for (double a : amps) {
    if (!std::isfinite(a)) throw InputError(ErrorKind::NonFinite, "state file: amplitude is not finite");
  }
  const double norm = norm_of(amps);
  const double deviation = std::abs(norm - 1.0);
  if (deviation <= kNormTolerance) return;
  if (!(norm > 0.0)) throw InputError(ErrorKind::ZeroSum, "state file: amplitudes are all zero");
  if (deviation > kRenormalizeLimit && !options.renormalize) {
    throw InputError(ErrorKind::InvalidState,
                     "state file: norm " + format_exact(norm) + " deviates from 1 by more than 1e-9");
  }
  for (double& a : amps) a /= norm;
  warnings.push_back("renormalized amplitudes (norm was " + format_exact(norm) + ")");
}

ParsedState state_from_json(const json& doc, const ParseOptions& options) {
  if (!doc.is_object()) malformed("state document must be an object");
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kStateFileVersion) {
    malformed("unsupported state file version");
  }
  const json& form = field(doc, "form");
  if (!form.is_string()) malformed("'form' must be a string");
  const json& amps = field(doc, "amplitudes");

  ParsedState parsed;
  if (const auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) malformed("'label' must be a string");
    parsed.label = it->get<std::string>();
  }

  if (form == "vector") {
    std::vector<double> values = number_row(amps, "amplitudes");
    fix_norm(values, options, parsed.warnings);
    parsed.state = PureState::from_amplitudes(std::move(values));
  } else if (form == "matrix") {
    if (!amps.is_array() || amps.empty()) malformed("matrix 'amplitudes' must be a non-empty array of rows");
    const std::size_t rows = amps.size();
    std::size_t cols = 0;
    std::vector<double> values;
    for (const json& row : amps) {
      std::vector<double> r = number_row(row, "amplitudes row");
      if (cols == 0) cols = r.size();
      if (r.empty() || r.size() != cols) malformed("matrix rows must be non-empty and equally long");
      values.insert(values.end(), r.begin(), r.end());
    }
    fix_norm(values, options, parsed.warnings);
    parsed.state = PureState::from_matrix(Matrix(rows, cols, std::move(values)));
  } else {
    malformed("'form' must be \"vector\" or \"matrix\"");
  }
  return parsed;
}

void emit_state_body(std::ostringstream& out, const PureState& state, const std::optional<std::string>& label) {
  out << "{\"version\": " << kStateFileVersion << ", \"form\": ";
  if (state.is_vector()) {
    out << "\"vector\", \"amplitudes\": ";
    emit_row(out, state.amplitudes());
  } else {
    const Matrix& m = state.matrix();
    out << "\"matrix\", \"amplitudes\": [";
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r) out << ", ";
      emit_row(out, m.data().subspan(r * m.cols(), m.cols()));
    }
    out << ']';
  }
  if (label) out << ", \"label\": " << json(*label).dump();
  out << '}';
}

std::string emit_state_inline(const PureState& state) {
  std::ostringstream out;
  emit_state_body(out, state, std::nullopt);
  return out.str();
}

SuperpositionSpec spec_from_json(const json& doc, const ParseOptions& options) {
  SuperpositionSpec spec;
  spec.alpha = number(field(doc, "alpha"), "alpha");
  spec.beta = number(field(doc, "beta"), "beta");
  spec.psi = state_from_json(field(doc, "psi"), options).state;
  spec.phi = state_from_json(field(doc, "phi"), options).state;
  return spec;
}

void emit_spec_fields(std::ostringstream& out, const SuperpositionSpec& spec) {
  out << "\"alpha\": " << emit_number(spec.alpha) << ", \"beta\": " << emit_number(spec.beta)
      << ", \"psi\": " << emit_state_inline(spec.psi) << ", \"phi\": " << emit_state_inline(spec.phi);
}

BoundOptions options_from_json(const json& doc) {
  BoundOptions o;
  if (const auto it = doc.find("delta"); it != doc.end()) o.delta = number(*it, "delta");
  if (const auto it = doc.find("log_base"); it != doc.end()) o.log_base = number(*it, "log_base");
  if (const auto it = doc.find("exclude_zero_coefficients"); it != doc.end()) {
    if (!it->is_boolean()) malformed("'exclude_zero_coefficients' must be a boolean");
    o.exclude_zero_coefficients = it->get<bool>();
  }
  return o;
}

void emit_options(std::ostringstream& out, const BoundOptions& o) {
  if (o.delta) out << ", \"delta\": " << emit_number(*o.delta);
  out << ", \"log_base\": " << emit_number(o.log_base)
      << ", \"exclude_zero_coefficients\": " << (o.exclude_zero_coefficients ? "true" : "false");
}

BoundInstanceFile instance_from_json(const json& doc, const ParseOptions& options) {
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kStateFileVersion) {
    malformed("unsupported instance file version");
  }
  const BoundOptions bound_options = options_from_json(doc);
  BoundInstanceFile file{BoundInstance::make(spec_from_json(doc, options), bound_options), std::nullopt};
  if (const auto it = doc.find("partner"); it != doc.end()) {
    file.partner = BoundInstance::make(spec_from_json(*it, options), bound_options);
  }
  return file;
}

std::string emit_instance_fields(const BoundInstance& instance, const BoundInstance* partner) {
  std::ostringstream out;
  out << "\"version\": " << kStateFileVersion << ", ";
  emit_spec_fields(out, instance.spec);
  emit_options(out, instance.options);
  if (partner) {
    out << ", \"partner\": {";
    emit_spec_fields(out, partner->spec);
    out << '}';
  }
  return out.str();
}

void emit_optional(std::ostringstream& out, const char* key, const std::optional<double>& v) {
  if (v) out << ", \"" << key << "\": " << emit_number(*v);
}

void emit_array(std::ostringstream& out, const char* key, const std::vector<double>& xs) {
  out << ", \"" << key << "\": [";
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << emit_number(xs[i]);
  out << ']';
}

// Bit equality, with NaN equal to NaN.
bool same(double a, double b) { return format_exact(a) == format_exact(b); }

bool same_optional(const json& doc, const char* key, const std::optional<double>& v) {
  const auto it = doc.find(key);
  if (it == doc.end()) return !v;
  return v && same(number(*it, key), *v);
}

bool same_array(const json& doc, const char* key, const std::vector<double>& xs) {
  const json& arr = field(doc, key);
  if (!arr.is_array() || arr.size() != xs.size()) return false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!same(number(arr[i], key), xs[i])) return false;
  }
  return true;
}

PairClass pair_from_string(const std::string& s) {
  if (s == to_string(PairClass::Comparable)) return PairClass::Comparable;
  if (s == to_string(PairClass::Incomparable)) return PairClass::Incomparable;
  malformed("unknown pair class '" + s + "'");
}

Order order_from_string(const std::string& s) {
  for (Order o : {Order::Greater, Order::Less, Order::Tie}) {
    if (s == to_string(o)) return o;
  }
  malformed("unknown concurrence order '" + s + "'");
}

const std::string& text_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_string()) malformed(std::string("'") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

}  // namespace

ParsedState parse_state_file(std::string_view text, const ParseOptions& options) {
  return state_from_json(parse_json(text, "state file"), options);
}

std::string emit_state_file(const PureState& state, const std::optional<std::string>& label) {
  std::ostringstream out;
  emit_state_body(out, state, label);
  out << '\n';
  return out.str();
}

BoundInstanceFile parse_bound_instance(std::string_view text, const ParseOptions& options) {
  return instance_from_json(parse_json(text, "instance file"), options);
}

std::string emit_bound_instance(const BoundInstance& instance, const BoundInstance* partner) {
  return "{" + emit_instance_fields(instance, partner) + "}\n";
}

std::string emit_bound_certificate(const BoundReport& report, std::size_t index) {
  std::ostringstream out;
  out << "{\"theorem\": \"" << to_string(report.theorem) << "\", \"index\": " << index << ", "
      << emit_instance_fields(report.instance, report.partner ? &*report.partner : nullptr);
  emit_optional(out, "lower_lhs", report.lower_lhs);
  emit_optional(out, "lower_rhs", report.lower_rhs);
  emit_optional(out, "upper_lhs", report.upper_lhs);
  emit_optional(out, "upper_rhs", report.upper_rhs);
  emit_optional(out, "margin_lower", report.margin_lower);
  emit_optional(out, "margin_upper", report.margin_upper);
  emit_array(out, "chain_terms", report.chain_terms);
  emit_array(out, "chain_margins", report.chain_margins);
  out << ", \"holds\": " << (report.holds ? "true" : "false") << "}\n";
  return out.str();
}

bool replay_bound_certificate(std::string_view text) {
  const json doc = parse_json(text, "bound certificate");
  const BoundId id = bound_from_string(text_field(doc, "theorem"));
  const BoundInstanceFile file = instance_from_json(doc, {});
  const BoundReport r = evaluate_bound(id, file.instance, file.partner ? &*file.partner : nullptr);
  const json& holds = field(doc, "holds");
  return holds.is_boolean() && holds.get<bool>() == r.holds && same_optional(doc, "lower_lhs", r.lower_lhs) &&
         same_optional(doc, "lower_rhs", r.lower_rhs) && same_optional(doc, "upper_lhs", r.upper_lhs) &&
         same_optional(doc, "upper_rhs", r.upper_rhs) && same_optional(doc, "margin_lower", r.margin_lower) &&
         same_optional(doc, "margin_upper", r.margin_upper) && same_array(doc, "chain_terms", r.chain_terms) &&
         same_array(doc, "chain_margins", r.chain_margins);
}

std::string emit_scenario_certificate(const ScenarioCertificate& cert) {
  const ScenarioInstance& inst = cert.instance;
  const Observation& o = cert.observed;
  std::ostringstream out;
  out << "{\"case\": \"" << to_string(cert.scenario) << "\", \"row\": " << json(cert.row_id).dump()
      << ", \"sample_index\": " << cert.sample_index << ", \"alpha\": " << format_exact(inst.alpha)
      << ", \"beta\": " << format_exact(inst.beta) << ", \"alpha_p\": " << format_exact(inst.alpha_p)
      << ", \"beta_p\": " << format_exact(inst.beta_p) << ", \"psi\": " << emit_state_inline(inst.psi)
      << ", \"phi\": " << emit_state_inline(inst.phi) << ", \"psi_p\": " << emit_state_inline(inst.psi_p)
      << ", \"phi_p\": " << emit_state_inline(inst.phi_p) << ", \"observed\": {\"verdict\": \""
      << to_string(o.verdict) << "\", \"pair\": \"" << to_string(o.pair) << "\", \"concurrence_order\": \""
      << to_string(o.concurrence_order) << "\", \"c2_gamma\": " << format_exact(o.c2_gamma)
      << ", \"c2_gamma_p\": " << format_exact(o.c2_gamma_p) << ", \"overlap\": " << format_exact(o.overlap)
      << ", \"overlap_p\": " << format_exact(o.overlap_p) << ", \"permuted\": " << (o.permuted ? "true" : "false")
      << "}}\n";
  return out.str();
}

ScenarioCertificate parse_scenario_certificate(std::string_view text) {
  const json doc = parse_json(text, "scenario certificate");
  ScenarioCertificate cert;
  try {
    cert.scenario = case_from_string(text_field(doc, "case"));
  } catch (const InputError& e) {
    malformed(e.what());
  }
  cert.row_id = text_field(doc, "row");
  const json& index = field(doc, "sample_index");
  if (!index.is_number_unsigned()) malformed("'sample_index' must be a non-negative integer");
  cert.sample_index = index.get<std::size_t>();

  ScenarioInstance& inst = cert.instance;
  inst.alpha = number(field(doc, "alpha"), "alpha");
  inst.beta = number(field(doc, "beta"), "beta");
  inst.alpha_p = number(field(doc, "alpha_p"), "alpha_p");
  inst.beta_p = number(field(doc, "beta_p"), "beta_p");
  inst.psi = state_from_json(field(doc, "psi"), {}).state;
  inst.phi = state_from_json(field(doc, "phi"), {}).state;
  inst.psi_p = state_from_json(field(doc, "psi_p"), {}).state;
  inst.phi_p = state_from_json(field(doc, "phi_p"), {}).state;

  const json& o = field(doc, "observed");
  Observation& obs = cert.observed;
  try {
    obs.verdict = verdict_from_string(text_field(o, "verdict"));
  } catch (const InputError& e) {
    malformed(e.what());
  }
  obs.pair = pair_from_string(text_field(o, "pair"));
  obs.concurrence_order = order_from_string(text_field(o, "concurrence_order"));
  obs.c2_gamma = number(field(o, "c2_gamma"), "c2_gamma");
  obs.c2_gamma_p = number(field(o, "c2_gamma_p"), "c2_gamma_p");
  obs.overlap = number(field(o, "overlap"), "overlap");
  obs.overlap_p = number(field(o, "overlap_p"), "overlap_p");
  const json& permuted = field(o, "permuted");
  if (!permuted.is_boolean()) malformed("'permuted' must be a boolean");
  obs.permuted = permuted.get<bool>();
  return cert;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

}  // namespace superlocc
