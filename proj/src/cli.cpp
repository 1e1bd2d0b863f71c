#include "superlocc/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>

#include "superlocc/bounds.hpp"
#include "superlocc/errors.hpp"
#include "superlocc/format.hpp"
#include "superlocc/majorization.hpp"
#include "superlocc/measures.hpp"
#include "superlocc/scenarios.hpp"
#include "superlocc/state_file.hpp"
#include "superlocc/superposition.hpp"

namespace superlocc::cli {

namespace {

enum class Format { KeyValue, Csv, Human };

using Value = std::variant<std::string, double, std::vector<double>>;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

// Flat ordered record printed as key=value lines, "key: value" lines, or a
// two-line CSV.
class Report {
 public:
  void add(std::string key, double x) { put(std::move(key), x); }
  void add(std::string key, const std::string& text) { put(std::move(key), text); }
  void add(std::string key, const char* text) { put(std::move(key), std::string(text)); }
  void add(std::string key, std::string_view text) { put(std::move(key), std::string(text)); }
  void add(std::string key, bool flag) { put(std::move(key), std::string(flag ? "true" : "false")); }
  void add(std::string key, std::size_t n) { put(std::move(key), std::to_string(n)); }
  void add(std::string key, std::span<const double> xs) {
    put(std::move(key), std::vector<double>(xs.begin(), xs.end()));
  }

  void write(std::ostream& out, Format format) const {
    if (format == Format::Csv) {
      for (std::size_t i = 0; i < entries_.size(); ++i) out << (i ? "," : "") << csv_field(entries_[i].first);
      out << '\n';
      for (std::size_t i = 0; i < entries_.size(); ++i) {
        out << (i ? "," : "") << csv_field(render(entries_[i].second, format));
      }
      out << '\n';
      return;
    }
    const char* sep = format == Format::Human ? ": " : "=";
    for (const auto& [key, value] : entries_) out << key << sep << render(value, format) << '\n';
  }

 private:
  void put(std::string key, Value value) { entries_.emplace_back(std::move(key), std::move(value)); }

  static std::string render(const Value& v, Format format) {
    const auto num = [format](double x) { return format == Format::Human ? format_short(x) : format_exact(x); };
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    if (const auto* x = std::get_if<double>(&v)) return num(*x);
    std::string joined;
    for (double x : std::get<std::vector<double>>(v)) joined += (joined.empty() ? "" : ";") + num(x);
    return joined;
  }

  std::vector<std::pair<std::string, Value>> entries_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(ErrorKind::Malformed, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw InputError(ErrorKind::Malformed, "cannot write '" + path + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, ',');) {
    const auto first = part.find_first_not_of(' ');
    const auto last = part.find_last_not_of(' ');
    parts.push_back(first == std::string::npos ? "" : part.substr(first, last - first + 1));
  }
  return parts;
}

std::optional<std::vector<double>> number_list(const std::string& s) {
  std::vector<double> xs;
  for (const std::string& part : split_list(s)) {
    char* end = nullptr;
    const double x = std::strtod(part.c_str(), &end);
    if (part.empty() || *end != '\0') return std::nullopt;
    xs.push_back(x);
  }
  if (xs.empty()) return std::nullopt;
  return xs;
}

struct Globals {
  Format format = Format::KeyValue;
  bool renormalize = false;
  int workers = 0;
};

std::vector<double> normalized(std::vector<double> xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InputError(ErrorKind::ZeroSum, "coefficient list must have a positive finite sum");
  }
  for (double& x : xs) x /= total;
  return xs;
}

// An operand is a state file path or an inline comma-separated list of
// squared Schmidt coefficients in basis order (normalized on read).
PureState load_state(const std::string& operand, const Globals& g, std::ostream& err) {
  if (!std::filesystem::exists(operand)) {
    if (auto probs = number_list(operand)) return PureState::from_probabilities(normalized(*probs));
    throw InputError(ErrorKind::Malformed, "'" + operand + "' is neither a readable file nor a number list");
  }
  ParsedState parsed = parse_state_file(read_file(operand), {g.renormalize});
  for (const std::string& w : parsed.warnings) err << "warning: " << operand << ": " << w << '\n';
  return std::move(parsed.state);
}

SchmidtVector load_schmidt(const std::string& operand, const Globals& g, std::ostream& err) {
  if (!std::filesystem::exists(operand)) {
    if (auto probs = number_list(operand)) return make_schmidt_vector(*probs);
  }
  return schmidt_of_state(load_state(operand, g, err));
}

void add_schmidt(Report& r, const std::string& key, const SchmidtVector& v) { r.add(key, v.probs()); }

int cmd_classify(const std::string& a, const std::string& b, const Globals& g, std::ostream& out,
                 std::ostream& err) {
  const SchmidtVector va = load_schmidt(a, g, err);
  const SchmidtVector vb = load_schmidt(b, g, err);
  Report r;
  r.add("verdict", to_string(classify_pair(va, vb)));
  add_schmidt(r, "schmidt_a", va);
  add_schmidt(r, "schmidt_b", vb);
  r.write(out, g.format);
  return kExitOk;
}

MeasureKind measure_kind(const std::string& name) {
  if (name == "e") return MeasureKind::EntropyOfEntanglement;
  if (name == "c2") return MeasureKind::ConcurrenceSquared;
  if (name == "n") return MeasureKind::Negativity;
  if (name == "ln") return MeasureKind::LogNegativity;
  if (name == "renyi") return MeasureKind::RenyiEntropy;
  throw InputError(ErrorKind::InvalidParameter, "unknown measure '" + name + "' (expected e, c2, n, ln, renyi)");
}

int cmd_measure(const std::string& s, const std::string& list, std::optional<double> delta, double base,
                const Globals& g, std::ostream& out, std::ostream& err) {
  const SchmidtVector v = load_schmidt(s, g, err);
  Report r;
  add_schmidt(r, "schmidt", v);
  for (const std::string& name : split_list(list)) {
    const MeasureKind kind = measure_kind(name);
    std::optional<double> param;
    if (kind == MeasureKind::LogNegativity) param = base;
    if (kind == MeasureKind::RenyiEntropy) {
      if (!delta) throw InputError(ErrorKind::InvalidParameter, "renyi needs --delta");
      param = delta;
    }
    r.add(name, measure(kind, v, param).value);
  }
  r.write(out, g.format);
  return kExitOk;
}

int cmd_superpose(double alpha, double beta, const std::string& psi, const std::string& phi, bool via_matrix,
                  const std::string& out_path, const Globals& g, std::ostream& out, std::ostream& err) {
  const SuperpositionSpec spec{alpha, beta, load_state(psi, g, err), load_state(phi, g, err)};
  const SuperpositionResult res = via_matrix ? superpose_via_matrix(spec) : superpose(spec);
  Report r;
  r.add("alpha", alpha);
  r.add("beta", beta);
  r.add("overlap", res.overlap);
  r.add("orthogonal", res.orthogonal());
  r.add("norm_factor", res.norm_factor);
  r.add("basis_order_sorted", res.basis_order_sorted);
  add_schmidt(r, "schmidt", res.schmidt);
  r.add("e", entropy_of_entanglement(res.schmidt));
  r.add("c2", concurrence_squared(res.schmidt));
  if (!out_path.empty()) {
    write_file(out_path, emit_state_file(res.state));
    r.add("out", out_path);
  }
  r.write(out, g.format);
  return kExitOk;
}

std::vector<BoundId> bound_list(const std::string& list) {
  if (list == "all") return {kAllBounds.begin(), kAllBounds.end()};
  std::vector<BoundId> ids;
  for (const std::string& name : split_list(list)) ids.push_back(bound_from_string(name));
  return ids;
}

std::string opt_text(const std::optional<double>& x) { return x ? format_exact(*x) : ""; }

struct BoundsArgs {
  std::string theorems = "all";
  std::string instance;
  std::size_t random = 0;
  std::optional<std::uint64_t> seed;
  bool orthogonal_only = false;
  std::optional<double> delta;
  std::optional<double> base;
  bool exclude_zero = false;
  std::string certificates;
};

int bounds_instance(const BoundsArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  BoundInstanceFile file = parse_bound_instance(read_file(a.instance), {g.renormalize});
  BoundOptions options = file.instance.options;
  if (a.delta) options.delta = a.delta;
  if (a.base) options.log_base = *a.base;
  if (a.exclude_zero) options.exclude_zero_coefficients = true;
  const BoundInstance inst = BoundInstance::make(file.instance.spec, options);
  std::optional<BoundInstance> partner;
  if (file.partner) partner = BoundInstance::make(file.partner->spec, options);

  std::vector<BoundReport> reports;
  for (BoundId id : bound_list(a.theorems)) {
    if (id == BoundId::Chain11 && !partner) {
      throw InputError(ErrorKind::InvalidParameter, "Chain11 needs a 'partner' superposition in the instance file");
    }
    reports.push_back(evaluate_bound(id, inst, partner ? &*partner : nullptr));
  }
  for (const BoundReport& rep : reports) {
    for (const std::string& note : rep.notes) err << "note: " << to_string(rep.theorem) << ": " << note << '\n';
  }

  if (g.format == Format::Csv) {
    out << "theorem,lower_lhs,lower_rhs,upper_lhs,upper_rhs,margin_lower,margin_upper,chain_terms,chain_margins,"
           "holds,orthogonal\n";
    const auto join = [](const std::vector<double>& xs) {
      std::string s;
      for (double x : xs) s += (s.empty() ? "" : ";") + format_exact(x);
      return s;
    };
    for (const BoundReport& rep : reports) {
      out << to_string(rep.theorem) << ',' << opt_text(rep.lower_lhs) << ',' << opt_text(rep.lower_rhs) << ','
          << opt_text(rep.upper_lhs) << ',' << opt_text(rep.upper_rhs) << ',' << opt_text(rep.margin_lower) << ','
          << opt_text(rep.margin_upper) << ',' << join(rep.chain_terms) << ',' << join(rep.chain_margins) << ','
          << (rep.holds ? "true" : "false") << ',' << (rep.orthogonal ? "true" : "false") << '\n';
    }
  } else {
    Report r;
    r.add("overlap", inst.gamma.overlap);
    r.add("orthogonal", inst.gamma.orthogonal());
    add_schmidt(r, "schmidt", inst.gamma.schmidt);
    for (const BoundReport& rep : reports) {
      const std::string p(to_string(rep.theorem));
      const auto put = [&](const char* key, const std::optional<double>& x) {
        if (x) r.add(p + "." + key, *x);
      };
      put("lower_lhs", rep.lower_lhs);
      put("lower_rhs", rep.lower_rhs);
      put("upper_lhs", rep.upper_lhs);
      put("upper_rhs", rep.upper_rhs);
      put("margin_lower", rep.margin_lower);
      put("margin_upper", rep.margin_upper);
      if (!rep.chain_terms.empty()) r.add(p + ".chain_terms", std::span<const double>(rep.chain_terms));
      if (!rep.chain_margins.empty()) r.add(p + ".chain_margins", std::span<const double>(rep.chain_margins));
      r.add(p + ".holds", rep.holds);
    }
    r.write(out, g.format);
  }

  if (!a.certificates.empty()) {
    std::string docs;
    for (const BoundReport& rep : reports) {
      if (!rep.holds) docs += emit_bound_certificate(rep, 0);
    }
    write_file(a.certificates, docs);
  }
  return kExitOk;
}

int bounds_random(const BoundsArgs& a, const Globals& g, std::ostream& out) {
  SurveyFilter filter;
  filter.orthogonal_only = a.orthogonal_only;
  if (a.delta) filter.delta = *a.delta;
  if (a.base) filter.base = *a.base;
  filter.exclude_zero_coefficients = a.exclude_zero;
  const std::vector<BoundId> ids = bound_list(a.theorems);
  const SurveySummary s = survey_bounds(RandomSource(*a.seed), a.random, filter, ids, Execution{g.workers});

  if (g.format == Format::Csv) {
    out << survey_to_csv(s);
  } else {
    Report r;
    r.add("seed", std::to_string(s.seed));
    r.add("n", s.n);
    r.add("orthogonal_only", filter.orthogonal_only);
    r.add("delta", filter.delta);
    r.add("base", filter.base);
    for (const TheoremSummary& t : s.theorems) {
      const std::string p(to_string(t.theorem));
      r.add(p + ".hold_rate", t.hold_rate());
      r.add(p + ".worst_margin", t.worst_margin);
      r.add(p + ".orthogonal_n", t.orthogonal_n);
      r.add(p + ".orthogonal_hold_rate", t.orthogonal_hold_rate());
      std::string ids_text;
      for (std::size_t id : t.certificate_ids) ids_text += (ids_text.empty() ? "" : ";") + std::to_string(id);
      r.add(p + ".certificate_ids", ids_text);
    }
    r.write(out, g.format);
  }

  if (!a.certificates.empty()) {
    std::string docs;
    for (const TheoremSummary& t : s.theorems) {
      for (std::size_t c = 0; c < t.certificates.size(); ++c) {
        docs += emit_bound_certificate(t.certificates[c], t.certificate_ids[c]);
      }
    }
    write_file(a.certificates, docs);
  }
  return kExitOk;
}

struct TablesArgs {
  std::string scenario = "all";
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::string rows;
  std::string out;
  std::string certificates;
};

int cmd_tables(const TablesArgs& a, const Globals& g, std::ostream& out) {
  const std::string document = a.rows.empty() ? std::string(builtin_scenario_rows()) : read_file(a.rows);
  std::vector<ScenarioRow> rows = load_scenario_rows(document);
  if (a.scenario != "all") {
    const Case c = case_from_string(a.scenario);
    std::erase_if(rows, [c](const ScenarioRow& r) { return r.scenario != c; });
  }
  const TableReport report = validate_tables(rows, a.samples, RandomSource(*a.seed), Execution{g.workers});
  const std::string csv = table_report_to_csv(report);

  if (!a.out.empty()) write_file(a.out, csv);
  if (g.format == Format::Csv && a.out.empty()) {
    out << csv;
  } else {
    Report r;
    r.add("seed", std::to_string(report.seed));
    r.add("samples_per_row", report.samples_per_row);
    r.add("rows", report.rows.size());
    for (const RowReport& row : report.rows) {
      const std::string p = row.row.id;
      r.add(p + ".satisfiable", row.satisfiable);
      r.add(p + ".agreement", row.agreement);
      r.add(p + ".mean_abs_overlap", row.mean_abs_overlap());
    }
    if (!a.out.empty()) r.add("out", a.out);
    r.write(out, g.format);
  }

  if (!a.certificates.empty()) {
    std::string docs;
    for (const RowReport& row : report.rows) {
      for (const ScenarioCertificate& cert : row.certificates) docs += emit_scenario_certificate(cert);
    }
    write_file(a.certificates, docs);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Comparability, superposition and entanglement bounds for pure bipartite states", "superlocc"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string format = "kv";
  app.add_option("--format", format, "Output format: kv (17 digits), csv, human (6 digits)")
      ->check(CLI::IsMember({"kv", "csv", "human"}));
  app.add_flag("--renormalize", g.renormalize, "Renormalize state files with any norm deviation");
  app.add_option("--workers", g.workers, "Worker threads for sampling commands (0: OpenMP default)")
      ->check(CLI::NonNegativeNumber);

  std::string a, b;
  auto* classify = app.add_subcommand("classify", "LOCC comparability of two states");
  classify->add_option("A", a, "State file or squared coefficients, e.g. 0.5,0.3,0.2")->required();
  classify->add_option("B", b, "State file or squared coefficients")->required();

  std::string measures = "e,c2,n,ln";
  std::optional<double> delta;
  double base = 2.0;
  auto* measure_cmd = app.add_subcommand("measure", "Entanglement measures of one state");
  measure_cmd->add_option("S", a, "State file or squared coefficients")->required();
  measure_cmd->add_option("--measures", measures, "Comma list of e, c2, n, ln, renyi");
  measure_cmd->add_option("--delta", delta, "Renyi order");
  measure_cmd->add_option("--base", base, "Log-negativity base");

  double alpha = 0.0, beta = 0.0;
  bool via_matrix = false;
  std::string out_path;
  auto* superpose_cmd = app.add_subcommand("superpose", "alpha|psi> + beta|phi>, normalized");
  superpose_cmd->add_option("--alpha", alpha, "Weight of psi")->required();
  superpose_cmd->add_option("--beta", beta, "Weight of phi")->required();
  superpose_cmd->add_option("PSI", a, "State file or squared coefficients")->required();
  superpose_cmd->add_option("PHI", b, "State file or squared coefficients")->required();
  superpose_cmd->add_flag("--via-matrix", via_matrix, "Use the coefficient-matrix path");
  superpose_cmd->add_option("--out", out_path, "Write the superposed state file here");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Evaluate entanglement bounds on a file or a random survey");
  bounds->add_option("--theorems", ba.theorems, "Comma list of T1..T9, Chain11, or all");
  auto* instance_opt = bounds->add_option("--instance", ba.instance, "Bound instance file");
  auto* random_opt = bounds->add_option("--random", ba.random, "Survey this many random instances");
  auto* seed_opt = bounds->add_option("--seed", ba.seed, "Seed for --random");
  random_opt->needs(seed_opt)->check(CLI::PositiveNumber);
  instance_opt->excludes(random_opt);
  bounds->add_flag("--orthogonal-only", ba.orthogonal_only, "Sample components with disjoint supports");
  bounds->add_option("--delta", ba.delta, "Renyi order for T5/T6 (survey default 2)");
  bounds->add_option("--base", ba.base, "Log base for T3/T4 (default 2)");
  bounds->add_flag("--exclude-zero", ba.exclude_zero, "Skip zero coefficients in min/max scans");
  bounds->add_option("--certificates", ba.certificates, "Write violation certificates (JSON lines)");

  TablesArgs ta;
  auto* tables = app.add_subcommand("tables", "Monte-Carlo check of the comparability table rows");
  tables->add_option("--case", ta.scenario, "I, II, III, IV, V or all")
      ->check(CLI::IsMember({"I", "II", "III", "IV", "V", "all"}));
  tables->add_option("--samples", ta.samples, "Samples per row")->required()->check(CLI::PositiveNumber);
  tables->add_option("--seed", ta.seed, "Random seed")->required();
  tables->add_option("--rows", ta.rows, "Row definition file (default: built-in rows)");
  tables->add_option("--out", ta.out, "Write the CSV report here");
  tables->add_option("--certificates", ta.certificates, "Write disagreement certificates (JSON lines)");

  std::vector<const char*> argv{"superlocc"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    const CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << sub->help();
    return kExitInput;
  }
  g.format = format == "csv" ? Format::Csv : format == "human" ? Format::Human : Format::KeyValue;

  try {
    if (classify->parsed()) return cmd_classify(a, b, g, out, err);
    if (measure_cmd->parsed()) return cmd_measure(a, measures, delta, base, g, out, err);
    if (superpose_cmd->parsed()) return cmd_superpose(alpha, beta, a, b, via_matrix, out_path, g, out, err);
    if (bounds->parsed()) {
      if (ba.instance.empty() == (ba.random == 0)) {
        err << "error: bounds needs exactly one of --instance FILE or --random N --seed S\n" << bounds->help();
        return kExitInput;
      }
      return ba.instance.empty() ? bounds_random(ba, g, out) : bounds_instance(ba, g, out, err);
    }
    if (tables->parsed()) return cmd_tables(ta, g, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitInput;
}

}  // namespace superlocc::cli
