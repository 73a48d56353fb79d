#include "vermasig/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vermasig/bethe.hpp"
#include "vermasig/classify.hpp"
#include "vermasig/combinatorics.hpp"
#include "vermasig/errors.hpp"
#include "vermasig/quantum.hpp"
#include "vermasig/rational.hpp"
#include "vermasig/sigchar.hpp"

#ifndef VERMASIG_VERSION
#define VERMASIG_VERSION "dev"
#endif

namespace vermasig::cli {

using nlohmann::json;
using sigchar::HighestWeight;

const char *version() { return VERMASIG_VERSION; }

unsigned default_threads() {
  if (const char *env = std::getenv("VERMASIG_THREADS")) {
    char *end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

enum class Format { Table, Json, Csv };

struct Report {
  std::string command;
  json config = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json extra = json::object();
  std::vector<std::string> notes;  // table output only
  int exit_code = kSuccess;
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::string cell_text(const json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_null()) return "-";
  return v.dump();
}

std::string csv_escape(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void emit(const Report &r, Format format, std::ostream &out) {
  switch (format) {
    case Format::Json: {
      json doc;
      doc["tool"] = "vermasig";
      doc["version"] = version();
      doc["command"] = r.command;
      doc["config"] = r.config;
      json rows = json::array();
      for (const auto &row : r.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < r.columns.size(); ++c) obj[r.columns[c]] = row[c];
        rows.push_back(obj);
      }
      doc["rows"] = rows;
      for (const auto &[k, v] : r.extra.items()) doc[k] = v;
      out << doc.dump(2) << '\n';
      return;
    }
    case Format::Csv: {
      for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << csv_escape(r.columns[c]);
      out << '\n';
      for (const auto &row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(cell_text(row[c]));
        out << '\n';
      }
      return;
    }
    case Format::Table: {
      for (const auto &note : r.notes) out << note << '\n';
      if (r.columns.empty()) return;
      std::vector<std::size_t> width(r.columns.size());
      for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].size();
      for (const auto &row : r.rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], cell_text(row[c]).size());
      auto line = [&](auto cell) {
        for (std::size_t c = 0; c < r.columns.size(); ++c)
          out << (c ? "  " : "") << std::setw(static_cast<int>(width[c])) << cell(c);
        out << '\n';
      };
      line([&](std::size_t c) { return r.columns[c]; });
      for (const auto &row : r.rows) line([&](std::size_t c) { return cell_text(row[c]); });
      return;
    }
  }
}

json rational_list_json(std::span<const Rational> xs) {
  json arr = json::array();
  for (const auto &x : xs) arr.push_back(to_string(x));
  return arr;
}

json complex_json(const std::complex<double> &c) { return json::array({c.real(), c.imag()}); }

std::vector<HighestWeight> weights_from(const std::string &text) {
  const auto values = parse_rational_list(text);
  return sigchar::to_weights(values);
}

std::string definite_label(const sigchar::DecompositionEntry &e) {
  if (e.b == 0) return "+";
  if (e.a == 0) return "-";
  return "";
}

// ---- decompose ----

struct DecomposeArgs {
  std::string weights;
  int max_level = 5;
};

Report cmd_decompose(const DecomposeArgs &args) {
  const auto values = parse_rational_list(args.weights);
  const auto lams = sigchar::to_weights(values);
  if (args.max_level < 0) throw UsageError("--max-level must be nonnegative");
  const auto d = sigchar::peel_decompose(lams, args.max_level);

  Report r;
  r.command = "decompose";
  r.config = {{"weights", rational_list_json(values)}, {"max_level", args.max_level}};
  r.columns = {"m", "a", "b", "sgn", "dim", "definite"};
  for (const auto &e : d.entries)
    r.rows.push_back({e.m, e.a, e.b, e.signature(), e.dim(), definite_label(e)});
  r.extra["lambda_total"] = to_string(d.lambda_total);
  r.notes.push_back("weights " + args.weights + ", total " + to_string(d.lambda_total));
  return r;
}

// ---- classify ----

struct ClassifyArgs {
  std::string type;
  std::string weights;
  int bound = -1;
  bool verify = false;
  std::uint64_t seed = 1;
};

json report_json(const classify::DefiniteReport &rep) {
  json levels = json::array();
  for (const auto &e : rep.entries) levels.push_back({{"level", e.level}, {"sign", e.sign > 0 ? "+" : "-"}});
  return {{"levels", levels}, {"complete_up_to", rep.complete_up_to}};
}

Report cmd_classify(const ClassifyArgs &args) {
  if (args.type.empty() == args.weights.empty()) throw UsageError("give exactly one of --type and --weights");
  std::vector<HighestWeight> lams;
  const classify::ExplicitType type = [&] {
    if (!args.type.empty()) return classify::ExplicitType::parse(args.type);
    lams = weights_from(args.weights);
    sigchar::require_generic_tuple(lams);
    return classify::ExplicitType::of(lams);
  }();
  const int bound = args.bound >= 0 ? args.bound : classify::default_level_bound(type);
  const auto predicted = classify::classify_definite(type, bound);

  Report r;
  r.command = "classify";
  r.config = {{"type", type.to_string()}, {"bound", bound}, {"verify", args.verify}, {"seed", args.seed}};
  if (!args.weights.empty()) r.config["weights"] = rational_list_json(parse_rational_list(args.weights));
  r.columns = {"level", "sign"};
  for (const auto &e : predicted.entries) r.rows.push_back({e.level, e.sign > 0 ? "+" : "-"});
  r.extra["predicted"] = report_json(predicted);
  r.notes.push_back("type " + type.to_string() + "  definite " + classify::to_string(predicted));

  if (args.verify) {
    classify::Verification v;
    if (lams.empty()) {
      std::mt19937_64 rng(args.seed);
      v = classify::verify_type_detailed(type, bound, rng);
    } else {
      v.weights = lams;
      v.predicted = predicted;
      v.observed = classify::definite_levels(sigchar::peel_decompose(lams, bound), bound);
      v.agrees = v.predicted == v.observed;
    }
    std::vector<Rational> ws;
    for (const auto &w : v.weights) ws.push_back(w.value());
    r.extra["verification"] = {{"agrees", v.agrees}, {"observed", report_json(v.observed)},
                               {"weights", rational_list_json(ws)}};
    r.notes.push_back(std::string("oracle ") + (v.agrees ? "agrees" : "DISAGREES") + "  observed " +
                      classify::to_string(v.observed));
    if (!v.agrees) r.exit_code = kVerificationFailed;
  }
  return r;
}

// ---- quantum ----

struct QuantumArgs {
  std::string a;
  std::string t;
  int m = -1;
  bool all_levels = false;
  bool q1 = false;
  bool experimental = false;
  std::string weights;
  int max_level = 8;
};

Report cmd_quantum(const QuantumArgs &args) {
  Report r;
  r.command = "quantum";
  if (args.q1) {
    const std::string &text = !args.weights.empty() ? args.weights : args.a;
    if (text.empty()) throw UsageError("--q1 needs --weights");
    const auto values = parse_rational_list(text);
    const auto lams = sigchar::to_weights(values);
    const auto d = sigchar::peel_decompose(lams, args.max_level);
    r.config = {{"q", "1"}, {"weights", rational_list_json(values)}, {"max_level", args.max_level}};
    r.columns = {"m", "sgn", "dim", "peel_sgn", "match"};
    bool all = true;
    for (int m = 0; m <= args.max_level; ++m) {
      const auto s = quantum::thm_signature(values, m, quantum::Classical{});
      const auto peel = d.level(m).signature();
      all = all && s == peel;
      r.rows.push_back({m, s, multiplicity_dimension(static_cast<int>(values.size()), m), peel, s == peel});
    }
    r.extra["all_match"] = all;
    if (!all) r.exit_code = kVerificationFailed;
    return r;
  }

  if (args.a.empty() || args.t.empty()) throw UsageError("quantum needs --a and --t (or --q1 --weights)");
  const auto values = parse_rational_list(args.a);
  const bool integral = std::all_of(values.begin(), values.end(), [](const Rational &x) { return is_integer(x) && x >= 0; });
  if (!integral && !args.experimental)
    throw UsageError("at q != 1 the weights must be nonnegative integers (--experimental allows rationals)");
  const auto qp = quantum::QParam::parse(args.t);
  r.config = {{"a", rational_list_json(values)}, {"t", qp.to_string()}, {"experimental", args.experimental}};

  std::vector<int> levels;
  Rational total = 0;
  for (const auto &x : values) total += x;
  if (args.all_levels) {
    if (!integral) throw UsageError("--all-levels needs integer weights");
    for (int m = 0; 2 * m <= floor_int(total); ++m) levels.push_back(m);
  } else {
    if (args.m < 0) throw UsageError("give --m or --all-levels");
    levels.push_back(args.m);
  }
  r.config["levels"] = levels;
  r.columns = {"m", "t", "sgn", "dim", "nonvanishing"};
  std::vector<std::int64_t> ints;
  if (integral)
    for (const auto &x : values) ints.push_back(x.get_num().get_si());
  for (int m : levels) {
    const auto s = quantum::thm_signature(values, m, qp);
    const json dim = integral ? json(quantum::finite_multiplicity(ints, m)) : json(nullptr);
    r.rows.push_back({m, qp.to_string(), s, dim, quantum::thm_nonvanishing_terms(values, m, qp)});
  }
  return r;
}

// ---- bethe ----

struct BetheArgs {
  std::string weights;
  std::string z;
  int m = -1;
  std::string sweep;
  std::uint64_t seed = 1;
  int budget = 0;
  unsigned threads = 1;
};

std::pair<int, int> parse_sweep(const std::string &text) {
  static const std::regex pattern(R"(^\s*(?:m\s*=\s*)?(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) throw UsageError("--sweep expects m=LO..HI, got '" + text + "'");
  const int lo = std::stoi(match[1]), hi = std::stoi(match[2]);
  if (lo > hi) throw UsageError("--sweep range is empty");
  return {lo, hi};
}

Report cmd_bethe(const BetheArgs &args) {
  const auto lam_values = parse_rational_list(args.weights);
  const auto z_values = parse_rational_list(args.z);
  int lo = args.m, hi = args.m;
  if (!args.sweep.empty()) std::tie(lo, hi) = parse_sweep(args.sweep);
  else if (args.m < 0) throw UsageError("give --m or --sweep");

  Report r;
  r.command = "bethe";
  r.config = {{"weights", rational_list_json(lam_values)}, {"z", rational_list_json(z_values)},
              {"m_range", {lo, hi}}, {"seed", args.seed}, {"budget", args.budget}};
  r.columns = {"m", "dim", "sgn", "abs_sgn", "N_spectrum", "N_roots", "found", "bound", "tight"};
  json instances = json::array();
  bool all_hold = true;
  for (int m = lo; m <= hi; ++m) {
    bethe::MasterConfig cfg{z_values, sigchar::to_weights(lam_values), m};
    cfg.validate();
    const std::uint64_t seed = args.seed + static_cast<std::uint64_t>(m) * 0x9e3779b97f4a7c15ULL;
    const auto system = bethe::gaudin_system(cfg);
    const auto spectrum = bethe::count_real_by_spectrum(cfg, system, seed);
    bethe::SearchOptions opts;
    opts.seed = seed;
    opts.budget = args.budget;
    opts.threads = args.threads;
    const auto search = bethe::find_critical_points(cfg, opts);

    bethe::BoundRecord rec;
    rec.n = cfg.n();
    rec.m = m;
    rec.dim = cfg.dimension();
    rec.sgn = sigchar::peel_decompose(cfg.lams, m).level(m).signature();
    rec.n_spectrum = spectrum.real_count;
    all_hold = all_hold && rec.holds();

    r.rows.push_back({m, rec.dim, rec.sgn, std::abs(rec.sgn), rec.n_spectrum, search.real_count(),
                      static_cast<std::int64_t>(search.points.size()), rec.holds() ? "holds" : "VIOLATED",
                      rec.tight()});
    json points = json::array();
    for (const auto &p : search.points) {
      json coeffs = json::array();
      for (const auto &c : p.qpoly) coeffs.push_back(complex_json(c));
      points.push_back({{"Q", coeffs}, {"residual", p.residual}, {"is_real", p.is_real}});
    }
    instances.push_back({{"m", m},
                         {"dim", rec.dim},
                         {"sgn", rec.sgn},
                         {"N_spectrum", rec.n_spectrum},
                         {"N_roots", search.real_count()},
                         {"points", points},
                         {"attempts", search.attempts},
                         {"combination", spectrum.weights},
                         {"seeds", {{"search", seed}, {"spectrum", seed}}}});
    if (!search.complete())
      r.notes.push_back("warning: m = " + std::to_string(m) + " found " + std::to_string(search.points.size()) +
                        " of " + std::to_string(rec.dim) + " critical points");
  }
  r.extra["instances"] = instances;
  if (!all_hold) r.exit_code = kVerificationFailed;
  return r;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Signatures of multiplicity spaces in sl2 tensor products", "vermasig"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false, as_csv = false;
  auto *json_flag = app.add_flag("--json", as_json, "emit JSON");
  app.add_flag("--csv", as_csv, "emit CSV")->excludes(json_flag);

  DecomposeArgs dec;
  auto *sub_dec = app.add_subcommand("decompose", "multiplicity-space signatures by peeling");
  sub_dec->add_option("--weights", dec.weights, "comma separated weights, e.g. 5/2,-7/10")->required();
  sub_dec->add_option("--max-level", dec.max_level, "deepest level")->capture_default_str();

  ClassifyArgs cls;
  auto *sub_cls = app.add_subcommand("classify", "definite multiplicity spaces of an explicit type");
  auto *type_opt = sub_cls->add_option("--type", cls.type, "explicit type T,f1,...,fn");
  sub_cls->add_option("--weights", cls.weights, "weights whose type to classify")->excludes(type_opt);
  sub_cls->add_option("--bound", cls.bound, "level bound (default 2 max(f1, 0) + 6)");
  sub_cls->add_flag("--verify", cls.verify, "compare against the peeling decomposition");
  sub_cls->add_option("--seed", cls.seed, "seed for sampled weights")->capture_default_str();

  QuantumArgs qa;
  auto *sub_q = app.add_subcommand("quantum", "signature formula at q = exp(i pi t) or q = 1");
  sub_q->add_option("--a", qa.a, "highest weights");
  sub_q->add_option("--t", qa.t, "t = p/D in (0, 1)");
  sub_q->add_option("--m", qa.m, "level");
  sub_q->add_flag("--all-levels", qa.all_levels, "every level 0..sum(a)/2");
  sub_q->add_flag("--q1", qa.q1, "evaluate at q = 1 with rational weights");
  sub_q->add_option("--weights", qa.weights, "weights for --q1");
  sub_q->add_option("--max-level", qa.max_level, "deepest level for --q1")->capture_default_str();
  sub_q->add_flag("--experimental", qa.experimental, "allow rational weights at q != 1");

  BetheArgs ba;
  ba.threads = default_threads();
  auto *sub_b = app.add_subcommand("bethe", "real critical points and the signature bound");
  sub_b->add_option("--weights", ba.weights, "generic weights")->required();
  sub_b->add_option("--z", ba.z, "distinct points z_k")->required();
  sub_b->add_option("--m", ba.m, "level");
  sub_b->add_option("--sweep", ba.sweep, "range of levels, m=LO..HI");
  sub_b->add_option("--seed", ba.seed, "random seed")->capture_default_str();
  sub_b->add_option("--budget", ba.budget, "Newton starts (default 200 dim)");
  sub_b->add_option("--threads", ba.threads, "worker threads (default VERMASIG_THREADS or 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForVersion &) {
    out << version() << '\n';
    return kSuccess;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  const Format format = as_json ? Format::Json : as_csv ? Format::Csv : Format::Table;
  try {
    Report report;
    if (*sub_dec) report = cmd_decompose(dec);
    else if (*sub_cls) report = cmd_classify(cls);
    else if (*sub_q) report = cmd_quantum(qa);
    else report = cmd_bethe(ba);
    emit(report, format, out);
    return report.exit_code;
  } catch (const UsageError &e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const GenericityError &e) {
    err << "genericity error: " << e.what() << '\n';
  } catch (const RootOfUnityError &e) {
    err << "root of unity: " << e.what() << '\n';
  } catch (const ArrangementError &e) {
    err << "arrangement error: " << e.what() << '\n';
  } catch (const DomainError &e) {
    err << "domain error: " << e.what() << '\n';
  }
  return kUsageError;
}

}  // namespace vermasig::cli
