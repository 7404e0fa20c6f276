// means_lab: evaluate bivariate means, verify and sharpness-probe the
// convex-combination bounds for the Neuman-Sandor mean, recover the sharp
// constants, and check the monotone coefficient ratios.
//
// Exit codes: 0 every claim holds (or the expected witness was found),
// 1 a verification failed, 2 usage or domain error.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "means_lab/means_lab.hpp"

namespace {

using json = nlohmann::json;
using namespace means_lab;

constexpr int kExitHolds = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

enum class OutputFormat { HumanTable, JSON, CSV };

/// A rendered result: one JSON document plus the same content as rows.
struct Document {
  json body;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string fmt_double(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render(const Document& doc, OutputFormat format, std::ostream& os) {
  switch (format) {
    case OutputFormat::JSON:
      os << doc.body.dump(2) << "\n";
      return;
    case OutputFormat::CSV:
      for (std::size_t i = 0; i < doc.header.size(); ++i) {
        os << (i ? "," : "") << csv_field(doc.header[i]);
      }
      os << "\n";
      for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
      }
      return;
    case OutputFormat::HumanTable: {
      std::vector<std::size_t> width(doc.header.size());
      for (std::size_t i = 0; i < doc.header.size(); ++i) width[i] = doc.header[i].size();
      for (const auto& row : doc.rows) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
          width[i] = std::max(width[i], row[i].size());
        }
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          os << (i ? "  " : "") << cells[i];
          if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size(), ' ');
        }
        os << "\n";
      };
      line(doc.header);
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      os << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
      for (const auto& row : doc.rows) line(row);
      return;
    }
  }
}

OutputFormat parse_format(const std::string& name) {
  if (name.empty()) return isatty(STDOUT_FILENO) ? OutputFormat::HumanTable : OutputFormat::JSON;
  if (name == "table") return OutputFormat::HumanTable;
  if (name == "json") return OutputFormat::JSON;
  if (name == "csv") return OutputFormat::CSV;
  throw std::invalid_argument("unknown format '" + name + "' (table, json, csv)");
}

double parse_real(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

MeanKind parse_mean(const std::string& token) {
  if (token.size() == 1) {
    switch (token[0]) {
      case 'H': return MeanKind::harmonic();
      case 'G': return MeanKind::geometric();
      case 'L': return MeanKind::logarithmic();
      case 'P': return MeanKind::seiffert_first();
      case 'A': return MeanKind::arithmetic();
      case 'M': return MeanKind::neuman_sandor();
      case 'T': return MeanKind::seiffert_second();
      case 'Q': return MeanKind::quadratic();
      case 'C': return MeanKind::contra_harmonic();
      default: break;
    }
  }
  // L(p): generalized logarithmic mean of order p
  if (token.size() > 3 && token.rfind("L(", 0) == 0 && token.back() == ')') {
    return MeanKind::generalized_log(parse_real(token.substr(2, token.size() - 3)));
  }
  throw std::invalid_argument("unknown mean '" + token + "' (H G L P A M T Q C or L(p))");
}

PositivePair parse_pair(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument("--pair expects a,b");
  return PositivePair{parse_real(parts[0]), parse_real(parts[1])};
}

Theorem parse_theorem(const std::string& label) {
  if (label == "1.1") return Theorem::HarmonicQuadratic;
  if (label == "1.2") return Theorem::GeometricQuadratic;
  if (label == "1.3") return Theorem::HarmonicContraHarmonic;
  throw std::invalid_argument("unknown theorem '" + label + "' (1.1, 1.2, 1.3)");
}

json pair_json(const PositivePair& p) { return json::array({p.a(), p.b()}); }

json report_json(const CertificationReport& r) {
  json j{{"id", r.claim_id},
         {"holds", r.holds},
         {"min_margin", r.min_margin},
         {"worst_pair", pair_json(r.worst_pair)},
         {"worst_gap", r.worst_gap},
         {"points", r.grid_size},
         {"escalated_points", r.escalated_points},
         {"below_floor_points", r.below_floor_points},
         {"violations", r.violations}};
  j["seed"] = r.seed ? json(*r.seed) : json(nullptr);
  return j;
}

std::vector<std::string> report_row(const CertificationReport& r, const std::string& note = "") {
  return {r.claim_id,
          r.holds ? "holds" : "FAILS",
          fmt_double(r.min_margin, 6),
          fmt_double(r.worst_gap, 6),
          "(" + fmt_double(r.worst_pair.a(), 10) + ", " + fmt_double(r.worst_pair.b(), 10) + ")",
          std::to_string(r.escalated_points),
          note};
}

const std::vector<std::string> kReportHeader{"claim", "verdict", "min_margin", "worst_gap",
                                             "worst_pair", "escalated", "note"};

json worst_of(const std::vector<const CertificationReport*>& reports) {
  const CertificationReport* worst = nullptr;
  for (const auto* r : reports) {
    if (!worst || r->min_margin < worst->min_margin) worst = r;
  }
  if (!worst) return nullptr;
  return json{{"id", worst->claim_id},
              {"min_margin", worst->min_margin},
              {"pair", pair_json(worst->worst_pair)},
              {"gap", worst->worst_gap}};
}

json skeleton(const std::string& command) {
  return json{{"command", command},
              {"seed", nullptr},
              {"grid_size", nullptr},
              {"verdicts", json::array()},
              {"worst_case", nullptr}};
}

// --- subcommands -----------------------------------------------------------

int cmd_eval(const std::string& means_arg, const std::string& pair_arg, Document& doc) {
  const PositivePair pair = parse_pair(pair_arg);
  std::vector<MeanKind> kinds;
  for (const auto& token : split(means_arg, ',')) kinds.push_back(parse_mean(token));
  if (kinds.empty()) throw std::invalid_argument("--means is empty");
  doc.body = skeleton("eval");
  doc.body["pair"] = pair_json(pair);
  doc.header = {"mean", "value"};
  for (const auto& k : kinds) {
    const double v = evaluate_mean(k, pair);
    doc.body["verdicts"].push_back({{"mean", mean_symbol(k)}, {"value", v}});
    doc.rows.push_back({mean_symbol(k), fmt_double(v)});
  }
  return kExitHolds;
}

struct VerifyOptions {
  std::string target;
  std::size_t grid = kDefaultGridSize;
  std::optional<std::size_t> samples;
  std::uint64_t seed = 42;
  std::optional<double> weight_lower;
  std::optional<double> weight_upper;
  double scale = 1.0;
};

int cmd_verify(const VerifyOptions& opt, Document& doc) {
  doc.body = skeleton("verify");
  doc.body["target"] = opt.target;
  doc.header = kReportHeader;

  if (opt.target == "chain") {
    const std::size_t n = opt.samples.value_or(100000);
    const auto r = verify_chain(n, opt.seed);
    doc.body.erase("grid_size");
    doc.body["samples"] = n;
    doc.body["seed"] = opt.seed;
    doc.body["verdicts"].push_back(report_json(r));
    doc.body["worst_case"] = worst_of({&r});
    doc.body["all_hold"] = r.holds;
    doc.rows.push_back(report_row(r));
    return r.holds ? kExitHolds : kExitFailed;
  }

  if (opt.target == "corpus") {
    const std::size_t n = opt.samples.value_or(10000);
    const auto c = verify_corpus(n, opt.seed);
    doc.body.erase("grid_size");
    doc.body["samples"] = n;
    doc.body["seed"] = opt.seed;
    std::vector<const CertificationReport*> required;
    for (const auto& v : c.verdicts) {
      json j = report_json(v.report);
      j["required"] = v.required;
      doc.body["verdicts"].push_back(j);
      doc.rows.push_back(report_row(v.report, v.required ? "" : "report-only"));
      if (v.required) required.push_back(&v.report);
    }
    doc.body["worst_case"] = worst_of(required);
    const int display = c.surviving_quad_arith_display;
    doc.body["quad_arith_surviving_display"] =
        display == 0 ? json("none") : display == 3 ? json("both") : json(display);
    doc.body["all_hold"] = c.required_hold();
    return c.required_hold() ? kExitHolds : kExitFailed;
  }

  if (opt.grid < 100) throw std::domain_error("--grid must be at least 100");
  auto claims = theorem_claims(parse_theorem(opt.target));
  if (opt.weight_lower) claims.lower = with_weight(claims.lower, *opt.weight_lower);
  if (opt.weight_upper) claims.upper = with_weight(claims.upper, *opt.weight_upper);
  const auto lower = verify_bound(claims.lower, opt.grid, opt.scale);
  const auto upper = verify_bound(claims.upper, opt.grid, opt.scale);
  doc.body["grid_size"] = opt.grid;
  doc.body["scale"] = opt.scale;
  for (const auto* r : {&lower, &upper}) {
    doc.body["verdicts"].push_back(report_json(*r));
    doc.rows.push_back(report_row(*r));
  }
  doc.body["weights"] = {{"lower", claims.lower.combination.weight.value()},
                         {"upper", claims.upper.combination.weight.value()}};
  doc.body["worst_case"] = worst_of({&lower, &upper});
  const bool ok = lower.holds && upper.holds;
  doc.body["all_hold"] = ok;
  return ok ? kExitHolds : kExitFailed;
}

int cmd_sharpness(const std::string& target, const std::string& side, double epsilon,
                  Document& doc) {
  if (side != "lower" && side != "upper") {
    throw std::invalid_argument("--side must be lower or upper");
  }
  const auto claims = theorem_claims(parse_theorem(target));
  const BoundClaim& claim = side == "lower" ? claims.lower : claims.upper;
  const auto r = sharpness_probe(claim, epsilon);
  doc.body = skeleton("sharpness");
  doc.body["target"] = target;
  doc.body["side"] = side;
  doc.body["grid_size"] = r.steps;
  json v{{"id", r.claim_id},
         {"epsilon", r.epsilon},
         {"perturbed_weight", r.perturbed_weight},
         {"violated", r.violated},
         {"steps", r.steps}};
  if (r.witness) {
    v["witness"] = pair_json(*r.witness);
    v["witness_gap"] = r.witness_gap;
    v["witness_margin"] = r.witness_margin;
    doc.body["worst_case"] = {{"id", r.claim_id},
                              {"pair", pair_json(*r.witness)},
                              {"gap", r.witness_gap},
                              {"margin", r.witness_margin}};
  }
  doc.body["verdicts"].push_back(v);
  doc.header = {"claim", "epsilon", "perturbed_weight", "violated", "witness", "gap", "margin"};
  doc.rows.push_back(
      {r.claim_id, fmt_double(epsilon, 6), fmt_double(r.perturbed_weight, 15),
       r.violated ? "yes" : "no",
       r.witness ? "(" + fmt_double(r.witness->a(), 17) + ", " + fmt_double(r.witness->b(), 17) + ")"
                 : "-",
       r.witness ? fmt_double(r.witness_gap, 10) : "-",
       r.witness ? fmt_double(r.witness_margin, 6) : "-"});
  return r.violated ? kExitHolds : kExitFailed;
}

int cmd_constants(double tol, Document& doc) {
  const auto& k = sharp_constants<double>();
  struct Row {
    const char* name;
    const char* closed_form;
    double value;
    std::optional<RecoveryReport> recovered;
  };
  using RF = RatioFunctionKind;
  const std::vector<Row> rows{
      {"alpha1", "2/9", k.alpha1, recover_constant(RF::PhiHQ, Objective::Supremum, tol)},
      {"beta1", "1 - 1/(sqrt(2) log(1 + sqrt(2)))", k.beta1,
       recover_constant(RF::PhiHQ, Objective::Infimum, tol)},
      {"alpha2", "1/3", k.alpha2, recover_constant(RF::RatioGQ, Objective::Supremum, tol)},
      {"beta2", "1 - 1/(sqrt(2) log(1 + sqrt(2)))", k.beta2,
       recover_constant(RF::RatioGQ, Objective::Infimum, tol)},
      {"alpha3", "1 - 1/(2 log(1 + sqrt(2)))", k.alpha3,
       recover_constant(RF::PhiHC, Objective::Supremum, tol)},
      {"beta3", "5/12", k.beta3, recover_constant(RF::PhiHC, Objective::Infimum, tol)},
      {"lambda0", "1 - 1/(sqrt(2) log(1 + sqrt(2)))", k.lambda0, std::nullopt},
      {"p0", "root of (p+1)^(1/p) = 2 log(1 + sqrt(2))", k.p0, std::nullopt},
  };
  doc.body = skeleton("constants");
  doc.body["tolerance"] = tol;
  doc.header = {"constant", "closed_form", "value", "recovered", "abs_diff", "match"};
  bool ok = true;
  double worst_diff = -1.0;
  for (const auto& row : rows) {
    json j{{"name", row.name}, {"closed_form", row.closed_form}, {"value", row.value}};
    std::vector<std::string> cells{row.name, row.closed_form, fmt_double(row.value, 15)};
    if (row.recovered) {
      const double diff = std::abs(row.recovered->value - row.value);
      const bool match = diff < tol;
      ok = ok && match;
      j["recovered"] = row.recovered->value;
      j["abs_diff"] = diff;
      j["match"] = match;
      cells.insert(cells.end(), {fmt_double(row.recovered->value, 15), fmt_double(diff, 3),
                                 match ? "yes" : "NO"});
      if (diff > worst_diff) {
        worst_diff = diff;
        doc.body["worst_case"] = {{"name", row.name}, {"abs_diff", diff}};
      }
    } else {
      j["recovered"] = nullptr;
      cells.insert(cells.end(), {"-", "-", "-"});
    }
    doc.body["verdicts"].push_back(j);
    doc.rows.push_back(cells);
  }
  doc.body["all_hold"] = ok;
  return ok ? kExitHolds : kExitFailed;
}

std::string rational_text(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q) << "/" << boost::multiprecision::denominator(q);
  return os.str();
}

int cmd_series(const std::string& pairing, int terms, Document& doc) {
  CoefficientKind num;
  CoefficientKind den;
  Monotonicity expected;
  if (pairing == "HQ") {
    num = CoefficientKind::A;
    den = CoefficientKind::B;
    expected = Monotonicity::StrictlyDecreasing;
  } else if (pairing == "HC") {
    num = CoefficientKind::C;
    den = CoefficientKind::D;
    expected = Monotonicity::StrictlyIncreasing;
  } else {
    throw std::invalid_argument("unknown pairing '" + pairing + "' (HQ, HC)");
  }
  if (terms < 2) throw std::domain_error("--terms must be at least 2 to compare ratios");
  const auto verdict = ratio_sequence_verdict(num, den, terms);
  doc.body = skeleton("series");
  doc.body["pairing"] = pairing;
  doc.body["grid_size"] = terms;
  json ratios = json::array();
  doc.header = {"n", "ratio"};
  for (int n = 1; n <= std::min(terms, 10); ++n) {
    const std::string text = rational_text(coefficient_ratio(num, den, n));
    ratios.push_back(text);
    doc.rows.push_back({std::to_string(n), text});
  }
  json v{{"pairing", pairing},
         {"direction", std::string(monotonicity_name(verdict.direction))},
         {"checked_up_to", verdict.checked_up_to},
         {"first_ratios", ratios}};
  v["first_violation"] =
      verdict.first_violation ? json(*verdict.first_violation) : json(nullptr);
  doc.body["verdicts"].push_back(v);
  doc.rows.push_back({"verdict", std::string(monotonicity_name(verdict.direction))});
  return verdict.direction == expected ? kExitHolds : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate means, Neuman-Sandor bounds and their sharp constants"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name;
  app.add_option("--format", format_name, "table, json or csv (default: table on a terminal)")
      ->check(CLI::IsMember({"table", "json", "csv"}));

  std::string means_arg;
  std::string pair_arg;
  auto* eval = app.add_subcommand("eval", "Evaluate means at a pair");
  eval->add_option("--means", means_arg, "Comma-separated list: H,G,L,P,A,M,T,Q,C,L(p)")
      ->required();
  eval->add_option("--pair", pair_arg, "a,b")->required();

  VerifyOptions vopt;
  std::size_t samples = 0;
  auto* verify = app.add_subcommand("verify", "Verify a double inequality or corpus claims");
  verify->add_option("target", vopt.target, "1.1, 1.2, 1.3, chain or corpus")
      ->required()
      ->check(CLI::IsMember({"1.1", "1.2", "1.3", "chain", "corpus"}));
  verify->add_option("--grid", vopt.grid, "Gap grid size (theorems)");
  auto* samples_opt = verify->add_option("--samples", samples, "Random samples (chain, corpus)");
  verify->add_option("--seed", vopt.seed, "Generator seed (chain, corpus)");
  double wl = 0.0;
  double wu = 0.0;
  auto* wl_opt = verify->add_option("--weight-lower", wl, "Override the lower-bound weight");
  auto* wu_opt = verify->add_option("--weight-upper", wu, "Override the upper-bound weight");
  verify->add_option("--scale", vopt.scale, "Pair scale for the grid");

  std::string sharp_target;
  std::string side;
  double epsilon = 1e-3;
  auto* sharp = app.add_subcommand("sharpness", "Find a witness against a perturbed sharp weight");
  sharp->add_option("theorem", sharp_target, "1.1, 1.2 or 1.3")->required();
  sharp->add_option("--side", side, "lower or upper")->required();
  sharp->add_option("--epsilon", epsilon, "Weight perturbation in (0, 0.01]");

  double tol = 1e-9;
  auto* constants = app.add_subcommand("constants", "Sharp constants with recovery cross-check");
  constants->add_option("--tol", tol, "Recovery tolerance (>= 1e-12)");

  std::string pairing;
  int terms = 50;
  auto* series = app.add_subcommand("series", "Monotonicity of the coefficient ratios");
  series->add_option("pairing", pairing, "HQ or HC")->required();
  series->add_option("--terms", terms, "Number of coefficients");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const OutputFormat format = parse_format(format_name);
    Document doc;
    int code = kExitUsage;
    if (*eval) {
      code = cmd_eval(means_arg, pair_arg, doc);
    } else if (*verify) {
      if (*samples_opt) vopt.samples = samples;
      if (*wl_opt) vopt.weight_lower = wl;
      if (*wu_opt) vopt.weight_upper = wu;
      code = cmd_verify(vopt, doc);
    } else if (*sharp) {
      code = cmd_sharpness(sharp_target, side, epsilon, doc);
    } else if (*constants) {
      code = cmd_constants(tol, doc);
    } else if (*series) {
      code = cmd_series(pairing, terms, doc);
    }
    render(doc, format, std::cout);
    return code;
  } catch (const std::domain_error& e) {
    std::cerr << "means_lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "means_lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "means_lab: internal error: " << e.what() << "\n";
    return kExitFailed;
  }
}
