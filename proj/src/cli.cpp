#include "nullcert/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nullcert/error.hpp"
#include "nullcert/io.hpp"

namespace nullcert::cli {

namespace {

constexpr const char* kBudgetEnv = "NULLCERT_BUDGET";

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(what + " is not valid JSON: " + e.what());
  }
}

std::uint64_t budget_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv(kBudgetEnv);
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(kBudgetEnv) + " must be a nonnegative integer");
  }
}

struct VerifyArgs {
  std::string theorem;
  std::vector<std::uint32_t> primes;
  std::string mode;
  bool exhaustive = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::size_t max_size = 0;
  unsigned jobs = 1;
  std::optional<std::uint64_t> budget;
  std::size_t tight_limit = kDefaultTightLimit;
  bool attach = false;
  bool timing = false;
  std::string out;
  std::string format = "json";
  std::string csv_out;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  SweepConfig config;
  config.theorem = parse_theorem_tag(args.theorem);
  config.primes = args.primes;
  if (!args.mode.empty()) config.mode = parse_group_mode(args.mode);
  if (args.exhaustive && args.samples) {
    throw ConfigError("--exhaustive and --samples are mutually exclusive");
  }
  config.exhaustive = !args.samples.has_value();
  if (args.samples) {
    if (!args.seed) throw ConfigError("--samples requires an explicit --seed");
    config.samples = *args.samples;
    config.seed = *args.seed;
  }
  config.max_set_size = args.max_size;
  config.partitions = args.jobs;
  config.budget = args.budget ? *args.budget : budget_from_env(kDefaultBudget);
  config.tight_limit = args.tight_limit;
  config.attach_certificates = args.attach;
  config.include_timing = args.timing;

  const Report report = config.exhaustive ? exhaustive_verify(config) : hunt_counterexample(config);

  if (!args.out.empty()) {
    write_file(args.out, args.format == "csv" ? report_csv(report) : to_json(report).dump(2) + "\n");
  }
  if (!args.csv_out.empty()) write_file(args.csv_out, report_csv(report));

  out << "theorem " << to_string(config.theorem) << " (" << to_string(config.group()) << ", "
      << (config.exhaustive ? "exhaustive" : "sampled") << ")\n";
  for (const auto& s : report.per_prime) {
    out << "  p=" << s.p << ": examined " << s.examined << ", hypothesis " << s.hypothesis_satisfying
        << ", holding " << s.bound_holding << ", tight " << s.tight << ", counterexamples "
        << s.counterexamples;
    if (config.theorem == TheoremTag::Main) out << ", contradictions " << s.contradictions;
    out << '\n';
  }
  const PrimeSummary totals = report.totals();
  out << "total counterexamples: " << totals.counterexamples << '\n';
  if (config.include_timing) out << "wall time: " << report.wall_seconds << " s\n";
  return totals.counterexamples == 0 && totals.contradictions == 0 ? kOk : kCounterexample;
}

struct CertificateArgs {
  std::string mode = "mult";
  std::uint64_t prime = 0;
  std::string a, b;
  std::optional<std::uint32_t> c;
  std::string theorem;
  std::string out;
  bool crosscheck = true;
};

int cmd_certificate(const CertificateArgs& args, std::ostream& out) {
  const PrimeField field(args.prime);
  const GroupMode mode = parse_group_mode(args.mode);
  const TheoremTag theorem = args.theorem.empty()
                                 ? (mode == GroupMode::Additive ? TheoremTag::Additive
                                                                : TheoremTag::Multiplicative)
                                 : parse_theorem_tag(args.theorem);
  if (mode != default_mode(theorem) || theorem == TheoremTag::KempermanScherk) {
    throw ConfigError("no certificate for theorem '" + std::string(to_string(theorem)) +
                      "' in " + std::string(to_string(mode)) + " mode");
  }
  const ElementSet a = parse_set_literal(args.a, field, mode);
  if (a.empty()) throw ConfigError("--a must be nonempty");
  std::optional<ElementSet> b;
  if (is_single_set(theorem)) {
    if (!args.b.empty()) throw ConfigError("theorem '" + args.theorem + "' takes --a only");
  } else {
    if (args.b.empty()) throw ConfigError("--b is required");
    b = parse_set_literal(args.b, field, mode);
    if (b->empty()) throw ConfigError("--b must be nonempty");
  }
  std::optional<FieldElement> c;
  if (args.c) {
    if (*args.c >= field.modulus()) throw ConfigError("--c out of range");
    c = field.element(*args.c);
  } else if (theorem != TheoremTag::Cover) {
    throw ConfigError("--c is required");
  }

  std::optional<Certificate> cert;
  try {
    cert = certificate_for(theorem, a, b.value_or(a), c);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  if (!cert) throw ConfigError("target has no representation; nothing to certify");

  const std::string text = to_json(*cert).dump(2) + "\n";
  if (args.out.empty()) {
    out << text;
  } else {
    write_file(args.out, text);
    out << "verdict: " << to_string(cert->verdict) << (cert->tight ? " (tight)" : "") << '\n';
    if (!cert->note.empty()) out << "note: " << cert->note << '\n';
  }
  if (cert->verdict != Verdict::HypothesisUnmet) {
    const CheckResult check = reverify(*cert, args.crosscheck);
    if (!check.ok) {
      for (const auto& f : check.failures) out << "self-check failed: " << f << '\n';
      return kCounterexample;
    }
  }
  switch (cert->verdict) {
    case Verdict::BoundCertified:
    case Verdict::DirectlySatisfied: return kOk;
    case Verdict::HypothesisUnmet: return kHypothesisUnmet;
    case Verdict::Contradiction: return kCounterexample;
  }
  return kCounterexample;
}

int cmd_reverify(const std::string& path, bool crosscheck, std::ostream& out) {
  const Certificate cert = certificate_from_json(parse_json(read_file(path), path));
  const CheckResult check = reverify(cert, crosscheck);
  if (check.ok) {
    out << "certificate accepted: " << to_string(cert.theorem) << ", "
        << to_string(cert.verdict) << '\n';
    return kOk;
  }
  for (const auto& f : check.failures) out << "rejected: " << f << '\n';
  return kCounterexample;
}

int cmd_tight(std::uint32_t n, const std::string& format, const std::string& path,
              std::ostream& out) {
  if (n < 3) throw ConfigError("--n must be at least 3");
  const TightExample ex = construct_tight_example(n);
  std::string text;
  if (format == "json") {
    text = to_json(ex).dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "n = " << n << "\np = " << ex.field.modulus() << "\nw = " << ex.w
       << " (order " << 2 * n - 4 << ")\nA = " << ex.a.to_string()
       << "\nB = " << ex.b.to_string() << "\n|A x' B| = " << ex.restricted_size;
    if (ex.degenerate) {
      os << "\ndegenerate: w = -1 collapses A and B, so the family starts at n = 4\n";
    } else {
      os << " = 2n-4\n1 = " << ex.unique_rep->a << " * " << ex.unique_rep->b << " uniquely\n";
    }
    text = os.str();
  }
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
  return kOk;
}

struct CoefficientArgs {
  std::uint64_t prime = 0;
  std::string mode = "add";
  std::string poly_file;
  std::string terms;
  std::string a, b;
  bool theorem5 = false;
  std::optional<std::uint32_t> c;
};

int cmd_coefficient(const CoefficientArgs& args, std::ostream& out) {
  const PrimeField field(args.prime);
  if (args.theorem5) {
    if (!args.c) throw ConfigError("--theorem5 needs --c");
    const ElementSet a = parse_set_literal(args.a, field, GroupMode::Multiplicative);
    const Certificate cert = theorem5_certificate(a, field.element(*args.c));
    if (cert.summands.empty()) {
      out << "hypothesis unmet: " << cert.note << '\n';
      return kHypothesisUnmet;
    }
    const auto n = static_cast<std::int64_t>(a.size());
    if (static_cast<std::int64_t>(*cert.degree) > 2 * n - 2) {
      throw ConfigError("polynomial degree " + std::to_string(*cert.degree) +
                        " exceeds 2n-2; interpolation does not apply");
    }
    const BivariatePolynomial f = cert.polynomial(*cert.degree);
    const FieldElement coeff = top_coefficient_interpolation(f, cert.grid_x, cert.grid_y);
    const auto top = static_cast<std::uint32_t>(n - 1);
    out << "coefficient: " << coeff << '\n'
        << "direct: " << f.coefficient(top, top) << '\n'
        << "summands: " << cert.summands[0] << " + " << cert.summands[1] << " = "
        << cert.summands[0] + cert.summands[1] << '\n';
    return kOk;
  }

  const GroupMode mode = parse_group_mode(args.mode);
  if (args.poly_file.empty() == args.terms.empty()) {
    throw ConfigError("give exactly one of --poly or --terms");
  }
  const std::string text = args.terms.empty() ? read_file(args.poly_file) : args.terms;
  const BivariatePolynomial f = polynomial_from_json(field, parse_json(text, "polynomial"));
  const ElementSet a = parse_set_literal(args.a, field, mode);
  const ElementSet b = parse_set_literal(args.b, field, mode);
  FieldElement coeff = field.zero();
  try {
    coeff = top_coefficient_interpolation(f, a, b);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("precondition violated: ") + e.what());
  }
  out << "coefficient: " << coeff << '\n';
  out << "direct: "
      << f.coefficient(static_cast<std::uint32_t>(a.size() - 1),
                       static_cast<std::uint32_t>(b.size() - 1))
      << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Restricted sumset / product-set workbench over prime fields", "nullcert"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Exhaustive or sampled verification sweep");
  v->add_option("--theorem", verify.theorem,
                "ks|additive|mult|main|cover|corollary-add|corollary-mult")
      ->required();
  v->add_option("--prime", verify.primes, "Prime modulus; repeat or comma-separate")
      ->required()
      ->delimiter(',');
  v->add_option("--mode", verify.mode, "add|mult (ks only)");
  v->add_flag("--exhaustive", verify.exhaustive, "Enumerate every set (default)");
  v->add_option("--samples", verify.samples, "Random samples per prime");
  v->add_option("--seed", verify.seed, "Sampling seed (required with --samples)");
  v->add_option("--max-size", verify.max_size, "Largest set size considered");
  v->add_option("--jobs", verify.jobs, "Parallel partitions")->check(CLI::PositiveNumber);
  v->add_option("--budget", verify.budget, "Hypothesis-check budget for exhaustive sweeps");
  v->add_option("--tight-limit", verify.tight_limit, "Tight instances kept per prime");
  v->add_flag("--attach-certificates", verify.attach, "Embed certificates for tight instances");
  v->add_flag("--timing", verify.timing, "Record wall time in the report");
  v->add_option("--out", verify.out, "Report file");
  v->add_option("--format", verify.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  v->add_option("--csv", verify.csv_out, "Additional CSV summary file");

  CertificateArgs cert;
  auto* c = app.add_subcommand("certificate", "Build a certificate for one input");
  c->add_option("--mode", cert.mode, "add|mult");
  c->add_option("--prime", cert.prime)->required();
  c->add_option("--a", cert.a, "Set literal, e.g. 1,2,4")->required();
  c->add_option("--b", cert.b, "Set literal");
  c->add_option("--c", cert.c, "Target element");
  c->add_option("--theorem", cert.theorem, "additive|mult|main|cover|corollary-add|corollary-mult");
  c->add_option("--out", cert.out, "Certificate file");
  c->add_flag("!--no-crosscheck", cert.crosscheck, "Skip the elimination cross-check");

  std::string reverify_path;
  bool reverify_crosscheck = true;
  auto* r = app.add_subcommand("reverify", "Re-check a certificate file");
  r->add_option("--in,file", reverify_path, "Certificate JSON")->required();
  r->add_flag("!--no-crosscheck", reverify_crosscheck, "Skip the elimination cross-check");

  std::uint32_t tight_n = 0;
  std::string tight_format = "text";
  std::string tight_out;
  auto* t = app.add_subcommand("tight", "Root-of-unity example where the product bound is tight");
  t->add_option("--n", tight_n, "Size of A (n >= 3)")->required();
  t->add_option("--format", tight_format)->check(CLI::IsMember({"text", "json"}));
  t->add_option("--out", tight_out);

  CoefficientArgs coef;
  auto* k = app.add_subcommand("coefficient", "Top coefficient by grid interpolation");
  k->add_option("--prime", coef.prime)->required();
  k->add_option("--mode", coef.mode, "add|mult");
  k->add_option("--poly", coef.poly_file, "File of [i, j, coeff] triples");
  k->add_option("--terms", coef.terms, "Inline [i, j, coeff] triples");
  k->add_option("--a", coef.a)->required();
  k->add_option("--b", coef.b);
  k->add_flag("--theorem5", coef.theorem5, "Use the single-set polynomial for A and --c");
  k->add_option("--c", coef.c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*v) return cmd_verify(verify, out);
    if (*c) return cmd_certificate(cert, out);
    if (*r) return cmd_reverify(reverify_path, reverify_crosscheck, out);
    if (*t) return cmd_tight(tight_n, tight_format, tight_out, out);
    if (*k) {
      if (!coef.theorem5 && coef.b.empty()) throw ConfigError("--b is required");
      return cmd_coefficient(coef, out);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvariantError& e) {
    err << "internal check failed: " << e.what() << '\n';
    return kCounterexample;
  }
  return kConfigError;
}

}  // namespace nullcert::cli
