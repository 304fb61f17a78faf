#include "nullcert/io.hpp"

#include <sstream>

#include "nullcert/error.hpp"

namespace nullcert {

namespace {

ordered_json residues_json(std::span<const std::uint32_t> rs) {
  ordered_json out = ordered_json::array();
  for (auto r : rs) out.push_back(r);
  return out;
}

ordered_json point_json(const GridPoint& pt) {
  return ordered_json::array({pt.t.value(), pt.s.value()});
}

const nlohmann::json& field_of(const nlohmann::json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("certificate is missing '") + key + "'");
  }
  return j.at(key);
}

std::int64_t as_int(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer()) throw ConfigError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

ElementSet set_from_json(const nlohmann::json& j, PrimeField field, GroupMode mode,
                         const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of residues");
  std::vector<std::uint32_t> rs;
  for (const auto& v : j) {
    const std::int64_t r = as_int(v, what);
    if (r < 0 || r >= field.modulus()) throw ConfigError(std::string(what) + " residue out of range");
    rs.push_back(static_cast<std::uint32_t>(r));
  }
  try {
    return ElementSet(field, mode, rs);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

GridPoint point_from_json(const nlohmann::json& j, PrimeField field) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("grid point must be [t, s]");
  return {field.element(as_int(j[0], "point")), field.element(as_int(j[1], "point"))};
}

template <typename T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

ordered_json to_json(const BivariatePolynomial& f) {
  ordered_json out = ordered_json::array();
  for (const auto& t : f.to_terms()) out.push_back({t.x_exp, t.y_exp, t.coefficient});
  return out;
}

BivariatePolynomial polynomial_from_json(PrimeField field, const nlohmann::json& j) {
  if (!j.is_array()) throw ConfigError("polynomial must be a list of [i, j, coeff] triples");
  std::vector<Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 3) throw ConfigError("polynomial term must be [i, j, coeff]");
    const std::int64_t i = as_int(t[0], "exponent"), k = as_int(t[1], "exponent");
    if (i < 0 || k < 0) throw ConfigError("exponents must be nonnegative");
    terms.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(k),
                     as_int(t[2], "coefficient")});
  }
  return BivariatePolynomial::from_terms(field, terms);
}

ordered_json to_json(const Certificate& cert) {
  ordered_json j;
  j["theorem"] = std::string(to_string(cert.theorem));
  j["p"] = cert.field().modulus();
  j["mode"] = std::string(to_string(cert.mode));
  j["A"] = residues_json(cert.a.residues());
  j["B"] = cert.b ? residues_json(cert.b->residues()) : ordered_json(nullptr);
  j["c"] = cert.target ? ordered_json(cert.target->value()) : ordered_json(nullptr);
  j["representation"] =
      cert.representation
          ? ordered_json::array({cert.representation->a.value(), cert.representation->b.value()})
          : ordered_json(nullptr);
  j["grid"] = {{"X", residues_json(cert.grid_x.residues())},
               {"Y", residues_json(cert.grid_y.residues())}};
  ordered_json lines = ordered_json::array();
  for (const auto& l : cert.lines) {
    lines.push_back({l.alpha.value(), l.beta.value(), l.gamma.value()});
  }
  j["lines"] = std::move(lines);
  j["hyperbola_factor"] = cert.hyperbola_factor;
  j["exceptional"] = cert.exceptional.empty() ? ordered_json(nullptr)
                                              : point_json(cert.exceptional.front());
  ordered_json points = ordered_json::array();
  for (const auto& pt : cert.exceptional) points.push_back(point_json(pt));
  j["exceptional_points"] = std::move(points);
  j["degree"] = optional_json(cert.degree);
  j["combined_size"] = cert.combined_size;
  j["bound"] = cert.bound;
  j["top_coefficient"] =
      cert.top_coefficient ? ordered_json(cert.top_coefficient->value()) : ordered_json(nullptr);
  ordered_json summands = ordered_json::array();
  for (auto s : cert.summands) summands.push_back(s.value());
  j["summands"] = std::move(summands);
  j["verdict"] = std::string(to_string(cert.verdict));
  j["tight"] = cert.tight;
  j["note"] = cert.note;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    const TheoremTag theorem = parse_theorem_tag(field_of(j, "theorem").get<std::string>());
    const PrimeField field(static_cast<std::uint64_t>(as_int(field_of(j, "p"), "p")));
    const GroupMode mode = parse_group_mode(field_of(j, "mode").get<std::string>());

    const ElementSet a = set_from_json(field_of(j, "A"), field, mode, "A");
    std::optional<ElementSet> b;
    if (!field_of(j, "B").is_null()) b = set_from_json(j.at("B"), field, mode, "B");
    std::optional<FieldElement> target;
    if (!field_of(j, "c").is_null()) target = field.element(as_int(j.at("c"), "c"));

    const auto& grid = field_of(j, "grid");
    Certificate cert{.theorem = theorem,
                     .mode = mode,
                     .a = a,
                     .b = b,
                     .target = target,
                     .representation = std::nullopt,
                     .grid_x = set_from_json(field_of(grid, "X"), field, mode, "grid X"),
                     .grid_y = set_from_json(field_of(grid, "Y"), field, mode, "grid Y")};

    if (j.contains("representation") && !j.at("representation").is_null()) {
      const GridPoint rep = point_from_json(j.at("representation"), field);
      cert.representation = Representation{rep.t, rep.s, combine(mode, rep.t, rep.s)};
    }
    for (const auto& l : field_of(j, "lines")) {
      if (!l.is_array() || l.size() != 3) throw ConfigError("line must be [alpha, beta, gamma]");
      cert.lines.push_back({field.element(as_int(l[0], "line")),
                            field.element(as_int(l[1], "line")),
                            field.element(as_int(l[2], "line"))});
    }
    cert.hyperbola_factor = j.value("hyperbola_factor", false);
    if (j.contains("exceptional_points")) {
      for (const auto& pt : j.at("exceptional_points")) {
        cert.exceptional.push_back(point_from_json(pt, field));
      }
    } else if (!field_of(j, "exceptional").is_null()) {
      cert.exceptional.push_back(point_from_json(j.at("exceptional"), field));
    }
    if (!field_of(j, "degree").is_null()) {
      cert.degree = static_cast<std::uint32_t>(as_int(j.at("degree"), "degree"));
    }
    cert.combined_size = static_cast<std::size_t>(as_int(field_of(j, "combined_size"), "combined_size"));
    cert.bound = as_int(field_of(j, "bound"), "bound");
    if (!field_of(j, "top_coefficient").is_null()) {
      cert.top_coefficient = field.element(as_int(j.at("top_coefficient"), "top_coefficient"));
    }
    if (j.contains("summands")) {
      for (const auto& s : j.at("summands")) cert.summands.push_back(field.element(as_int(s, "summand")));
    }
    cert.verdict = parse_verdict(field_of(j, "verdict").get<std::string>());
    cert.tight = field_of(j, "tight").get<bool>();
    cert.note = j.value("note", std::string());
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed certificate: ") + e.what());
  }
}

namespace {

ordered_json summary_json(const PrimeSummary& s, bool with_prime) {
  ordered_json j;
  if (with_prime) j["p"] = s.p;
  j["examined"] = s.examined;
  j["hypothesis_satisfying"] = s.hypothesis_satisfying;
  j["bound_holding"] = s.bound_holding;
  j["tight"] = s.tight;
  j["counterexamples"] = s.counterexamples;
  j["certificates_checked"] = s.certificates_checked;
  j["contradictions"] = s.contradictions;
  return j;
}

ordered_json instance_json(const Instance& inst) {
  ordered_json j;
  j["p"] = inst.p;
  j["A"] = residues_json(inst.a);
  j["B"] = inst.b ? residues_json(*inst.b) : ordered_json(nullptr);
  j["c"] = optional_json(inst.c);
  j["size"] = inst.combined_size;
  j["bound"] = inst.bound;
  if (inst.certificate) j["certificate"] = to_json(*inst.certificate);
  return j;
}

}  // namespace

ordered_json to_json(const Report& report) {
  const SweepConfig& c = report.config;
  ordered_json j;
  j["theorem"] = std::string(to_string(c.theorem));
  j["group"] = std::string(to_string(c.group()));
  j["search"] = c.exhaustive ? "exhaustive" : "sampled";
  j["primes"] = c.primes;
  // 0 means no cap when exhaustive and the sampling default otherwise.
  if (c.max_set_size != 0) {
    j["max_set_size"] = c.max_set_size;
  } else if (c.exhaustive) {
    j["max_set_size"] = nullptr;
  } else {
    j["max_set_size"] = kDefaultSampleMaxSize;
  }
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["rng"] = std::string(kRngName);
  j["budget"] = c.budget;
  j["tight_limit"] = c.tight_limit;
  j["attach_certificates"] = c.attach_certificates;

  ordered_json per_prime = ordered_json::array();
  for (const auto& s : report.per_prime) per_prime.push_back(summary_json(s, true));
  j["summary"] = std::move(per_prime);
  j["totals"] = summary_json(report.totals(), false);

  ordered_json tight = ordered_json::array();
  for (const auto& inst : report.tight) tight.push_back(instance_json(inst));
  j["tight"] = std::move(tight);
  ordered_json counter = ordered_json::array();
  for (const auto& inst : report.counterexamples) counter.push_back(instance_json(inst));
  j["counterexamples"] = std::move(counter);
  if (c.include_timing) j["wall_seconds"] = report.wall_seconds;
  return j;
}

std::string report_csv(const Report& report) {
  std::ostringstream os;
  os << "theorem,group,search,p,examined,hypothesis_satisfying,bound_holding,tight,"
        "counterexamples,certificates_checked,contradictions\n";
  for (const auto& s : report.per_prime) {
    os << to_string(report.config.theorem) << ',' << to_string(report.config.group()) << ','
       << (report.config.exhaustive ? "exhaustive" : "sampled") << ',' << s.p << ','
       << s.examined << ',' << s.hypothesis_satisfying << ',' << s.bound_holding << ','
       << s.tight << ',' << s.counterexamples << ',' << s.certificates_checked << ','
       << s.contradictions << '\n';
  }
  return os.str();
}

ordered_json to_json(const TightExample& ex) {
  ordered_json j;
  j["n"] = ex.n;
  j["p"] = ex.field.modulus();
  j["w"] = ex.w.value();
  j["order"] = 2 * ex.n - 4;
  j["A"] = residues_json(ex.a.residues());
  j["B"] = residues_json(ex.b.residues());
  j["restricted_size"] = ex.restricted_size;
  j["c"] = ex.c.value();
  if (ex.unique_rep) {
    j["unique_representation"] = {ex.unique_rep->a.value(), ex.unique_rep->b.value()};
  } else {
    j["unique_representation"] = nullptr;
  }
  j["degenerate"] = ex.degenerate;
  return j;
}

}  // namespace nullcert
