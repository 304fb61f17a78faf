#include "nullcert/certify.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "nullcert/error.hpp"

namespace nullcert {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::BoundCertified: return "BoundCertified";
    case Verdict::HypothesisUnmet: return "HypothesisUnmet";
    case Verdict::DirectlySatisfied: return "DirectlySatisfied";
    case Verdict::Contradiction: return "Contradiction";
  }
  return "unknown";
}

Verdict parse_verdict(std::string_view text) {
  for (auto v : {Verdict::BoundCertified, Verdict::HypothesisUnmet, Verdict::DirectlySatisfied,
                 Verdict::Contradiction}) {
    if (to_string(v) == text) return v;
  }
  throw ConfigError("unknown verdict '" + std::string(text) + "'");
}

BivariatePolynomial Certificate::polynomial(std::uint32_t degree_cap) const {
  BivariatePolynomial f = line_product(field(), lines, degree_cap);
  if (hyperbola_factor) {
    BivariatePolynomial xy_minus_one(field());
    xy_minus_one.add_term({1, 1}, field().one());
    xy_minus_one.add_term({0, 0}, -field().one());
    f = f.multiply(xy_minus_one, degree_cap);
  }
  return f;
}

namespace {

Certificate skeleton(TheoremTag theorem, const ElementSet& a, std::optional<ElementSet> b,
                     std::optional<FieldElement> target, ElementSet grid_y) {
  return Certificate{.theorem = theorem,
                     .mode = a.mode(),
                     .a = a,
                     .b = std::move(b),
                     .target = target,
                     .representation = std::nullopt,
                     .grid_x = a,
                     .grid_y = std::move(grid_y)};
}

void require_mode(const ElementSet& s, GroupMode mode, std::string_view what) {
  if (s.mode() != mode) {
    throw PreconditionError(std::string(what) + " needs " + std::string(to_string(mode)) +
                            " sets");
  }
}

// Points of the grid where no recorded factor vanishes, found by evaluating
// each factor rather than expanding the product.
std::vector<GridPoint> factor_profile(const Certificate& cert) {
  std::vector<GridPoint> out;
  const FieldElement one = cert.field().one();
  for (auto t : cert.grid_x.elements()) {
    for (auto s : cert.grid_y.elements()) {
      bool vanishes = cert.hyperbola_factor && t * s == one;
      for (const auto& line : cert.lines) {
        if (vanishes) break;
        vanishes = line.evaluate(t, s).is_zero();
      }
      if (!vanishes) out.push_back({t, s});
    }
  }
  return out;
}

std::vector<GridPoint> sorted(std::vector<GridPoint> pts) {
  std::sort(pts.begin(), pts.end());
  return pts;
}

void settle_bound(Certificate& cert) {
  const bool holds = static_cast<std::int64_t>(cert.combined_size) >= cert.bound;
  cert.verdict = holds ? Verdict::BoundCertified : Verdict::Contradiction;
  cert.tight = static_cast<std::int64_t>(cert.combined_size) == cert.bound;
  if (!holds) cert.note = "inequality fails although the cover polynomial was built";
}

void require_profile(const Certificate& cert) {
  if (sorted(factor_profile(cert)) != sorted(cert.exceptional)) {
    throw InvariantError("cover polynomial does not isolate the exceptional point(s)");
  }
}

std::string rep_count_note(std::size_t count) {
  return "target has " + std::to_string(count) + " restricted representations";
}

// The symmetric representation pair of c in A x' A, if that is all there is.
std::optional<Representation> symmetric_pair(const ElementSet& a, FieldElement c) {
  auto reps = representations(a, a, c, true);
  if (reps.size() != 2) return std::nullopt;
  if (reps[0].a == reps[0].b || reps[0].a != reps[1].b || reps[0].b != reps[1].a) {
    return std::nullopt;
  }
  return reps[0];
}

std::int64_t cover_bound(const ElementSet& a, const ElementSet& b, std::size_t n_size) {
  return static_cast<std::int64_t>(a.size() + b.size()) - 2 -
         static_cast<std::int64_t>(n_size / 2);
}

}  // namespace

Certificate additive_cover_certificate(const ElementSet& a, const ElementSet& b, FieldElement c) {
  a.require_compatible(b);
  require_mode(a, GroupMode::Additive, "additive cover");
  if (c.field() != a.field()) throw FieldMismatch();

  const PrimeField field = a.field();
  const ElementSet sums = restricted_combine(a, b);
  Certificate cert = skeleton(TheoremTag::Additive, a, b, c, b);
  cert.combined_size = sums.size();
  cert.bound = static_cast<std::int64_t>(a.size() + b.size()) - 2;

  const auto reps = representations(a, b, c, true);
  if (reps.size() != 1) {
    cert.note = rep_count_note(reps.size());
    return cert;
  }
  cert.representation = reps[0];

  const FieldElement one = field.one();
  cert.lines.push_back({one, -one, field.zero()});
  for (auto gamma : sums.elements()) {
    if (gamma != c) cert.lines.push_back({one, one, -gamma});
  }
  cert.degree = static_cast<std::uint32_t>(cert.lines.size());
  cert.exceptional = {{reps[0].a, reps[0].b}};
  require_profile(cert);
  settle_bound(cert);
  return cert;
}

Certificate multiplicative_cover_certificate(const ElementSet& a, const ElementSet& b,
                                             FieldElement c) {
  a.require_compatible(b);
  require_mode(a, GroupMode::Multiplicative, "multiplicative cover");
  if (c.field() != a.field()) throw FieldMismatch();

  const PrimeField field = a.field();
  const ElementSet products = restricted_combine(a, b);
  Certificate cert = skeleton(TheoremTag::Multiplicative, a, b, c, inverse_set(b));
  cert.combined_size = products.size();
  cert.bound = static_cast<std::int64_t>(a.size() + b.size()) - 3;

  const auto reps = representations(a, b, c, true);
  if (reps.size() != 1) {
    cert.note = rep_count_note(reps.size());
    return cert;
  }
  cert.representation = reps[0];

  cert.hyperbola_factor = true;
  for (auto gamma : products.elements()) {
    if (gamma != c) cert.lines.push_back({field.one(), -gamma, field.zero()});
  }
  cert.degree = static_cast<std::uint32_t>(cert.lines.size() + 2);
  cert.exceptional = {{reps[0].a, reps[0].b.inverse()}};
  require_profile(cert);
  settle_bound(cert);
  return cert;
}

FieldElement theorem5_summand(FieldElement a, FieldElement b, const ElementSet& set,
                              FieldElement c) {
  require_mode(set, GroupMode::Multiplicative, "theorem5_summand");
  if (!set.contains(a) || !set.contains(b)) throw PreconditionError("a and b must lie in A");
  if (a == b) throw PreconditionError("a and b must differ");
  if (a * b != c) throw PreconditionError("c must equal ab");

  const PrimeField field = set.field();
  const ElementSet products = restricted_combine(set, set);
  const auto n = static_cast<std::int64_t>(set.size());
  const auto csize = static_cast<std::int64_t>(products.size());
  const FieldElement ab = a * b;

  FieldElement numerator = (a - b) * b.pow(n - 2 - csize);
  if ((n - 1) % 2 != 0) numerator = -numerator;
  for (auto gamma : products.elements()) {
    if (gamma != c) numerator *= ab - gamma;
  }

  FieldElement denominator = field.one();
  const FieldElement b_inv = b.inverse();
  for (auto tau : set.elements()) {
    if (tau != a) denominator *= a - tau;
  }
  for (auto xi : inverse_set(set).elements()) {
    if (xi != b_inv) denominator *= b - xi.inverse();
    denominator *= xi;
  }
  if (denominator.is_zero()) throw InvariantError("vanishing denominator in closed-form summand");
  return numerator / denominator;
}

Certificate theorem5_certificate(const ElementSet& a, FieldElement c) {
  require_mode(a, GroupMode::Multiplicative, "theorem5_certificate");
  if (c.field() != a.field()) throw FieldMismatch();

  const PrimeField field = a.field();
  const ElementSet products = restricted_combine(a, a);
  const auto n = static_cast<std::int64_t>(a.size());
  Certificate cert = skeleton(TheoremTag::Main, a, std::nullopt, c, inverse_set(a));
  cert.combined_size = products.size();
  cert.bound = 2 * n - 3;

  const auto pair = symmetric_pair(a, c);
  if (!pair) {
    cert.note = "target lacks exactly two symmetric restricted representations";
    return cert;
  }
  cert.representation = *pair;
  const FieldElement x = pair->a;
  const FieldElement y = pair->b;
  if (x.pow(n - 2) == y.pow(n - 2)) {
    cert.note = "a^(n-2) = b^(n-2)";
    return cert;
  }

  cert.hyperbola_factor = true;
  for (auto gamma : products.elements()) {
    if (gamma != c) cert.lines.push_back({field.one(), -gamma, field.zero()});
  }
  cert.degree = static_cast<std::uint32_t>(cert.lines.size() + 2);
  cert.exceptional = {{x, y.inverse()}, {y, x.inverse()}};
  require_profile(cert);
  cert.summands = {theorem5_summand(x, y, a, c), theorem5_summand(y, x, a, c)};
  const FieldElement summand_sum = cert.summands[0] + cert.summands[1];

  const auto csize = static_cast<std::int64_t>(products.size());
  // Interpolation applies once deg f = |C| + 1 <= 2n - 2.
  const bool interpolable = csize + 1 <= 2 * n - 2;
  std::optional<BivariatePolynomial> f;
  if (interpolable) {
    f = cert.polynomial(*cert.degree);
    cert.top_coefficient = top_coefficient_interpolation(*f, cert.grid_x, cert.grid_y);
    if (*cert.top_coefficient != summand_sum) {
      throw InvariantError("interpolated coefficient differs from the closed-form summands");
    }
  }

  if (csize >= cert.bound) {
    cert.verdict = Verdict::DirectlySatisfied;
    cert.tight = csize == cert.bound;
    return cert;
  }

  // |C| <= 2n - 4 with a^(n-2) != b^(n-2): the coefficient of x^(n-1) y^(n-1)
  // must vanish by degree count, yet interpolation says otherwise.
  const auto top = static_cast<std::uint32_t>(n - 1);
  cert.verdict = Verdict::Contradiction;
  cert.note = "interpolated coefficient " + std::to_string(cert.top_coefficient->value()) +
              " but direct coefficient of x^(n-1)y^(n-1) is " +
              std::to_string(f->coefficient(top, top).value());
  return cert;
}

Certificate hyperbola_cover_certificate(const ElementSet& a, const ElementSet& b) {
  a.require_compatible(b);
  require_mode(a, GroupMode::Multiplicative, "hyperbola cover");

  const PrimeField field = a.field();
  const ElementSet products = restricted_combine(a, b);
  const ElementSet n_set = exceptional_set_N(a, b);
  Certificate cert = skeleton(TheoremTag::Cover, a, b, std::nullopt, inverse_set(b));
  cert.combined_size = products.size();
  cert.bound = cover_bound(a, b, n_set.size());

  if (n_set.empty()) {
    cert.note = "exceptional set N is empty";
    return cert;
  }

  const FieldElement one = field.one();
  const FieldElement zero = field.zero();
  for (auto gamma : products.elements()) cert.lines.push_back({one, -gamma, zero});

  const auto points = n_set.elements();
  const FieldElement star = points.front();
  const GridPoint star_point{star, star.inverse()};
  std::size_t added = 0;
  for (std::size_t i = 1; i < points.size(); i += 2) {
    const GridPoint p1{points[i], points[i].inverse()};
    LinearForm line{one, zero, -p1.t};  // vertical through a leftover point
    if (i + 1 < points.size()) {
      const GridPoint p2{points[i + 1], points[i + 1].inverse()};
      const FieldElement alpha = p2.s - p1.s;
      const FieldElement beta = p1.t - p2.t;
      line = {alpha, beta, -(alpha * p1.t + beta * p1.s)};
    }
    // A line meets the hyperbola xy = 1 in at most two points.
    std::size_t hits = 0;
    for (auto t : points) hits += line.evaluate(t, t.inverse()).is_zero() ? 1 : 0;
    const std::size_t expected = i + 1 < points.size() ? 2 : 1;
    if (hits != expected || line.evaluate(star_point.t, star_point.s).is_zero()) {
      throw InvariantError("pairing line meets the hyperbola outside its assigned points");
    }
    cert.lines.push_back(line);
    ++added;
  }
  if (added > n_set.size() / 2) throw InvariantError("too many pairing lines");

  cert.degree = static_cast<std::uint32_t>(cert.lines.size());
  cert.exceptional = {star_point};
  require_profile(cert);
  settle_bound(cert);
  return cert;
}

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

void check_bound_certified(const Certificate& cert, const ElementSet& b, CheckResult& result,
                           bool degree_crosscheck) {
  const ElementSet& a = cert.a;
  std::size_t slack = 0;
  switch (cert.theorem) {
    case TheoremTag::Additive:
    case TheoremTag::Multiplicative: {
      if (!cert.target) {
        result.fail("missing target");
        return;
      }
      const auto reps = representations(a, b, *cert.target, true);
      if (reps.size() != 1) result.fail("target is not uniquely represented");
      if (cert.theorem == TheoremTag::Additive) {
        if (cert.hyperbola_factor) result.fail("additive cover has no hyperbola factor");
      } else {
        if (!cert.hyperbola_factor) result.fail("multiplicative cover needs the (xy-1) factor");
        slack = 1;
      }
      break;
    }
    case TheoremTag::Cover:
      slack = exceptional_set_N(a, b).size() / 2;
      if (cert.hyperbola_factor) result.fail("hyperbola cover has no (xy-1) factor");
      break;
    default:
      result.fail("theorem has no cover certificate");
      return;
  }

  for (const auto& line : cert.lines) {
    if (line.alpha.is_zero() && line.beta.is_zero()) result.fail("constant factor among lines");
  }
  const std::size_t factor_degree = cert.lines.size() + (cert.hyperbola_factor ? 2 : 0);
  if (!cert.degree || *cert.degree != factor_degree) {
    result.fail("recorded degree differs from factor count " + str(factor_degree));
  }
  if (factor_degree > cert.combined_size + slack) {
    result.fail("degree " + str(factor_degree) + " exceeds |C| + " + str(slack));
  }
  if (cert.exceptional.size() != 1) {
    result.fail("expected exactly one exceptional point");
    return;
  }

  const BivariatePolynomial f = cert.polynomial(static_cast<std::uint32_t>(factor_degree));
  if (f.total_degree() != static_cast<int>(factor_degree)) {
    result.fail("expanded polynomial has degree " + str(f.total_degree()));
  }
  if (vanishing_profile(f, cert.grid_x, cert.grid_y) != cert.exceptional) {
    result.fail("polynomial does not vanish exactly off the exceptional point");
  }
  const auto grid_sum = static_cast<std::int64_t>(cert.grid_x.size() + cert.grid_y.size());
  if (static_cast<std::int64_t>(factor_degree) < grid_sum - 2) {
    result.fail("degree below |X|+|Y|-2");
  }
  if (static_cast<std::int64_t>(cert.combined_size) < cert.bound) {
    result.fail("inequality does not hold numerically");
  }
  if (degree_crosscheck && grid_sum >= 3) {
    const auto probe = min_degree_feasibility(cert.grid_x, cert.grid_y, cert.exceptional[0],
                                              static_cast<std::uint32_t>(grid_sum - 3));
    if (probe.feasible) result.fail("a lower-degree polynomial isolates the exceptional point");
  }
}

void check_theorem5(const Certificate& cert, CheckResult& result) {
  const ElementSet& a = cert.a;
  const auto n = static_cast<std::int64_t>(a.size());
  const auto pair = cert.target ? symmetric_pair(a, *cert.target) : std::nullopt;
  const bool hypothesis = pair && pair->a.pow(n - 2) != pair->b.pow(n - 2);
  if (cert.verdict == Verdict::HypothesisUnmet) {
    if (hypothesis) result.fail("hypothesis actually holds");
    return;
  }
  if (!hypothesis) {
    result.fail("hypothesis does not hold");
    return;
  }
  if (static_cast<std::int64_t>(cert.combined_size) < cert.bound) {
    result.fail("|A x' A| below 2n-3");
  }
  const FieldElement x = pair->a, y = pair->b;
  const std::vector<FieldElement> expected{theorem5_summand(x, y, a, *cert.target),
                                           theorem5_summand(y, x, a, *cert.target)};
  if (cert.summands != expected) result.fail("summands do not recompute");
  if (sorted(cert.exceptional) != sorted({{x, y.inverse()}, {y, x.inverse()}})) {
    result.fail("exceptional points are not (a,b^-1), (b,a^-1)");
  }
  const auto degree = static_cast<std::uint32_t>(cert.lines.size() + 2);
  if (!cert.hyperbola_factor || !cert.degree || *cert.degree != degree) {
    result.fail("factor list inconsistent with recorded degree");
  }
  const BivariatePolynomial f = cert.polynomial(degree);
  if (sorted(vanishing_profile(f, cert.grid_x, cert.grid_y)) != sorted(cert.exceptional)) {
    result.fail("polynomial does not vanish exactly off the two exceptional points");
  }
  if (cert.top_coefficient) {
    if (f.total_degree() > 2 * n - 2) {
      result.fail("top coefficient recorded beyond interpolation range");
    } else if (top_coefficient_interpolation(f, cert.grid_x, cert.grid_y) !=
               *cert.top_coefficient) {
      result.fail("top coefficient does not recompute");
    } else if (*cert.top_coefficient != expected[0] + expected[1]) {
      result.fail("top coefficient differs from the summand sum");
    }
  }
}

}  // namespace

CheckResult reverify(const Certificate& cert, bool degree_crosscheck) {
  CheckResult result;
  const ElementSet& a = cert.a;
  const ElementSet b = cert.b.value_or(a);
  try {
    a.require_compatible(b);
    if (a.mode() != cert.mode) result.fail("mode tag differs from set mode");
    if (cert.mode != default_mode(cert.theorem)) result.fail("theorem and mode disagree");
    if (cert.theorem == TheoremTag::Main && cert.b) result.fail("single-set theorem with a B set");
    if (cert.theorem != TheoremTag::Main && !cert.b) result.fail("missing B");

    const ElementSet combined = restricted_combine(a, b);
    if (combined.size() != cert.combined_size) {
      result.fail("recorded |C| = " + str(static_cast<std::int64_t>(cert.combined_size)) +
                  " but recomputed " + str(static_cast<std::int64_t>(combined.size())));
    }

    std::int64_t bound = 0;
    const auto sizes = static_cast<std::int64_t>(a.size() + b.size());
    switch (cert.theorem) {
      case TheoremTag::Additive: bound = sizes - 2; break;
      case TheoremTag::Multiplicative: bound = sizes - 3; break;
      case TheoremTag::Main: bound = 2 * static_cast<std::int64_t>(a.size()) - 3; break;
      case TheoremTag::Cover: bound = cover_bound(a, b, exceptional_set_N(a, b).size()); break;
      default:
        result.fail("theorem '" + std::string(to_string(cert.theorem)) + "' has no certificate");
        return result;
    }
    if (bound != cert.bound) result.fail("recorded bound differs from recomputed " + str(bound));

    const ElementSet expected_y = cert.theorem == TheoremTag::Additive ? b : inverse_set(b);
    if (!(cert.grid_x == a) || !(cert.grid_y == expected_y)) result.fail("unexpected grid");

    const bool tight = static_cast<std::int64_t>(combined.size()) == bound;
    if (cert.verdict != Verdict::HypothesisUnmet && cert.tight != tight) {
      result.fail("tight flag inconsistent");
    }
    if (!result.ok) return result;

    switch (cert.verdict) {
      case Verdict::Contradiction:
        result.fail("certificate records a contradiction");
        break;
      case Verdict::HypothesisUnmet:
        if (cert.theorem == TheoremTag::Main) {
          check_theorem5(cert, result);
        } else if (cert.theorem == TheoremTag::Cover) {
          if (!exceptional_set_N(a, b).empty()) result.fail("N is nonempty");
        } else if (!cert.target) {
          result.fail("missing target");
        } else if (representations(a, b, *cert.target, true).size() == 1) {
          result.fail("target is uniquely represented");
        }
        break;
      case Verdict::DirectlySatisfied:
        if (cert.theorem != TheoremTag::Main) {
          result.fail("only the single-set theorem is satisfied directly");
        } else {
          check_theorem5(cert, result);
        }
        break;
      case Verdict::BoundCertified:
        check_bound_certified(cert, b, result, degree_crosscheck);
        break;
    }
  } catch (const std::exception& e) {
    result.fail(std::string("re-verification raised: ") + e.what());
  }
  return result;
}

}  // namespace nullcert
