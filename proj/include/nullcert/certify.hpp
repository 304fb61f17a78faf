#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nullcert/poly.hpp"
#include "nullcert/sets.hpp"
#include "nullcert/theorem.hpp"

namespace nullcert {

enum class Verdict {
  BoundCertified,     // cover polynomial built and checked; inequality follows
  HypothesisUnmet,    // the theorem says nothing about this input
  DirectlySatisfied,  // inequality holds by counting; no polynomial needed
  Contradiction,      // hypothesis holds but the inequality failed: a bug
};

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);

/// A replayed polynomial-method argument. Everything needed to re-check it
/// is embedded, so a certificate can be validated from its JSON alone.
///
/// The cover polynomial is the product of `lines`, times (xy - 1) when
/// `hyperbola_factor` is set. For BoundCertified it vanishes on
/// grid_x x grid_y everywhere except the `exceptional` points.
struct Certificate {
  TheoremTag theorem;
  GroupMode mode;
  ElementSet a;
  std::optional<ElementSet> b;  // absent for single-set theorems
  std::optional<FieldElement> target;
  // The (unique, or first of the symmetric pair) representation of target.
  std::optional<Representation> representation;
  ElementSet grid_x;
  ElementSet grid_y;
  std::vector<LinearForm> lines;
  bool hyperbola_factor = false;
  std::vector<GridPoint> exceptional;
  std::optional<std::uint32_t> degree;
  std::size_t combined_size = 0;  // size of the restricted combine
  std::int64_t bound = 0;
  std::optional<FieldElement> top_coefficient;
  std::vector<FieldElement> summands;
  Verdict verdict = Verdict::HypothesisUnmet;
  bool tight = false;
  std::string note;

  PrimeField field() const { return a.field(); }
  /// Expands the recorded factors.
  BivariatePolynomial polynomial(std::uint32_t degree_cap = kDefaultDegreeCap) const;
};

/// Cover of A x B by the diagonal x = y and the lines x + y = gamma,
/// gamma in (A +' B) \ {c}. Certifies |A +' B| >= |A| + |B| - 2 when c has a
/// unique restricted representation.
Certificate additive_cover_certificate(const ElementSet& a, const ElementSet& b, FieldElement c);

/// (xy - 1) prod_{gamma in (A x' B) \ {c}} (x - gamma y) on A x B^-1.
/// Certifies |A x' B| >= |A| + |B| - 3 when c has a unique restricted
/// representation.
Certificate multiplicative_cover_certificate(const ElementSet& a, const ElementSet& b,
                                             FieldElement c);

/// Closed form of the interpolation term of (xy - 1) prod (x - gamma y) at
/// the grid point (a, b^-1) of A x A^-1, where c = ab:
///
///   (a-b) b^(n-2-|C|) (-1)^(n-1) prod_{gamma in C\c}(ab - gamma)
///     / [ prod_{tau in A\a}(a - tau) prod_{xi in A^-1\b^-1}(b - xi^-1) prod_{xi in A^-1} xi ]
///
/// with C = A x' A and n = |A|. When |C| = 2n - 4 the power of b is b^(2-n).
FieldElement theorem5_summand(FieldElement a, FieldElement b, const ElementSet& set,
                              FieldElement c);

/// Single-set argument for |A x' A| >= 2n - 3 under a symmetric pair of
/// representations c = ab = ba with a^(n-2) != b^(n-2).
Certificate theorem5_certificate(const ElementSet& a, FieldElement c);

/// Lines x = gamma y for gamma in A x' B, plus at most floor(|N|/2) lines
/// covering the uncovered hyperbola points (t, t^-1), t in N, all but the
/// smallest. Certifies |A x' B| >= |A| + |B| - 2 - floor(|N|/2).
Certificate hyperbola_cover_certificate(const ElementSet& a, const ElementSet& b);

struct CheckResult {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Re-derives every claim in the certificate from its embedded inputs.
/// With `degree_crosscheck`, also confirms by elimination that no polynomial
/// of degree |X|+|Y|-3 isolates the exceptional point.
CheckResult reverify(const Certificate& cert, bool degree_crosscheck = true);

}  // namespace nullcert
