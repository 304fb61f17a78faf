#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nullcert/field.hpp"
#include "nullcert/sets.hpp"

namespace nullcert {

inline constexpr std::uint32_t kDefaultDegreeCap = 64;

/// x^x_exp y^y_exp
struct Monomial {
  std::uint32_t x_exp = 0;
  std::uint32_t y_exp = 0;

  std::uint32_t degree() const { return x_exp + y_exp; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// alpha*x + beta*y + gamma
struct LinearForm {
  FieldElement alpha;
  FieldElement beta;
  FieldElement gamma;

  FieldElement evaluate(FieldElement t, FieldElement s) const { return alpha * t + beta * s + gamma; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

struct GridPoint {
  FieldElement t;
  FieldElement s;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint& a, const GridPoint& b) {
    if (auto c = a.t <=> b.t; c != 0) return c;
    return a.s <=> b.s;
  }
};

/// One (i, j, coefficient) triple of the text/JSON polynomial format.
struct Term {
  std::uint32_t x_exp;
  std::uint32_t y_exp;
  std::int64_t coefficient;
};

/// Sparse polynomial in x, y over GF(p). Zero coefficients are never stored.
class BivariatePolynomial {
 public:
  explicit BivariatePolynomial(PrimeField field) : field_(field) {}

  static BivariatePolynomial constant(FieldElement c);
  static BivariatePolynomial monomial(FieldElement c, std::uint32_t x_exp, std::uint32_t y_exp);
  static BivariatePolynomial linear(const LinearForm& form);
  /// Coefficients are reduced mod p; repeated monomials accumulate.
  static BivariatePolynomial from_terms(PrimeField field, std::span<const Term> terms);

  PrimeField field() const { return field_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int total_degree() const;
  FieldElement coefficient(std::uint32_t x_exp, std::uint32_t y_exp) const;
  const std::map<Monomial, std::uint32_t>& terms() const { return terms_; }
  std::vector<Term> to_terms() const;

  void add_term(Monomial m, FieldElement c);

  FieldElement evaluate(FieldElement t, FieldElement s) const;

  BivariatePolynomial operator+(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-(const BivariatePolynomial& o) const;
  BivariatePolynomial scaled(FieldElement c) const;
  /// Throws PreconditionError if the product's degree would exceed `degree_cap`.
  BivariatePolynomial multiply(const BivariatePolynomial& o,
                               std::uint32_t degree_cap = kDefaultDegreeCap) const;
  BivariatePolynomial operator*(const BivariatePolynomial& o) const { return multiply(o); }

  std::string to_string() const;

  friend bool operator==(const BivariatePolynomial&, const BivariatePolynomial&) = default;

 private:
  PrimeField field_;
  std::map<Monomial, std::uint32_t> terms_;
};

/// Product of the given linear forms; the empty product is 1.
BivariatePolynomial line_product(PrimeField field, std::span<const LinearForm> lines,
                                 std::uint32_t degree_cap = kDefaultDegreeCap);

/// Coefficient of x^{|A|-1} y^{|B|-1} in f, computed from the values of f on
/// A x B by Lagrange-style interpolation:
///   sum_{t in A, s in B} f(t,s) / (prod_{tau != t}(t - tau) prod_{xi != s}(s - xi)).
/// Requires deg f <= |A| + |B| - 2 and pairwise distinct points.
FieldElement top_coefficient_interpolation(const BivariatePolynomial& f,
                                           std::span<const FieldElement> xs,
                                           std::span<const FieldElement> ys);
FieldElement top_coefficient_interpolation(const BivariatePolynomial& f, const ElementSet& a,
                                           const ElementSet& b);

/// Points of X x Y where f is nonzero, lexicographic by (t, s).
std::vector<GridPoint> vanishing_profile(const BivariatePolynomial& f, const ElementSet& x,
                                         const ElementSet& y);

struct FeasibilityResult {
  bool feasible = false;
  std::optional<BivariatePolynomial> witness;
};

/// Is there f with deg f <= max_degree, f = 0 on (X x Y) \ {exceptional}
/// and f(exceptional) = 1? Decided by elimination over the graded-lex
/// monomial basis; a feasible answer carries the witness.
FeasibilityResult min_degree_feasibility(const ElementSet& x, const ElementSet& y,
                                         const GridPoint& exceptional, std::uint32_t max_degree);

/// Graded lexicographic monomials of total degree <= max_degree:
/// 1, x, y, x^2, xy, y^2, ...
std::vector<Monomial> graded_monomials(std::uint32_t max_degree);

}  // namespace nullcert
