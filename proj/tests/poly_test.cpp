#include <gtest/gtest.h>

#include <random>

#include "nullcert/error.hpp"
#include "nullcert/linalg.hpp"
#include "nullcert/poly.hpp"
#include "oracle.hpp"

using namespace nullcert;
using V = std::vector<std::uint32_t>;

namespace {

BivariatePolynomial poly(PrimeField f, std::vector<Term> terms) {
  return BivariatePolynomial::from_terms(f, terms);
}

LinearForm line(PrimeField f, std::int64_t a, std::int64_t b, std::int64_t c) {
  return {f.element(a), f.element(b), f.element(c)};
}

ElementSet grid(PrimeField f, V v) { return ElementSet(f, GroupMode::Additive, v); }

BivariatePolynomial random_poly(PrimeField f, int max_degree, std::mt19937_64& rng) {
  BivariatePolynomial out(f);
  std::uniform_int_distribution<std::uint32_t> coeff(0, f.modulus() - 1);
  for (int d = 0; d <= max_degree; ++d) {
    for (int i = 0; i <= d; ++i) {
      if (rng() % 3 == 0) continue;
      out.add_term({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(d - i)},
                   f.element(coeff(rng)));
    }
  }
  return out;
}

// Plain Horner-free evaluation straight from the term list.
std::uint32_t eval_terms(const BivariatePolynomial& f, std::uint32_t t, std::uint32_t s) {
  const std::uint32_t p = f.field().modulus();
  std::uint64_t acc = 0;
  for (const auto& term : f.to_terms()) {
    const std::uint64_t c = oracle::slow_pow(t, term.x_exp, p) * std::uint64_t{1} *
                            oracle::slow_pow(s, term.y_exp, p) % p;
    acc = (acc + c * static_cast<std::uint64_t>(term.coefficient)) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

}  // namespace

TEST(Polynomial, Evaluation) {
  const PrimeField f5(5), f7(7);
  EXPECT_TRUE(poly(f7, {{1, 1, 1}, {0, 0, -1}}).evaluate(f7.element(2), f7.element(4)).is_zero());
  EXPECT_TRUE(poly(f7, {{1, 0, 1}, {0, 1, -3}}).evaluate(f7.element(6), f7.element(2)).is_zero());
  EXPECT_EQ(poly(f5, {{2, 1, 1}, {0, 0, 1}}).evaluate(f5.element(2), f5.element(3)).value(), 3u);
}

TEST(Polynomial, Construction) {
  const PrimeField f(7);
  const auto g = poly(f, {{1, 0, 3}, {1, 0, 4}, {0, 2, 9}});
  EXPECT_EQ(g.coefficient(1, 0).value(), 0u);
  EXPECT_EQ(g.coefficient(0, 2).value(), 2u);
  EXPECT_EQ(g.to_terms().size(), 1u);
  EXPECT_EQ(g.total_degree(), 2);
  EXPECT_EQ(BivariatePolynomial(f).total_degree(), -1);
  EXPECT_TRUE(BivariatePolynomial::constant(f.zero()).is_zero());
}

TEST(Polynomial, Multiplication) {
  const PrimeField f5(5), f7(7);
  const auto xmy = poly(f7, {{1, 0, 1}, {0, 1, -1}});
  const auto xpy = poly(f7, {{1, 0, 1}, {0, 1, 1}});
  EXPECT_EQ(xmy * xpy, poly(f7, {{2, 0, 1}, {0, 2, -1}}));
  EXPECT_EQ(xmy * BivariatePolynomial::constant(f7.one()), xmy);

  const auto a = poly(f5, {{1, 1, 1}, {0, 0, -1}});
  const auto b = poly(f5, {{1, 0, 1}, {0, 1, -2}});
  EXPECT_EQ(a * b, poly(f5, {{2, 1, 1}, {1, 2, -2}, {1, 0, -1}, {0, 1, 2}}));
  EXPECT_THROW(a.multiply(b, 2), PreconditionError);
}

TEST(Polynomial, LineProducts) {
  const PrimeField f5(5);
  const std::vector<LinearForm> one{line(f5, 1, -1, 0)};
  EXPECT_EQ(line_product(f5, one), poly(f5, {{1, 0, 1}, {0, 1, -1}}));
  const std::vector<LinearForm> two{line(f5, 1, 1, -3), line(f5, 1, -1, 0)};
  EXPECT_EQ(line_product(f5, two), poly(f5, {{2, 0, 1}, {0, 2, -1}, {1, 0, -3}, {0, 1, 3}}));
  EXPECT_EQ(line_product(f5, {}), BivariatePolynomial::constant(f5.one()));
}

TEST(Polynomial, ProductEvaluatesAsProductOfValues) {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = random_poly(f, 3, rng), h = random_poly(f, 3, rng);
      const auto gh = g * h;
      for (std::uint32_t t = 0; t < p; ++t) {
        for (std::uint32_t s = 0; s < p; ++s) {
          const auto x = f.element(t), y = f.element(s);
          ASSERT_EQ(gh.evaluate(x, y), g.evaluate(x, y) * h.evaluate(x, y));
          ASSERT_EQ(g.evaluate(x, y).value(), eval_terms(g, t, s));
        }
      }
    }
  }
}

TEST(Interpolation, Examples) {
  const PrimeField f7(7);
  const auto xy = poly(f7, {{1, 1, 1}});
  EXPECT_EQ(top_coefficient_interpolation(xy, grid(f7, {1, 2}), grid(f7, {3, 4})).value(), 1u);
  EXPECT_TRUE(top_coefficient_interpolation(BivariatePolynomial::constant(f7.element(5)),
                                            grid(f7, {1, 2}), grid(f7, {3, 4}))
                  .is_zero());
}

TEST(Interpolation, Preconditions) {
  const PrimeField f7(7);
  const auto cubic = poly(f7, {{3, 0, 1}});
  EXPECT_THROW(top_coefficient_interpolation(cubic, grid(f7, {1, 2}), grid(f7, {3, 4})),
               PreconditionError);
  const std::vector<FieldElement> dup{f7.element(1), f7.element(1)};
  const std::vector<FieldElement> ok{f7.element(1), f7.element(2)};
  EXPECT_THROW(top_coefficient_interpolation(poly(f7, {{1, 1, 1}}), dup, ok), PreconditionError);
  EXPECT_THROW(top_coefficient_interpolation(poly(f7, {{0, 0, 1}}), {}, ok), PreconditionError);
}

TEST(Interpolation, MatchesDirectCoefficientOnRandomInputs) {
  std::mt19937_64 rng(2024);
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t na = 1 + rng() % 4, nb = 1 + rng() % 4;
      std::vector<std::uint32_t> all(p);
      for (std::uint32_t i = 0; i < p; ++i) all[i] = i;
      std::shuffle(all.begin(), all.end(), rng);
      const auto a = grid(f, V(all.begin(), all.begin() + na));
      std::shuffle(all.begin(), all.end(), rng);
      const auto b = grid(f, V(all.begin(), all.begin() + nb));
      const auto g = random_poly(f, static_cast<int>(na + nb - 2), rng);
      ASSERT_EQ(top_coefficient_interpolation(g, a, b),
                g.coefficient(static_cast<std::uint32_t>(na - 1),
                              static_cast<std::uint32_t>(nb - 1)));
    }
  }
}

TEST(Interpolation, IsLinear) {
  std::mt19937_64 rng(99);
  const PrimeField f(11);
  const auto a = grid(f, {0, 3, 7}), b = grid(f, {1, 2, 5, 9});
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_poly(f, 5, rng), h = random_poly(f, 5, rng);
    const auto k = f.element(static_cast<std::int64_t>(rng() % 11));
    EXPECT_EQ(top_coefficient_interpolation(g + h.scaled(k), a, b),
              top_coefficient_interpolation(g, a, b) + k * top_coefficient_interpolation(h, a, b));
  }
}

TEST(VanishingProfile, Examples) {
  const PrimeField f5(5);
  const auto xmy = poly(f5, {{1, 0, 1}, {0, 1, -1}});
  const auto prof = vanishing_profile(xmy, grid(f5, {1, 2}), grid(f5, {1, 2}));
  ASSERT_EQ(prof.size(), 2u);
  EXPECT_EQ(prof[0], (GridPoint{f5.element(1), f5.element(2)}));
  EXPECT_EQ(prof[1], (GridPoint{f5.element(2), f5.element(1)}));
  EXPECT_TRUE(vanishing_profile(BivariatePolynomial(f5), grid(f5, {1, 2}), grid(f5, {3})).empty());
}

TEST(Feasibility, TwoByTwoGrid) {
  const PrimeField f(7);
  const auto x = grid(f, {1, 2}), y = grid(f, {3, 5});
  const GridPoint e{f.element(1), f.element(3)};
  EXPECT_FALSE(min_degree_feasibility(x, y, e, 0).feasible);
  EXPECT_FALSE(min_degree_feasibility(x, y, e, 1).feasible);
  const auto r = min_degree_feasibility(x, y, e, 2);
  ASSERT_TRUE(r.feasible);
  ASSERT_TRUE(r.witness);
  EXPECT_LE(r.witness->total_degree(), 2);
  EXPECT_EQ(vanishing_profile(*r.witness, x, y), std::vector<GridPoint>{e});
  EXPECT_EQ(r.witness->evaluate(e.t, e.s), f.one());
  // The product of (x - 2) and (y - 5) is one such witness.
  const std::vector<LinearForm> lines{line(f, 1, 0, -2), line(f, 0, 1, -5)};
  EXPECT_EQ(vanishing_profile(line_product(f, lines), x, y), std::vector<GridPoint>{e});
  EXPECT_THROW(min_degree_feasibility(x, y, {f.element(4), f.element(3)}, 2), PreconditionError);
}

// Every polynomial of degree <= D over GF(3) and GF(5), by enumeration.
TEST(Feasibility, AgreesWithEnumerationOverTinyFields) {
  for (std::uint32_t p : {3u, 5u}) {
    const PrimeField f(p);
    for (std::uint32_t max_d : {0u, 1u, 2u}) {
      if (p == 5 && max_d == 2) continue;  // 5^6 polynomials per grid is slow here
      const auto monos = graded_monomials(max_d);
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < monos.size(); ++i) total *= p;
      for (std::uint64_t mx = 1; mx < (1u << p); ++mx) {
        for (std::uint64_t my = 1; my < (1u << p); ++my) {
          const auto x = grid(f, oracle::subset(oracle::universe(p, false), mx));
          const auto y = grid(f, oracle::subset(oracle::universe(p, false), my));
          const GridPoint e{x[0], y[0]};
          bool found = false;
          for (std::uint64_t code = 0; code < total && !found; ++code) {
            BivariatePolynomial g(f);
            std::uint64_t c = code;
            for (const auto& m : monos) {
              g.add_term(m, f.element(static_cast<std::int64_t>(c % p)));
              c /= p;
            }
            found = vanishing_profile(g, x, y) == std::vector<GridPoint>{e};
          }
          ASSERT_EQ(min_degree_feasibility(x, y, e, max_d).feasible, found)
              << "p=" << p << " D=" << max_d << " X=" << x.to_string() << " Y=" << y.to_string();
        }
      }
    }
  }
}

TEST(Feasibility, MonotoneInDegreeWithValidWitnesses) {
  const PrimeField f(11);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::uint32_t> all(11);
    for (std::uint32_t i = 0; i < 11; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t nx = 1 + rng() % 4, ny = 1 + rng() % 4;
    const auto x = grid(f, V(all.begin(), all.begin() + nx));
    std::shuffle(all.begin(), all.end(), rng);
    const auto y = grid(f, V(all.begin(), all.begin() + ny));
    const GridPoint e{x[rng() % nx], y[rng() % ny]};
    bool was_feasible = false;
    for (std::uint32_t d = 0; d <= nx + ny; ++d) {
      const auto r = min_degree_feasibility(x, y, e, d);
      if (was_feasible) EXPECT_TRUE(r.feasible);
      if (r.feasible) {
        ASSERT_TRUE(r.witness);
        EXPECT_LE(r.witness->total_degree(), static_cast<int>(d));
        EXPECT_EQ(vanishing_profile(*r.witness, x, y), std::vector<GridPoint>{e});
      }
      EXPECT_EQ(r.feasible, d + 2 >= nx + ny);
      was_feasible = r.feasible;
    }
  }
}

TEST(Monomials, GradedOrder) {
  const auto m = graded_monomials(2);
  const std::vector<Monomial> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(m, want);
}

TEST(LinearAlgebra, SolveAndRank) {
  using linalg::ModMatrix;
  ModMatrix m(2, 2, 7);
  m.at(0, 0) = 1; m.at(0, 1) = 2;
  m.at(1, 0) = 3; m.at(1, 1) = 4;
  const auto sol = linalg::solve(m, {5, 6});
  ASSERT_TRUE(sol);
  EXPECT_EQ(((*sol)[0] + 2 * (*sol)[1]) % 7, 5u);
  EXPECT_EQ((3 * (*sol)[0] + 4 * (*sol)[1]) % 7, 6u);
  EXPECT_EQ(linalg::rank(m), 2u);

  ModMatrix s(2, 2, 7);
  s.at(0, 0) = 1; s.at(0, 1) = 2;
  s.at(1, 0) = 2; s.at(1, 1) = 4;
  EXPECT_EQ(linalg::rank(s), 1u);
  EXPECT_FALSE(linalg::solve(s, {1, 3}));
  EXPECT_TRUE(linalg::solve(s, {1, 2}));
}
