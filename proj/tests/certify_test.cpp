#include <gtest/gtest.h>

#include "nullcert/certify.hpp"
#include "nullcert/error.hpp"
#include "nullcert/io.hpp"
#include "nullcert/search.hpp"
#include "oracle.hpp"

using namespace nullcert;
using V = std::vector<std::uint32_t>;

namespace {

const PrimeField F7(7);

ElementSet mult(PrimeField f, V v) { return ElementSet(f, GroupMode::Multiplicative, v); }
ElementSet add(PrimeField f, V v) { return ElementSet(f, GroupMode::Additive, v); }

// The interpolation term of f at (t, s) over X x Y, straight from the formula.
FieldElement raw_term(const BivariatePolynomial& f, const ElementSet& x, const ElementSet& y,
                      FieldElement t, FieldElement s) {
  FieldElement den = f.field().one();
  for (auto tau : x.elements()) {
    if (tau != t) den *= t - tau;
  }
  for (auto xi : y.elements()) {
    if (xi != s) den *= s - xi;
  }
  return f.evaluate(t, s) / den;
}

void expect_reverifies(const Certificate& cert) {
  const auto check = reverify(cert);
  EXPECT_TRUE(check.ok) << (check.failures.empty() ? "" : check.failures.front());
}

}  // namespace

TEST(AdditiveCover, UniqueRepresentationIsCertified) {
  const auto a = add(F7, {0, 1}), b = add(F7, {1, 2});
  const auto cert = additive_cover_certificate(a, b, F7.element(1));
  EXPECT_EQ(cert.verdict, Verdict::BoundCertified);
  EXPECT_EQ(cert.combined_size, 3u);
  EXPECT_EQ(cert.bound, 2);
  ASSERT_TRUE(cert.representation);
  EXPECT_EQ(cert.representation->a.value(), 0u);
  EXPECT_EQ(cert.representation->b.value(), 1u);
  const auto f = cert.polynomial();
  EXPECT_EQ(vanishing_profile(f, cert.grid_x, cert.grid_y),
            (std::vector<GridPoint>{{F7.element(0), F7.element(1)}}));
  EXPECT_EQ(static_cast<std::uint32_t>(f.total_degree()), *cert.degree);
  expect_reverifies(cert);
}

TEST(AdditiveCover, TwoRepresentationsAreRejected) {
  const auto a = add(F7, {0, 1, 2});
  const auto cert = additive_cover_certificate(a, a, F7.element(2));  // 0+2 and 2+0
  EXPECT_EQ(cert.verdict, Verdict::HypothesisUnmet);
  expect_reverifies(cert);
}

TEST(MultiplicativeCover, UniqueRepresentationIsCertified) {
  const auto cert = multiplicative_cover_certificate(mult(F7, {1, 2}), mult(F7, {2, 3}),
                                                     F7.element(3));
  EXPECT_EQ(cert.verdict, Verdict::BoundCertified);
  EXPECT_EQ(cert.combined_size, 3u);
  EXPECT_EQ(cert.bound, 1);
  EXPECT_FALSE(cert.tight);
  EXPECT_EQ(vanishing_profile(cert.polynomial(), cert.grid_x, cert.grid_y),
            (std::vector<GridPoint>{{F7.element(1), F7.element(5)}}));
  expect_reverifies(cert);
}

TEST(MultiplicativeCover, TightFamilyIsTight) {
  const auto ex = construct_tight_example(5);
  const auto cert = multiplicative_cover_certificate(ex.a, ex.b, ex.c);
  EXPECT_EQ(cert.verdict, Verdict::BoundCertified);
  EXPECT_TRUE(cert.tight);
  EXPECT_EQ(cert.combined_size, 6u);
  EXPECT_EQ(cert.bound, 6);
  expect_reverifies(cert);
}

TEST(MultiplicativeCover, DiagonalOnlyFactorizationIsRejected) {
  // 4 = 2*2 is the only factorization in {2} x {2}.
  const auto cert = multiplicative_cover_certificate(mult(F7, {2}), mult(F7, {2}), F7.element(4));
  EXPECT_EQ(cert.verdict, Verdict::HypothesisUnmet);
}

TEST(SingleSetCertificate, TightFamilyFailsTheExtraHypothesis) {
  for (std::uint32_t n = 4; n <= 7; ++n) {
    const auto ex = construct_tight_example(n);
    const auto cert = theorem5_certificate(ex.a, ex.c);
    EXPECT_EQ(cert.verdict, Verdict::HypothesisUnmet) << n;
  }
}

TEST(SingleSetCertificate, TwoElementSetsNeverMeetTheHypothesis) {
  // With n = 2 the exponent n-2 is zero, so a^(n-2) = b^(n-2) = 1 always.
  const auto cert = theorem5_certificate(mult(F7, {2, 3}), F7.element(6));
  EXPECT_EQ(cert.verdict, Verdict::HypothesisUnmet);
  EXPECT_EQ(cert.combined_size, 1u);
}

TEST(SingleSetCertificate, SummandMatchesInterpolationTerm) {
  std::uint64_t checked = 0, interpolated = 0;
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const PrimeField f(p);
    const auto uni = oracle::universe(p, true);
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << uni.size()); ++m) {
      const auto a = mult(f, oracle::subset(uni, m));
      const auto n = static_cast<std::int64_t>(a.size());
      for (auto c : unique_rep_elements(a, a, true, RepresentationFilter::SymmetricPair)) {
        const auto cert = theorem5_certificate(a, c);
        if (cert.verdict == Verdict::HypothesisUnmet) continue;
        ASSERT_NE(cert.verdict, Verdict::Contradiction);
        const auto x = cert.representation->a, y = cert.representation->b;
        const auto poly = cert.polynomial(64);
        ASSERT_EQ(cert.summands[0], raw_term(poly, cert.grid_x, cert.grid_y, x, y.inverse()));
        ASSERT_EQ(cert.summands[1], raw_term(poly, cert.grid_x, cert.grid_y, y, x.inverse()));
        const auto csize = static_cast<std::int64_t>(cert.combined_size);
        ASSERT_EQ(cert.summands[1], -(y / x).pow(csize + 2 - n) * cert.summands[0]);
        if (csize == 2 * n - 4) {
          ASSERT_EQ(cert.summands[1], -(y / x).pow(n - 2) * cert.summands[0]);
        }
        if (cert.top_coefficient) {
          ++interpolated;
          const auto top = static_cast<std::uint32_t>(n - 1);
          ASSERT_EQ(*cert.top_coefficient, cert.summands[0] + cert.summands[1]);
          ASSERT_EQ(poly.coefficient(top, top), cert.summands[0] + cert.summands[1]);
        }
        expect_reverifies(cert);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
  EXPECT_GT(interpolated, 0u);
}

TEST(HyperbolaCover, Examples) {
  const auto a = mult(F7, {1, 2});
  const auto cert = hyperbola_cover_certificate(a, a);
  EXPECT_EQ(cert.verdict, Verdict::BoundCertified);
  EXPECT_TRUE(cert.tight);
  EXPECT_EQ(cert.combined_size, 1u);
  EXPECT_EQ(cert.bound, 1);
  expect_reverifies(cert);

  const auto closed = mult(F7, {1, 2, 4});
  EXPECT_EQ(hyperbola_cover_certificate(closed, closed).verdict, Verdict::HypothesisUnmet);
}

TEST(HyperbolaCover, SingletonLeftoverAvoidsTheKeptPoint) {
  // N = {1, 6}: a line x - 36y would pass through (1, 1).
  const auto a = mult(F7, {1, 6});
  const auto cert = hyperbola_cover_certificate(a, a);
  EXPECT_EQ(cert.verdict, Verdict::BoundCertified);
  expect_reverifies(cert);
}

// Every certificate over small primes re-verifies, including the
// elimination cross-check.
TEST(Certificates, ExhaustiveReverification) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const PrimeField f(p);
    for (bool is_mult : {false, true}) {
      const auto uni = oracle::universe(p, is_mult);
      const std::uint64_t n = std::uint64_t{1} << uni.size();
      for (std::uint64_t ma = 1; ma < n; ++ma) {
        for (std::uint64_t mb = 1; mb < n; ++mb) {
          const auto va = oracle::subset(uni, ma), vb = oracle::subset(uni, mb);
          const auto a = oracle::make(f, is_mult, va), b = oracle::make(f, is_mult, vb);
          const bool crosscheck = p <= 5;
          for (std::uint32_t c = 0; c < p; ++c) {
            const auto reps = oracle::reps(is_mult, va, vb, p, c, true);
            if (reps.empty()) continue;
            const auto cert = is_mult
                                  ? multiplicative_cover_certificate(a, b, f.element(c))
                                  : additive_cover_certificate(a, b, f.element(c));
            ASSERT_EQ(cert.verdict == Verdict::BoundCertified, reps.size() == 1);
            const auto check = reverify(cert, crosscheck);
            ASSERT_TRUE(check.ok) << check.failures.front();
          }
          if (is_mult) {
            const auto cert = hyperbola_cover_certificate(a, b);
            ASSERT_NE(cert.verdict, Verdict::Contradiction);
            const auto check = reverify(cert, crosscheck);
            ASSERT_TRUE(check.ok) << check.failures.front();
          }
        }
      }
    }
  }
}

TEST(Certificates, JsonRoundTrip) {
  const std::vector<Certificate> certs{
      additive_cover_certificate(add(F7, {0, 1}), add(F7, {1, 2}), F7.element(1)),
      multiplicative_cover_certificate(mult(F7, {1, 2}), mult(F7, {2, 3}), F7.element(3)),
      hyperbola_cover_certificate(mult(F7, {1, 2}), mult(F7, {1, 2})),
      hyperbola_cover_certificate(mult(F7, {1, 2, 4}), mult(F7, {1, 2, 4})),
      theorem5_certificate(mult(PrimeField(11), {1, 2, 3, 5}), PrimeField(11).element(6)),
  };
  for (const auto& cert : certs) {
    const auto text = to_json(cert).dump();
    const auto back = certificate_from_json(nlohmann::json::parse(text));
    EXPECT_EQ(to_json(back).dump(), text);
    expect_reverifies(back);
  }
}

TEST(Certificates, TamperingIsDetected) {
  const auto cert =
      multiplicative_cover_certificate(mult(F7, {1, 2}), mult(F7, {2, 3}), F7.element(3));

  auto dropped = cert;
  dropped.lines.pop_back();
  EXPECT_FALSE(reverify(dropped).ok);

  auto inflated = cert;
  inflated.bound += 1;
  EXPECT_FALSE(reverify(inflated).ok);

  auto moved = cert;
  moved.exceptional = {{F7.element(2), F7.element(5)}};
  EXPECT_FALSE(reverify(moved).ok);

  auto relabelled = cert;
  relabelled.verdict = Verdict::HypothesisUnmet;
  EXPECT_FALSE(reverify(relabelled).ok);

  auto contradiction = cert;
  contradiction.verdict = Verdict::Contradiction;
  EXPECT_FALSE(reverify(contradiction).ok);

  auto j = to_json(cert);
  j.erase("lines");
  EXPECT_THROW(certificate_from_json(j), ConfigError);
  auto k = to_json(cert);
  k["p"] = 9;
  EXPECT_THROW(certificate_from_json(k), ConfigError);
}
