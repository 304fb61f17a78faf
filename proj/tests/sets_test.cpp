#include <gtest/gtest.h>

#include "nullcert/error.hpp"
#include "nullcert/sets.hpp"
#include "oracle.hpp"

using namespace nullcert;
using V = std::vector<std::uint32_t>;

namespace {

const PrimeField F5(5), F7(7);

ElementSet mult(PrimeField f, V v) { return ElementSet(f, GroupMode::Multiplicative, v); }
ElementSet add(PrimeField f, V v) { return ElementSet(f, GroupMode::Additive, v); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs(const std::vector<Representation>& r) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& x : r) out.emplace_back(x.a.value(), x.b.value());
  return out;
}

V res(const ElementSet& s) { return {s.residues().begin(), s.residues().end()}; }

V values(const std::vector<FieldElement>& v) {
  V out;
  for (auto x : v) out.push_back(x.value());
  return out;
}

}  // namespace

TEST(ElementSet, ValidatesInput) {
  EXPECT_THROW(mult(F7, {0, 1}), PreconditionError);
  EXPECT_THROW(add(F7, {1, 1}), PreconditionError);
  EXPECT_THROW(add(F7, {7}), PreconditionError);
  EXPECT_EQ(res(add(F7, {3, 0, 1})), (V{0, 1, 3}));
  EXPECT_THROW(mult(F7, {1}).require_compatible(add(F7, {1})), PreconditionError);
  EXPECT_THROW(mult(F7, {1}).require_compatible(mult(F5, {1})), PreconditionError);
}

TEST(ElementSet, ParsesLiterals) {
  EXPECT_EQ(res(parse_set_literal("1,2,4", F7, GroupMode::Multiplicative)), (V{1, 2, 4}));
  EXPECT_EQ(res(parse_set_literal("{ 4, 1 }", F7, GroupMode::Multiplicative)), (V{1, 4}));
  EXPECT_TRUE(parse_set_literal("", F7, GroupMode::Additive).empty());
  EXPECT_THROW(parse_set_literal("1,x", F7, GroupMode::Additive), ConfigError);
  EXPECT_THROW(parse_set_literal("1,1", F7, GroupMode::Additive), ConfigError);
  EXPECT_THROW(parse_set_literal("0", F7, GroupMode::Multiplicative), ConfigError);
  EXPECT_EQ(mult(F7, {1, 2, 4}).to_string(), "{1,2,4}");
}

TEST(Combine, RestrictedExamples) {
  EXPECT_EQ(res(restricted_combine(mult(F7, {1, 2}), mult(F7, {2, 3}))), (V{2, 3, 6}));
  EXPECT_EQ(res(restricted_combine(add(F7, {0, 1}), add(F7, {1, 2}))), (V{1, 2, 3}));
  EXPECT_TRUE(restricted_combine(mult(F7, {3}), mult(F7, {3})).empty());
}

TEST(Combine, FullExamples) {
  EXPECT_EQ(res(full_combine(mult(F7, {1, 2}), mult(F7, {2, 3}))), (V{2, 3, 4, 6}));
  EXPECT_EQ(res(full_combine(mult(F7, {3}), mult(F7, {5}))), (V{1}));
  EXPECT_EQ(res(full_combine(add(F5, {0, 1, 2}), add(F5, {0, 1, 2}))),
            (V{0, 1, 2, 3, 4}));
}

TEST(Representations, Examples) {
  const auto a = mult(F5, {1, 2, 3, 4}), b = mult(F5, {1, 2, 4});
  using P = std::vector<std::pair<std::uint32_t, std::uint32_t>>;
  EXPECT_EQ(pairs(representations(a, b, F5.one(), true)), (P{{3, 2}}));
  EXPECT_EQ(pairs(representations(a, b, F5.one(), false)), (P{{1, 1}, {3, 2}, {4, 4}}));
  EXPECT_TRUE(representations(mult(F7, {1}), mult(F7, {1}), F7.element(3), false).empty());
}

TEST(UniqueReps, Examples) {
  EXPECT_EQ(values(unique_rep_elements(mult(F7, {1, 2}), mult(F7, {2, 3}), true)), (V{2, 3, 6}));
  EXPECT_EQ(values(unique_rep_elements(mult(F7, {3}), mult(F7, {5}), true)), (V{1}));
}

TEST(UniqueReps, SymmetricPairSelection) {
  const auto a = mult(F5, {1, 2, 3, 4});
  // Every element of {1,2,3,4} mod 5 is hit; only 1 and 4 have exactly
  // one unordered pair, 1 = 2*3 and 4 = 1*4. Element 2 = 1*2 = 3*4 has two.
  const auto reps2 = oracle::reps(true, {1, 2, 3, 4}, {1, 2, 3, 4}, 5, 2, true);
  EXPECT_EQ(reps2.size(), 4u);
  EXPECT_EQ(values(unique_rep_elements(a, a, true, RepresentationFilter::SymmetricPair)),
            (V{1, 4}));
  // The ordered pair (3,4),(4,3) is symmetric once 1 and 2 are gone.
  const auto small = mult(F5, {3, 4});
  EXPECT_EQ(values(unique_rep_elements(small, small, true, RepresentationFilter::SymmetricPair)),
            (V{2}));
}

TEST(SetOps, Inverses) {
  EXPECT_EQ(res(inverse_set(mult(F7, {1, 2, 4}))), (V{1, 2, 4}));
  EXPECT_EQ(res(inverse_set(mult(F7, {1}))), (V{1}));
  EXPECT_EQ(res(inverse_set(mult(F5, {2, 3}))), (V{2, 3}));
  EXPECT_EQ(res(inverse_set(mult(F7, {3}))), (V{5}));
  EXPECT_THROW(inverse_set(add(F7, {1})), PreconditionError);
  EXPECT_EQ(res(negate_set(add(F7, {0, 1, 3}))), (V{0, 4, 6}));
  EXPECT_THROW(negate_set(mult(F7, {1})), PreconditionError);
}

TEST(Dyson, Examples) {
  const auto d = dyson_transform(mult(F7, {1, 2}), mult(F7, {1, 3}), F7.element(2));
  EXPECT_EQ(res(d.first), (V{2}));
  EXPECT_EQ(res(d.second), (V{1, 2, 6}));

  const auto a = add(F7, {0, 2, 5}), b = add(F7, {2, 5});
  const auto id = dyson_transform(a, b, F7.zero());
  EXPECT_EQ(id.first, b);
  EXPECT_EQ(id.second, a);

  const auto disjoint = dyson_transform(add(F7, {0}), add(F7, {3}), F7.element(1));
  EXPECT_TRUE(disjoint.first.empty());
  EXPECT_EQ(res(disjoint.second), (V{0, 4}));
}

TEST(ExceptionalSet, Examples) {
  EXPECT_EQ(res(exceptional_set_N(mult(F7, {1, 2}), mult(F7, {1, 2}))), (V{1, 2}));
  EXPECT_TRUE(exceptional_set_N(mult(F7, {1, 2, 4}), mult(F7, {1, 2, 4})).empty());
  EXPECT_TRUE(exceptional_set_N(mult(F7, {1, 2}), mult(F7, {3, 4})).empty());
  EXPECT_THROW(exceptional_set_N(add(F7, {1}), add(F7, {1})), PreconditionError);
}

// Exhaustive checks of the combine invariants against the pair-loop oracle.
class SetProperties : public ::testing::TestWithParam<std::tuple<std::uint32_t, bool>> {};

TEST_P(SetProperties, CombineInvariants) {
  const auto [p, is_mult] = GetParam();
  const PrimeField f(p);
  const auto uni = oracle::universe(p, is_mult);
  const std::uint64_t n = std::uint64_t{1} << uni.size();
  for (std::uint64_t ma = 1; ma < n; ++ma) {
    for (std::uint64_t mb = 1; mb < n; ++mb) {
      const auto va = oracle::subset(uni, ma), vb = oracle::subset(uni, mb);
      const auto a = oracle::make(f, is_mult, va), b = oracle::make(f, is_mult, vb);
      const auto restricted = restricted_combine(a, b);
      const auto full = full_combine(a, b);
      ASSERT_EQ(res(restricted), oracle::to_vec(oracle::combine(is_mult, va, vb, p, true)));
      ASSERT_EQ(res(full), oracle::to_vec(oracle::combine(is_mult, va, vb, p, false)));
      ASSERT_TRUE(is_subset(restricted, full));

      // The gap is exactly the squares (doubles) of common elements that
      // have no restricted representation.
      std::set<std::uint32_t> gap;
      for (auto x : va) {
        if (b.contains(x)) {
          const auto sq = oracle::op(is_mult, x, x, p);
          if (!restricted.contains(sq)) gap.insert(sq);
        }
      }
      std::set<std::uint32_t> diff;
      for (auto r : full.residues()) {
        if (!restricted.contains(r)) diff.insert(r);
      }
      ASSERT_EQ(diff, gap);

      const auto cr = representation_counts(a, b, true);
      const auto cf = representation_counts(a, b, false);
      std::uint64_t sr = 0, sf = 0;
      for (auto c : cr) sr += c;
      for (auto c : cf) sf += c;
      const auto common = set_intersection(a, b).size();
      ASSERT_EQ(sf, va.size() * vb.size());
      ASSERT_EQ(sr, va.size() * vb.size() - common);

      for (std::uint32_t c = 0; c < p; ++c) {
        ASSERT_EQ(cr[c], oracle::reps(is_mult, va, vb, p, c, true).size());
      }

      if (is_mult) {
        const bool n_nonempty = !exceptional_set_N(a, b).empty();
        ASSERT_EQ(n_nonempty, restricted.size() < full.size());
      }
    }
  }
}

TEST_P(SetProperties, DysonInvariants) {
  const auto [p, is_mult] = GetParam();
  if (p > 5) GTEST_SKIP() << "covered by the acceptance sweep";
  const PrimeField f(p);
  const auto uni = oracle::universe(p, is_mult);
  const std::uint64_t n = std::uint64_t{1} << uni.size();
  for (std::uint64_t ma = 1; ma < n; ++ma) {
    for (std::uint64_t mb = 1; mb < n; ++mb) {
      const auto a = oracle::make(f, is_mult, oracle::subset(uni, ma));
      const auto b = oracle::make(f, is_mult, oracle::subset(uni, mb));
      for (auto xv : uni) {
        const auto x = f.element(xv);
        const auto d = dyson_transform(a, b, x);
        ASSERT_EQ(d.first.size() + d.second.size(), a.size() + b.size());
        ASSERT_TRUE(is_subset(full_combine(d.first, d.second), full_combine(a, translate(b, x))));
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Small, SetProperties,
                         ::testing::Values(std::make_tuple(3u, false), std::make_tuple(3u, true),
                                           std::make_tuple(5u, false), std::make_tuple(5u, true),
                                           std::make_tuple(7u, true)));

TEST(Combine, ModeMismatchThrows) {
  EXPECT_THROW(restricted_combine(add(F7, {1}), mult(F7, {1})), PreconditionError);
  EXPECT_THROW(full_combine(mult(F5, {1}), mult(F7, {1})), PreconditionError);
}
