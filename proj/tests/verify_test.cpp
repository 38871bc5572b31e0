#include <gtest/gtest.h>

#include <set>

#include "f2reg/error.hpp"
#include "f2reg/families.hpp"
#include "f2reg/verify.hpp"
#include "test_support.hpp"

using namespace f2reg;
using namespace f2reg::testing;

namespace {

// A complement of D: the coordinate vectors off D's pivots.
Subspace pivot_complement(const Subspace& d) {
  auto off = complement_coords(d.n(), d.pivots());
  return Subspace::coordinates(d.n(), off);
}

BigInt binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST(StdBasis, FullSpace) {
  for (int n : {1, 4, 7}) {
    Subspace v = Subspace::full(n);
    auto st = std_basis_coset_stats(v, Subspace::full(n));
    EXPECT_EQ(st.s.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(st.s1.size(), static_cast<std::size_t>(n));
  }
}

TEST(StdBasis, MergedCoset) {
  Subspace perp = Subspace::span(4, {parse_bits("1100")});
  Subspace v = orthogonal(perp);
  auto st = std_basis_coset_stats(v, pivot_complement(perp));
  EXPECT_EQ(st.codim, 1);
  EXPECT_EQ(st.s.size(), 3u);
  EXPECT_EQ(st.s1.size(), 2u);
  int merged = 0;
  for (auto [u, hits] : st.hits)
    if (hits == 2) ++merged;
  EXPECT_EQ(merged, 1);
}

TEST(StdBasis, RejectsNonComplement) {
  Subspace perp = Subspace::span(3, {parse_bits("100")});
  try {
    std_basis_coset_stats(orthogonal(perp), perp);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotAComplement);
  }
}

TEST(StdBasis, RandomBoundsAndCosetContents) {
  Rng rng(41);
  for (int it = 0; it < 200; ++it) {
    int n = 8, c = 1 + static_cast<int>(rng.below(3));
    Subspace perp = random_subspace(n, c, rng);
    Subspace w = pivot_complement(perp);
    auto st = std_basis_coset_stats(orthogonal(perp), w);
    EXPECT_GE(static_cast<int>(st.s.size()), n - c);
    EXPECT_GE(static_cast<int>(st.s1.size()), n - 2 * c);
    int total = 0;
    for (auto [u, hits] : st.hits) {
      EXPECT_TRUE(w.contains(u));
      EXPECT_EQ(static_cast<std::uint64_t>(hits), coset_weight_count(perp, u, 1));
      total += hits;
    }
    EXPECT_EQ(total, n);
  }
}

TEST(LowWeight, NoConstraints) {
  auto sets = build_low_weight_sets(Subspace::full(5), Subspace::full(5), 1);
  ASSERT_EQ(sets.size(), 1u);
  EXPECT_EQ(sets[0].size(), 5u);
}

TEST(LowWeight, RandomMembersSatisfyBothProperties) {
  Rng rng(42);
  for (int it = 0; it < 50; ++it) {
    int n = 10, c = 2, ell = 3;
    Subspace perp = random_subspace(n, c, rng);
    auto sets = build_low_weight_sets(orthogonal(perp), pivot_complement(perp), ell);
    ASSERT_EQ(sets.size(), static_cast<std::size_t>(ell));
    for (int l = 1; l <= ell; ++l) {
      const auto& sl = sets[static_cast<std::size_t>(l - 1)];
      EXPECT_GE(static_cast<int>(sl.size()), n - c * (l + 1));
      if (l > 1) {
        const auto& prev = sets[static_cast<std::size_t>(l - 2)];
        for (auto u : sl) EXPECT_NE(std::find(prev.begin(), prev.end(), u), prev.end());
      }
      for (auto u : sl) {
        EXPECT_EQ(coset_weight_count(perp, u, 1), 1u);
        for (int t = 2; t <= l; ++t) EXPECT_LE(BigInt(coset_weight_count(perp, u, t)), 2 * binom(2 * c + 1, t - 1));
      }
    }
  }
}

TEST(LowWeight, LevelAboveCodimPlusOneRejected) {
  Subspace perp = Subspace::span(6, {parse_bits("110000")});
  EXPECT_THROW(build_low_weight_sets(orthogonal(perp), pivot_complement(perp), 3), Error);
}

TEST(DegreeOne, Examples) {
  auto a = check_degree_one_lb(4, Rational(1, 5), 1);
  EXPECT_TRUE(a.passed);
  EXPECT_FALSE(a.regular.has_value());
  auto b = check_degree_one_lb(8, Rational(1, 10), 3);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.max_codim, 3);
  auto c = check_degree_one_lb(2, Rational(1, 3), 5);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.max_codim, 0);
}

TEST(DegreeOne, LargeDeltaFindsRegularRestriction) {
  auto r = check_degree_one_lb(4, Rational(1, 4), 1);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.regular.has_value());
  EXPECT_EQ(r.regular->codim, 0);
}

TEST(Homogeneous, ExhaustiveSmall) {
  auto r = check_random_homogeneous_lb(6, 3, Rational(1, 21), 7, true);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.mode, "exhaustive");
  EXPECT_EQ(r.restrictions, 26387u);
  EXPECT_EQ(r.obstruction_failures, 0u);
  EXPECT_GT(r.odd_cosets, 0u);
  EXPECT_TRUE(r.regular_above_threshold.empty());
}

TEST(Homogeneous, TopDegreeCharacter) {
  auto r = check_random_homogeneous_lb(4, 4, Rational(1, 2), 3, true);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.obstruction_failures, 0u);
  // Only restrictions that fix the character entirely can be regular.
  for (auto [dim, count] : r.regular_by_dim) EXPECT_LT(dim, 4);
}

TEST(Homogeneous, SampledObstructionNeverFails) {
  for (std::uint64_t seed : {1u, 2u}) {
    auto r = check_random_homogeneous_lb(12, 2, Rational(1, 67), seed, false, 300);
    EXPECT_EQ(r.mode, "sampled");
    EXPECT_EQ(r.obstruction_failures, 0u);
    EXPECT_TRUE(r.passed);
  }
  EXPECT_THROW(check_random_homogeneous_lb(6, 3, Rational(1, 20), 1, true), Error);
}

TEST(Majority, Goldens) {
  auto a = check_majority_lb(3, Rational(1, 4), 0);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.min_max_coefficient, Rational(1, 2));
  auto b = check_majority_lb(5, Rational(5, 16), 1);
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.min_max_coefficient, Rational(3, 8));
  auto at = check_majority_lb(5, Rational(3, 8), 1);
  EXPECT_FALSE(at.passed);
  ASSERT_TRUE(at.regular.has_value());
  EXPECT_EQ(at.regular->codim, 0);
  auto c = check_majority_lb(7, Rational(1, 10), 1);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.min_max_coefficient, Rational(5, 16));
}

TEST(Majority, MinMaxByCodimension) {
  const Rational maj5[] = {Rational(3, 8), Rational(3, 8), Rational(1, 4), 0, 0, 0};
  for (int c = 0; c <= 5; ++c) EXPECT_EQ(min_max_nontrivial(majority(5), c), maj5[c]) << c;
  const Rational maj7[] = {Rational(5, 16), Rational(5, 16), Rational(1, 4), Rational(1, 8)};
  for (int c = 0; c <= 3; ++c) EXPECT_EQ(min_max_nontrivial(majority(7), c), maj7[c]) << c;
}

TEST(Composition, ConstantOuter) {
  auto r = check_composition_theorem(boolean_from_truth(2, 0), boolean_from_truth(2, 0b0110));
  EXPECT_EQ(r.pk_f, 0);
  EXPECT_EQ(r.cmin_f, 0);
  EXPECT_TRUE(r.holds);
}

TEST(Composition, TwoBitSweepIsConsistent) {
  int failures = 0;
  for (std::uint64_t tf = 0; tf < 16; ++tf)
    for (std::uint64_t tg = 0; tg < 16; ++tg) {
      auto r = check_composition_theorem(boolean_from_truth(2, tf), boolean_from_truth(2, tg));
      // Every 2-bit function is constant on some line.
      EXPECT_LE(r.pk_g, 1);
      EXPECT_FALSE(r.hypothesis);
      EXPECT_EQ(r.holds, composition_bound_holds(r.pk_fg, r.pk_f, r.cmin_f, r.pk_g));
      if (r.cmin_f == 0) EXPECT_TRUE(r.holds);
      if (!r.holds) ++failures;
    }
  EXPECT_GT(failures, 0);
}

TEST(Composition, HoldsWheneverInnerParityKillAtLeastTwo) {
  int with_hypothesis = 0;
  for (std::uint64_t tg = 0; tg < 256; ++tg) {
    FunctionTable g = boolean_from_truth(3, tg);
    auto pk = parity_kill(g);
    if (!pk || pk->codim < 2) continue;
    for (std::uint64_t tf = 0; tf < 16; ++tf) {
      auto r = check_composition_theorem(boolean_from_truth(2, tf), g);
      ASSERT_TRUE(r.hypothesis);
      ++with_hypothesis;
      EXPECT_TRUE(r.holds) << tf << " " << tg;
    }
  }
  EXPECT_GT(with_hypothesis, 0);
}

TEST(Composition, DictatorInnerFallsShort) {
  // f = g = x_1: the composite is x_1, killed by one parity, yet the bound asks for two.
  auto r = check_composition_theorem(boolean_from_truth(2, 0b1010), boolean_from_truth(2, 0b1010));
  EXPECT_EQ(r.pk_f, 1);
  EXPECT_EQ(r.cmin_f, 1);
  EXPECT_EQ(r.pk_g, 1);
  EXPECT_EQ(r.pk_fg, 1);
  EXPECT_FALSE(r.hypothesis);
  EXPECT_FALSE(r.holds);
}

TEST(Composition, BoundArithmetic) {
  EXPECT_TRUE(composition_bound_holds(0, 0, 0, 0));
  EXPECT_TRUE(composition_bound_holds(3, 2, 1, 2));
  EXPECT_FALSE(composition_bound_holds(2, 2, 1, 2));
  // pk_g = 16: B = 3.
  EXPECT_TRUE(composition_bound_holds(8, 2, 2, 16));
  EXPECT_FALSE(composition_bound_holds(7, 2, 2, 16));
}

TEST(Composition, PkcBaseCase) {
  auto pk = parity_kill(pkc_base());
  ASSERT_TRUE(pk.has_value());
  // B = max(log2 2 - 1, 1) = 1 for g = pkc_base.
  EXPECT_GE(pk->codim, 1);
  EXPECT_EQ(pk->codim, 2);
}

namespace {

std::set<std::uint64_t> solutions(int bits, const std::vector<Constraint>& cs) {
  std::set<std::uint64_t> out;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << bits); ++z) {
    bool ok = true;
    for (const auto& c : cs) ok = ok && dot(c.a, z) == c.sigma;
    if (ok) out.insert(z);
  }
  return out;
}

int rank_of(int bits, const std::vector<Constraint>& cs) {
  std::vector<std::uint64_t> rows;
  for (const auto& c : cs) rows.push_back(c.a);
  return Subspace::span(bits, rows).dim();
}

}  // namespace

TEST(Canonize, OnlyYConstraints) {
  std::vector<Constraint> cs{{parse_bits("000110"), 1}, {parse_bits("000001"), 0}};
  auto cf = canonize_affine_constraints(3, 3, cs);
  EXPECT_EQ(cf.pairs, 0);
  EXPECT_EQ(cf.x_only, 0);
  EXPECT_EQ(cf.y_only, 2);
}

TEST(Canonize, Inconsistent) {
  std::vector<Constraint> cs{{parse_bits("1100"), 1}, {parse_bits("0110"), 0}, {parse_bits("1010"), 0}};
  try {
    canonize_affine_constraints(2, 2, cs);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentConstraints);
  }
}

TEST(Canonize, RandomPreservesPointSet) {
  Rng rng(43);
  for (int it = 0; it < 300; ++it) {
    int k = 3, n = 3, bits = 6;
    std::vector<Constraint> cs;
    std::uint64_t root = rng.next() & low_mask(bits);
    int count = static_cast<int>(rng.below(7));
    for (int i = 0; i < count; ++i) {
      std::uint64_t a = rng.next() & low_mask(bits);
      cs.push_back({a, dot(a, root)});
    }
    auto cf = canonize_affine_constraints(k, n, cs);
    int codim = rank_of(bits, cs);
    EXPECT_EQ(cf.pairs + cf.x_only + cf.y_only, codim);
    EXPECT_EQ(static_cast<int>(cf.constraints.size()), codim);
    EXPECT_TRUE(cf.l.is_invertible());
    for (std::uint64_t z = 0; z < 64; ++z) {
      std::uint64_t lz = cf.l.apply(z);
      EXPECT_EQ((lz & low_mask(k)) == 0, (z & low_mask(k)) == 0);
      EXPECT_EQ((lz >> k) == 0, (z >> k) == 0);
    }
    std::set<std::uint64_t> mapped;
    for (auto z : solutions(bits, cs)) mapped.insert(cf.l.apply(z));
    EXPECT_EQ(mapped, solutions(bits, cf.constraints));
    for (int i = 0; i < cf.pairs; ++i)
      EXPECT_EQ(cf.constraints[static_cast<std::size_t>(i)].a, (std::uint64_t{1} << i) | (std::uint64_t{1} << (k + i)));
  }
}

TEST(Extractor, BentOnFour) {
  std::vector<std::int64_t> v(16);
  for (std::uint64_t x = 0; x < 16; ++x) v[x] = ((x & 1) & ((x >> 1) & 1)) ^ (((x >> 2) & 1) & ((x >> 3) & 1));
  FunctionTable f = FunctionTable::from_ints(4, v, Range::integer(1));
  for (int k = 1; k <= 3; ++k) {
    auto r = check_extractor_implies_regular(f, k);
    EXPECT_TRUE(r.passed) << k;
    EXPECT_EQ(r.violations, 0u);
    EXPECT_LE(r.worst, r.bound);
  }
}

TEST(Extractor, ConstantHasLargeDelta) {
  FunctionTable f = FunctionTable::from_ints(3, std::vector<std::int64_t>(8, 1), Range::integer(1));
  auto r = check_extractor_implies_regular(f, 1);
  EXPECT_EQ(r.delta, Rational(1, 2));
  EXPECT_TRUE(r.passed);
}

TEST(Extractor, RandomSixBits) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = check_extractor_implies_regular(random_integer(6, 3, seed), 4);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.bound, 6 * r.delta);
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(Disperser, JuntaAndPkc) {
  std::vector<std::int64_t> v(16);
  for (std::uint64_t x = 0; x < 16; ++x) v[x] = ((x & 1) && ((x >> 1) & 1)) ? -1 : 1;
  auto junta = check_granular_disperser(FunctionTable::from_ints(4, v, Range::pm1()), 2, 2);
  EXPECT_TRUE(junta.granular);
  EXPECT_EQ(junta.delta, Rational(1, 4));
  EXPECT_TRUE(junta.passed);
  EXPECT_TRUE(junta.constant);
  auto pkc = check_granular_disperser(pkc_base_pm1(), 2, 2);
  EXPECT_TRUE(pkc.passed);
  EXPECT_TRUE(pkc.certificate_ok);
}

TEST(Disperser, RandomHalfGranular) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto r = check_granular_disperser(random_granular(12, 2, Rational(1, 2), seed), 2, Rational(1, 2));
    EXPECT_TRUE(r.granular);
    EXPECT_TRUE(r.passed) << seed;
  }
}

TEST(Disperser, NotGranularReported) {
  auto r = check_granular_disperser(random_bounded(4, 1), 2, 2);
  EXPECT_FALSE(r.granular);
  EXPECT_FALSE(r.passed);
}
