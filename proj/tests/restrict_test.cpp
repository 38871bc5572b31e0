#include <gtest/gtest.h>

#include "f2reg/error.hpp"
#include "f2reg/families.hpp"
#include "f2reg/restrict.hpp"
#include "f2reg/scan.hpp"
#include "test_support.hpp"

using namespace f2reg;
using namespace f2reg::testing;

namespace {

std::vector<Rational> sorted_magnitudes(std::vector<Rational> v) {
  for (auto& x : v) x = abs(x);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Rational> all_coeffs(const Spectrum& s) {
  std::vector<Rational> v;
  for (std::size_t g = 0; g < s.size(); ++g) v.push_back(s.at(g));
  return v;
}

// M carrying V onto span(pivots of V).
Mat2 straightening_map(const AffineSubspace& u) { return certificate_from_affine(u, 0).m.inverse(); }

std::vector<Rational> affine_route(const FunctionTable& f, const AffineSubspace& u) {
  auto piv = u.space().pivots();
  Subspace w = complement_of_perp(u.space(), piv, straightening_map(u));
  return sorted_magnitudes(all_coeffs(Spectrum(u.dim(), restrict_affine(f, u, w).coeffs)));
}

std::vector<Rational> coset_route(const FunctionTable& f, const AffineSubspace& u) {
  auto piv = u.space().pivots();
  Subspace w = complement_of_perp(u.space(), piv, straightening_map(u));
  Spectrum s = wht(f);
  std::vector<Rational> v;
  for (auto g : w.elements()) v.push_back(coset_sum_coefficient(s, g, u));
  return sorted_magnitudes(v);
}

std::vector<Rational> transform_route(const FunctionTable& f, const AffineSubspace& u) {
  auto piv = u.space().pivots();
  return sorted_magnitudes(all_coeffs(wht(restrict_via_transform(f, u, straightening_map(u), piv))));
}

FunctionTable character(int n, std::uint64_t gamma) {
  std::vector<std::int64_t> v(std::size_t{1} << n);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = dot(gamma, x) ? -1 : 1;
  return FunctionTable::from_ints(n, v, Range::pm1());
}

std::uint64_t spread_bits(std::uint64_t y, const std::vector<int>& keep) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if ((y >> i) & 1) out |= std::uint64_t{1} << keep[i];
  return out;
}

}  // namespace

TEST(RestrictCoords, Examples) {
  FunctionTable f = random_bounded(5, 1);
  std::vector<int> none;
  FunctionTable same = restrict_coords(f, none, 0);
  for (std::size_t x = 0; x < f.size(); ++x) EXPECT_EQ(same.at(x), f.at(x));
  std::vector<int> x2{1};
  for (std::uint64_t b : {0u, 2u}) {
    Spectrum s = wht(restrict_coords(character(3, 1), x2, b));
    EXPECT_EQ(s.at(1), 1);
  }
  EXPECT_THROW(restrict_coords(f, x2, 1), Error);
}

TEST(RestrictCoords, MatchesRestrictedCoefficientFormula) {
  Rng rng(21);
  for (int it = 0; it < 30; ++it) {
    FunctionTable f = random_bounded(8, 100 + it);
    std::vector<int> fixed;
    while (fixed.size() < 3) {
      int c = static_cast<int>(rng.below(8));
      if (std::find(fixed.begin(), fixed.end(), c) == fixed.end()) fixed.push_back(c);
    }
    std::sort(fixed.begin(), fixed.end());
    std::uint64_t b = rng.next() & coords_mask(fixed);
    Spectrum s = wht(f), r = wht(restrict_coords(f, fixed, b));
    auto keep = complement_coords(8, fixed);
    auto span_f = Subspace::coordinates(8, fixed).elements();
    for (std::uint64_t g = 0; g < r.size(); ++g) {
      Rational expect = 0;
      for (auto beta : span_f) expect += dot(beta, b) ? -s.at(beta ^ spread_bits(g, keep)) : s.at(beta ^ spread_bits(g, keep));
      EXPECT_EQ(r.at(g), expect);
    }
  }
}

TEST(RestrictCoords, FixingTwiceComposes) {
  Rng rng(22);
  for (int it = 0; it < 50; ++it) {
    FunctionTable f = random_bounded(7, 200 + it);
    std::vector<int> f1;
    for (int c = 0; c < 7; ++c)
      if (rng.coin()) f1.push_back(c);
    std::uint64_t b1 = rng.next() & coords_mask(f1);
    auto keep1 = complement_coords(7, f1);
    std::vector<int> f2c, f2;
    for (int i = 0; i < static_cast<int>(keep1.size()); ++i)
      if (rng.coin()) {
        f2c.push_back(i);
        f2.push_back(keep1[static_cast<std::size_t>(i)]);
      }
    std::uint64_t b2c = rng.next() & coords_mask(f2c);
    FunctionTable twice = restrict_coords(restrict_coords(f, f1, b1), f2c, b2c);
    std::vector<int> all = f1;
    all.insert(all.end(), f2.begin(), f2.end());
    std::sort(all.begin(), all.end());
    FunctionTable once = restrict_coords(f, all, b1 | spread_bits(b2c, keep1));
    ASSERT_EQ(once.size(), twice.size());
    for (std::size_t x = 0; x < once.size(); ++x) EXPECT_EQ(once.at(x), twice.at(x));
  }
}

TEST(ComposeLinear, Examples) {
  FunctionTable f = random_bounded(4, 3);
  FunctionTable g = compose_linear(f, Mat2::identity(4));
  for (std::size_t x = 0; x < f.size(); ++x) EXPECT_EQ(g.at(x), f.at(x));
  Mat2 swap = Mat2::from_rows(2, {parse_bits("01"), parse_bits("10")});
  Spectrum s = wht(compose_linear(character(2, 1), swap));
  EXPECT_EQ(s.at(2), 1);
  EXPECT_THROW(compose_linear(f, Mat2(3)), Error);
}

TEST(ComposeLinear, SpectrumUnderInverseTranspose) {
  Rng rng(23);
  for (int it = 0; it < 20; ++it) {
    FunctionTable f = random_bounded(8, 300 + it);
    Mat2 m = random_invertible(8, rng);
    Spectrum sf = wht(f), sg = wht(compose_linear(f, m));
    Mat2 mit = m.inverse().transpose();
    for (std::uint64_t g = 0; g < 256; ++g) EXPECT_EQ(sg.at(g), sf.at(mit.apply(g)));
  }
}

TEST(RestrictAffine, Examples) {
  FunctionTable f = random_bounded(5, 4);
  auto full = restrict_affine(f, AffineSubspace::full(5), Subspace::full(5));
  Spectrum s = wht(f);
  for (std::size_t t = 0; t < full.gammas.size(); ++t)
    EXPECT_EQ(Spectrum(5, full.coeffs).at(t), s.at(full.gammas[t]));
  // Fixing <gamma, x> = b moves the mean to fhat(0) + (-1)^b fhat(gamma).
  std::uint64_t gamma = 0b10110;
  for (int bit : {0, 1}) {
    auto u = AffineSubspace::full(5).intersect_hyperplane(gamma, bit);
    Subspace w = complement_of_perp(u->space(), u->space().pivots(), straightening_map(*u));
    auto r = restrict_affine(f, *u, w);
    EXPECT_EQ(r.gammas[0], 0u);
    EXPECT_EQ(r.coeffs.exact_at(0), bit ? s.at(0) - s.at(gamma) : s.at(0) + s.at(gamma));
  }
  AffineSubspace line(Subspace::span(2, {parse_bits("11")}), 0);
  EXPECT_THROW(restrict_affine(random_bounded(2, 1), line, Subspace::span(2, {parse_bits("11")})), Error);
}

TEST(RestrictAffine, AgreesWithCosetSumAndExpectation) {
  Rng rng(24);
  for (int it = 0; it < 20; ++it) {
    FunctionTable f = random_bounded(8, 400 + it);
    AffineSubspace u = random_affine(8, 5, rng);
    Subspace w = complement_of_perp(u.space(), u.space().pivots(), straightening_map(u));
    auto r = restrict_affine(f, u, w);
    Spectrum s = wht(f);
    auto pts = u.elements();
    for (std::size_t t = 0; t < r.gammas.size(); ++t) {
      Rational c = r.coeffs.exact_at(t);
      EXPECT_EQ(c, coset_sum_coefficient(s, r.gammas[t], u));
      // E_{x in V} f(x + shift) chi(x) equals chi(shift) E_{y in U} f(y) chi(y).
      Rational direct = brute_coeff(f, pts, r.gammas[t]);
      EXPECT_EQ(c, dot(r.gammas[t], u.shift()) ? -direct : direct);
    }
  }
}

TEST(CosetSum, Examples) {
  FunctionTable f = random_bounded(4, 5);
  Spectrum s = wht(f);
  AffineSubspace u(Subspace::full(4), 0);
  for (std::uint64_t g = 0; g < 16; ++g) EXPECT_EQ(coset_sum_coefficient(s, g, u), s.at(g));
  AffineSubspace v(Subspace::span(4, {parse_bits("1100"), parse_bits("0010")}), parse_bits("0101"));
  std::uint64_t beta = parse_bits("1011");
  Spectrum chi = wht(character(4, beta));
  for (auto p : orthogonal(v.space()).elements()) {
    Rational c = coset_sum_coefficient(chi, beta ^ p, v);
    EXPECT_EQ(c, dot(beta, v.shift()) ? -1 : 1);
  }
}

TEST(ThreeRoutes, ExhaustiveAtFour) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    FunctionTable f = seed < 3 ? random_bounded(4, seed) : booleanize_sample(random_bounded(4, seed), seed);
    for (int dim = 0; dim <= 4; ++dim)
      for (const auto& v : enumerate_subspaces(4, dim))
        for (auto shift : coset_representatives(v)) {
          AffineSubspace u(v, shift);
          auto a = affine_route(f, u);
          EXPECT_EQ(a, coset_route(f, u));
          EXPECT_EQ(a, transform_route(f, u));
        }
  }
}

TEST(ThreeRoutes, RandomSixAndEight) {
  Rng rng(25);
  for (int n : {6, 8})
    for (int it = 0; it < 40; ++it) {
      FunctionTable f = random_bounded(n, 500 + it);
      AffineSubspace u = random_affine(n, static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1)), rng);
      auto a = affine_route(f, u);
      EXPECT_EQ(a, coset_route(f, u));
      EXPECT_EQ(a, transform_route(f, u));
      // Any other representative of the coset gives the same magnitudes.
      auto pts = u.elements();
      std::uint64_t other = pts[rng.below(pts.size())];
      auto piv = u.space().pivots();
      Subspace w = complement_of_perp(u.space(), piv, straightening_map(u));
      Spectrum s = wht(f);
      for (auto g : w.elements())
        EXPECT_EQ(abs(coset_sum_coefficient(s, g, u)), abs(coset_sum_coefficient(s, g, AffineSubspace(u.space(), other))));
      // Degree never increases.
      EXPECT_LE(degree(wht(restrict_canonical(f, u))), degree(wht(f)));
    }
}

TEST(RestrictViaTransform, PlainCoordinateCase) {
  FunctionTable f = random_bounded(5, 6);
  std::vector<int> j{0, 3};
  AffineSubspace u(Subspace::coordinates(5, j), 0);
  FunctionTable a = restrict_via_transform(f, u, Mat2::identity(5), j);
  FunctionTable b = restrict_coords(f, complement_coords(5, j), 0);
  for (std::size_t x = 0; x < a.size(); ++x) EXPECT_EQ(a.at(x), b.at(x));
  std::vector<int> bad{1, 2};
  EXPECT_THROW(restrict_via_transform(f, u, Mat2::identity(5), bad), Error);
}

TEST(Certificate, Examples) {
  FunctionTable c = FunctionTable::from_ints(3, std::vector<std::int64_t>(8, 1), Range::bounded());
  Certificate empty{3, Mat2::identity(3), {0, 1, 2}, 0, 0};
  EXPECT_TRUE(certificate_verify(c, empty));
  std::uint64_t gamma = 0b110;
  AffineSubspace u = *AffineSubspace::full(3).intersect_hyperplane(gamma, 0);
  Certificate fix = certificate_from_affine(u, 0);
  EXPECT_TRUE(certificate_verify(character(3, gamma), fix));
  EXPECT_EQ(certificate_subspace(fix), u);
  Certificate singular = fix;
  singular.m = Mat2(3);
  EXPECT_FALSE(certificate_verify(c, singular));
  Certificate overlap = fix;
  overlap.b = std::uint64_t{1} << overlap.j[0];
  EXPECT_FALSE(certificate_verify(c, overlap));
}

TEST(Certificate, RestrictionIsTheCertifiedSubspace) {
  Rng rng(26);
  for (int it = 0; it < 50; ++it) {
    FunctionTable f = random_bounded(7, 600 + it);
    AffineSubspace u = random_affine(7, static_cast<int>(rng.below(8)), rng);
    Certificate c = certificate_from_affine(u, Rational(1, 3));
    EXPECT_EQ(certificate_subspace(c), u);
    EXPECT_EQ(sorted_magnitudes(all_coeffs(wht(certificate_restriction(f, c)))), affine_route(f, u));
    SparseSpectrum sp = SparseSpectrum::from_dense(wht(f));
    EXPECT_EQ(certificate_verify(f, c), certificate_verify(sp, c));
  }
}

TEST(FixSingleParity, Examples) {
  FunctionTable f = random_bounded(6, 7);
  Spectrum s = wht(f);
  std::uint64_t gamma = 0b101100;
  for (int bit : {0, 1}) {
    FunctionTable r = fix_single_parity(f, gamma, bit);
    EXPECT_EQ(r.n(), 5);
    EXPECT_EQ(wht(r).at(0), bit ? s.at(0) - s.at(gamma) : s.at(0) + s.at(gamma));
    auto u = AffineSubspace::full(6).intersect_hyperplane(gamma, bit);
    EXPECT_EQ(sorted_magnitudes(all_coeffs(wht(r))), affine_route(f, *u));
  }
  EXPECT_TRUE(fix_single_parity(character(4, 0b0110), 0b0110, 0).is_constant());
  EXPECT_EQ(fix_single_parity(character(4, 0b0110), 0b0110, 0).at(0), 1);
  EXPECT_THROW(fix_single_parity(f, 0, 0), Error);
}

TEST(FixSingleParity, MeanUnchangedWhenCoefficientVanishes) {
  FunctionTable f = mean_of_signs(4);
  EXPECT_EQ(wht(fix_single_parity(f, 0b0011, 1)).at(0), wht(f).at(0) + wht(f).at(0b0011));
  EXPECT_EQ(wht(fix_single_parity(f, 0b0011, 1)).at(0), 0);
}

TEST(FixSingleParity, RandomAgreement) {
  Rng rng(27);
  for (int it = 0; it < 40; ++it) {
    FunctionTable f = random_bounded(8, 700 + it);
    std::uint64_t gamma = 1 + rng.below(255);
    int bit = static_cast<int>(rng.below(2));
    auto u = AffineSubspace::full(8).intersect_hyperplane(gamma, bit);
    EXPECT_EQ(sorted_magnitudes(all_coeffs(wht(fix_single_parity(f, gamma, bit)))), affine_route(f, *u));
  }
}
