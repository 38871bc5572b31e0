// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "f2reg/error.hpp"
#include "f2reg/families.hpp"
#include "f2reg/random.hpp"
#include "f2reg/regularize.hpp"
#include "f2reg/restrict.hpp"
#include "f2reg/scan.hpp"
#include "f2reg/verify.hpp"

using namespace f2reg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Numerator over 2^12; every route at n = 4 on +-1 tables has a power-of-two denominator dividing it.
constexpr i128 kScale = 4096;
i128 scaled(i128 num, i128 den) {
  if (kScale % den != 0) fail(ErrorCode::kInvariantViolation, "unexpected denominator");
  return abs128(num) * (kScale / den);
}

Outcome route_agreement() {
  const int n = 4;
  struct Prepared {
    AffineSubspace u;
    Subspace w;
    std::vector<std::uint64_t> perp;
    Mat2 to_coords;
    std::vector<int> j;
  };
  std::vector<Prepared> subspaces;
  for (int dim = 0; dim <= n; ++dim)
    for (const auto& v : enumerate_subspaces(n, dim)) {
      Subspace d = orthogonal(v);
      Subspace w = Subspace::coordinates(n, complement_coords(n, d.pivots()));
      Certificate c = certificate_from_affine(AffineSubspace(v, 0), 0);
      for (auto rep : coset_representatives(v)) {
        AffineSubspace u(v, rep);
        subspaces.push_back({u, w, d.elements(), c.m.inverse(), c.j});
      }
    }
  std::uint64_t pairs = 0, mismatches = 0;
  std::vector<std::int64_t> vals(16);
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << 16); ++t) {
    for (int x = 0; x < 16; ++x) vals[static_cast<std::size_t>(x)] = ((t >> x) & 1) ? -1 : 1;
    FunctionTable f = FunctionTable::from_ints(n, vals, Range::pm1());
    Spectrum s = wht(f);
    for (const auto& p : subspaces) {
      ++pairs;
      auto ra = restrict_affine(f, p.u, p.w);
      std::vector<i128> a, b, c;
      for (std::size_t i = 0; i < ra.gammas.size(); ++i) {
        a.push_back(scaled(ra.coeffs.num()[i], ra.coeffs.den()));
        b.push_back(scaled(coset_sum_numerator(s, ra.gammas[i], p.perp, p.u.shift()), s.coeffs().den()));
      }
      Spectrum h = wht(restrict_via_transform(f, p.u, p.to_coords, p.j));
      for (std::size_t g = 0; g < h.size(); ++g) c.push_back(scaled(h.coeffs().num()[g], h.coeffs().den()));
      bool per_gamma = a == b;
      std::sort(a.begin(), a.end());
      std::sort(c.begin(), c.end());
      if (!per_gamma || a != c) ++mismatches;
    }
  }
  std::ostringstream os;
  os << subspaces.size() << " affine subspaces x 65536 tables, " << pairs << " pairs, " << mismatches
     << " mismatches";
  return {mismatches == 0 && subspaces.size() == 307, os.str()};
}

// Plain random tables are already regular; the granular degree-3 population forces restrictions.
FunctionTable greedy_input(std::uint64_t seed) {
  return seed % 2 == 0 ? random_bounded(8, seed) : random_granular(8, 3, Rational(1, 4), seed);
}

Outcome greedy_bound() {
  int worst = 0, bad = 0, restricted = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    FunctionTable f = greedy_input(seed);
    auto r = greedy_regularize(f, Rational(1, 4));
    worst = std::max(worst, r.subspace.codim());
    if (r.subspace.codim() > 0) ++restricted;
    if (r.subspace.codim() > 4 || !certificate_verify(f, r.certificate) ||
        !is_regular(wht(restrict_canonical(f, r.subspace)), Rational(1, 4)))
      ++bad;
  }
  std::ostringstream os;
  os << "1000 tables, " << restricted << " needed restriction, max codim " << worst << ", " << bad << " failures";
  return {bad == 0, os.str()};
}

// (1 + g) / 2 for a granular degree-2 g; its coefficients force refinement at delta = 1/8.
FunctionTable structured_unit(std::uint64_t seed) {
  FunctionTable g = random_granular(6, 2, Rational(1, 2), seed);
  DenseValues v = g.values();
  for (auto& x : v.num()) x += v.den();
  v.scale(Rational(1, 2));
  return FunctionTable(6, std::move(v), Range::bounded());
}

// Codim of every part <= 1/delta^3, irregular mass <= delta, potential gain >= delta^3 per round.
int partition_failures(const FunctionTable& f, const Rational& delta, std::size_t& rounds, int& max_codim) {
  const Rational step = delta * delta * delta;
  const Rational cap = 1 / step;
  int bad = 0;
  auto r = partition_regularize(f, delta);
  Rational mass = 0;
  for (const auto& p : r.parts) {
    max_codim = std::max(max_codim, p.subspace.codim());
    if (p.subspace.codim() > cap) ++bad;
    mass += p.mass;
  }
  if (mass != 1 || r.irregular_fraction > delta) ++bad;
  for (const auto& round : r.trace) {
    ++rounds;
    if (round.potential_after - round.potential_before < step) ++bad;
  }
  return bad;
}

Outcome partition_bound() {
  int bad = 0, max_codim = 0, extra_codim = 0;
  std::size_t rounds = 0, extra_rounds = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    bad += partition_failures(random_unit_interval(6, seed), Rational(1, 2), rounds, max_codim);
    bad += partition_failures(structured_unit(seed), Rational(1, 8), extra_rounds, extra_codim);
  }
  std::ostringstream os;
  os << "100 uniform tables at delta=1/2: " << rounds << " rounds, max codim " << max_codim
     << "; 100 structured tables at delta=1/8: " << extra_rounds << " rounds, max codim " << extra_codim << "; "
     << bad << " failures";
  return {bad == 0, os.str()};
}

Outcome degree_two_pipeline() {
  int bad = 0;
  std::size_t iterations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SparseSpectrum p = random_low_degree(12, 2, seed);
    auto r = regularize_bounded_degree(p, 2, Rational(1, 8));
    FunctionTable f = inverse_wht(p.to_dense());
    bool ok = certificate_verify(p, r.certificate) && certificate_verify(f, r.certificate);
    for (const auto& level : r.levels)
      for (const auto& it : level.shrink.trace) {
        ++iterations;
        ok = ok && it.invariant_ok;
      }
    if (!ok) ++bad;
  }
  std::ostringstream os;
  os << "100 spectra, " << iterations << " shrink iterations, " << bad << " failures";
  return {bad == 0, os.str()};
}

Outcome majority_spectrum() {
  int bad = 0;
  double margin = 1;
  for (int n = 3; n <= 13; n += 2) {
    Spectrum s = wht(majority(n));
    for (std::uint64_t g = 1; g < s.size(); ++g) {
      int t = popcount(g);
      if (abs(s.at(g)) != majority_coeff_magnitude(n, t)) ++bad;
      if (t % 2 == 0 && s.at(g) != 0) ++bad;
    }
    for (int t = 1; t <= n; ++t)
      if (majority_coeff_magnitude(n, t) != majority_coeff_magnitude(n, n - t + 1)) ++bad;
    margin = std::min(margin, to_double(abs(s.at(1))) - std::sqrt(2.0 / (std::numbers::pi * n)));
  }
  std::ostringstream os;
  os << "n = 3..13, " << bad << " mismatches, smallest margin over sqrt(2/(pi n)) = " << margin;
  return {bad == 0 && margin > 0, os.str()};
}

Outcome degree_one_lb() {
  auto r = check_degree_one_lb(8, Rational(1, 10), 3);
  return {r.passed && r.max_codim == 3,
          r.passed ? "no regular restriction up to codim 3" : "regular restriction found"};
}

Outcome pkc_goldens() {
  auto pk = parity_kill(pkc_base());
  auto mc = min_certificate(pkc_base());
  FunctionTable two = pkc_compose(2);
  std::vector<std::int64_t> pm(two.size());
  for (std::size_t x = 0; x < pm.size(); ++x) pm[x] = two.at(x) == 0 ? 1 : -1;
  Spectrum s = wht(FunctionTable::from_ints(16, pm, Range::pm1()));
  bool sixteenths = 16 % s.coeffs().den() == 0;
  int deg = degree(s);
  std::ostringstream os;
  os << "parity kill " << (pk ? pk->codim : -1) << ", min certificate " << mc.size << ", composite degree " << deg
     << ", coefficient denominator " << to_string(s.coeffs().den());
  return {pk && pk->codim == 2 && mc.size == 3 && deg == 4 && sixteenths, os.str()};
}

Outcome composition_sweep() {
  int cases = 0, failures = 0;
  std::string first;
  for (std::uint64_t tf = 0; tf < 16; ++tf)
    for (std::uint64_t tg = 0; tg < 16; ++tg) {
      auto r = check_composition_theorem(boolean_from_truth(2, tf), boolean_from_truth(2, tg));
      ++cases;
      if (!r.holds) {
        if (failures++ == 0) {
          std::ostringstream os;
          os << "first failure f=" << tf << " g=" << tg << ": pk(f o g)=" << r.pk_fg << " pk(f)=" << r.pk_f
             << " Cmin(f)=" << r.cmin_f << " pk(g)=" << r.pk_g;
          first = os.str();
        }
      }
    }
  std::ostringstream os;
  os << cases << " pairs, " << failures << " violate the bound";
  if (failures) os << "; " << first << "; every 2-bit g has pk(g) <= 1";
  return {failures == 0, os.str()};
}

Outcome counting_bounds() {
  Rng rng(0xacce9);
  const int n = 10;
  int bad = 0;
  for (int it = 0; it < 500; ++it) {
    int c = 1 + static_cast<int>(rng.below(3));
    std::vector<std::uint64_t> gens;
    Subspace perp = Subspace::zero(n);
    while (perp.dim() < c) {
      gens.push_back(rng.next() & low_mask(n));
      perp = Subspace::span(n, gens);
    }
    Subspace v = orthogonal(perp);
    Subspace w = Subspace::coordinates(n, complement_coords(n, perp.pivots()));
    AffineSubspace u(v, rng.next() & low_mask(n));
    for (int t = 0; t <= n; ++t)
      if (BigInt(count_weight_t(u, t)) > binomial_prefix(u.dim() + 1, std::min(t, n - t))) ++bad;
    auto st = std_basis_coset_stats(v, w);
    if (static_cast<int>(st.s.size()) < n - c || static_cast<int>(st.s1.size()) < n - 2 * c) ++bad;
    int ell = c + 1;
    auto sets = build_low_weight_sets(v, w, ell);
    for (int l = 1; l <= ell; ++l) {
      const auto& sl = sets[static_cast<std::size_t>(l - 1)];
      if (static_cast<int>(sl.size()) < n - c * (l + 1)) ++bad;
      for (auto g : sl) {
        if (coset_weight_count(perp, g, 1) != 1) ++bad;
        for (int t = 2; t <= l; ++t)
          if (BigInt(coset_weight_count(perp, g, t)) > 2 * binomial(2 * c + 1, t - 1)) ++bad;
      }
    }
  }
  return {bad == 0, "500 instances at n=10, " + std::to_string(bad) + " violations"};
}

Outcome granular_disperser() {
  const Rational grains[] = {Rational(2), Rational(1, 2), Rational(1, 4)};
  int bad = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    int d = 1 + static_cast<int>(seed % 2);
    int n = 8 + static_cast<int>(seed % 5);
    const Rational& g = grains[seed % 3];
    FunctionTable f = random_granular(n, d, g, seed);
    // Granularity is a property of f - f(0); for G = 2 the values themselves are +-1.
    DenseValues shifted = f.values();
    i128 base = shifted.num()[0];
    for (auto& x : shifted.num()) x -= base;
    if (!granularity_claim_check(FunctionTable::unchecked(n, std::move(shifted), Range::bounded()), g, d)) ++bad;
    auto r = check_granular_disperser(f, d, g);
    if (!r.passed || !r.constant) ++bad;
  }
  return {bad == 0, "100 instances, d in {1,2}, n in 8..12, G in {2,1/2,1/4}, " + std::to_string(bad) + " failures"};
}

Outcome extractor_implication() {
  std::uint64_t checked = 0;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    FunctionTable f = random_integer(4, 3, seed);
    for (int k = 1; k <= 3; ++k) {
      auto r = check_extractor_implies_regular(f, k);
      checked += r.checked;
      if (!r.passed) ++violations;
    }
  }
  return {violations == 0,
          std::to_string(checked) + " restrictions over 1000 tables and k=1..3, " + std::to_string(violations) +
              " violations"};
}

// Smallest m with P[Binomial(trials, p) > m] <= tail.
int binomial_upper(int trials, double p, double tail) {
  double pmf = std::pow(1 - p, trials), cdf = pmf;
  int m = 0;
  while (1 - cdf > tail && m < trials) {
    pmf *= static_cast<double>(trials - m) / (m + 1) * p / (1 - p);
    cdf += pmf;
    ++m;
  }
  return m;
}

Outcome booleanization() {
  const int samples = 10000, tables = 20;
  int points = 0, exceed = 0;
  for (std::uint64_t seed = 0; seed < tables; ++seed) {
    FunctionTable f = random_bounded(8, seed);
    std::vector<long> sum(f.size(), 0);
    for (int s = 0; s < samples; ++s) {
      FunctionTable g = booleanize_sample(f, seed * 1000003 + static_cast<std::uint64_t>(s));
      for (std::size_t x = 0; x < f.size(); ++x) sum[x] += g.at(x) > 0 ? 1 : -1;
    }
    for (std::size_t x = 0; x < f.size(); ++x) {
      ++points;
      double mean = to_double(f.at(x));
      double sigma = std::sqrt((1 - mean * mean) / samples);
      if (std::fabs(static_cast<double>(sum[x]) / samples - mean) > 3 * sigma) ++exceed;
    }
  }
  const double p3 = std::erfc(3 / std::numbers::sqrt2);
  int allowed = binomial_upper(points, p3, 1e-6);
  std::ostringstream os;
  os << points << " points, " << exceed << " outside 3 sigma, allowed " << allowed << " (binomial tail 1e-6)";
  return {exceed <= allowed, os.str()};
}

}  // namespace

// Optional arguments select criterion ids; default is all.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "restriction routes agree at n=4", route_agreement},
      {2, "greedy codim <= 1/delta", greedy_bound},
      {3, "partition refinement bounds", partition_bound},
      {4, "degree-2 pipeline certificates", degree_two_pipeline},
      {5, "majority spectrum", majority_spectrum},
      {6, "degree-one lower bound", degree_one_lb},
      {7, "parity-kill goldens", pkc_goldens},
      {8, "composition bound on 2x2 bits", composition_sweep},
      {9, "counting bounds", counting_bounds},
      {10, "granular disperser", granular_disperser},
      {11, "extractor implies regular", extractor_implication},
      {12, "booleanization statistics", booleanization},
  };
  int failed = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %2d %s: %s (%s; %.1fs)\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
