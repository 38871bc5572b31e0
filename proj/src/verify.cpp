#include "f2reg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "f2reg/error.hpp"
#include "f2reg/families.hpp"
#include "f2reg/random.hpp"

namespace f2reg {

StdBasisStats std_basis_coset_stats(const Subspace& v, const Subspace& w) {
  Subspace perp = orthogonal(v);
  DirectSumSplitter split(w, perp);
  StdBasisStats out;
  out.codim = v.codim();
  for (int i = 0; i < v.n(); ++i) ++out.hits[split.split(std::uint64_t{1} << i).first];
  for (const auto& [u, c] : out.hits) {
    out.s.push_back(u);
    if (c == 1) out.s1.push_back(u);
  }
  return out;
}

std::uint64_t coset_weight_count(const Subspace& d, std::uint64_t u, int t) {
  std::uint64_t c = 0;
  for (auto e : d.elements())
    if (popcount(u ^ e) == t) ++c;
  return c;
}

std::vector<std::vector<std::uint64_t>> build_low_weight_sets(const Subspace& v, const Subspace& w, int ell) {
  int c = v.codim();
  require(ell >= 1 && ell <= c + 1, ErrorCode::kPreconditionViolated, "need 1 <= l <= codim + 1");
  Subspace perp = orthogonal(v);
  std::vector<std::vector<std::uint64_t>> levels{std_basis_coset_stats(v, w).s1};
  for (int l = 2; l <= ell; ++l) {
    BigInt cap = 2 * binomial(2 * c + 1, l - 1);
    std::vector<std::uint64_t> next;
    for (auto u : levels.back())
      if (BigInt(coset_weight_count(perp, u, l)) <= cap) next.push_back(u);
    levels.push_back(std::move(next));
  }
  return levels;
}

DegreeOneReport check_degree_one_lb(int n, const Rational& delta, int max_codim, const ScanOptions& opts) {
  DegreeOneReport r;
  r.n = n;
  r.delta = delta;
  r.max_codim = std::min(max_codim, n / 2 - 1);
  if (r.max_codim < 0) {
    r.passed = true;
    return r;
  }
  r.regular = exact_regularity_number(mean_of_signs(n), delta, r.max_codim, opts);
  r.passed = !r.regular.has_value();
  return r;
}

HomogeneousReport check_random_homogeneous_lb(int n, int d, const Rational& delta, std::uint64_t seed,
                                              bool exhaustive, std::uint64_t samples, const ScanOptions& opts) {
  BigInt binom = binomial(n, d);
  require(d >= 1 && d <= n, ErrorCode::kPreconditionViolated, "d outside [1,n]");
  require(delta * binom < 1, ErrorCode::kPreconditionViolated, "delta must be below 1/binom(n,d)");
  HomogeneousReport r;
  r.n = n;
  r.d = d;
  r.delta = delta;
  r.seed = seed;
  r.mode = exhaustive ? "exhaustive" : "sampled";
  r.dim_threshold = d >= 2 ? 2.0 * d * std::pow(static_cast<double>(n), 1.0 / (d - 1)) : n + 1.0;
  Spectrum s = wht(random_homogeneous(n, d, seed));
  i128 den = s.coeffs().den();
  i128 bound = floor_scaled(delta, den);
  // A coefficient that sums an odd number of +-1/binom terms is at least 1/binom.
  BigInt floor_num = to_big(den);

  auto examine = [&](const Subspace& perp, const std::vector<std::uint64_t>& syndromes) {
    auto elems = perp.elements();
    std::vector<i128> best(elems.size(), 0), buf(elems.size());
    bool odd = false;
    std::vector<bool> obstructed(elems.size(), true);
    for (auto rep : coset_representatives(perp)) {
      if (rep == 0) continue;
      std::uint64_t cnt = 0;
      for (std::size_t t = 0; t < elems.size(); ++t) {
        buf[t] = s.coeffs().num()[rep ^ elems[t]];
        if (popcount(rep ^ elems[t]) == d) ++cnt;
      }
      butterfly(buf);
      for (std::size_t k = 0; k < buf.size(); ++k) {
        best[k] = std::max(best[k], abs128(buf[k]));
        if ((cnt & 1) && to_big(abs128(buf[k])) * binom < floor_num) obstructed[k] = false;
      }
      if (cnt & 1) odd = true;
    }
    for (auto syn : syndromes) {
      ++r.restrictions;
      if (odd) {
        ++r.odd_cosets;
        if (!obstructed[syn]) ++r.obstruction_failures;
      }
      if (best[syn] <= bound) {
        int dim = n - perp.dim();
        ++r.regular_by_dim[dim];
        if (dim >= r.dim_threshold) r.regular_above_threshold.push_back(syndrome_subspace(perp, syn));
      }
    }
  };

  if (exhaustive) {
    check_scan_caps(n, n, opts);
    for (int c = 0; c <= n; ++c)
      for_each_subspace(n, c, [&](const Subspace& perp) {
        std::vector<std::uint64_t> all(std::size_t{1} << c);
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        examine(perp, all);
        return true;
      }, opts.limited_cap);
  } else {
    require(n <= 20, ErrorCode::kCapExceeded, "sampled scan needs n <= 20");
    Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::uint64_t i = 0; i < samples; ++i) {
      int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
      std::vector<std::uint64_t> gens;
      Subspace perp = Subspace::zero(n);
      while (perp.dim() < c) {
        gens.push_back(rng.next() & low_mask(n));
        perp = Subspace::span(n, gens);
      }
      examine(perp, {rng.below(std::uint64_t{1} << c)});
    }
  }
  r.passed = r.obstruction_failures == 0 && r.regular_above_threshold.empty();
  return r;
}

Rational min_max_nontrivial(const FunctionTable& f, int codim, const ScanOptions& opts) {
  check_scan_caps(f.n(), codim, opts);
  Spectrum s = wht(f);
  std::optional<i128> best;
  for_each_subspace(f.n(), codim, [&](const Subspace& perp) {
    for (i128 v : coset_max_numerators(s, perp))
      if (!best || v < *best) best = v;
    return true;
  }, opts.limited_cap);
  return Rational(to_big(best.value_or(0)), to_big(s.coeffs().den()));
}

MajorityReport check_majority_lb(int n, const Rational& delta, int codim_cap, const ScanOptions& opts) {
  MajorityReport r;
  r.n = n;
  r.delta = delta;
  r.codim_cap = codim_cap;
  FunctionTable f = majority(n);
  r.regular = exact_regularity_number(f, delta, codim_cap, opts);
  for (int c = 0; c <= codim_cap; ++c) {
    Rational m = min_max_nontrivial(f, c, opts);
    if (c == 0 || m < r.min_max_coefficient) r.min_max_coefficient = m;
  }
  r.passed = !r.regular.has_value();
  return r;
}

bool composition_bound_holds(int pk_fg, int pk_f, int cmin_f, int pk_g) {
  if (cmin_f == 0) return pk_fg >= pk_f;
  if (pk_g <= 4) return pk_fg >= pk_f + cmin_f;
  int lhs = pk_fg - pk_f;
  if (lhs < 0) return false;
  // lhs >= cmin (log2 pk_g - 1)  <=>  2^(lhs + cmin) >= pk_g^cmin
  return (BigInt(1) << (lhs + cmin_f)) >= boost::multiprecision::pow(BigInt(pk_g), static_cast<unsigned>(cmin_f));
}

CompositionReport check_composition_theorem(const FunctionTable& f, const FunctionTable& g, const ScanOptions& opts) {
  FunctionTable fg = compose_boolean(f, g);
  CompositionReport r;
  r.pk_f = parity_kill(f, -1, opts)->codim;
  r.cmin_f = min_certificate(f).size;
  r.pk_g = parity_kill(g, -1, opts)->codim;
  r.pk_fg = parity_kill(fg, -1, opts)->codim;
  r.b_g = r.pk_g <= 4 ? 1.0 : std::log2(static_cast<double>(r.pk_g)) - 1.0;
  r.hypothesis = r.pk_g >= 2;
  r.holds = composition_bound_holds(r.pk_fg, r.pk_f, r.cmin_f, r.pk_g);
  return r;
}

CanonicalForm canonize_affine_constraints(int k, int n, const std::vector<Constraint>& constraints) {
  int total = k + n;
  require(k >= 0 && n >= 0 && total <= kMaxBits, ErrorCode::kDimensionMismatch, "k + n exceeds 64");
  std::vector<Constraint> basis;
  for (auto row : constraints) {
    require((row.a & ~low_mask(total)) == 0, ErrorCode::kDimensionMismatch, "constraint bits beyond k + n");
    row.sigma &= 1;
    for (const auto& b : basis)
      if (row.a & b.a & -b.a) {
        row.a ^= b.a;
        row.sigma ^= b.sigma;
      }
    if (row.a == 0) {
      require(row.sigma == 0, ErrorCode::kInconsistentConstraints, "constraints have no common solution");
      continue;
    }
    std::uint64_t p = row.a & -row.a;
    for (auto& b : basis)
      if (b.a & p) {
        b.a ^= row.a;
        b.sigma ^= row.sigma;
      }
    basis.push_back(row);
  }
  std::uint64_t xmask = low_mask(k);
  std::vector<Constraint> xr, yr;
  for (const auto& b : basis) ((b.a & xmask) ? xr : yr).push_back(b);
  std::sort(yr.begin(), yr.end(), [](const Constraint& a, const Constraint& b) { return (a.a & -a.a) < (b.a & -b.a); });
  // Make the y-parts of the leading x-rows independent and zero out the rest.
  std::size_t t = 0;
  for (int col = k; col < total && t < xr.size(); ++col) {
    std::uint64_t bit = std::uint64_t{1} << col;
    auto it = std::find_if(xr.begin() + static_cast<std::ptrdiff_t>(t), xr.end(), [&](const Constraint& c) { return c.a & bit; });
    if (it == xr.end()) continue;
    std::swap(*it, xr[t]);
    for (std::size_t i = 0; i < xr.size(); ++i)
      if (i != t && (xr[i].a & bit)) {
        xr[i].a ^= xr[t].a;
        xr[i].sigma ^= xr[t].sigma;
      }
    ++t;
  }
  auto extend = [](int dim, std::vector<std::uint64_t> rows) {
    for (int j = 0; j < dim && static_cast<int>(rows.size()) < dim; ++j) {
      std::vector<std::uint64_t> trial = rows;
      trial.push_back(std::uint64_t{1} << j);
      if (Subspace::span(dim, trial).dim() == static_cast<int>(trial.size())) rows = std::move(trial);
    }
    return rows;
  };
  std::vector<std::uint64_t> lx, ly;
  for (const auto& r : xr) lx.push_back(r.a & xmask);
  for (std::size_t i = 0; i < t; ++i) ly.push_back(xr[i].a >> k);
  for (const auto& r : yr) ly.push_back(r.a >> k);
  lx = extend(k, lx);
  ly = extend(n, ly);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(total));
  for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = lx[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(k + i)] = ly[static_cast<std::size_t>(i)] << k;
  CanonicalForm out;
  out.k = k;
  out.n = n;
  out.l = Mat2::from_rows(total, rows);
  require(out.l.is_invertible(), ErrorCode::kInvariantViolation, "canonizing map is singular");
  out.pairs = static_cast<int>(t);
  out.x_only = static_cast<int>(xr.size() - t);
  out.y_only = static_cast<int>(yr.size());
  for (std::size_t i = 0; i < xr.size(); ++i) {
    std::uint64_t a = std::uint64_t{1} << i;
    if (i < t) a |= std::uint64_t{1} << (k + static_cast<int>(i));
    out.constraints.push_back({a, xr[i].sigma});
  }
  for (std::size_t l = 0; l < yr.size(); ++l)
    out.constraints.push_back({std::uint64_t{1} << (k + static_cast<int>(t + l)), yr[l].sigma});
  return out;
}

ExtractorReport check_extractor_implies_regular(const FunctionTable& f, int k, int cap) {
  require(f.range().kind == Range::Kind::kInteger, ErrorCode::kPreconditionViolated, "f must be {0..C}-valued");
  require(k >= 0 && k < f.n(), ErrorCode::kPreconditionViolated, "need 0 <= k < n");
  int n = f.n();
  ExtractorReport r;
  r.n = n;
  r.c = f.range().c;
  r.k = k;
  r.delta = 0;
  r.worst = 0;
  std::vector<std::pair<AffineSubspace, Rational>> upper;  // dim >= k + 1 with max coefficient
  for (int dim = k; dim <= n; ++dim) {
    for_each_subspace(n, dim, [&](const Subspace& v) {
      for (auto shift : coset_representatives(v)) {
        AffineSubspace u(v, shift);
        Rational tv = tv_distance(f, u);
        if (tv > r.delta) r.delta = tv;
        if (dim >= k + 1) {
          auto w = max_nontrivial(wht(restrict_canonical(f, u)));
          upper.emplace_back(u, w ? w->magnitude : Rational(0));
        }
      }
      return true;
    }, cap);
  }
  r.bound = 2 * r.c * r.delta;
  for (const auto& [u, m] : upper) {
    ++r.checked;
    if (m > r.worst) r.worst = m;
    if (m > r.bound) ++r.violations;
  }
  r.passed = r.violations == 0;
  return r;
}

DisperserReport check_granular_disperser(const FunctionTable& f, int d, const Rational& g) {
  require(f.is_exact(), ErrorCode::kPreconditionViolated, "exact values required");
  DisperserReport r;
  r.n = f.n();
  r.d = d;
  r.g = g;
  r.delta = g / Rational(BigInt(1) << (d + 1));
  std::vector<i128> shifted = f.values().num();
  i128 base = shifted[0];
  for (auto& v : shifted) v -= base;
  FunctionTable delta_f = FunctionTable::unchecked(f.n(), DenseValues::exact(shifted, f.values().den()), Range::bounded());
  r.granular = is_granular(delta_f, g) && degree(wht(f)) <= d;
  if (!r.granular) return r;
  auto res = regularize_bounded_degree(f, d, r.delta);
  r.certificate = res.certificate;
  r.certificate_ok = certificate_verify(f, r.certificate);
  r.constant = certificate_restriction(f, r.certificate).is_constant();
  r.passed = r.certificate_ok && r.constant;
  return r;
}

}  // namespace f2reg
