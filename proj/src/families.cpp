#include "f2reg/families.hpp"

#include <algorithm>
#include <numeric>

#include "f2reg/error.hpp"
#include "f2reg/random.hpp"

namespace f2reg {

namespace {

std::vector<int> random_coords(int n, int d, Rng& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  for (int i = 0; i < d; ++i) {
    auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(j)]);
  }
  all.resize(static_cast<std::size_t>(d));
  std::sort(all.begin(), all.end());
  return all;
}

std::uint64_t gather_bits(std::uint64_t x, std::span<const int> coords) {
  std::uint64_t y = 0;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if ((x >> coords[i]) & 1) y |= std::uint64_t{1} << i;
  return y;
}

// Vectors of weight w in F_2^n, in lexicographic order of their coordinates.
std::vector<std::uint64_t> weight_vectors(int n, int w) {
  std::vector<std::uint64_t> out;
  std::vector<int> c(static_cast<std::size_t>(w));
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(coords_mask(c));
    int i = w - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - w + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < w; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

int pkc_base_value(std::uint64_t x) {
  int x1 = x & 1, x2 = (x >> 1) & 1, x3 = (x >> 2) & 1, x4 = (x >> 3) & 1;
  auto chi = [](int v) { return v ? -1 : 1; };
  int twice_g = chi(x1 ^ x3) + chi(x2 ^ x3) + chi(x1 ^ x4) - chi(x2 ^ x4);
  return (2 - twice_g) / 4;
}

}  // namespace

FunctionTable majority(int n) {
  require(n % 2 == 1, ErrorCode::kEvenN, "majority needs odd n");
  std::vector<std::int64_t> v(std::size_t{1} << n);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = 2 * popcount(x) < n ? 1 : -1;
  return FunctionTable::from_ints(n, v, Range::pm1());
}

BigInt double_factorial(int k) {
  BigInt r = 1;
  for (int i = k; i > 1; i -= 2) r *= i;
  return r;
}

Rational majority_coeff_magnitude(int n, int t) {
  require(n % 2 == 1, ErrorCode::kEvenN, "majority needs odd n");
  require(t >= 0 && t <= n, ErrorCode::kPreconditionViolated, "level outside [0,n]");
  if (t % 2 == 0) return 0;
  Rational first(binomial(n - 1, (n - 1) / 2) * 2, BigInt(1) << n);
  return first * Rational(double_factorial(t - 2) * double_factorial(n - t - 1), double_factorial(n - 2));
}

FunctionTable mean_of_signs(int n) {
  require(n >= 1, ErrorCode::kPreconditionViolated, "n must be positive");
  std::vector<i128> num(std::size_t{1} << n);
  for (std::size_t x = 0; x < num.size(); ++x) num[x] = n - 2 * popcount(x);
  auto v = DenseValues::exact(std::move(num), n);
  v.reduce();
  return FunctionTable(n, std::move(v), Range::bounded());
}

SparseSpectrum random_homogeneous_spectrum(int n, int d, std::uint64_t seed) {
  require(d >= 0 && d <= n, ErrorCode::kPreconditionViolated, "d outside [0,n]");
  Rng rng(seed);
  SparseSpectrum s(n, to_i128(binomial(n, d)));
  for (auto gamma : weight_vectors(n, d)) s.add(gamma, rng.coin() ? 1 : -1);
  return s;
}

FunctionTable random_homogeneous(int n, int d, std::uint64_t seed) {
  return inverse_wht(random_homogeneous_spectrum(n, d, seed).to_dense(), Range::bounded());
}

FunctionTable pkc_base() {
  std::vector<std::int64_t> v(16);
  for (std::uint64_t x = 0; x < 16; ++x) v[x] = pkc_base_value(x);
  return FunctionTable::from_ints(4, v, Range::integer(1));
}

FunctionTable pkc_base_pm1() {
  std::vector<std::int64_t> v(16);
  for (std::uint64_t x = 0; x < 16; ++x) v[x] = 1 - 2 * pkc_base_value(x);
  return FunctionTable::from_ints(4, v, Range::pm1());
}

int pkc_evaluate(int k, std::span<const std::uint8_t> x) {
  require(k >= 1 && k <= 6, ErrorCode::kCapExceeded, "evaluator supports 1 <= k <= 6");
  std::size_t len = std::size_t{1} << (2 * k);
  require(x.size() == len, ErrorCode::kDimensionMismatch, "input must have 4^k bits");
  if (k == 1) return pkc_base_value(static_cast<std::uint64_t>(x[0] & 1) | (static_cast<std::uint64_t>(x[1] & 1) << 1) |
                                    (static_cast<std::uint64_t>(x[2] & 1) << 2) | (static_cast<std::uint64_t>(x[3] & 1) << 3));
  std::size_t block = len / 4;
  std::uint64_t y = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (pkc_evaluate(k - 1, x.subspan(i * block, block))) y |= std::uint64_t{1} << i;
  return pkc_base_value(y);
}

FunctionTable pkc_compose(int k) {
  require(k >= 1 && k <= 2, ErrorCode::kCapExceeded, "table form supports k <= 2");
  if (k == 1) return pkc_base();
  return compose_boolean(pkc_base(), pkc_base());
}

FunctionTable booleanize_sample(const FunctionTable& f, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> out(f.size());
  const auto& v = f.values();
  if (v.is_exact()) {
    require(v.den() <= (i128(1) << 62), ErrorCode::kDyadicOverflow, "denominator too large for sampling");
    auto den = static_cast<std::uint64_t>(v.den());
    for (std::size_t x = 0; x < f.size(); ++x) {
      require(abs128(v.num()[x]) <= v.den(), ErrorCode::kPreconditionViolated, "values must lie in [-1,1]");
      auto ones = static_cast<std::uint64_t>(v.den() + v.num()[x]);
      out[x] = rng.below(2 * den) < ones ? 1 : -1;
    }
  } else {
    for (std::size_t x = 0; x < f.size(); ++x) out[x] = rng.unit() < (1.0 + v.doubles()[x]) / 2.0 ? 1 : -1;
  }
  return FunctionTable::from_ints(f.n(), out, Range::pm1());
}

FunctionTable random_granular(int n, int d, const Rational& g, std::uint64_t seed) {
  require(d >= 0 && d <= n, ErrorCode::kPreconditionViolated, "d outside [0,n]");
  require(g > 0 && (g <= 1 || g == 2), ErrorCode::kPreconditionViolated, "granularity must be 2 or at most 1");
  auto gd = Dyadic::from_rational(g);
  require(gd.has_value(), ErrorCode::kPreconditionViolated, "granularity must be dyadic");
  Rng rng(seed);
  std::size_t size = std::size_t{1} << n;
  std::vector<i128> num(size, 0);
  i128 den = 1;
  if (g == 2) {
    auto coords = random_coords(n, d, rng);
    std::vector<int> junta(std::size_t{1} << d);
    for (auto& v : junta) v = rng.coin() ? 1 : -1;
    for (std::size_t x = 0; x < size; ++x) num[x] = junta[gather_bits(x, coords)];
  } else {
    // g = gnum / 2^e with gnum odd; terms = floor(1/g).
    den = pow2(gd->exp);
    Rational inv = Rational(1) / g;
    auto terms = static_cast<int>(BigInt(numerator(inv) / denominator(inv)));
    for (int t = 0; t < terms; ++t) {
      auto coords = random_coords(n, d, rng);
      std::vector<int> junta(std::size_t{1} << d);
      for (auto& v : junta) v = static_cast<int>(rng.below(3)) - 1;
      for (std::size_t x = 0; x < size; ++x) num[x] += junta[gather_bits(x, coords)] * gd->num;
    }
  }
  auto v = DenseValues::exact(std::move(num), den);
  v.reduce();
  return FunctionTable(n, std::move(v), Range::bounded());
}

FunctionTable random_bounded(int n, std::uint64_t seed, int bits) {
  Rng rng(seed);
  std::vector<i128> num(std::size_t{1} << n);
  std::int64_t top = std::int64_t{1} << bits;
  for (auto& v : num) v = rng.range(-top, top);
  auto v = DenseValues::exact(std::move(num), top);
  v.reduce();
  return FunctionTable(n, std::move(v), Range::bounded());
}

FunctionTable random_unit_interval(int n, std::uint64_t seed, int bits) {
  Rng rng(seed);
  std::vector<i128> num(std::size_t{1} << n);
  std::int64_t top = std::int64_t{1} << bits;
  for (auto& v : num) v = rng.range(0, top);
  auto v = DenseValues::exact(std::move(num), top);
  v.reduce();
  return FunctionTable(n, std::move(v), Range::bounded());
}

FunctionTable random_boolean(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> v(std::size_t{1} << n);
  for (auto& x : v) x = rng.coin() ? 1 : -1;
  return FunctionTable::from_ints(n, v, Range::pm1());
}

FunctionTable random_integer(int n, int c, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::int64_t> v(std::size_t{1} << n);
  for (auto& x : v) x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(c) + 1));
  return FunctionTable::from_ints(n, v, Range::integer(c));
}

SparseSpectrum random_low_degree(int n, int d, std::uint64_t seed) {
  require(d >= 0 && d <= n && n <= kMaxBits, ErrorCode::kPreconditionViolated, "d outside [0,n]");
  Rng rng(seed);
  std::vector<std::pair<std::uint64_t, i128>> terms;
  i128 mass = 0;
  for (int w = 0; w <= d; ++w) {
    for (auto gamma : weight_vectors(n, w)) {
      bool forced = terms.empty() && w == d;
      if (!forced && !rng.coin()) continue;
      i128 v = rng.range(-1024, 1024);
      if (v == 0) v = 1;
      terms.emplace_back(gamma, v);
      mass += abs128(v);
    }
  }
  // Guarantee a level-d term.
  if (std::none_of(terms.begin(), terms.end(), [&](const auto& t) { return popcount(t.first) == d; })) {
    terms.emplace_back(low_mask(d), 1);
    mass += 1;
  }
  i128 den = 1;
  while (den < mass) den *= 2;
  SparseSpectrum s(n, den);
  for (const auto& [g, v] : terms) s.add(g, v);
  return s;
}

FunctionTable boolean_from_truth(int n, std::uint64_t truth) {
  require(n <= 6, ErrorCode::kCapExceeded, "truth tables hold at most 64 entries");
  std::vector<std::int64_t> v(std::size_t{1} << n);
  for (std::size_t x = 0; x < v.size(); ++x) v[x] = static_cast<std::int64_t>((truth >> x) & 1);
  return FunctionTable::from_ints(n, v, Range::integer(1));
}

FunctionTable compose_boolean(const FunctionTable& f, const FunctionTable& g) {
  auto is01 = [](const FunctionTable& t) { return t.is_exact() && t.range() == Range::integer(1); };
  require(is01(f) && is01(g), ErrorCode::kPreconditionViolated, "composition needs {0,1}-valued tables");
  int m = f.n(), r = g.n(), n = m * r;
  require(n <= 24, ErrorCode::kCapExceeded, "composite exceeds 24 bits");
  std::vector<std::int64_t> v(std::size_t{1} << n);
  const auto& fv = f.values();
  const auto& gv = g.values();
  std::uint64_t rm = low_mask(r);
  for (std::size_t x = 0; x < v.size(); ++x) {
    std::uint64_t y = 0;
    for (int i = 0; i < m; ++i)
      if (gv.num()[(x >> (i * r)) & rm] != 0) y |= std::uint64_t{1} << i;
    v[x] = fv.num()[y] != 0 ? 1 : 0;
  }
  return FunctionTable::from_ints(n, v, Range::integer(1));
}

}  // namespace f2reg
