#include "f2reg/spectrum.hpp"

#include <cmath>

#include "f2reg/error.hpp"

namespace f2reg {

namespace {

int table_bits(std::size_t size) {
  int n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  require((std::size_t{1} << n) == size, ErrorCode::kDimensionMismatch, "table size is not a power of two");
  return n;
}

bool value_in_range(const DenseValues& v, std::size_t i, Range r) {
  if (v.is_exact()) {
    i128 num = v.num()[i], den = v.den();
    switch (r.kind) {
      case Range::Kind::kBounded: return abs128(num) <= den;
      case Range::Kind::kPm1: return abs128(num) == den;
      case Range::Kind::kInteger: return num % den == 0 && num >= 0 && num / den <= r.c;
    }
  }
  double x = v.doubles()[i];
  switch (r.kind) {
    case Range::Kind::kBounded: return std::fabs(x) <= 1.0;
    case Range::Kind::kPm1: return x == 1.0 || x == -1.0;
    case Range::Kind::kInteger: return x >= 0 && x <= r.c && std::floor(x) == x;
  }
  return false;
}

}  // namespace

Range Range::parse(std::string_view text) {
  if (text == "bounded") return bounded();
  if (text == "pm1") return pm1();
  if (text.substr(0, 4) == "int:") {
    auto c = parse_rational(text.substr(4));
    require(boost::multiprecision::denominator(c) == 1 && c >= 0 && c < 1000000, ErrorCode::kParseError,
            "bad integer range");
    return integer(static_cast<int>(boost::multiprecision::numerator(c)));
  }
  fail(ErrorCode::kParseError, "unknown range '" + std::string(text) + "'");
}

std::string Range::to_string() const {
  switch (kind) {
    case Kind::kBounded: return "bounded";
    case Kind::kPm1: return "pm1";
    case Kind::kInteger: return "int:" + std::to_string(c);
  }
  return "bounded";
}

FunctionTable::FunctionTable(int n, DenseValues values, Range range) {
  *this = unchecked(n, std::move(values), range);
  for (std::size_t i = 0; i < values_.size(); ++i)
    require(value_in_range(values_, i, range_), ErrorCode::kPreconditionViolated,
            "value at " + bits_to_string(i, n_) + " outside range " + range_.to_string());
}

FunctionTable FunctionTable::unchecked(int n, DenseValues values, Range range) {
  require(n >= 0 && n <= 30, ErrorCode::kCapExceeded, "dense tables need n <= 30");
  require(values.size() == (std::size_t{1} << n), ErrorCode::kDimensionMismatch, "table size differs from 2^n");
  FunctionTable f;
  f.n_ = n;
  f.values_ = std::move(values);
  f.range_ = range;
  return f;
}

FunctionTable FunctionTable::from_ints(int n, const std::vector<std::int64_t>& values, Range range) {
  std::vector<i128> num(values.begin(), values.end());
  return FunctionTable(n, DenseValues::exact(std::move(num), 1), range);
}

bool FunctionTable::is_constant() const {
  for (std::size_t i = 1; i < size(); ++i) {
    if (is_exact() ? values_.num()[i] != values_.num()[0] : values_.doubles()[i] != values_.doubles()[0])
      return false;
  }
  return true;
}

Spectrum::Spectrum(int n, DenseValues coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == (std::size_t{1} << n), ErrorCode::kDimensionMismatch, "spectrum size differs from 2^n");
}

void butterfly(std::vector<i128>& a) {
  int n = table_bits(a.size());
  i128 mx = 0;
  for (i128 v : a) mx = std::max(mx, abs128(v));
  require(n < 126 && mx < (i128(1) << (126 - n)), ErrorCode::kDyadicOverflow, "butterfly headroom exhausted");
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        i128 x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

void butterfly(std::vector<double>& a) {
  for (std::size_t h = 1; h < a.size(); h <<= 1)
    for (std::size_t i = 0; i < a.size(); i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        double x = a[j], y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

Spectrum wht(const FunctionTable& f) {
  if (f.is_exact()) {
    std::vector<i128> a = f.values().num();
    butterfly(a);
    auto v = DenseValues::exact(std::move(a), checked_mul(f.values().den(), pow2(f.n())));
    v.reduce();
    return Spectrum(f.n(), std::move(v));
  }
  std::vector<double> a = f.values().doubles();
  butterfly(a);
  double scale = std::ldexp(1.0, -f.n());
  for (double& x : a) x *= scale;
  return Spectrum(f.n(), DenseValues::floating(std::move(a)));
}

FunctionTable inverse_wht(const Spectrum& s, Range range) {
  if (s.is_exact()) {
    std::vector<i128> a = s.coeffs().num();
    butterfly(a);
    auto v = DenseValues::exact(std::move(a), s.coeffs().den());
    v.reduce();
    return FunctionTable(s.n(), std::move(v), range);
  }
  std::vector<double> a = s.coeffs().doubles();
  butterfly(a);
  return FunctionTable(s.n(), DenseValues::floating(std::move(a)), range);
}

int degree(const Spectrum& s) {
  int d = 0;
  for (std::size_t g = 0; g < s.size(); ++g)
    if (!s.coeffs().is_zero(g)) d = std::max(d, popcount(g));
  return d;
}

std::optional<Witness> max_nontrivial(const Spectrum& s) {
  const auto& c = s.coeffs();
  std::size_t best = 0;
  if (c.is_exact()) {
    i128 mag = 0;
    for (std::size_t g = 1; g < s.size(); ++g) {
      i128 m = abs128(c.num()[g]);
      if (m > mag) {
        mag = m;
        best = g;
      }
    }
    if (best == 0) return std::nullopt;
    return Witness{best, Rational(to_big(mag), to_big(c.den()))};
  }
  double mag = 0;
  for (std::size_t g = 1; g < s.size(); ++g) {
    double m = std::fabs(c.doubles()[g]);
    if (m > mag) {
      mag = m;
      best = g;
    }
  }
  if (best == 0) return std::nullopt;
  return Witness{best, Rational(mag)};
}

std::optional<Witness> regularity_witness(const Spectrum& s, const Rational& delta) {
  auto w = max_nontrivial(s);
  if (!w) return std::nullopt;
  if (s.is_exact()) {
    i128 bound = floor_scaled(delta, s.coeffs().den());
    if (abs128(s.coeffs().num()[w->gamma]) <= bound) return std::nullopt;
    return w;
  }
  if (std::fabs(s.coeffs().doubles()[w->gamma]) <= to_double(delta)) return std::nullopt;
  return w;
}

bool is_regular(const Spectrum& s, const Rational& delta) { return !regularity_witness(s, delta).has_value(); }

std::pair<Spectrum, Spectrum> level_split(const Spectrum& s, int d) {
  require(degree(s) <= d, ErrorCode::kDegreeTooHigh, "spectrum has a level above " + std::to_string(d));
  DenseValues below = s.coeffs(), at = s.coeffs();
  for (std::size_t g = 0; g < s.size(); ++g) {
    bool top = popcount(g) == d;
    if (below.is_exact()) {
      (top ? below.num()[g] : at.num()[g]) = 0;
    } else {
      (top ? below.doubles()[g] : at.doubles()[g]) = 0.0;
    }
  }
  return {Spectrum(s.n(), std::move(below)), Spectrum(s.n(), std::move(at))};
}

bool is_granular(const FunctionTable& f, const Rational& g) {
  require(f.is_exact() && g > 0, ErrorCode::kPreconditionViolated, "granularity needs exact values and g > 0");
  BigInt step = to_big(f.values().den()) * boost::multiprecision::numerator(g);
  BigInt gd = boost::multiprecision::denominator(g);
  for (i128 v : f.values().num())
    if ((to_big(v) * gd) % step != 0) return false;
  return true;
}

bool granularity_claim_check(const FunctionTable& f, const Rational& g, int d) {
  require(f.is_exact(), ErrorCode::kPreconditionViolated, "granularity needs exact values");
  require(is_granular(f, g), ErrorCode::kPreconditionViolated, "values are not multiples of G");
  Spectrum s = wht(f);
  require(degree(s) <= d, ErrorCode::kPreconditionViolated, "degree exceeds d");
  Rational step = g / Rational(BigInt(1) << d);
  BigInt mod = to_big(s.coeffs().den()) * boost::multiprecision::numerator(step);
  BigInt mul = boost::multiprecision::denominator(step);
  for (i128 v : s.coeffs().num())
    if ((to_big(v) * mul) % mod != 0) return false;
  return true;
}

Rational tv_distance(const FunctionTable& f, const AffineSubspace& u) {
  require(f.range().kind == Range::Kind::kInteger && f.is_exact(), ErrorCode::kPreconditionViolated,
          "TV distance needs an exact {0..C}-valued table");
  require(u.n() == f.n(), ErrorCode::kDimensionMismatch, "subspace and table sizes differ");
  int c = f.range().c;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(c) + 1, 0);
  const auto& v = f.values();
  auto points = u.elements();
  for (auto x : points) ++counts[static_cast<std::size_t>(v.num()[x] / v.den())];
  auto size = static_cast<std::int64_t>(points.size());
  BigInt total = 0;
  for (auto k : counts) total += boost::multiprecision::abs(BigInt(k * (c + 1) - size));
  return Rational(total, BigInt(2 * size * (c + 1)));
}

Rational spectral_mass(const Spectrum& s) {
  require(s.is_exact(), ErrorCode::kPreconditionViolated, "exact spectrum required");
  BigInt t = 0;
  for (i128 v : s.coeffs().num()) t += to_big(v) * to_big(v);
  BigInt d = to_big(s.coeffs().den());
  return Rational(t, d * d);
}

Rational mean_square(const FunctionTable& f) {
  require(f.is_exact(), ErrorCode::kPreconditionViolated, "exact table required");
  BigInt t = 0;
  for (i128 v : f.values().num()) t += to_big(v) * to_big(v);
  BigInt d = to_big(f.values().den());
  return Rational(t, d * d * BigInt(f.size()));
}

}  // namespace f2reg
