#include "f2reg/scalar.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "f2reg/error.hpp"

namespace f2reg {

namespace {

using u128 = unsigned __int128;

constexpr i128 kI128Max = static_cast<i128>(~u128{0} >> 1);

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  require(!s.empty(), ErrorCode::kParseError, "empty integer");
  for (char c : s) require(std::isdigit(static_cast<unsigned char>(c)), ErrorCode::kParseError,
                           "bad digit in '" + std::string(s) + "'");
  // Leading zeros would select octal in the BigInt string constructor.
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  std::string digits(s);
  BigInt v(digits);
  return neg ? BigInt(-v) : v;
}

// Parses "q" or "2^e".
BigInt parse_denominator(std::string_view s) {
  s = trim(s);
  if (s.size() > 2 && s[0] == '2' && s[1] == '^') {
    BigInt e = parse_integer(s.substr(2));
    require(e >= 0 && e < 4096, ErrorCode::kParseError, "exponent out of range");
    return BigInt(1) << static_cast<unsigned>(e);
  }
  return parse_integer(s);
}

}  // namespace

BigInt to_big(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  BigInt r = BigInt(static_cast<std::uint64_t>(mag >> 64));
  r <<= 64;
  r += BigInt(static_cast<std::uint64_t>(mag));
  return neg ? BigInt(-r) : r;
}

i128 to_i128(const BigInt& v) {
  BigInt mag = boost::multiprecision::abs(v);
  require(mag <= to_big(kI128Max), ErrorCode::kDyadicOverflow, "value exceeds 127 bits");
  auto hi = static_cast<std::uint64_t>(mag >> 64);
  auto lo = static_cast<std::uint64_t>(mag & BigInt(std::numeric_limits<std::uint64_t>::max()));
  i128 r = static_cast<i128>((u128(hi) << 64) | u128(lo));
  return v < 0 ? -r : r;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 mag = neg ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  std::string s;
  while (mag > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::kDyadicOverflow, "addition overflow");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::kDyadicOverflow, "multiplication overflow");
  return r;
}

i128 pow2(int e) {
  require(e >= 0 && e < 127, ErrorCode::kDyadicOverflow, "exponent " + std::to_string(e));
  return i128(1) << e;
}

bool is_pow2(i128 v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(i128 v) {
  require(is_pow2(v), ErrorCode::kPreconditionViolated, "not a power of two");
  int e = 0;
  while ((i128(1) << e) != v) ++e;
  return e;
}

Rational parse_rational(std::string_view text, bool allow_decimal) {
  std::string_view s = trim(text);
  require(!s.empty(), ErrorCode::kParseError, "empty rational");
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    BigInt p = parse_integer(s.substr(0, slash));
    BigInt q = parse_denominator(s.substr(slash + 1));
    require(q != 0, ErrorCode::kParseError, "zero denominator");
    return Rational(p, q);
  }
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return Rational(parse_integer(s));
  require(allow_decimal, ErrorCode::kParseError,
          "decimal '" + std::string(s) + "' needs an exact p/q form");
  std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
  std::size_t frac = s.size() - dot - 1;
  BigInt den = 1;
  for (std::size_t i = 0; i < frac; ++i) den *= 10;
  if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
  return Rational(parse_integer(digits), den);
}

std::string rational_to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Dyadic Dyadic::make(i128 num, int exp) {
  if (num == 0) return {0, 0};
  while (exp < 0) {
    num = checked_mul(num, 2);
    ++exp;
  }
  while (exp > 0 && (num & 1) == 0) {
    num /= 2;
    --exp;
  }
  return {num, exp};
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& r) {
  BigInt q = boost::multiprecision::denominator(r);
  if ((q & (q - 1)) != 0) return std::nullopt;
  int e = 0;
  while ((BigInt(1) << e) < q) ++e;
  return make(to_i128(boost::multiprecision::numerator(r)), e);
}

Dyadic Dyadic::parse(std::string_view text) {
  auto d = from_rational(parse_rational(text));
  require(d.has_value(), ErrorCode::kParseError, "not dyadic: " + std::string(text));
  return *d;
}

Rational Dyadic::to_rational() const { return Rational(to_big(num), BigInt(1) << exp); }

std::string Dyadic::to_string() const { return f2reg::to_string(num) + "/2^" + std::to_string(exp); }

DenseValues DenseValues::exact(std::vector<i128> num, i128 den) {
  require(den > 0, ErrorCode::kPreconditionViolated, "denominator must be positive");
  DenseValues v;
  v.exact_ = true;
  v.num_ = std::move(num);
  v.den_ = den;
  return v;
}

DenseValues DenseValues::floating(std::vector<double> values) {
  DenseValues v;
  v.exact_ = false;
  v.flt_ = std::move(values);
  v.den_ = 1;
  return v;
}

DenseValues DenseValues::from_rationals(const std::vector<Rational>& values) {
  BigInt den = 1;
  for (const auto& r : values) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(r));
  std::vector<i128> num(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& r = values[i];
    num[i] = to_i128(boost::multiprecision::numerator(r) * (den / boost::multiprecision::denominator(r)));
  }
  return exact(std::move(num), to_i128(den));
}

Rational DenseValues::exact_at(std::size_t i) const {
  require(exact_, ErrorCode::kPreconditionViolated, "exact value requested from a Float64 array");
  return Rational(to_big(num_[i]), to_big(den_));
}

double DenseValues::double_at(std::size_t i) const {
  if (!exact_) return flt_[i];
  return static_cast<double>(num_[i]) / static_cast<double>(den_);
}

DenseValues DenseValues::gather(std::span<const std::uint64_t> idx) const {
  if (exact_) {
    std::vector<i128> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = num_[idx[i]];
    return exact(std::move(out), den_);
  }
  std::vector<double> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = flt_[idx[i]];
  return floating(std::move(out));
}

void DenseValues::reduce() {
  if (!exact_) return;
  i128 g = den_;
  for (i128 v : num_) {
    if (g == 1) return;
    g = gcd128(g, v);
  }
  if (g <= 1) return;
  for (i128& v : num_) v /= g;
  den_ /= g;
}

void DenseValues::scale(const Rational& r) {
  require(exact_, ErrorCode::kPreconditionViolated, "exact scaling of a Float64 array");
  i128 p = to_i128(boost::multiprecision::numerator(r));
  i128 q = to_i128(boost::multiprecision::denominator(r));
  for (i128& v : num_) v = checked_mul(v, p);
  den_ = checked_mul(den_, q);
  reduce();
}

DenseValues DenseValues::to_floating() const {
  if (!exact_) return *this;
  std::vector<double> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out[i] = double_at(i);
  return floating(std::move(out));
}

i128 floor_scaled(const Rational& bound, i128 den) {
  require(bound >= 0, ErrorCode::kPreconditionViolated, "negative bound");
  BigInt v = boost::multiprecision::numerator(bound) * to_big(den) / boost::multiprecision::denominator(bound);
  if (v > to_big(kI128Max)) return kI128Max;
  return to_i128(v);
}

}  // namespace f2reg
