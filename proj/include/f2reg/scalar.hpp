#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace f2reg {

using i128 = __int128;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt to_big(i128 v);
// Throws kDyadicOverflow when v does not fit.
i128 to_i128(const BigInt& v);
std::string to_string(i128 v);
i128 abs128(i128 v);
i128 gcd128(i128 a, i128 b);
i128 checked_add(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);
i128 pow2(int e);
bool is_pow2(i128 v);
int log2_exact(i128 v);

// Accepts "p/q", "p", "p/2^e" and, when allow_decimal, a plain decimal such as "0.25".
Rational parse_rational(std::string_view text, bool allow_decimal = false);
std::string rational_to_string(const Rational& r);
double to_double(const Rational& r);

// num / 2^exp, canonical: exp >= 0 and (num odd or exp == 0).
struct Dyadic {
  i128 num = 0;
  int exp = 0;

  static Dyadic make(i128 num, int exp);
  static std::optional<Dyadic> from_rational(const Rational& r);
  static Dyadic parse(std::string_view text);
  Rational to_rational() const;
  std::string to_string() const;
  bool operator==(const Dyadic&) const = default;
};

// 2^n values, either exact over one shared positive denominator or Float64.
class DenseValues {
 public:
  DenseValues() = default;
  static DenseValues exact(std::vector<i128> num, i128 den);
  static DenseValues floating(std::vector<double> values);
  static DenseValues from_rationals(const std::vector<Rational>& values);

  bool is_exact() const { return exact_; }
  std::size_t size() const { return exact_ ? num_.size() : flt_.size(); }
  const std::vector<i128>& num() const { return num_; }
  std::vector<i128>& num() { return num_; }
  i128 den() const { return den_; }
  void set_den(i128 den) { den_ = den; }
  const std::vector<double>& doubles() const { return flt_; }
  std::vector<double>& doubles() { return flt_; }

  Rational exact_at(std::size_t i) const;
  double double_at(std::size_t i) const;
  bool is_zero(std::size_t i) const { return exact_ ? num_[i] == 0 : flt_[i] == 0.0; }

  // out[i] = (*this)[idx[i]]
  DenseValues gather(std::span<const std::uint64_t> idx) const;
  // Divides numerators and denominator by their common gcd.
  void reduce();
  // Multiplies every value by r (exact only).
  void scale(const Rational& r);
  bool is_dyadic() const { return exact_ && is_pow2(den_); }
  DenseValues to_floating() const;

 private:
  bool exact_ = true;
  std::vector<i128> num_;
  i128 den_ = 1;
  std::vector<double> flt_;
};

// Largest m with m / den <= bound, for bound >= 0. Saturates at the i128 range.
i128 floor_scaled(const Rational& bound, i128 den);

}  // namespace f2reg
