#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "f2reg/f2core.hpp"
#include "f2reg/scalar.hpp"

namespace f2reg {

struct Range {
  enum class Kind { kBounded, kPm1, kInteger };
  Kind kind = Kind::kBounded;
  int c = 0;  // upper end of {0..c} for kInteger

  static Range bounded() { return {Kind::kBounded, 0}; }
  static Range pm1() { return {Kind::kPm1, 0}; }
  static Range integer(int c) { return {Kind::kInteger, c}; }
  static Range parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const Range&) const = default;
};

// f : F_2^n -> R, entry x is f(x).
class FunctionTable {
 public:
  FunctionTable() = default;
  // Validates the range tag against every value.
  FunctionTable(int n, DenseValues values, Range range);
  static FunctionTable unchecked(int n, DenseValues values, Range range);
  static FunctionTable from_ints(int n, const std::vector<std::int64_t>& values, Range range);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  Range range() const { return range_; }
  bool is_exact() const { return values_.is_exact(); }
  const DenseValues& values() const { return values_; }
  Rational at(std::uint64_t x) const { return values_.exact_at(x); }
  double at_double(std::uint64_t x) const { return values_.double_at(x); }
  bool is_constant() const;

 private:
  int n_ = 0;
  DenseValues values_;
  Range range_;
};

// fhat(gamma) = E_x[f(x) (-1)^<gamma,x>], entry gamma.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(int n, DenseValues coeffs);

  int n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_exact() const { return coeffs_.is_exact(); }
  const DenseValues& coeffs() const { return coeffs_; }
  Rational at(std::uint64_t gamma) const { return coeffs_.exact_at(gamma); }
  double at_double(std::uint64_t gamma) const { return coeffs_.double_at(gamma); }

 private:
  int n_ = 0;
  DenseValues coeffs_;
};

Spectrum wht(const FunctionTable& f);
FunctionTable inverse_wht(const Spectrum& s, Range range = Range::bounded());
// In-place unnormalized butterfly; exact path checks headroom first.
void butterfly(std::vector<i128>& a);
void butterfly(std::vector<double>& a);

// Largest |gamma| with a nonzero coefficient; 0 for constants.
int degree(const Spectrum& s);

struct Witness {
  std::uint64_t gamma = 0;
  Rational magnitude;
};

// Largest nontrivial |fhat(gamma)|, ties to the smallest gamma; nullopt when all vanish.
std::optional<Witness> max_nontrivial(const Spectrum& s);
// nullopt when delta-regular, otherwise the witness of max_nontrivial.
std::optional<Witness> regularity_witness(const Spectrum& s, const Rational& delta);
bool is_regular(const Spectrum& s, const Rational& delta);

// (levels < d, level == d); throws kDegreeTooHigh when a level above d is nonzero.
std::pair<Spectrum, Spectrum> level_split(const Spectrum& s, int d);

// Whether every coefficient is an integer multiple of 2^-d * g.
// Pre: exact f, every value a multiple of g, degree <= d.
bool granularity_claim_check(const FunctionTable& f, const Rational& g, int d);
bool is_granular(const FunctionTable& f, const Rational& g);

// Total variation between f on u and the uniform law on {0..c}.
Rational tv_distance(const FunctionTable& f, const AffineSubspace& u);

// sum_gamma fhat(gamma)^2 and E_x[f(x)^2].
Rational spectral_mass(const Spectrum& s);
Rational mean_square(const FunctionTable& f);

}  // namespace f2reg
