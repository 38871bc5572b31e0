#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "f2reg/scalar.hpp"

namespace f2reg {

// Coordinate x_{i+1} is bit i; text form puts x_1 leftmost.
constexpr int kMaxBits = 64;
constexpr int kDefaultExhaustiveCap = 10;

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }
inline int parity(std::uint64_t x) { return __builtin_parityll(x); }
inline std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

std::string bits_to_string(std::uint64_t bits, int n);
std::uint64_t parse_bits(std::string_view text);

class Vec2 {
 public:
  Vec2() = default;
  Vec2(int n, std::uint64_t bits);
  static Vec2 unit(int n, int i) { return Vec2(n, std::uint64_t{1} << i); }
  static Vec2 parse(std::string_view text);

  int n() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool get(int i) const { return (bits_ >> i) & 1; }
  void set(int i, bool v) { bits_ = v ? bits_ | (std::uint64_t{1} << i) : bits_ & ~(std::uint64_t{1} << i); }
  int weight() const { return popcount(bits_); }
  bool is_zero() const { return bits_ == 0; }
  std::string to_string() const { return bits_to_string(bits_, n_); }

  Vec2 operator^(const Vec2& o) const { return Vec2(n_, bits_ ^ o.bits_); }
  Vec2 operator&(const Vec2& o) const { return Vec2(n_, bits_ & o.bits_); }
  bool operator==(const Vec2&) const = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

inline int dot(std::uint64_t a, std::uint64_t b) { return parity(a & b); }
inline int dot(const Vec2& a, const Vec2& b) { return parity(a.bits() & b.bits()); }

// Square matrix over F_2 acting on column vectors: (Mx)_i = <row_i, x>.
class Mat2 {
 public:
  Mat2() = default;
  explicit Mat2(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {}
  static Mat2 identity(int n);
  static Mat2 from_rows(int n, std::vector<std::uint64_t> rows);
  static Mat2 from_columns(int n, const std::vector<std::uint64_t>& cols);

  int n() const { return n_; }
  std::uint64_t row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint64_t>& rows() const { return rows_; }
  std::uint64_t column(int j) const;
  bool at(int i, int j) const { return (rows_[static_cast<std::size_t>(i)] >> j) & 1; }
  void set(int i, int j, bool v);

  std::uint64_t apply(std::uint64_t x) const;
  Vec2 apply(const Vec2& x) const { return Vec2(n_, apply(x.bits())); }
  Mat2 transpose() const;
  // (A * B) x = A (B x)
  Mat2 operator*(const Mat2& o) const;
  bool operator==(const Mat2&) const = default;

  int rank() const;
  bool is_invertible() const { return rank() == n_; }
  std::optional<Mat2> try_inverse() const;
  // Throws kSingularMatrix.
  Mat2 inverse() const;
  // M x for every x in F_2^n, n <= 30.
  std::vector<std::uint64_t> image_table() const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Row-reduced basis: each row's pivot is its lowest set coordinate, pivots ascend,
// and every pivot coordinate is zero in all other rows.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(int n, std::span<const std::uint64_t> gens);
  static Subspace span(int n, std::initializer_list<std::uint64_t> gens) {
    return span(n, std::span<const std::uint64_t>(gens.begin(), gens.size()));
  }
  static Subspace span(const std::vector<Vec2>& gens, int n);
  static Subspace zero(int n) { return span(n, std::span<const std::uint64_t>()); }
  static Subspace full(int n);
  static Subspace coordinates(int n, std::span<const int> coords);
  static Subspace parse(int n, const std::vector<std::string>& rows);
  // Trusted constructor for rows already in reduced form.
  static Subspace from_rref(int n, std::vector<std::uint64_t> rows);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  int codim() const { return n_ - dim(); }
  const std::vector<std::uint64_t>& basis() const { return basis_; }
  std::vector<int> pivots() const;
  std::uint64_t pivot_mask() const { return pivot_mask_; }

  // Canonical representative of x + this: zero on every pivot coordinate.
  std::uint64_t reduce(std::uint64_t x) const;
  bool contains(std::uint64_t x) const { return reduce(x) == 0; }
  bool contains(const Subspace& o) const;
  // Element t is the sum of basis rows selected by the bits of t.
  std::vector<std::uint64_t> elements() const;
  std::vector<std::string> to_strings() const;

  bool operator==(const Subspace&) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> basis_;
  std::uint64_t pivot_mask_ = 0;
};

Subspace orthogonal(const Subspace& s);
Subspace transform(const Mat2& m, const Subspace& s);
// W = { M^T g : g in span(J) } for M carrying a basis of V onto { e_j : j in J }.
Subspace complement_of_perp(const Subspace& v, std::span<const int> j, const Mat2& m);
bool is_direct_sum(const Subspace& w, const Subspace& v);

// Splits x = w + v along F_2^n = W (+) V.
class DirectSumSplitter {
 public:
  DirectSumSplitter(const Subspace& w, const Subspace& v);
  std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t x) const;

 private:
  int n_;
  int wdim_;
  std::vector<std::uint64_t> cols_;
  Mat2 inv_;
};

// shift is kept canonical (zero on the pivots of space).
class AffineSubspace {
 public:
  AffineSubspace() = default;
  AffineSubspace(Subspace space, std::uint64_t shift);
  static AffineSubspace full(int n) { return AffineSubspace(Subspace::full(n), 0); }

  const Subspace& space() const { return space_; }
  std::uint64_t shift() const { return shift_; }
  int n() const { return space_.n(); }
  int dim() const { return space_.dim(); }
  int codim() const { return space_.codim(); }
  bool contains(std::uint64_t x) const { return space_.contains(x ^ shift_); }
  std::vector<std::uint64_t> elements() const;
  // Points x of this with <lambda, x> = b.
  std::optional<AffineSubspace> intersect_hyperplane(std::uint64_t lambda, int b) const;

  bool operator==(const AffineSubspace&) const = default;

 private:
  Subspace space_;
  std::uint64_t shift_ = 0;
};

// Streams subspaces of the given dimension in canonical order: pivot sets in
// lexicographic order, then free entries as a binary counter. fn returns false to stop.
// Returns false when stopped early. Throws kCapExceeded when n > cap.
bool for_each_subspace(int n, int dim, const std::function<bool(const Subspace&)>& fn,
                       int cap = kDefaultExhaustiveCap);
bool for_each_subspace_with_pivots(int n, std::span<const int> pivots,
                                   const std::function<bool(const Subspace&)>& fn);
std::vector<std::vector<int>> pivot_sets(int n, int dim);
std::vector<Subspace> enumerate_subspaces(int n, int dim, int cap = kDefaultExhaustiveCap);

BigInt gaussian_binomial(int n, int k);
BigInt binomial(int n, int k);
// sum_{i <= k} binom(n, i)
BigInt binomial_prefix(int n, int k);

// |{x in U : |x| = t}|
std::uint64_t count_weight_t(const AffineSubspace& u, int t);

std::vector<int> complement_coords(int n, std::span<const int> coords);
std::uint64_t coords_mask(std::span<const int> coords);
std::vector<int> mask_coords(std::uint64_t mask);

}  // namespace f2reg
