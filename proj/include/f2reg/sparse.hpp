#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>

#include "f2reg/f2core.hpp"
#include "f2reg/scalar.hpp"
#include "f2reg/spectrum.hpp"

namespace f2reg {

// Exact spectrum stored by support: coefficient at gamma is terms[gamma] / den.
// Used for low-degree functions on more coordinates than a dense table allows.
class SparseSpectrum {
 public:
  SparseSpectrum() = default;
  explicit SparseSpectrum(int n, i128 den = 1);
  static SparseSpectrum from_dense(const Spectrum& s);

  int n() const { return n_; }
  i128 den() const { return den_; }
  const std::map<std::uint64_t, i128>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }

  void add(std::uint64_t gamma, i128 num);
  i128 num_at(std::uint64_t gamma) const;
  Rational at(std::uint64_t gamma) const;
  int degree() const;
  Rational eval(std::uint64_t x) const;
  Spectrum to_dense() const;

  // Spectrum of x -> f(Mx).
  SparseSpectrum compose(const Mat2& m) const;
  // Spectrum of f with the coordinates in mask fixed to the matching bits of b;
  // the fixed coordinates stay in place and carry no weight afterwards.
  SparseSpectrum restrict_coords(std::uint64_t mask, std::uint64_t b) const;
  // Relabels coordinate keep[i] to i; keep must cover the support.
  SparseSpectrum compact(std::span<const int> keep) const;
  // Relabels coordinate i to positions[i] inside F_2^n.
  SparseSpectrum embed(int n, std::span<const int> positions) const;
  std::pair<SparseSpectrum, SparseSpectrum> level_split(int d) const;
  SparseSpectrum scaled(const Rational& r) const;

  std::optional<Witness> max_nontrivial() const;
  std::optional<Witness> regularity_witness(const Rational& delta) const;
  bool is_regular(const Rational& delta) const { return !regularity_witness(delta).has_value(); }

 private:
  int n_ = 0;
  i128 den_ = 1;
  std::map<std::uint64_t, i128> terms_;
};

}  // namespace f2reg
