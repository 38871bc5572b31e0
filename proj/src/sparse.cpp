#include "f2reg/sparse.hpp"

#include "f2reg/error.hpp"

namespace f2reg {

SparseSpectrum::SparseSpectrum(int n, i128 den) : n_(n), den_(den) {
  require(n >= 0 && n <= kMaxBits, ErrorCode::kDimensionMismatch, "n outside [0,64]");
  require(den > 0, ErrorCode::kPreconditionViolated, "denominator must be positive");
}

SparseSpectrum SparseSpectrum::from_dense(const Spectrum& s) {
  require(s.is_exact(), ErrorCode::kPreconditionViolated, "sparse spectra are exact");
  SparseSpectrum out(s.n(), s.coeffs().den());
  for (std::size_t g = 0; g < s.size(); ++g)
    if (s.coeffs().num()[g] != 0) out.terms_.emplace(g, s.coeffs().num()[g]);
  return out;
}

void SparseSpectrum::add(std::uint64_t gamma, i128 num) {
  if (num == 0) return;
  auto [it, inserted] = terms_.try_emplace(gamma, num);
  if (inserted) return;
  it->second = checked_add(it->second, num);
  if (it->second == 0) terms_.erase(it);
}

i128 SparseSpectrum::num_at(std::uint64_t gamma) const {
  auto it = terms_.find(gamma);
  return it == terms_.end() ? 0 : it->second;
}

Rational SparseSpectrum::at(std::uint64_t gamma) const { return Rational(to_big(num_at(gamma)), to_big(den_)); }

int SparseSpectrum::degree() const {
  int d = 0;
  for (const auto& [g, v] : terms_) d = std::max(d, popcount(g));
  return d;
}

Rational SparseSpectrum::eval(std::uint64_t x) const {
  i128 t = 0;
  for (const auto& [g, v] : terms_) t = checked_add(t, dot(g, x) ? -v : v);
  return Rational(to_big(t), to_big(den_));
}

Spectrum SparseSpectrum::to_dense() const {
  require(n_ <= 30, ErrorCode::kCapExceeded, "dense spectra need n <= 30");
  std::vector<i128> num(std::size_t{1} << n_, 0);
  for (const auto& [g, v] : terms_) num[g] = v;
  return Spectrum(n_, DenseValues::exact(std::move(num), den_));
}

SparseSpectrum SparseSpectrum::compose(const Mat2& m) const {
  require(m.n() == n_, ErrorCode::kDimensionMismatch, "matrix size differs from n");
  Mat2 mt = m.transpose();
  SparseSpectrum out(n_, den_);
  for (const auto& [g, v] : terms_) out.add(mt.apply(g), v);
  return out;
}

SparseSpectrum SparseSpectrum::restrict_coords(std::uint64_t mask, std::uint64_t b) const {
  SparseSpectrum out(n_, den_);
  for (const auto& [g, v] : terms_) out.add(g & ~mask, parity(g & mask & b) ? -v : v);
  return out;
}

SparseSpectrum SparseSpectrum::compact(std::span<const int> keep) const {
  std::uint64_t km = coords_mask(keep);
  SparseSpectrum out(static_cast<int>(keep.size()), den_);
  for (const auto& [g, v] : terms_) {
    require((g & ~km) == 0, ErrorCode::kSupportMismatch, "support leaves the kept coordinates");
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < keep.size(); ++i)
      if ((g >> keep[i]) & 1) h |= std::uint64_t{1} << i;
    out.terms_.emplace(h, v);
  }
  return out;
}

SparseSpectrum SparseSpectrum::embed(int n, std::span<const int> positions) const {
  require(static_cast<int>(positions.size()) == n_, ErrorCode::kDimensionMismatch, "one position per coordinate");
  SparseSpectrum out(n, den_);
  for (const auto& [g, v] : terms_) {
    std::uint64_t h = 0;
    for (int i = 0; i < n_; ++i)
      if ((g >> i) & 1) h |= std::uint64_t{1} << positions[static_cast<std::size_t>(i)];
    out.terms_.emplace(h, v);
  }
  return out;
}

std::pair<SparseSpectrum, SparseSpectrum> SparseSpectrum::level_split(int d) const {
  require(degree() <= d, ErrorCode::kDegreeTooHigh, "spectrum has a level above " + std::to_string(d));
  SparseSpectrum below(n_, den_), at(n_, den_);
  for (const auto& [g, v] : terms_) (popcount(g) == d ? at : below).terms_.emplace(g, v);
  return {below, at};
}

SparseSpectrum SparseSpectrum::scaled(const Rational& r) const {
  i128 p = to_i128(boost::multiprecision::numerator(r));
  i128 q = to_i128(boost::multiprecision::denominator(r));
  SparseSpectrum out(n_, checked_mul(den_, q));
  i128 g = out.den_;
  for (const auto& [k, v] : terms_) {
    i128 nv = checked_mul(v, p);
    out.terms_.emplace(k, nv);
    g = gcd128(g, nv);
  }
  if (g > 1) {
    for (auto& [k, v] : out.terms_) v /= g;
    out.den_ /= g;
  }
  return out;
}

std::optional<Witness> SparseSpectrum::max_nontrivial() const {
  std::uint64_t best = 0;
  i128 mag = 0;
  for (const auto& [g, v] : terms_) {
    if (g == 0) continue;
    if (abs128(v) > mag) {
      mag = abs128(v);
      best = g;
    }
  }
  if (mag == 0) return std::nullopt;
  return Witness{best, Rational(to_big(mag), to_big(den_))};
}

std::optional<Witness> SparseSpectrum::regularity_witness(const Rational& delta) const {
  auto w = max_nontrivial();
  if (!w || abs128(num_at(w->gamma)) <= floor_scaled(delta, den_)) return std::nullopt;
  return w;
}

}  // namespace f2reg
