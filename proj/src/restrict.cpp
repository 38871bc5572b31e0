#include "f2reg/restrict.hpp"

#include <algorithm>
#include <cmath>

#include "f2reg/error.hpp"

namespace f2reg {

namespace {

// idx[y] = base | (bits of y deposited onto coords).
std::vector<std::uint64_t> deposit_table(std::span<const int> coords, std::uint64_t base) {
  std::vector<std::uint64_t> idx(std::size_t{1} << coords.size());
  idx[0] = base;
  for (std::uint64_t y = 1; y < idx.size(); ++y)
    idx[y] = idx[y & (y - 1)] | (std::uint64_t{1} << coords[static_cast<std::size_t>(__builtin_ctzll(y))]);
  return idx;
}

}  // namespace

FunctionTable restrict_coords(const FunctionTable& f, std::span<const int> fixed, std::uint64_t b) {
  std::uint64_t fm = coords_mask(fixed);
  require((fm & ~low_mask(f.n())) == 0, ErrorCode::kDimensionMismatch, "fixed coordinate out of range");
  require((b & ~fm) == 0, ErrorCode::kSupportMismatch, "b has bits outside the fixed set");
  auto keep = complement_coords(f.n(), fixed);
  auto idx = deposit_table(keep, b & fm);
  return FunctionTable::unchecked(static_cast<int>(keep.size()), f.values().gather(idx), f.range());
}

FunctionTable compose_linear(const FunctionTable& f, const Mat2& m) {
  require(m.n() == f.n(), ErrorCode::kDimensionMismatch, "matrix size differs from n");
  auto idx = m.image_table();
  return FunctionTable::unchecked(f.n(), f.values().gather(idx), f.range());
}

RestrictedCoefficients restrict_affine(const FunctionTable& f, const AffineSubspace& u, const Subspace& w) {
  require(u.n() == f.n() && w.n() == f.n(), ErrorCode::kDimensionMismatch, "sizes differ");
  const Subspace& v = u.space();
  require(is_direct_sum(w, orthogonal(v)), ErrorCode::kNotAComplement, "W is not a complement of V-perp");
  auto points = u.elements();
  auto h = f.values().gather(points);
  auto gammas = w.elements();
  std::size_t size = points.size();
  const auto& basis = v.basis();
  RestrictedCoefficients out;
  out.gammas = gammas;
  std::vector<i128> num;
  std::vector<double> flt;
  for (auto g : gammas) {
    // Character of gamma on V in the basis coordinates t.
    std::uint64_t tmask = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (dot(g, basis[i])) tmask |= std::uint64_t{1} << i;
    if (h.is_exact()) {
      i128 acc = 0;
      for (std::size_t t = 0; t < size; ++t) acc += parity(t & tmask) ? -h.num()[t] : h.num()[t];
      num.push_back(acc);
    } else {
      double acc = 0;
      for (std::size_t t = 0; t < size; ++t) acc += parity(t & tmask) ? -h.doubles()[t] : h.doubles()[t];
      flt.push_back(std::ldexp(acc, -v.dim()));
    }
  }
  if (h.is_exact()) {
    out.coeffs = DenseValues::exact(std::move(num), checked_mul(h.den(), pow2(v.dim())));
  } else {
    out.coeffs = DenseValues::floating(std::move(flt));
  }
  return out;
}

i128 coset_sum_numerator(const Spectrum& s, std::uint64_t gamma, std::span<const std::uint64_t> perp,
                         std::uint64_t shift) {
  const auto& num = s.coeffs().num();
  i128 acc = 0;
  for (auto w : perp) {
    std::uint64_t beta = gamma ^ w;
    acc += parity(beta & shift) ? -num[beta] : num[beta];
  }
  return acc;
}

Rational coset_sum_coefficient(const Spectrum& s, std::uint64_t gamma, const AffineSubspace& u) {
  require(s.is_exact(), ErrorCode::kPreconditionViolated, "exact spectrum required");
  require(u.n() == s.n(), ErrorCode::kDimensionMismatch, "sizes differ");
  auto perp = orthogonal(u.space()).elements();
  return Rational(to_big(coset_sum_numerator(s, gamma, perp, u.shift())), to_big(s.coeffs().den()));
}

FunctionTable restrict_via_transform(const FunctionTable& f, const AffineSubspace& u, const Mat2& m,
                                     std::span<const int> j) {
  require(m.n() == f.n() && u.n() == f.n(), ErrorCode::kDimensionMismatch, "sizes differ");
  require(static_cast<int>(j.size()) == u.dim(), ErrorCode::kDimensionMismatch, "|J| differs from dim U");
  auto inv = m.try_inverse();
  require(inv.has_value(), ErrorCode::kSingularMatrix, "M is not invertible");
  require(transform(m, u.space()) == Subspace::coordinates(f.n(), j), ErrorCode::kMapDoesNotCarryBasis,
          "M does not carry V onto span(J)");
  FunctionTable h = compose_linear(f, *inv);
  auto fixed = complement_coords(f.n(), j);
  return restrict_coords(h, fixed, m.apply(u.shift()) & coords_mask(fixed));
}

FunctionTable restrict_canonical(const FunctionTable& f, const AffineSubspace& u) {
  require(u.n() == f.n(), ErrorCode::kDimensionMismatch, "sizes differ");
  return FunctionTable::unchecked(u.dim(), f.values().gather(u.elements()), f.range());
}

Certificate certificate_from_affine(const AffineSubspace& u, const Rational& delta) {
  int n = u.n();
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
  for (auto r : u.space().basis()) cols[static_cast<std::size_t>(__builtin_ctzll(r))] = r;
  return Certificate{n, Mat2::from_columns(n, cols), u.space().pivots(), u.shift(), delta};
}

bool certificate_well_formed(const Certificate& c) {
  if (c.n < 0 || c.n > kMaxBits || c.m.n() != c.n) return false;
  if (!std::is_sorted(c.j.begin(), c.j.end()) || std::adjacent_find(c.j.begin(), c.j.end()) != c.j.end())
    return false;
  for (int x : c.j)
    if (x < 0 || x >= c.n) return false;
  if ((c.b & ~low_mask(c.n)) != 0 || (c.b & coords_mask(c.j)) != 0) return false;
  if (c.delta < 0) return false;
  return c.m.is_invertible();
}

AffineSubspace certificate_subspace(const Certificate& c) {
  require(certificate_well_formed(c), ErrorCode::kSupportMismatch, "malformed certificate");
  return AffineSubspace(transform(c.m, Subspace::coordinates(c.n, c.j)), c.m.apply(c.b));
}

FunctionTable certificate_restriction(const FunctionTable& f, const Certificate& c) {
  require(certificate_well_formed(c), ErrorCode::kSupportMismatch, "malformed certificate");
  require(f.n() == c.n, ErrorCode::kDimensionMismatch, "certificate size differs from table");
  auto fixed = complement_coords(c.n, c.j);
  return restrict_coords(compose_linear(f, c.m), fixed, c.b);
}

SparseSpectrum certificate_restriction(const SparseSpectrum& s, const Certificate& c) {
  require(certificate_well_formed(c), ErrorCode::kSupportMismatch, "malformed certificate");
  require(s.n() == c.n, ErrorCode::kDimensionMismatch, "certificate size differs from spectrum");
  return s.compose(c.m).restrict_coords(low_mask(c.n) & ~coords_mask(c.j), c.b).compact(c.j);
}

bool certificate_verify(const FunctionTable& f, const Certificate& c) {
  if (!certificate_well_formed(c) || f.n() != c.n) return false;
  return is_regular(wht(certificate_restriction(f, c)), c.delta);
}

bool certificate_verify(const SparseSpectrum& s, const Certificate& c) {
  if (!certificate_well_formed(c) || s.n() != c.n) return false;
  return certificate_restriction(s, c).is_regular(c.delta);
}

FunctionTable fix_single_parity(const FunctionTable& f, std::uint64_t gamma, int b) {
  require(gamma != 0, ErrorCode::kZeroGamma, "cannot fix the empty parity");
  require((gamma & ~low_mask(f.n())) == 0, ErrorCode::kDimensionMismatch, "gamma beyond n");
  int p = __builtin_ctzll(gamma);
  std::vector<int> pc{p};
  auto keep = complement_coords(f.n(), pc);
  auto idx = deposit_table(keep, 0);
  std::uint64_t rest = gamma & ~(std::uint64_t{1} << p);
  for (auto& x : idx)
    if ((b ^ parity(x & rest)) & 1) x |= std::uint64_t{1} << p;
  return FunctionTable::unchecked(f.n() - 1, f.values().gather(idx), f.range());
}

}  // namespace f2reg
