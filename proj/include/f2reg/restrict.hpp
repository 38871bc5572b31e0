#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "f2reg/f2core.hpp"
#include "f2reg/sparse.hpp"
#include "f2reg/spectrum.hpp"

namespace f2reg {

// Fixes x_j = b_j for j in fixed; survivors are compacted in increasing order.
// b is an n-bit vector supported on the fixed coordinates (kSupportMismatch otherwise).
FunctionTable restrict_coords(const FunctionTable& f, std::span<const int> fixed, std::uint64_t b);
// g(x) = f(Mx)
FunctionTable compose_linear(const FunctionTable& f, const Mat2& m);

// Coefficients of f on U = shift + V, indexed by gamma in W (W (+) V-perp = F_2^n):
// coeff[t] is E_{x in V}[f(x + shift) (-1)^<gamma_t, x>] with gamma_t = W.elements()[t].
struct RestrictedCoefficients {
  std::vector<std::uint64_t> gammas;
  DenseValues coeffs;
};
RestrictedCoefficients restrict_affine(const FunctionTable& f, const AffineSubspace& u, const Subspace& w);

// sum over beta in gamma + V-perp of fhat(beta) (-1)^<beta, shift>.
Rational coset_sum_coefficient(const Spectrum& s, std::uint64_t gamma, const AffineSubspace& u);
// Numerator over the spectrum denominator, with V-perp listed up front.
i128 coset_sum_numerator(const Spectrum& s, std::uint64_t gamma, std::span<const std::uint64_t> perp,
                         std::uint64_t shift);

// With h = f o M^-1 and U' = M U = M shift + span(J), returns h restricted to U'
// as a table over span(J). Pre: M carries V onto span(J).
FunctionTable restrict_via_transform(const FunctionTable& f, const AffineSubspace& u, const Mat2& m,
                                     std::span<const int> j);

// h(y) = f(shift + sum_i y_i v_i) over the reduced basis v_i of U.
FunctionTable restrict_canonical(const FunctionTable& f, const AffineSubspace& u);

// Restricting f o M by fixing the coordinates outside J to b gives a delta-regular function.
struct Certificate {
  int n = 0;
  Mat2 m;
  std::vector<int> j;
  std::uint64_t b = 0;
  Rational delta;
};

// M sends e_p to the basis row with pivot p and fixes every other e_i; J is the pivot set.
Certificate certificate_from_affine(const AffineSubspace& u, const Rational& delta);
// { M(x + b) : x in span(J) }
AffineSubspace certificate_subspace(const Certificate& c);
// Throws on malformed certificates.
FunctionTable certificate_restriction(const FunctionTable& f, const Certificate& c);
SparseSpectrum certificate_restriction(const SparseSpectrum& s, const Certificate& c);
// False on malformed certificates (singular M, b touching J, size mismatch).
bool certificate_verify(const FunctionTable& f, const Certificate& c);
bool certificate_verify(const SparseSpectrum& s, const Certificate& c);
bool certificate_well_formed(const Certificate& c);

// Restricts f to <gamma, x> = b. The lowest coordinate p of gamma is solved for and
// the remaining coordinates are compacted.
FunctionTable fix_single_parity(const FunctionTable& f, std::uint64_t gamma, int b);

}  // namespace f2reg
