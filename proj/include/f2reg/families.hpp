#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "f2reg/sparse.hpp"
#include "f2reg/spectrum.hpp"

namespace f2reg {

// MAJ(x) = +1 iff |x| < n/2, n odd.
FunctionTable majority(int n);
// |fhat(gamma)| of MAJ_n for |gamma| = t.
Rational majority_coeff_magnitude(int n, int t);
// k!! with (-1)!! = 0!! = 1
BigInt double_factorial(int k);

// (1/n) sum_i (-1)^{x_i}; exact with denominator n.
FunctionTable mean_of_signs(int n);

// Every level-d coefficient is +-1/binom(n,d) with seeded signs; nothing else.
SparseSpectrum random_homogeneous_spectrum(int n, int d, std::uint64_t seed);
FunctionTable random_homogeneous(int n, int d, std::uint64_t seed);

// 4-bit {0,1}-valued function (1 - g)/2 with
// g = (chi_13 + chi_23 + chi_14 - chi_24) / 2.
FunctionTable pkc_base();
// The +-1 form g = 1 - 2 f.
FunctionTable pkc_base_pm1();
// f(f_1, f_2, f_3, f_4) over four consecutive blocks, k-fold; table for k <= 2.
FunctionTable pkc_compose(int k);
// Pointwise evaluation of the k-fold composition on 4^k input bits, k <= 6.
int pkc_evaluate(int k, std::span<const std::uint8_t> x);

// Independent +-1 draws with P[g(x) = 1] = (1 + f(x)) / 2.
FunctionTable booleanize_sample(const FunctionTable& f, std::uint64_t seed);

// Degree <= d and |f| <= 1. For g <= 1 the values are multiples of g (a sum of
// floor(1/g) scaled {-1,0,1}-valued d-juntas); for g = 2 the values are +-1 and
// f + 1 is a multiple of 2.
FunctionTable random_granular(int n, int d, const Rational& g, std::uint64_t seed);

// Values num / 2^bits with num uniform in [-2^bits, 2^bits].
FunctionTable random_bounded(int n, std::uint64_t seed, int bits = 8);
// Values num / 2^bits with num uniform in [0, 2^bits].
FunctionTable random_unit_interval(int n, std::uint64_t seed, int bits = 8);
FunctionTable random_boolean(int n, std::uint64_t seed);
FunctionTable random_integer(int n, int c, std::uint64_t seed);
// Dyadic coefficients on levels <= d with total absolute mass at most 1, and a
// nonzero coefficient on level d.
SparseSpectrum random_low_degree(int n, int d, std::uint64_t seed);

// {0,1}-valued table whose value at x is bit x of truth.
FunctionTable boolean_from_truth(int n, std::uint64_t truth);
// h(x) = f(g(x^1), ..., g(x^m)) with block i on bits [i r, (i + 1) r); f, g are {0,1}-valued.
FunctionTable compose_boolean(const FunctionTable& f, const FunctionTable& g);

}  // namespace f2reg
