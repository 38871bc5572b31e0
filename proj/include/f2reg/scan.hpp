#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "f2reg/f2core.hpp"
#include "f2reg/spectrum.hpp"

namespace f2reg {

// Exhaustive scans over restrictions U = { x : <w_i, x> = s_i } where w_1..w_c is the
// reduced basis of a subspace D = V-perp and s is a syndrome in F_2^c.

struct ScanOptions {
  int full_cap = 6;        // any codimension up to n
  int limited_cap = kDefaultExhaustiveCap;
  int limited_codim = 3;   // codimension allowed between full_cap and limited_cap
  int threads = 1;
};

// Throws kCapExceeded unless the (n, max_codim) pair is inside the caps.
void check_scan_caps(int n, int max_codim, const ScanOptions& opts);

// The affine subspace selected by a syndrome of D.
AffineSubspace syndrome_subspace(const Subspace& perp, std::uint64_t syndrome);
// Canonical coset representatives of D (vectors vanishing on its pivots).
std::vector<std::uint64_t> coset_representatives(const Subspace& d);

// Entry s is the largest nontrivial coefficient numerator (over the spectrum
// denominator) of f restricted by syndrome s.
std::vector<i128> coset_max_numerators(const Spectrum& s, const Subspace& perp);
// Entry s tells whether f is constant on the restriction selected by syndrome s.
std::vector<bool> constant_syndromes(const FunctionTable& f, const Subspace& perp);

// First subspace of dimension dim, in canonical order, for which probe yields a
// syndrome. Work is split across opts.threads by pivot set; the answer does not
// depend on the thread count.
std::optional<std::pair<Subspace, std::uint64_t>> find_first_subspace(
    int n, int dim, const ScanOptions& opts,
    const std::function<std::optional<std::uint64_t>(const Subspace&)>& probe);

}  // namespace f2reg
