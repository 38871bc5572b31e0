#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "f2reg/f2core.hpp"
#include "f2reg/regularize.hpp"
#include "f2reg/restrict.hpp"
#include "f2reg/scan.hpp"
#include "f2reg/spectrum.hpp"

namespace f2reg {

// Cosets u + V-perp (u in W) that contain standard basis vectors.
struct StdBasisStats {
  int codim = 0;
  std::map<std::uint64_t, int> hits;  // u -> number of e_i in u + V-perp
  std::vector<std::uint64_t> s;       // every u with a hit
  std::vector<std::uint64_t> s1;      // u with exactly one hit
};
StdBasisStats std_basis_coset_stats(const Subspace& v, const Subspace& w);

// |(u + D)^{=t}|
std::uint64_t coset_weight_count(const Subspace& d, std::uint64_t u, int t);

// levels[l - 1] is S_l: S_1 from std_basis_coset_stats, then each S_l keeps the
// members of S_{l-1} whose coset has at most 2 binom(2C+1, l-1) weight-l vectors.
std::vector<std::vector<std::uint64_t>> build_low_weight_sets(const Subspace& v, const Subspace& w, int ell);

struct DegreeOneReport {
  int n = 0;
  Rational delta;
  int max_codim = 0;
  std::optional<ScanResult> regular;  // a counterexample when present
  bool passed = false;
};
// No delta-regular restriction of mean_of_signs(n) up to min(max_codim, n/2 - 1).
DegreeOneReport check_degree_one_lb(int n, const Rational& delta, int max_codim, const ScanOptions& opts = {});

struct HomogeneousReport {
  int n = 0;
  int d = 0;
  Rational delta;
  std::uint64_t seed = 0;
  std::string mode;            // exhaustive | sampled
  double dim_threshold = 0;    // 2 d n^{1/(d-1)}
  std::uint64_t restrictions = 0;
  std::uint64_t odd_cosets = 0;          // restrictions with an odd weight-d coset
  std::uint64_t obstruction_failures = 0;  // odd coset yet a coefficient below binom^-1
  std::map<int, std::uint64_t> regular_by_dim;
  std::vector<AffineSubspace> regular_above_threshold;
  bool passed = false;
};
HomogeneousReport check_random_homogeneous_lb(int n, int d, const Rational& delta, std::uint64_t seed,
                                              bool exhaustive, std::uint64_t samples = 1000,
                                              const ScanOptions& opts = {});

struct MajorityReport {
  int n = 0;
  Rational delta;
  int codim_cap = 0;
  std::optional<ScanResult> regular;
  Rational min_max_coefficient;  // smallest largest-nontrivial coefficient over the scan
  bool passed = false;
};
MajorityReport check_majority_lb(int n, const Rational& delta, int codim_cap, const ScanOptions& opts = {});

// Smallest, over restrictions of the given codimension, of the largest nontrivial |coefficient|.
Rational min_max_nontrivial(const FunctionTable& f, int codim, const ScanOptions& opts = {});

struct CompositionReport {
  int pk_f = 0;
  int cmin_f = 0;
  int pk_g = 0;
  int pk_fg = 0;
  double b_g = 0;
  bool hypothesis = false;  // pk_g >= 2, which the argument for the bound needs
  bool holds = false;
};
// pk(f o g) >= pk(f) + C_min(f) max(log2 pk(g) - 1, 1), decided exactly.
CompositionReport check_composition_theorem(const FunctionTable& f, const FunctionTable& g,
                                            const ScanOptions& opts = {});
bool composition_bound_holds(int pk_fg, int pk_f, int cmin_f, int pk_g);

// Affine constraints <a, z> = sigma over F_2^k x F_2^n; x occupies bits [0,k), y bits [k,k+n).
struct Constraint {
  std::uint64_t a = 0;
  int sigma = 0;
};
struct CanonicalForm {
  int k = 0;
  int n = 0;
  Mat2 l;                    // block diagonal; z' = L z
  int pairs = 0;             // x'_i + y'_i = sigma for i < pairs
  int x_only = 0;            // x'_i = sigma for pairs <= i < pairs + x_only
  int y_only = 0;            // y'_i = sigma for pairs <= i < pairs + y_only
  std::vector<Constraint> constraints;  // in z' coordinates
};
CanonicalForm canonize_affine_constraints(int k, int n, const std::vector<Constraint>& constraints);

struct ExtractorReport {
  int n = 0;
  int c = 0;
  int k = 0;
  Rational delta;           // max TV over restrictions of dim >= k
  Rational bound;           // 2 C delta
  Rational worst;           // largest nontrivial coefficient over dim >= k + 1
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  bool passed = false;
};
// f : F_2^n -> {0..C}; with delta measured over dim >= k, every restriction of
// dim >= k + 1 must be 2 C delta-regular.
ExtractorReport check_extractor_implies_regular(const FunctionTable& f, int k, int cap = kDefaultExhaustiveCap);

struct DisperserReport {
  int n = 0;
  int d = 0;
  Rational g;
  Rational delta;  // 2^{-d-1} G
  bool granular = false;
  Certificate certificate;
  bool certificate_ok = false;
  bool constant = false;
  bool passed = false;
};
// f - f(0) must be G-granular with degree <= d.
DisperserReport check_granular_disperser(const FunctionTable& f, int d, const Rational& g);

}  // namespace f2reg
