#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "f2reg/f2core.hpp"
#include "f2reg/restrict.hpp"
#include "f2reg/scan.hpp"
#include "f2reg/sparse.hpp"
#include "f2reg/spectrum.hpp"

namespace f2reg {

struct GreedyStep {
  std::uint64_t gamma = 0;  // in the coordinates of the table being restricted
  int b = 0;
  Rational magnitude;
  Rational mean_before;
  Rational mean_after;
  int codim = 0;
};

struct GreedyResult {
  AffineSubspace subspace;
  FunctionTable restricted;  // over the reduced basis of subspace
  Certificate certificate;
  std::vector<GreedyStep> trace;
};

// Repeatedly fixes the largest violating parity with the sign that grows |mean|.
GreedyResult greedy_regularize(const FunctionTable& f, const Rational& delta);

struct Part {
  AffineSubspace subspace;
  Rational mass;  // |U| / 2^n
  Rational mean;
  bool regular = true;
};

struct PartitionRound {
  int round = 0;
  Rational irregular_fraction;
  Rational potential_before;
  Rational potential_after;
  int parts_before = 0;
  int parts_after = 0;
};

struct PartitionResult {
  std::vector<Part> parts;
  std::vector<PartitionRound> trace;
  Rational potential;
  Rational irregular_fraction;
};

// Splits every irregular part along its witness parity while the irregular mass exceeds delta.
PartitionResult partition_regularize(const FunctionTable& f, const Rational& delta);
// sum over parts of mass * mean^2
Rational partition_potential(const std::vector<Part>& parts);

struct PigeonholeOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;  // even subsets examined
};

struct PigeonholeOutcome {
  std::vector<int> s;
  std::vector<int> z;  // +1 / -1, aligned with s
  std::uint64_t examined = 0;
};

// Vectors of span(K) with weight w, in lexicographic order of K positions.
std::vector<std::uint64_t> level_vectors(std::span<const int> k, int w);
// max(ceil(binom(|K|, d-1) log2(5/tau)), smallest size whose even subsets outnumber the bucket vectors)
int pigeonhole_threshold(int k_size, int d, const Rational& tau);
// Even subsets of T in increasing size; the first bucket collision wins.
std::optional<PigeonholeOutcome> find_pigeonhole(const SparseSpectrum& g, std::span<const int> k,
                                                 std::span<const int> t, const Rational& tau, int d,
                                                 const PigeonholeOptions& opts = {});
// Throws kNoCollisionWithinBudget when find_pigeonhole comes back empty.
PigeonholeOutcome pigeonhole_step(const SparseSpectrum& g, std::span<const int> k, std::span<const int> t,
                                  const Rational& tau, int d, const PigeonholeOptions& opts = {});
// |sum_{j in S} z_j ghat(gamma + e_j)| <= tau for every gamma of weight d-1 in span(K).
bool pigeonhole_holds(const SparseSpectrum& g, std::span<const int> k, const PigeonholeOutcome& o,
                      const Rational& tau, int d);

struct ShrinkIteration {
  int index = 0;
  int pivot = 0;
  std::vector<int> s;
  std::vector<int> z;
  bool guaranteed = false;  // |T| met the counting threshold
  std::uint64_t examined = 0;
  std::vector<int> k;       // after the iteration
  Mat2 m;
  std::vector<int> alive;
  std::uint64_t b = 0;
  bool invariant_ok = false;
};

struct ShrinkResult {
  Mat2 m;
  std::vector<int> j;  // equals the final K
  std::uint64_t b = 0;
  std::vector<ShrinkIteration> trace;
  SparseSpectrum restricted;  // over the original n coordinates, supported on j
  bool size_bound_applicable = false;
  double size_bound = 0;
  bool size_bound_met = true;
};

// Level-d coefficients inside span(K) stay within tau while K grows.
ShrinkResult shrink_top_level(const SparseSpectrum& f, int d, const Rational& tau,
                              const PigeonholeOptions& opts = {});
// Every level-d coefficient supported in k is within tau, and the degree is at most d.
bool shrink_invariant(const SparseSpectrum& g, std::uint64_t k_mask, int d, const Rational& tau);

struct DegreeLevel {
  int depth = 0;
  int d = 0;
  int n = 0;
  Rational delta;
  Rational tau;
  ShrinkResult shrink;
};

struct BoundedDegreeResult {
  Certificate certificate;
  std::vector<DegreeLevel> levels;
  std::optional<Witness> final_max;
};

BoundedDegreeResult regularize_bounded_degree(const SparseSpectrum& f, int d, const Rational& delta,
                                              const PigeonholeOptions& opts = {});
BoundedDegreeResult regularize_bounded_degree(const FunctionTable& f, int d, const Rational& delta,
                                              const PigeonholeOptions& opts = {});

struct ScanResult {
  int codim = 0;
  AffineSubspace witness;
};

// Smallest codimension of a delta-regular restriction, up to max_codim (-1 means n).
std::optional<ScanResult> exact_regularity_number(const FunctionTable& f, const Rational& delta, int max_codim = -1,
                                                  const ScanOptions& opts = {});
// Smallest number of parities making f constant.
std::optional<ScanResult> parity_kill(const FunctionTable& f, int max_codim = -1, const ScanOptions& opts = {});

struct MinCertificate {
  int size = 0;
  std::vector<int> coords;
  std::uint64_t b = 0;
};
// Smallest subcube on which f is constant.
MinCertificate min_certificate(const FunctionTable& f, int cap = kDefaultExhaustiveCap);

}  // namespace f2reg
