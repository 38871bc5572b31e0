#include "f2reg/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "f2reg/error.hpp"

namespace f2reg {

namespace {

Rational abs_r(const Rational& r) { return r < 0 ? Rational(-r) : r; }

void require_bounded(const FunctionTable& f, bool unit_interval) {
  require(f.is_exact(), ErrorCode::kPreconditionViolated, "regularization needs exact values");
  const auto& v = f.values();
  for (i128 x : v.num()) {
    bool ok = unit_interval ? (x >= 0 && x <= v.den()) : abs128(x) <= v.den();
    require(ok, ErrorCode::kPreconditionViolated, unit_interval ? "values must lie in [0,1]" : "values must lie in [-1,1]");
  }
}

Rational mass_of(const AffineSubspace& u) { return Rational(BigInt(1), BigInt(1) << u.codim()); }

// Parity on F_2^n that reads coordinate i of the reduced basis of u.
std::uint64_t lift_to_pivots(const AffineSubspace& u, std::uint64_t local) {
  auto piv = u.space().pivots();
  std::uint64_t lambda = 0;
  for (std::size_t i = 0; i < piv.size(); ++i)
    if ((local >> i) & 1) lambda |= std::uint64_t{1} << piv[i];
  return lambda;
}

struct VecHash {
  std::size_t operator()(const std::vector<i128>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (i128 x : v) {
      auto u = static_cast<unsigned __int128>(x);
      for (int k = 0; k < 2; ++k) {
        h ^= static_cast<std::uint64_t>(u >> (64 * k));
        h *= 1099511628211ULL;
      }
    }
    return static_cast<std::size_t>(h);
  }
};

// floor(num / den) for den > 0.
i128 floor_div(i128 num, i128 den) {
  i128 q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

}  // namespace

GreedyResult greedy_regularize(const FunctionTable& f, const Rational& delta) {
  require(delta > 0, ErrorCode::kPreconditionViolated, "delta must be positive");
  require_bounded(f, false);
  int n = f.n();
  // h(y) = f(origin + sum_i y_i basis[i])
  std::vector<std::uint64_t> basis;
  for (int i = 0; i < n; ++i) basis.push_back(std::uint64_t{1} << i);
  std::uint64_t origin = 0;
  FunctionTable h = f;
  GreedyResult out;
  while (true) {
    Spectrum s = wht(h);
    auto w = regularity_witness(s, delta);
    if (!w) break;
    Rational mean = s.at(0), c = s.at(w->gamma);
    int b = mean == 0 ? (c < 0 ? 1 : 0) : ((c < 0) != (mean < 0) ? 1 : 0);
    FunctionTable next = fix_single_parity(h, w->gamma, b);
    Rational mean_after = wht(next).at(0);
    require(abs_r(mean_after) == abs_r(mean) + abs_r(c), ErrorCode::kInvariantViolation, "greedy step lost mass");
    int p = __builtin_ctzll(w->gamma);
    std::uint64_t bp = basis[static_cast<std::size_t>(p)];
    std::vector<std::uint64_t> nb;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
      if (i == p) continue;
      nb.push_back(((w->gamma >> i) & 1) ? basis[static_cast<std::size_t>(i)] ^ bp : basis[static_cast<std::size_t>(i)]);
    }
    if (b) origin ^= bp;
    basis = std::move(nb);
    h = std::move(next);
    out.trace.push_back({w->gamma, b, w->magnitude, mean, mean_after, n - h.n()});
  }
  out.subspace = AffineSubspace(Subspace::span(n, basis), origin);
  out.restricted = restrict_canonical(f, out.subspace);
  out.certificate = certificate_from_affine(out.subspace, delta);
  require(certificate_verify(f, out.certificate), ErrorCode::kInvariantViolation, "greedy output is not regular");
  return out;
}

Rational partition_potential(const std::vector<Part>& parts) {
  Rational phi = 0;
  for (const auto& p : parts) phi += p.mass * p.mean * p.mean;
  return phi;
}

PartitionResult partition_regularize(const FunctionTable& f, const Rational& delta) {
  require(delta > 0 && delta <= 1, ErrorCode::kPreconditionViolated, "delta must lie in (0,1]");
  require_bounded(f, true);
  struct Live {
    Part part;
    std::optional<Witness> witness;
  };
  auto evaluate = [&](const AffineSubspace& u) {
    Spectrum s = wht(restrict_canonical(f, u));
    auto w = regularity_witness(s, delta);
    return Live{Part{u, mass_of(u), s.at(0), !w.has_value()}, w};
  };
  std::vector<Live> live{evaluate(AffineSubspace::full(f.n()))};
  PartitionResult out;
  Rational delta3 = delta * delta * delta;
  for (int round = 1;; ++round) {
    std::vector<Part> parts;
    Rational irregular = 0;
    for (const auto& l : live) {
      parts.push_back(l.part);
      if (!l.part.regular) irregular += l.part.mass;
    }
    Rational phi = partition_potential(parts);
    if (irregular <= delta) {
      out.parts = std::move(parts);
      out.potential = phi;
      out.irregular_fraction = irregular;
      break;
    }
    std::vector<Live> next;
    for (auto& l : live) {
      if (l.part.regular) {
        next.push_back(std::move(l));
        continue;
      }
      std::uint64_t lambda = lift_to_pivots(l.part.subspace, l.witness->gamma);
      for (int b = 0; b < 2; ++b) {
        auto child = l.part.subspace.intersect_hyperplane(lambda, b);
        require(child.has_value(), ErrorCode::kInvariantViolation, "witness parity is constant on its part");
        next.push_back(evaluate(*child));
      }
    }
    std::vector<Part> after;
    for (const auto& l : next) after.push_back(l.part);
    Rational phi_after = partition_potential(after);
    require(phi_after - phi >= delta3, ErrorCode::kInvariantViolation, "potential grew by less than delta^3");
    out.trace.push_back({round, irregular, phi, phi_after, static_cast<int>(live.size()), static_cast<int>(next.size())});
    live = std::move(next);
  }
  return out;
}

std::vector<std::uint64_t> level_vectors(std::span<const int> k, int w) {
  std::vector<std::uint64_t> out;
  if (w < 0 || w > static_cast<int>(k.size())) return out;
  std::vector<int> c(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) c[static_cast<std::size_t>(i)] = i;
  do {
    std::uint64_t m = 0;
    for (int i : c) m |= std::uint64_t{1} << k[static_cast<std::size_t>(i)];
    out.push_back(m);
  } while (next_combination(c, static_cast<int>(k.size())));
  return out;
}

int pigeonhole_threshold(int k_size, int d, const Rational& tau) {
  require(tau > 0, ErrorCode::kPreconditionViolated, "tau must be positive");
  double gamma_count = binomial(k_size, d - 1).convert_to<double>();
  double level_bound = std::ceil(gamma_count * std::log2(5.0 / to_double(tau)));
  BigInt buckets = boost::multiprecision::numerator(Rational(2) / tau);
  BigInt q = boost::multiprecision::denominator(Rational(2) / tau);
  buckets = (buckets + q - 1) / q;
  // Need 2^(m-1) > buckets^|Gamma|.
  double counting = std::floor(gamma_count * std::log2(buckets.convert_to<double>())) + 2;
  double m = std::max(level_bound, counting);
  return m > 1e6 ? 1000000 : static_cast<int>(m);
}

std::optional<PigeonholeOutcome> find_pigeonhole(const SparseSpectrum& g, std::span<const int> k,
                                                 std::span<const int> t, const Rational& tau, int d,
                                                 const PigeonholeOptions& opts) {
  require(tau > 0, ErrorCode::kPreconditionViolated, "tau must be positive");
  require(d >= 1, ErrorCode::kPreconditionViolated, "d must be at least 1");
  require(t.size() <= 63, ErrorCode::kCapExceeded, "T larger than 63 coordinates");
  require((coords_mask(k) & coords_mask(t)) == 0, ErrorCode::kPreconditionViolated, "T meets K");
  auto gammas = level_vectors(k, d - 1);
  std::size_t m = t.size();
  // base[a] = ghat(gamma_a), col[a][j] = ghat(gamma_a + e_{t_j})
  std::vector<i128> base(gammas.size());
  std::vector<std::vector<i128>> col(gammas.size(), std::vector<i128>(m));
  for (std::size_t a = 0; a < gammas.size(); ++a) {
    base[a] = g.num_at(gammas[a]);
    for (std::size_t j = 0; j < m; ++j) col[a][j] = g.num_at(gammas[a] | (std::uint64_t{1} << t[j]));
  }
  i128 den = g.den();
  i128 tp = to_i128(boost::multiprecision::numerator(tau));
  i128 tq = to_i128(boost::multiprecision::denominator(tau));
  i128 top = (2 * tq + tp - 1) / tp - 1;  // ceil(2 / tau) - 1
  i128 scale = checked_mul(den, tp);
  auto bucket = [&](i128 a) {
    if (a == den) return top;
    return floor_div(checked_mul(checked_add(a, den), tq), scale);
  };
  std::unordered_map<std::vector<i128>, std::uint64_t, VecHash> seen;
  std::uint64_t examined = 0;
  std::vector<i128> key(gammas.size());
  for (std::size_t size = 0; size <= m; size += 2) {
    std::vector<int> c(size);
    for (std::size_t i = 0; i < size; ++i) c[i] = static_cast<int>(i);
    do {
      if (examined >= opts.budget) return std::nullopt;
      ++examined;
      std::uint64_t u = 0;
      for (int i : c) u |= std::uint64_t{1} << i;
      for (std::size_t a = 0; a < gammas.size(); ++a) {
        i128 acc = base[a];
        for (int i : c) acc = checked_add(acc, col[a][static_cast<std::size_t>(i)]);
        key[a] = bucket(acc);
      }
      auto [it, inserted] = seen.try_emplace(key, u);
      if (inserted) continue;
      std::uint64_t prev = it->second;
      PigeonholeOutcome out;
      out.examined = examined;
      for (std::size_t j = 0; j < m; ++j) {
        bool in_u = (u >> j) & 1, in_prev = (prev >> j) & 1;
        if (in_u == in_prev) continue;
        out.s.push_back(t[j]);
        out.z.push_back(in_prev ? -1 : 1);
      }
      // Order S by coordinate.
      std::vector<std::size_t> order(out.s.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return out.s[x] < out.s[y]; });
      PigeonholeOutcome sorted{{}, {}, examined};
      for (auto i : order) {
        sorted.s.push_back(out.s[i]);
        sorted.z.push_back(out.z[i]);
      }
      require(pigeonhole_holds(g, k, sorted, tau, d), ErrorCode::kInvariantViolation,
              "bucket collision without a small signed sum");
      return sorted;
    } while (size > 0 && next_combination(c, static_cast<int>(m)));
  }
  return std::nullopt;
}

PigeonholeOutcome pigeonhole_step(const SparseSpectrum& g, std::span<const int> k, std::span<const int> t,
                                  const Rational& tau, int d, const PigeonholeOptions& opts) {
  auto o = find_pigeonhole(g, k, t, tau, d, opts);
  if (!o) fail(ErrorCode::kNoCollisionWithinBudget, "no bucket collision among the even subsets of T");
  return *o;
}

bool pigeonhole_holds(const SparseSpectrum& g, std::span<const int> k, const PigeonholeOutcome& o,
                      const Rational& tau, int d) {
  if (o.s.size() < 2 || o.s.size() % 2 != 0 || o.s.size() != o.z.size()) return false;
  i128 bound = floor_scaled(tau, g.den());
  for (auto gamma : level_vectors(k, d - 1)) {
    i128 acc = 0;
    for (std::size_t i = 0; i < o.s.size(); ++i) {
      i128 v = g.num_at(gamma | (std::uint64_t{1} << o.s[i]));
      acc = checked_add(acc, o.z[i] > 0 ? v : -v);
    }
    if (abs128(acc) > bound) return false;
  }
  return true;
}

bool shrink_invariant(const SparseSpectrum& g, std::uint64_t k_mask, int d, const Rational& tau) {
  if (g.degree() > d) return false;
  i128 bound = floor_scaled(tau, g.den());
  for (const auto& [gamma, v] : g.terms())
    if (popcount(gamma) == d && (gamma & ~k_mask) == 0 && abs128(v) > bound) return false;
  return true;
}

ShrinkResult shrink_top_level(const SparseSpectrum& f, int d, const Rational& tau, const PigeonholeOptions& opts) {
  require(d >= 1, ErrorCode::kPreconditionViolated, "d must be at least 1");
  require(tau > 0 && tau < 1, ErrorCode::kPreconditionViolated, "tau must lie in (0,1)");
  require(f.degree() <= d, ErrorCode::kDegreeMismatch, "degree exceeds d");
  int n = f.n();
  require(n >= d - 1, ErrorCode::kPreconditionViolated, "fewer coordinates than d-1");
  ShrinkResult out;
  out.m = Mat2::identity(n);
  std::vector<int> alive;
  for (int i = 0; i < n; ++i) alive.push_back(i);
  std::vector<int> k(alive.begin(), alive.begin() + (d - 1));
  SparseSpectrum g = f;
  std::uint64_t b = 0;
  for (int iter = 1;; ++iter) {
    std::vector<int> outside;
    std::uint64_t km = coords_mask(k);
    for (int j : alive)
      if (!((km >> j) & 1)) outside.push_back(j);
    if (outside.empty()) break;
    int need = pigeonhole_threshold(static_cast<int>(k.size()), d, tau);
    bool guaranteed = static_cast<int>(outside.size()) >= need;
    std::vector<int> t(outside.begin(), guaranteed ? outside.begin() + need : outside.end());
    if (t.size() > 63) t.resize(63);
    auto o = find_pigeonhole(g, k, t, tau, d, opts);
    if (!o) {
      if (guaranteed) fail(ErrorCode::kNoCollisionWithinBudget, "counting threshold met but no collision found");
      break;
    }
    int pivot = o->s.front();
    if (o->z.front() < 0)
      for (int& z : o->z) z = -z;
    // M_i sends e_pivot to the sum of e_j over S and fixes the rest; it is an involution.
    std::uint64_t smask = coords_mask(o->s);
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
    cols[static_cast<std::size_t>(pivot)] = smask;
    Mat2 mi = Mat2::from_columns(n, cols);
    std::uint64_t jmask = smask & ~(std::uint64_t{1} << pivot);
    std::uint64_t bi = 0;
    for (std::size_t i = 0; i < o->s.size(); ++i)
      if (o->z[i] < 0) bi |= std::uint64_t{1} << o->s[i];
    out.m = out.m * mi;
    b |= bi;
    std::erase_if(alive, [&](int j) { return (jmask >> j) & 1; });
    k.insert(std::upper_bound(k.begin(), k.end(), pivot), pivot);
    g = g.compose(mi).restrict_coords(jmask, bi);
    bool ok = shrink_invariant(g, coords_mask(k), d, tau);
    require(ok, ErrorCode::kInvariantViolation, "top-level coefficient exceeded tau after an iteration");
    out.trace.push_back({iter, pivot, o->s, o->z, guaranteed, o->examined, k, out.m, alive, b, ok});
  }
  std::uint64_t drop = coords_mask(alive) & ~coords_mask(k);
  g = g.restrict_coords(drop, 0);
  out.j = k;
  out.b = b;
  out.restricted = g;
  require(shrink_invariant(g, coords_mask(k), d, tau), ErrorCode::kInvariantViolation, "final shrink invariant");
  double tau_d = to_double(tau);
  double e4 = std::pow(4.0 * std::numbers::e, d);
  out.size_bound_applicable = tau_d >= 5.0 * std::exp2(-static_cast<double>(n) / e4);
  out.size_bound = (d / (4.0 * std::numbers::e)) * std::pow(n / std::log2(5.0 / tau_d), 1.0 / d);
  out.size_bound_met = !out.size_bound_applicable || static_cast<double>(k.size()) >= out.size_bound;
  return out;
}

namespace {

struct Placement {
  Mat2 m;
  std::vector<int> j;
  std::uint64_t b = 0;
};

Placement regularize_rec(const SparseSpectrum& f, int d, const Rational& delta, int depth,
                         const PigeonholeOptions& opts, std::vector<DegreeLevel>& levels) {
  int n = f.n();
  require(f.degree() <= d, ErrorCode::kDegreeMismatch, "degree exceeds d");
  if (d == 0 || n == 0) {
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    return {Mat2::identity(n), all, 0};
  }
  Rational tau = d == 1 ? delta : delta / (3 * boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(d)));
  ShrinkResult sh = shrink_top_level(f, d, tau, opts);
  levels.push_back({depth, d, n, delta, tau, sh});
  if (d == 1) return {sh.m, sh.j, sh.b};
  auto [low, top] = sh.restricted.level_split(d);
  SparseSpectrum q = low.compact(sh.j).scaled(Rational(1) / (Rational(1) + delta / 3));
  Placement sub = regularize_rec(q, d - 1, delta / 3, depth + 1, opts, levels);
  // Extend the inner map by the identity off J.
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
  for (std::size_t c = 0; c < sh.j.size(); ++c) {
    std::uint64_t v = 0;
    std::uint64_t inner = sub.m.column(static_cast<int>(c));
    for (std::size_t r = 0; r < sh.j.size(); ++r)
      if ((inner >> r) & 1) v |= std::uint64_t{1} << sh.j[r];
    cols[static_cast<std::size_t>(sh.j[c])] = v;
  }
  Placement out;
  out.m = sh.m * Mat2::from_columns(n, cols);
  for (int i : sub.j) out.j.push_back(sh.j[static_cast<std::size_t>(i)]);
  out.b = sh.b;
  for (std::size_t r = 0; r < sh.j.size(); ++r)
    if ((sub.b >> r) & 1) out.b |= std::uint64_t{1} << sh.j[r];
  return out;
}

}  // namespace

BoundedDegreeResult regularize_bounded_degree(const SparseSpectrum& f, int d, const Rational& delta,
                                              const PigeonholeOptions& opts) {
  require(delta > 0 && delta < 1, ErrorCode::kPreconditionViolated, "delta must lie in (0,1)");
  require(d >= 0, ErrorCode::kPreconditionViolated, "d must be non-negative");
  BoundedDegreeResult out;
  Placement p = regularize_rec(f, d, delta, 0, opts, out.levels);
  out.certificate = Certificate{f.n(), p.m, p.j, p.b, delta};
  SparseSpectrum r = certificate_restriction(f, out.certificate);
  out.final_max = r.max_nontrivial();
  require(r.is_regular(delta), ErrorCode::kInvariantViolation, "final restriction is not delta-regular");
  return out;
}

BoundedDegreeResult regularize_bounded_degree(const FunctionTable& f, int d, const Rational& delta,
                                              const PigeonholeOptions& opts) {
  require_bounded(f, false);
  return regularize_bounded_degree(SparseSpectrum::from_dense(wht(f)), d, delta, opts);
}

std::optional<ScanResult> exact_regularity_number(const FunctionTable& f, const Rational& delta, int max_codim,
                                                  const ScanOptions& opts) {
  require(delta >= 0, ErrorCode::kPreconditionViolated, "delta must be non-negative");
  int n = f.n();
  if (max_codim < 0 || max_codim > n) max_codim = n;
  check_scan_caps(n, max_codim, opts);
  Spectrum s = wht(f);
  require(s.is_exact(), ErrorCode::kPreconditionViolated, "exact values required");
  i128 bound = floor_scaled(delta, s.coeffs().den());
  for (int c = 0; c <= max_codim; ++c) {
    auto hit = find_first_subspace(n, c, opts, [&](const Subspace& perp) -> std::optional<std::uint64_t> {
      auto best = coset_max_numerators(s, perp);
      for (std::size_t k = 0; k < best.size(); ++k)
        if (best[k] <= bound) return k;
      return std::nullopt;
    });
    if (hit) return ScanResult{c, syndrome_subspace(hit->first, hit->second)};
  }
  return std::nullopt;
}

std::optional<ScanResult> parity_kill(const FunctionTable& f, int max_codim, const ScanOptions& opts) {
  int n = f.n();
  if (max_codim < 0 || max_codim > n) max_codim = n;
  check_scan_caps(n, max_codim, opts);
  for (int c = 0; c <= max_codim; ++c) {
    auto hit = find_first_subspace(n, c, opts, [&](const Subspace& perp) -> std::optional<std::uint64_t> {
      auto constant = constant_syndromes(f, perp);
      for (std::size_t k = 0; k < constant.size(); ++k)
        if (constant[k]) return k;
      return std::nullopt;
    });
    if (hit) return ScanResult{c, syndrome_subspace(hit->first, hit->second)};
  }
  return std::nullopt;
}

MinCertificate min_certificate(const FunctionTable& f, int cap) {
  int n = f.n();
  require(n <= cap, ErrorCode::kCapExceeded, "subcube scan exceeds the cap");
  const auto& v = f.values();
  auto same = [&](std::size_t a, std::size_t b) {
    return v.is_exact() ? v.num()[a] == v.num()[b] : v.doubles()[a] == v.doubles()[b];
  };
  for (int size = 0; size <= n; ++size) {
    for (const auto& coords : pivot_sets(n, size)) {
      std::uint64_t cm = coords_mask(coords);
      auto free = complement_coords(n, coords);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << size); ++a) {
        std::uint64_t b = 0;
        for (int i = 0; i < size; ++i)
          if ((a >> i) & 1) b |= std::uint64_t{1} << coords[static_cast<std::size_t>(i)];
        bool constant = true;
        for (std::uint64_t y = 0; y < (std::uint64_t{1} << free.size()) && constant; ++y) {
          std::uint64_t x = b;
          for (std::size_t i = 0; i < free.size(); ++i)
            if ((y >> i) & 1) x |= std::uint64_t{1} << free[i];
          constant = same(b, x);
        }
        if (constant) return {size, coords, b & cm};
      }
    }
  }
  return {n, {}, 0};
}

}  // namespace f2reg
