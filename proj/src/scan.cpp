#include "f2reg/scan.hpp"

#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "f2reg/error.hpp"

namespace f2reg {

void check_scan_caps(int n, int max_codim, const ScanOptions& opts) {
  if (n <= opts.full_cap) return;
  require(n <= opts.limited_cap && max_codim <= opts.limited_codim, ErrorCode::kCapExceeded,
          "exhaustive scan at n=" + std::to_string(n) + ", codim " + std::to_string(max_codim) +
              " exceeds the caps (n<=" + std::to_string(opts.full_cap) + " any codim, n<=" +
              std::to_string(opts.limited_cap) + " codim<=" + std::to_string(opts.limited_codim) + ")");
}

AffineSubspace syndrome_subspace(const Subspace& perp, std::uint64_t syndrome) {
  std::uint64_t shift = 0;
  auto piv = perp.pivots();
  for (std::size_t i = 0; i < piv.size(); ++i)
    if ((syndrome >> i) & 1) shift |= std::uint64_t{1} << piv[i];
  return AffineSubspace(orthogonal(perp), shift);
}

std::vector<std::uint64_t> coset_representatives(const Subspace& d) {
  std::vector<int> free;
  for (int j = 0; j < d.n(); ++j)
    if (!((d.pivot_mask() >> j) & 1)) free.push_back(j);
  std::vector<std::uint64_t> reps(std::size_t{1} << free.size());
  reps[0] = 0;
  for (std::uint64_t t = 1; t < reps.size(); ++t)
    reps[t] = reps[t & (t - 1)] | (std::uint64_t{1} << free[static_cast<std::size_t>(__builtin_ctzll(t))]);
  return reps;
}

std::vector<i128> coset_max_numerators(const Spectrum& s, const Subspace& perp) {
  require(s.is_exact(), ErrorCode::kPreconditionViolated, "exact spectrum required");
  const auto& num = s.coeffs().num();
  auto elems = perp.elements();
  std::vector<i128> best(elems.size(), 0);
  std::vector<i128> buf(elems.size());
  for (auto r : coset_representatives(perp)) {
    if (r == 0) continue;
    for (std::size_t t = 0; t < elems.size(); ++t) buf[t] = num[r ^ elems[t]];
    butterfly(buf);
    for (std::size_t k = 0; k < buf.size(); ++k) best[k] = std::max(best[k], abs128(buf[k]));
  }
  return best;
}

std::vector<bool> constant_syndromes(const FunctionTable& f, const Subspace& perp) {
  int c = perp.dim();
  std::vector<std::uint64_t> col(static_cast<std::size_t>(f.n()), 0);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < f.n(); ++j)
      if ((perp.basis()[static_cast<std::size_t>(i)] >> j) & 1) col[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
  std::size_t nsyn = std::size_t{1} << c;
  std::vector<std::int64_t> first(nsyn, -1);
  std::vector<bool> constant(nsyn, true);
  std::vector<std::uint64_t> syn(f.size());
  const auto& v = f.values();
  auto same = [&](std::size_t a, std::size_t b) {
    return v.is_exact() ? v.num()[a] == v.num()[b] : v.doubles()[a] == v.doubles()[b];
  };
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (x > 0) syn[x] = syn[x & (x - 1)] ^ col[static_cast<std::size_t>(__builtin_ctzll(x))];
    else syn[x] = 0;
    std::uint64_t s = syn[x];
    if (first[s] < 0) {
      first[s] = static_cast<std::int64_t>(x);
    } else if (constant[s] && !same(static_cast<std::size_t>(first[s]), x)) {
      constant[s] = false;
    }
  }
  return constant;
}

std::optional<std::pair<Subspace, std::uint64_t>> find_first_subspace(
    int n, int dim, const ScanOptions& opts,
    const std::function<std::optional<std::uint64_t>(const Subspace&)>& probe) {
  auto sets = pivot_sets(n, dim);
  auto scan_set = [&](std::size_t i) -> std::optional<std::pair<Subspace, std::uint64_t>> {
    std::optional<std::pair<Subspace, std::uint64_t>> hit;
    for_each_subspace_with_pivots(n, sets[i], [&](const Subspace& d) {
      if (auto s = probe(d)) {
        hit.emplace(d, *s);
        return false;
      }
      return true;
    });
    return hit;
  };
  if (opts.threads <= 1 || sets.size() <= 1) {
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (auto hit = scan_set(i)) return hit;
    return std::nullopt;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{kNone};
  std::mutex mu;
  std::map<std::size_t, std::pair<Subspace, std::uint64_t>> hits;
  std::exception_ptr error;
  auto worker = [&] {
    try {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= sets.size() || i > best.load()) return;
        if (auto hit = scan_set(i)) {
          std::lock_guard<std::mutex> lock(mu);
          hits.emplace(i, *hit);
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  int workers = std::min<int>(opts.threads, static_cast<int>(sets.size()));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  if (hits.empty()) return std::nullopt;
  return hits.begin()->second;
}

}  // namespace f2reg
