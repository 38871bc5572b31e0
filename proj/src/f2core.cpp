#include "f2reg/f2core.hpp"

#include <algorithm>

#include "f2reg/error.hpp"

namespace f2reg {

namespace {

int lowest_bit(std::uint64_t x) { return __builtin_ctzll(x); }

void check_n(int n) {
  require(n >= 0 && n <= kMaxBits, ErrorCode::kDimensionMismatch, "n=" + std::to_string(n) + " outside [0,64]");
}

}  // namespace

std::string bits_to_string(std::uint64_t bits, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if ((bits >> i) & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

std::uint64_t parse_bits(std::string_view text) {
  require(text.size() <= kMaxBits, ErrorCode::kParseError, "bitstring longer than 64");
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    require(c == '0' || c == '1', ErrorCode::kParseError, "bad bitstring '" + std::string(text) + "'");
    if (c == '1') bits |= std::uint64_t{1} << i;
  }
  return bits;
}

Vec2::Vec2(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  check_n(n);
  require((bits & ~low_mask(n)) == 0, ErrorCode::kDimensionMismatch, "bits beyond n");
}

Vec2 Vec2::parse(std::string_view text) { return Vec2(static_cast<int>(text.size()), parse_bits(text)); }

Mat2 Mat2::identity(int n) {
  check_n(n);
  Mat2 m(n);
  for (int i = 0; i < n; ++i) m.rows_[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
  return m;
}

Mat2 Mat2::from_rows(int n, std::vector<std::uint64_t> rows) {
  check_n(n);
  require(static_cast<int>(rows.size()) == n, ErrorCode::kDimensionMismatch, "row count differs from n");
  for (auto r : rows) require((r & ~low_mask(n)) == 0, ErrorCode::kDimensionMismatch, "row bits beyond n");
  Mat2 m;
  m.n_ = n;
  m.rows_ = std::move(rows);
  return m;
}

Mat2 Mat2::from_columns(int n, const std::vector<std::uint64_t>& cols) {
  return from_rows(n, cols).transpose();
}

std::uint64_t Mat2::column(int j) const {
  std::uint64_t c = 0;
  for (int i = 0; i < n_; ++i)
    if ((rows_[static_cast<std::size_t>(i)] >> j) & 1) c |= std::uint64_t{1} << i;
  return c;
}

void Mat2::set(int i, int j, bool v) {
  auto& r = rows_[static_cast<std::size_t>(i)];
  r = v ? r | (std::uint64_t{1} << j) : r & ~(std::uint64_t{1} << j);
}

std::uint64_t Mat2::apply(std::uint64_t x) const {
  std::uint64_t y = 0;
  for (int i = 0; i < n_; ++i) y |= static_cast<std::uint64_t>(parity(rows_[static_cast<std::size_t>(i)] & x)) << i;
  return y;
}

Mat2 Mat2::transpose() const {
  Mat2 t(n_);
  for (int j = 0; j < n_; ++j) t.rows_[static_cast<std::size_t>(j)] = column(j);
  return t;
}

Mat2 Mat2::operator*(const Mat2& o) const {
  require(n_ == o.n_, ErrorCode::kDimensionMismatch, "matrix sizes differ");
  // Column j of A*B is A applied to column j of B.
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) cols[static_cast<std::size_t>(j)] = apply(o.column(j));
  return from_columns(n_, cols);
}

int Mat2::rank() const {
  std::vector<std::uint64_t> r = rows_;
  int rank = 0;
  for (int col = 0; col < n_ && rank < n_; ++col) {
    auto it = std::find_if(r.begin() + rank, r.end(), [&](std::uint64_t v) { return (v >> col) & 1; });
    if (it == r.end()) continue;
    std::swap(*it, r[static_cast<std::size_t>(rank)]);
    for (std::size_t k = 0; k < r.size(); ++k)
      if (k != static_cast<std::size_t>(rank) && ((r[k] >> col) & 1)) r[k] ^= r[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

std::optional<Mat2> Mat2::try_inverse() const {
  std::vector<std::uint64_t> a = rows_;
  std::vector<std::uint64_t> inv = identity(n_).rows_;
  for (int col = 0; col < n_; ++col) {
    int piv = -1;
    for (int k = col; k < n_; ++k)
      if ((a[static_cast<std::size_t>(k)] >> col) & 1) {
        piv = k;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
    std::swap(inv[static_cast<std::size_t>(piv)], inv[static_cast<std::size_t>(col)]);
    for (int k = 0; k < n_; ++k) {
      if (k == col || !((a[static_cast<std::size_t>(k)] >> col) & 1)) continue;
      a[static_cast<std::size_t>(k)] ^= a[static_cast<std::size_t>(col)];
      inv[static_cast<std::size_t>(k)] ^= inv[static_cast<std::size_t>(col)];
    }
  }
  return from_rows(n_, std::move(inv));
}

Mat2 Mat2::inverse() const {
  auto inv = try_inverse();
  if (!inv) fail(ErrorCode::kSingularMatrix, "matrix is not invertible");
  return *inv;
}

std::vector<std::uint64_t> Mat2::image_table() const {
  require(n_ <= 30, ErrorCode::kCapExceeded, "image table needs n <= 30");
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) cols[static_cast<std::size_t>(j)] = column(j);
  std::vector<std::uint64_t> img(std::size_t{1} << n_);
  img[0] = 0;
  for (std::uint64_t x = 1; x < img.size(); ++x) img[x] = img[x & (x - 1)] ^ cols[static_cast<std::size_t>(lowest_bit(x))];
  return img;
}

Subspace Subspace::span(int n, std::span<const std::uint64_t> gens) {
  check_n(n);
  Subspace s;
  s.n_ = n;
  for (std::uint64_t g : gens) {
    require((g & ~low_mask(n)) == 0, ErrorCode::kDimensionMismatch, "generator bits beyond n");
    g = s.reduce(g);
    if (g == 0) continue;
    std::uint64_t q = std::uint64_t{1} << lowest_bit(g);
    for (auto& r : s.basis_)
      if (r & q) r ^= g;
    auto pos = std::find_if(s.basis_.begin(), s.basis_.end(), [&](std::uint64_t r) { return (r & -r) > q; });
    s.basis_.insert(pos, g);
    s.pivot_mask_ |= q;
  }
  return s;
}

Subspace Subspace::span(const std::vector<Vec2>& gens, int n) {
  std::vector<std::uint64_t> g;
  for (const auto& v : gens) {
    require(v.n() == n, ErrorCode::kDimensionMismatch, "vector length differs from n");
    g.push_back(v.bits());
  }
  return span(n, g);
}

Subspace Subspace::full(int n) {
  check_n(n);
  std::vector<std::uint64_t> rows;
  for (int i = 0; i < n; ++i) rows.push_back(std::uint64_t{1} << i);
  return from_rref(n, std::move(rows));
}

Subspace Subspace::coordinates(int n, std::span<const int> coords) {
  std::vector<std::uint64_t> g;
  for (int j : coords) {
    require(j >= 0 && j < n, ErrorCode::kDimensionMismatch, "coordinate out of range");
    g.push_back(std::uint64_t{1} << j);
  }
  return span(n, g);
}

Subspace Subspace::parse(int n, const std::vector<std::string>& rows) {
  std::vector<std::uint64_t> g;
  for (const auto& r : rows) {
    require(static_cast<int>(r.size()) == n, ErrorCode::kParseError, "basis row length differs from n");
    g.push_back(parse_bits(r));
  }
  return span(n, g);
}

Subspace Subspace::from_rref(int n, std::vector<std::uint64_t> rows) {
  Subspace s;
  s.n_ = n;
  s.basis_ = std::move(rows);
  for (auto r : s.basis_) s.pivot_mask_ |= r & -r;
  return s;
}

std::vector<int> Subspace::pivots() const {
  std::vector<int> p;
  for (auto r : basis_) p.push_back(lowest_bit(r));
  return p;
}

std::uint64_t Subspace::reduce(std::uint64_t x) const {
  for (auto r : basis_)
    if (x & r & -r) x ^= r;
  return x;
}

bool Subspace::contains(const Subspace& o) const {
  if (o.n_ != n_) return false;
  return std::all_of(o.basis_.begin(), o.basis_.end(), [&](std::uint64_t v) { return contains(v); });
}

std::vector<std::uint64_t> Subspace::elements() const {
  require(dim() <= 30, ErrorCode::kCapExceeded, "too many elements to list");
  std::vector<std::uint64_t> e(std::size_t{1} << dim());
  e[0] = 0;
  for (std::uint64_t t = 1; t < e.size(); ++t) e[t] = e[t & (t - 1)] ^ basis_[static_cast<std::size_t>(lowest_bit(t))];
  return e;
}

std::vector<std::string> Subspace::to_strings() const {
  std::vector<std::string> out;
  for (auto r : basis_) out.push_back(bits_to_string(r, n_));
  return out;
}

Subspace orthogonal(const Subspace& s) {
  int n = s.n();
  std::vector<std::uint64_t> g;
  for (int j = 0; j < n; ++j) {
    if ((s.pivot_mask() >> j) & 1) continue;
    std::uint64_t v = std::uint64_t{1} << j;
    for (auto r : s.basis()) {
      if ((r >> j) & 1) v |= r & -r;
    }
    g.push_back(v);
  }
  return Subspace::span(n, g);
}

Subspace transform(const Mat2& m, const Subspace& s) {
  require(m.n() == s.n(), ErrorCode::kDimensionMismatch, "matrix and subspace sizes differ");
  require(m.is_invertible(), ErrorCode::kSingularMatrix, "M is not invertible");
  std::vector<std::uint64_t> g;
  for (auto r : s.basis()) g.push_back(m.apply(r));
  return Subspace::span(s.n(), g);
}

Subspace complement_of_perp(const Subspace& v, std::span<const int> j, const Mat2& m) {
  require(static_cast<int>(j.size()) == v.dim(), ErrorCode::kDimensionMismatch, "|J| differs from dim V");
  require(m.n() == v.n(), ErrorCode::kDimensionMismatch, "matrix and subspace sizes differ");
  require(m.is_invertible(), ErrorCode::kSingularMatrix, "M is not invertible");
  require(transform(m, v) == Subspace::coordinates(v.n(), j), ErrorCode::kMapDoesNotCarryBasis,
          "M does not carry V onto span(J)");
  std::vector<std::uint64_t> g;
  for (int c : j) g.push_back(m.row(c));
  return Subspace::span(v.n(), g);
}

bool is_direct_sum(const Subspace& w, const Subspace& v) {
  if (w.n() != v.n() || w.dim() + v.dim() != w.n()) return false;
  std::vector<std::uint64_t> g = w.basis();
  g.insert(g.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(w.n(), g).dim() == w.n();
}

DirectSumSplitter::DirectSumSplitter(const Subspace& w, const Subspace& v) : n_(w.n()), wdim_(w.dim()) {
  require(is_direct_sum(w, v), ErrorCode::kNotAComplement, "W and V do not form a direct sum");
  cols_ = w.basis();
  cols_.insert(cols_.end(), v.basis().begin(), v.basis().end());
  inv_ = Mat2::from_columns(n_, cols_).inverse();
}

std::pair<std::uint64_t, std::uint64_t> DirectSumSplitter::split(std::uint64_t x) const {
  std::uint64_t c = inv_.apply(x);
  std::uint64_t w = 0;
  for (int i = 0; i < wdim_; ++i)
    if ((c >> i) & 1) w ^= cols_[static_cast<std::size_t>(i)];
  return {w, x ^ w};
}

AffineSubspace::AffineSubspace(Subspace space, std::uint64_t shift) : space_(std::move(space)) {
  require((shift & ~low_mask(space_.n())) == 0, ErrorCode::kDimensionMismatch, "shift bits beyond n");
  shift_ = space_.reduce(shift);
}

std::vector<std::uint64_t> AffineSubspace::elements() const {
  auto e = space_.elements();
  for (auto& x : e) x ^= shift_;
  return e;
}

std::optional<AffineSubspace> AffineSubspace::intersect_hyperplane(std::uint64_t lambda, int b) const {
  const auto& basis = space_.basis();
  int piv = -1;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (dot(lambda, basis[i])) {
      piv = static_cast<int>(i);
      break;
    }
  int on_shift = dot(lambda, shift_);
  if (piv < 0) {
    if (on_shift != b) return std::nullopt;
    return *this;
  }
  std::uint64_t vp = basis[static_cast<std::size_t>(piv)];
  std::vector<std::uint64_t> g;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (static_cast<int>(i) == piv) continue;
    g.push_back(dot(lambda, basis[i]) ? basis[i] ^ vp : basis[i]);
  }
  std::uint64_t shift = (on_shift != b) ? shift_ ^ vp : shift_;
  return AffineSubspace(Subspace::span(n(), g), shift);
}

std::vector<std::vector<int>> pivot_sets(int n, int dim) {
  std::vector<std::vector<int>> out;
  if (dim < 0 || dim > n) return out;
  std::vector<int> c(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) c[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(c);
    int i = dim - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - dim + i) --i;
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < dim; ++k) c[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

bool for_each_subspace_with_pivots(int n, std::span<const int> pivots,
                                   const std::function<bool(const Subspace&)>& fn) {
  std::uint64_t pmask = coords_mask(pivots);
  // Free slots: (row, coordinate) with coordinate above the row pivot and not a pivot.
  std::vector<std::pair<int, int>> slots;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (int j = pivots[r] + 1; j < n; ++j)
      if (!((pmask >> j) & 1)) slots.emplace_back(static_cast<int>(r), j);
  require(slots.size() <= 62, ErrorCode::kCapExceeded, "too many free entries");
  std::uint64_t total = std::uint64_t{1} << slots.size();
  std::vector<std::uint64_t> rows(pivots.size());
  for (std::uint64_t t = 0; t < total; ++t) {
    for (std::size_t r = 0; r < pivots.size(); ++r) rows[r] = std::uint64_t{1} << pivots[r];
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((t >> s) & 1) rows[static_cast<std::size_t>(slots[s].first)] |= std::uint64_t{1} << slots[s].second;
    if (!fn(Subspace::from_rref(n, rows))) return false;
  }
  return true;
}

bool for_each_subspace(int n, int dim, const std::function<bool(const Subspace&)>& fn, int cap) {
  require(n <= cap, ErrorCode::kCapExceeded, "n=" + std::to_string(n) + " exceeds exhaustive cap " + std::to_string(cap));
  for (const auto& p : pivot_sets(n, dim))
    if (!for_each_subspace_with_pivots(n, p, fn)) return false;
  return true;
}

std::vector<Subspace> enumerate_subspaces(int n, int dim, int cap) {
  std::vector<Subspace> out;
  for_each_subspace(n, dim, [&](const Subspace& s) {
    out.push_back(s);
    return true;
  }, cap);
  return out;
}

BigInt gaussian_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    num *= (BigInt(1) << (n - i)) - 1;
    den *= (BigInt(1) << (i + 1)) - 1;
  }
  return num / den;
}

BigInt binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt binomial_prefix(int n, int k) {
  BigInt s = 0;
  for (int i = 0; i <= k; ++i) s += binomial(n, i);
  return s;
}

std::uint64_t count_weight_t(const AffineSubspace& u, int t) {
  std::uint64_t c = 0;
  for (auto x : u.elements())
    if (popcount(x) == t) ++c;
  return c;
}

std::vector<int> complement_coords(int n, std::span<const int> coords) {
  std::uint64_t m = coords_mask(coords);
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (!((m >> i) & 1)) out.push_back(i);
  return out;
}

std::uint64_t coords_mask(std::span<const int> coords) {
  std::uint64_t m = 0;
  for (int j : coords) m |= std::uint64_t{1} << j;
  return m;
}

std::vector<int> mask_coords(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(lowest_bit(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace f2reg
