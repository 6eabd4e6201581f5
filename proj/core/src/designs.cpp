#include "latnab/designs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "echelon.hpp"
#include "latnab/errors.hpp"
#include "latnab/parallel.hpp"

namespace latnab {

namespace {

std::int64_t to_i64(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw BudgetExceeded(std::string(what) + " exceeds 64 bits");
  return z.get_si();
}

std::int64_t scaled_norm(const PointSet& x) {
  Rational v = x.norm * x.scale;
  if (!is_integer(v)) throw DomainError("point set norm is not compatible with its form");
  return to_i64(v.get_num(), "scaled norm");
}

// Images x F, row-major.
std::vector<std::int64_t> images(const PointSet& x) {
  const std::size_t d = x.dim, rows = x.rows();
  std::vector<std::int64_t> out(rows * d, 0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t i = 0; i < d; ++i) {
      std::int64_t c = x.point(r)[i];
      if (!c) continue;
      for (std::size_t j = 0; j < d; ++j) out[r * d + j] += c * x.form[i * d + j];
    }
  return out;
}

// F(v): ordered pairs (x, y) with scaled inner product v, including x = y.
struct PairHistogram {
  std::int64_t top = 0;  // scaled norm; v ranges over [-top, top]
  std::vector<std::uint64_t> counts;
  std::uint64_t at(std::int64_t v) const { return counts[static_cast<std::size_t>(v + top)]; }
};

template <class T>
void pair_kernel(const PointSet& x, const std::vector<std::int64_t>& img, std::vector<std::vector<std::uint64_t>>& hist,
                 std::int64_t top) {
  const std::size_t d = x.dim, rows = x.rows();
  std::vector<T> cols(d * rows), pts(rows * d);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t j = 0; j < d; ++j) {
      cols[j * rows + r] = static_cast<T>(img[r * d + j]);
      pts[r * d + j] = static_cast<T>(x.point(r)[j]);
    }
  constexpr std::size_t kBlock = 2048;
  const std::size_t blocks = (rows + kBlock - 1) / kBlock;
  // Work item (i-block, j-block) with j-block >= i-block.
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t a = 0; a < blocks; ++a)
    for (std::size_t b = a; b < blocks; ++b) items.emplace_back(a, b);
  parallel_for(items.size(), static_cast<unsigned>(hist.size()), [&](unsigned w, std::size_t item) {
    auto [a, b] = items[item];
    auto& h = hist[w];
    std::vector<T> acc(kBlock);
    const std::size_t j0 = b * kBlock, j1 = std::min(rows, j0 + kBlock);
    for (std::size_t i = a * kBlock; i < std::min(rows, (a + 1) * kBlock); ++i) {
      const std::size_t start = std::max(j0, i + 1);
      if (start >= j1) continue;
      const std::size_t len = j1 - start;
      std::fill(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(len), T(0));
      for (std::size_t k = 0; k < d; ++k) {
        const T c = pts[i * d + k];
        if (!c) continue;
        const T* col = cols.data() + k * rows + start;
        for (std::size_t j = 0; j < len; ++j) acc[j] += c * col[j];
      }
      for (std::size_t j = 0; j < len; ++j) ++h[static_cast<std::size_t>(static_cast<std::int64_t>(acc[j]) + top)];
    }
  });
}

PairHistogram pair_histogram(const PointSet& x) {
  const std::int64_t top = scaled_norm(x);
  if (top > (std::int64_t(1) << 26)) throw BudgetExceeded("pairwise histogram: scaled norm too large");
  const std::size_t width = static_cast<std::size_t>(2 * top + 1);
  auto img = images(x);
  std::int64_t max_pt = 0, max_img = 0;
  for (auto v : x.coords) max_pt = std::max(max_pt, std::abs(v));
  for (auto v : img) max_img = std::max(max_img, std::abs(v));
  const unsigned workers = thread_count();
  std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(width, 0));
  const double bound = static_cast<double>(max_pt) * static_cast<double>(max_img) * static_cast<double>(x.dim);
  if (bound < 2e9)
    pair_kernel<std::int32_t>(x, img, hist, top);
  else
    pair_kernel<std::int64_t>(x, img, hist, top);
  PairHistogram out;
  out.top = top;
  out.counts.assign(width, 0);
  std::vector<std::uint64_t> unordered(width, 0);
  for (const auto& h : hist)
    for (std::size_t i = 0; i < width; ++i) unordered[i] += h[i];
  const std::uint64_t n = x.size();
  for (std::size_t i = 0; i < width; ++i) {
    if (x.antipodal) {
      out.counts[i] += 4 * unordered[i];
      out.counts[width - 1 - i] += 4 * unordered[i];
    } else {
      out.counts[i] += 2 * unordered[i];
    }
  }
  out.counts[width - 1] += n;              // x = y
  if (x.antipodal) out.counts[0] += n;     // x = -y
  return out;
}

DistanceSet distances_of(const PointSet& x, const PairHistogram& h) {
  DistanceSet out;
  const std::uint64_t n = x.size();
  for (std::int64_t v = -h.top; v <= h.top; ++v) {
    std::uint64_t c = h.at(v);
    if (v == h.top) c -= n;
    if (!c) continue;
    Rational raw = ratio(Integer(static_cast<long>(v)), Integer(static_cast<long>(x.scale)));
    out.raw.push_back(raw);
    out.normalized.push_back(raw / x.norm);
  }
  return out;
}

std::vector<Rational> moments_of(const PointSet& x, const PairHistogram& h, int kmax) {
  std::vector<Rational> out;
  const Integer scale(static_cast<long>(x.scale));
  for (int k = 0; k <= kmax; ++k) {
    Integer s = 0;
    for (std::int64_t v = -h.top; v <= h.top; ++v) {
      std::uint64_t c = h.at(v);
      if (!c) continue;
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), Integer(static_cast<long>(v)).get_mpz_t(), static_cast<unsigned long>(k));
      s += p * Integer(static_cast<unsigned long>(c));
    }
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(k));
    out.push_back(ratio(s, den));
  }
  return out;
}

// Power sums sum_x prod_j x_{i_j} over nondecreasing index tuples of length k,
// ranked by the combinatorial number system on i_j + j.
class PowerSums {
 public:
  PowerSums(std::size_t dim, int k) : dim_(dim), k_(k) {
    const std::size_t top = dim + static_cast<std::size_t>(k) + 1;
    binom_.assign(top * (static_cast<std::size_t>(k) + 2), 0);
    for (std::size_t nn = 0; nn < top; ++nn)
      for (std::size_t r = 0; r <= static_cast<std::size_t>(k) + 1; ++r) binom_[nn * (k + 2) + r] = choose(nn, r);
    size_ = static_cast<std::size_t>(choose(dim + static_cast<std::size_t>(k) - 1, static_cast<std::size_t>(k)));
  }
  std::size_t size() const { return size_; }

  void add(const std::int64_t* v, std::vector<__int128>& acc) const {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < dim_; ++i)
      if (v[i]) support.push_back(i);
    walk(support, v, 0, 0, 0, 1, acc);
  }

  // sum over tuples of k!/prod(alpha!) * a[rank] * b[rank]; products are
  // grouped by the multinomial so the hot loop stays in 128 bits.
  Integer contract(const std::vector<__int128>& a, const std::vector<__int128>& b) const {
    unsigned __int128 ma = 0, mb = 0;
    for (auto v : a) ma = std::max(ma, static_cast<unsigned __int128>(v < 0 ? -v : v));
    for (auto v : b) mb = std::max(mb, static_cast<unsigned __int128>(v < 0 ? -v : v));
    const double bits = std::log2(static_cast<double>(ma) + 1) + std::log2(static_cast<double>(mb) + 1) +
                        std::log2(static_cast<double>(a.size()) + 1);
    if (bits > 125) throw BudgetExceeded("tensor moment: contraction exceeds 128 bits");
    std::vector<std::pair<std::uint64_t, __int128>> groups;
    contract_walk(a, b, 0, 0, 0, SIZE_MAX, 1, 1, groups);
    Integer fact = 1;
    for (int i = 2; i <= k_; ++i) fact *= i;
    Integer total = 0;
    for (const auto& [denom, sum] : groups) total += to_integer(sum) * (fact / Integer(static_cast<unsigned long>(denom)));
    return total;
  }

 private:
  static std::uint64_t choose(std::size_t n, std::size_t r) {
    if (r > n) return 0;
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return static_cast<std::uint64_t>(c);
  }
  std::uint64_t b(std::size_t n, std::size_t r) const { return binom_[n * (k_ + 2) + r]; }

  void walk(const std::vector<std::size_t>& support, const std::int64_t* v, int j, std::size_t from, std::size_t rank,
            __int128 value, std::vector<__int128>& acc) const {
    if (j + 1 == k_) {
      const std::size_t jj = static_cast<std::size_t>(j);
      for (std::size_t p = from; p < support.size(); ++p) {
        std::size_t i = support[p];
        acc[rank + b(i + jj, jj + 1)] += value * v[i];
      }
      return;
    }
    for (std::size_t p = from; p < support.size(); ++p) {
      std::size_t i = support[p];
      walk(support, v, j + 1, p, rank + b(i + static_cast<std::size_t>(j), static_cast<std::size_t>(j) + 1),
           value * v[i], acc);
    }
  }

  void contract_walk(const std::vector<__int128>& a, const std::vector<__int128>& bb, int j, std::size_t from,
                     std::size_t rank, std::size_t prev, std::uint64_t run, std::uint64_t denom,
                     std::vector<std::pair<std::uint64_t, __int128>>& groups) const {
    if (j == k_) {
      if (!a[rank] || !bb[rank]) return;
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == denom; });
      if (it == groups.end()) {
        groups.emplace_back(denom, 0);
        it = groups.end() - 1;
      }
      it->second += a[rank] * bb[rank];
      return;
    }
    for (std::size_t i = from; i < dim_; ++i) {
      std::uint64_t r = (i == prev) ? run + 1 : 1;
      contract_walk(a, bb, j + 1, i, rank + b(i + static_cast<std::size_t>(j), static_cast<std::size_t>(j) + 1), i, r,
                    denom * r, groups);
    }
  }

  static Integer to_integer(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~std::uint64_t(0)));
    Integer out = hi * Integer("18446744073709551616") + lo;
    return neg ? Integer(-out) : out;
  }

  std::size_t dim_;
  int k_;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> binom_;
};

Integer tensor_moment(const PointSet& x, const std::vector<std::int64_t>& img, int k) {
  const std::size_t rows = x.rows();
  if (k == 0) {
    Integer n(static_cast<unsigned long>(x.size()));
    return n * n;
  }
  if (x.antipodal && k % 2) return 0;
  PowerSums ps(x.dim, k);
  if (ps.size() > 40'000'000) throw BudgetExceeded("tensor moment: too many monomials");
  std::int64_t max_pt = 1, max_img = 1;
  for (auto v : x.coords) max_pt = std::max(max_pt, std::abs(v));
  for (auto v : img) max_img = std::max(max_img, std::abs(v));
  const double rows_bits = std::log2(static_cast<double>(rows) + 1);
  if (k * std::log2(static_cast<double>(max_pt)) + rows_bits > 124 || k * std::log2(static_cast<double>(max_img)) + rows_bits > 124)
    throw BudgetExceeded("tensor moment: power sums exceed 128 bits");
  std::vector<__int128> p(ps.size(), 0);
  for (std::size_t r = 0; r < rows; ++r) ps.add(x.point(r), p);
  Integer s;
  if (img == x.coords) {
    s = ps.contract(p, p);
  } else {
    std::vector<__int128> q(ps.size(), 0);
    for (std::size_t r = 0; r < rows; ++r) ps.add(img.data() + r * x.dim, q);
    s = ps.contract(p, q);
  }
  return x.antipodal ? Integer(4 * s) : s;
}

}  // namespace

std::string to_string(DesignMethod m) { return m == DesignMethod::Pairwise ? "pairwise" : "tensor-moment"; }

std::string Strength::str() const {
  switch (kind) {
    case Kind::Exact: return std::to_string(t);
    case Kind::Unbounded: return "unbounded";
    case Kind::AtLeast: return ">=" + std::to_string(t);
  }
  return "?";
}

PointSet points(const Lattice& l, const Shell& s) {
  if (!s.materialized) throw BudgetExceeded("shell of norm " + s.norm.get_str() + " was not materialized");
  PointSet x;
  x.dim = l.dim();
  x.norm = s.norm;
  x.antipodal = true;
  const std::size_t n = l.dim();
  const std::size_t rows = s.half_size();
  x.coords.resize(rows * n);
  if (l.ambient()->euclidean) {
    auto [b, den] = clear_denominators(l.basis());
    std::vector<std::int64_t> bi(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) bi[i * n + j] = to_i64(b(i, j), "basis entry");
    for (std::size_t r = 0; r < rows; ++r) {
      const std::int32_t* c = s.representative(r);
      for (std::size_t i = 0; i < n; ++i) {
        if (!c[i]) continue;
        for (std::size_t j = 0; j < n; ++j) x.coords[r * n + j] += static_cast<std::int64_t>(c[i]) * bi[i * n + j];
      }
    }
    x.form.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) x.form[i * n + i] = 1;
    x.scale = to_i64(den * den, "basis denominator");
  } else {
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t j = 0; j < n; ++j) x.coords[r * n + j] = s.representative(r)[j];
    auto [g, den] = clear_denominators(l.gram());
    x.form.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x.form[i * n + j] = to_i64(g(i, j), "Gram entry");
    x.scale = to_i64(den, "Gram denominator");
  }
  return x;
}

PointSet points(const std::vector<RationalVector>& xs, const RationalMatrix& form, bool antipodal_half) {
  if (xs.empty()) throw DomainError("empty point set");
  const std::size_t n = form.rows();
  if (!form.is_square() || !is_symmetric(form)) throw DomainError("point set form must be square and symmetric");
  Integer den = 1;
  for (const auto& v : xs) {
    if (v.size() != n) throw DomainError("point dimension does not match the form");
    for (const auto& c : v) den = lcm(den, c.get_den());
  }
  auto [f, fden] = clear_denominators(form);
  PointSet x;
  x.dim = n;
  x.antipodal = antipodal_half;
  x.form.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x.form[i * n + j] = to_i64(f(i, j), "form entry");
  x.scale = to_i64(den * den * fden, "point denominator");
  for (const auto& v : xs)
    for (const auto& c : v) x.coords.push_back(to_i64(Rational(c * den).get_num(), "point coordinate"));
  for (std::size_t r = 0; r < xs.size(); ++r) {
    Rational norm = dot(xs[r], row_times(xs[r], form));
    if (r == 0) x.norm = norm;
    if (norm != x.norm) throw DomainError("points do not all have the same norm");
  }
  if (x.norm <= 0) throw DomainError("points must have positive norm");
  return x;
}

std::size_t span_dimension(const PointSet& x) {
  if (x.rows() == 0) throw DomainError("span_dimension: empty point set");
  detail::Echelon e(x.dim);
  for (std::size_t r = 0; r < x.rows(); ++r) e.insert(x.point(r));
  return e.rank();
}

DistanceSet distance_set(const PointSet& x, std::uint64_t budget) {
  if (x.size() > budget) {
    DistanceSet d;
    d.exceeded = true;
    return d;
  }
  return distances_of(x, pair_histogram(x));
}

std::vector<Rational> moment_sums(const PointSet& x, int kmax, DesignMethod method) {
  if (method == DesignMethod::Pairwise) return moments_of(x, pair_histogram(x), kmax);
  auto img = images(x);
  std::vector<Rational> out;
  Integer scale_k = 1;
  for (int k = 0; k <= kmax; ++k) {
    out.push_back(ratio(tensor_moment(x, img, k), scale_k));
    scale_k *= Integer(static_cast<long>(x.scale));
  }
  return out;
}

Rational moment_target(int k, std::size_t d, std::uint64_t n, const Rational& m) {
  if (k % 2) return 0;
  Rational c = 1;
  for (int j = 0; j < k / 2; ++j) c *= ratio(Integer(2 * j + 1), Integer(static_cast<long>(d) + 2 * j));
  Integer nn(static_cast<unsigned long>(n));
  Rational mk = 1;
  for (int j = 0; j < k; ++j) mk *= m;
  return c * Rational(nn * nn) * mk;
}

namespace {

// Degree k fails exactly when some y has sum_x (x, y)^k != c_k n m^(k/2) |y|^k
// (full span only). One such y costs rows * dim instead of the full tensor.
bool refuted_by_witness(const PointSet& x, const std::vector<std::int64_t>& img, int k) {
  if (x.antipodal && k % 2) return false;
  const std::size_t dim = x.dim, rows = x.rows();
  std::int64_t max_img = 1;
  for (auto v : img) max_img = std::max(max_img, std::abs(v));
  Rational c = k % 2 ? Rational(0) : Rational(1);
  for (int j = 0; k % 2 == 0 && j < k / 2; ++j)
    c *= ratio(Integer(2 * j + 1), Integer(static_cast<long>(dim) + 2 * j));

  auto test = [&](const std::vector<std::int64_t>& y) {
    std::int64_t reach = 0;
    for (auto v : y) reach += std::abs(v);
    if (k * std::log2(static_cast<double>(max_img) * static_cast<double>(reach) + 1) +
            std::log2(static_cast<double>(rows) + 1) > 120)
      return false;
    __int128 sum = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      const std::int64_t* w = img.data() + r * dim;
      __int128 ip = 0;
      for (std::size_t i = 0; i < dim; ++i) ip += static_cast<__int128>(w[i]) * y[i];
      __int128 p = 1;
      for (int e = 0; e < k; ++e) p *= ip;
      sum += p;
    }
    Integer yy = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) yy += Integer(static_cast<long>(x.form[i * dim + j])) * y[i] * y[j];
    Rational base = x.norm * Rational(yy) * Rational(static_cast<long>(x.scale));
    Rational rhs = c * Rational(static_cast<unsigned long>(x.size()));
    for (int e = 0; e < k / 2; ++e) rhs *= base;
    bool neg = sum < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-sum) : static_cast<unsigned __int128>(sum);
    Integer lhs = Integer(static_cast<unsigned long>(u >> 64)) * Integer("18446744073709551616") +
                  Integer(static_cast<unsigned long>(u & ~std::uint64_t(0)));
    if (neg) lhs = -lhs;
    if (x.antipodal) lhs *= 2;
    return Rational(lhs) != rhs;
  };

  std::vector<std::int64_t> y(dim);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int trial = 0; trial < 4; ++trial) {
    for (auto& v : y) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      v = static_cast<std::int64_t>((state >> 33) % 7) - 3;
    }
    if (test(y)) return true;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    std::fill(y.begin(), y.end(), 0);
    y[i] = 1;
    if (test(y)) return true;
    for (std::size_t j = i + 1; j < dim; ++j) {
      y[j] = 1;
      if (test(y)) return true;
      y[j] = 0;
    }
  }
  return false;
}

Strength strength_from(const PointSet& x, std::size_t d, int t_cap, const std::vector<Rational>* pair_moments,
                       const std::vector<std::int64_t>* img) {
  const std::uint64_t n = x.size();
  if (d == 1 && x.antipodal && x.rows() == 1) return Strength{Strength::Kind::Unbounded, 0};
  Integer scale_k = 1;
  for (int k = 1; k <= t_cap; ++k) {
    scale_k *= Integer(static_cast<long>(x.scale));
    if (!pair_moments && d == x.dim && refuted_by_witness(x, *img, k)) return Strength{Strength::Kind::Exact, k - 1};
    Rational s = pair_moments ? (*pair_moments)[static_cast<std::size_t>(k)] : ratio(tensor_moment(x, *img, k), scale_k);
    if (x.antipodal && k % 2 && s != 0) throw Error("odd moment of an antipodal set is nonzero");
    if (s != moment_target(k, d, n, x.norm)) return Strength{Strength::Kind::Exact, k - 1};
  }
  return Strength{Strength::Kind::AtLeast, t_cap};
}

}  // namespace

Strength design_strength(const PointSet& x, int t_cap, DesignMethod method) {
  if (x.rows() == 0) throw DomainError("design_strength: empty point set");
  const std::size_t d = span_dimension(x);
  if (method == DesignMethod::Pairwise) {
    auto m = moments_of(x, pair_histogram(x), t_cap);
    return strength_from(x, d, t_cap, &m, nullptr);
  }
  auto img = images(x);
  return strength_from(x, d, t_cap, nullptr, &img);
}

DesignReport configuration(const PointSet& x, int t_cap, std::uint64_t budget, bool allow_tensor) {
  if (x.rows() == 0) throw DomainError("configuration: empty shell");
  DesignReport r;
  r.norm = x.norm;
  r.n = x.size();
  r.d = span_dimension(x);
  if (r.n <= budget) {
    auto h = pair_histogram(x);
    r.distances = distances_of(x, h);
    auto m = moments_of(x, h, t_cap);
    r.t = strength_from(x, r.d, t_cap, &m, nullptr);
    r.method = DesignMethod::Pairwise;
    return r;
  }
  if (!allow_tensor) throw BudgetExceeded("shell of " + std::to_string(r.n) + " vectors exceeds the pairwise budget");
  r.distances.exceeded = true;
  auto img = images(x);
  r.t = strength_from(x, r.d, t_cap, nullptr, &img);
  r.method = DesignMethod::TensorMoment;
  return r;
}

DesignReport configuration(const Lattice& l, const Rational& m, int t_cap, std::uint64_t budget, bool allow_tensor,
                           std::uint64_t tensor_budget) {
  Shell s = shell(l, m, std::max<std::uint64_t>(budget, tensor_budget));
  if (!s.materialized) throw BudgetExceeded("shell of norm " + m.get_str() + " has " + std::to_string(s.count) + " vectors");
  if (s.count == 0) throw DomainError("shell of norm " + m.get_str() + " is empty");
  return configuration(points(l, s), t_cap, budget, allow_tensor);
}

bool is_strongly_perfect(const Lattice& l) {
  auto r = configuration(l, minimum(l), 5);
  return r.t.kind != Strength::Kind::Exact || r.t.t >= 4;
}

}  // namespace latnab
