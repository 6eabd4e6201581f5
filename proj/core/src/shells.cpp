#include "latnab/shells.hpp"

#include <algorithm>
#include <numeric>

#include "latnab/enumerate.hpp"
#include "latnab/parallel.hpp"

namespace latnab {

namespace {

// Flips the sign so that the first nonzero entry is positive.
template <class T>
void normalize_sign(T* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    if (v[i] < 0)
      for (std::size_t j = i; j < n; ++j) v[j] = -v[j];
    return;
  }
}

template <class T>
void sort_rows(std::vector<T>& flat, std::size_t n) {
  const std::size_t rows = n ? flat.size() / n : 0;
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * n, flat.begin() + (a + 1) * n, flat.begin() + b * n,
                                        flat.begin() + (b + 1) * n);
  });
  std::vector<T> out(flat.size());
  for (std::size_t r = 0; r < rows; ++r) std::copy_n(flat.begin() + order[r] * n, n, out.begin() + r * n);
  flat.swap(out);
}

struct ShellCollector {
  std::int64_t target;
  std::size_t dim;
  std::size_t cap;
  std::uint64_t count = 0;
  std::vector<std::int64_t> reduced;
  void operator()(const std::int64_t* y, std::int64_t e) {
    if (e != target) return;
    if (++count <= cap) reduced.insert(reduced.end(), y, y + dim);
  }
};

struct ThetaCounter {
  std::vector<std::uint64_t> dense;
  std::map<std::int64_t, std::uint64_t> sparse;
  bool use_dense;
  void operator()(const std::int64_t*, std::int64_t e) {
    if (use_dense)
      ++dense[static_cast<std::size_t>(e)];
    else
      ++sparse[e];
  }
};

struct MinimumTracker {
  std::int64_t best = 0;
  std::uint64_t count = 0;
  void operator()(const std::int64_t*, std::int64_t e) {
    if (best == 0 || e < best) {
      best = e;
      count = 1;
    } else if (e == best) {
      ++count;
    }
  }
};

std::pair<std::int64_t, std::uint64_t> minimum_scaled(const Enumerator& en) {
  std::vector<MinimumTracker> workers(thread_count());
  en.enumerate(en.min_diagonal(), workers);
  MinimumTracker total;
  for (const auto& w : workers) {
    if (w.best == 0) continue;
    if (total.best == 0 || w.best < total.best) {
      total.best = w.best;
      total.count = w.count;
    } else if (w.best == total.best) {
      total.count += w.count;
    }
  }
  return {total.best, total.count};
}

}  // namespace

std::vector<std::int64_t> Shell::coefficients(std::size_t i) const {
  std::vector<std::int64_t> v(dim);
  const std::int32_t* r = representative(i / 2);
  const std::int64_t sign = (i % 2) ? -1 : 1;
  for (std::size_t j = 0; j < dim; ++j) v[j] = sign * r[j];
  return v;
}

Shell shell(const Lattice& l, const Rational& m, std::size_t budget) {
  if (m <= 0) throw DomainError("shell: norm must be positive");
  Shell out;
  out.norm = m;
  out.dim = l.dim();
  Enumerator en(l.gram());
  Rational scaled = m * en.scale();
  if (!is_integer(scaled)) {
    out.materialized = true;
    return out;
  }
  const std::int64_t target = en.scaled_bound(m);
  std::vector<ShellCollector> workers(thread_count(), ShellCollector{target, out.dim, budget / 2 + 1, 0, {}});
  en.enumerate(target, workers);
  for (const auto& w : workers) out.count += 2 * w.count;
  out.materialized = out.count <= budget;
  if (!out.materialized) return out;
  const std::size_t n = out.dim;
  out.half.reserve(out.count / 2 * n);
  std::vector<std::int64_t> orig(n);
  for (const auto& w : workers)
    for (std::size_t r = 0; r * n < w.reduced.size(); ++r) {
      en.to_original(w.reduced.data() + r * n, orig.data());
      normalize_sign(orig.data(), n);
      for (auto x : orig) {
        if (x > INT32_MAX || x < INT32_MIN) throw BudgetExceeded("shell: coefficient exceeds 32 bits");
        out.half.push_back(static_cast<std::int32_t>(x));
      }
    }
  sort_rows(out.half, n);
  return out;
}

std::uint64_t ThetaSeries::at(const Rational& norm) const {
  auto it = coefficients.find(norm);
  return it == coefficients.end() ? 0 : it->second;
}

ThetaSeries theta_of_gram(const RationalMatrix& gram, const Rational& max_norm) {
  if (max_norm < 0) throw DomainError("theta: max_norm must be nonnegative");
  ThetaSeries out;
  out.max_norm = max_norm;
  out.coefficients[Rational(0)] = 1;
  Enumerator en(gram);
  const std::int64_t bound = en.scaled_bound(max_norm);
  if (bound <= 0) return out;
  const bool dense = bound <= (std::int64_t(1) << 24);
  ThetaCounter proto{dense ? std::vector<std::uint64_t>(static_cast<std::size_t>(bound) + 1, 0) : std::vector<std::uint64_t>(), {}, dense};
  std::vector<ThetaCounter> workers(thread_count(), proto);
  en.enumerate(bound, workers);
  std::map<std::int64_t, std::uint64_t> merged;
  for (const auto& w : workers) {
    if (dense) {
      for (std::size_t e = 0; e < w.dense.size(); ++e)
        if (w.dense[e]) merged[static_cast<std::int64_t>(e)] += w.dense[e];
    } else {
      for (const auto& [e, c] : w.sparse) merged[e] += c;
    }
  }
  for (const auto& [e, c] : merged) out.coefficients[en.unscaled(e)] = 2 * c;
  return out;
}

ThetaSeries theta(const Lattice& l, const Rational& max_norm) { return theta_of_gram(l.gram(), max_norm); }

Rational minimum(const Lattice& l) {
  Enumerator en(l.gram());
  return en.unscaled(minimum_scaled(en).first);
}

std::uint64_t kissing(const Lattice& l) {
  Enumerator en(l.gram());
  return 2 * minimum_scaled(en).second;
}

ShortVectors short_vectors(const RationalMatrix& gram, const Rational& bound, std::size_t budget) {
  Enumerator en(gram);
  ShortVectors out;
  out.dim = en.dim();
  out.scale = en.scale();
  const std::int64_t b = en.scaled_bound(bound);
  struct Collector {
    std::size_t dim;
    std::size_t cap;
    std::size_t seen = 0;
    std::vector<std::int64_t> ys, norms;
    void operator()(const std::int64_t* y, std::int64_t e) {
      if (++seen > cap) return;
      ys.insert(ys.end(), y, y + dim);
      norms.push_back(e);
    }
  };
  std::vector<Collector> workers(thread_count(), Collector{out.dim, budget / 2 + 1, 0, {}, {}});
  en.enumerate(b, workers);
  std::size_t total = 0;
  for (const auto& w : workers) total += w.seen;
  if (2 * total > budget) throw BudgetExceeded("short_vectors: more than " + std::to_string(budget) + " vectors below the bound");
  const std::size_t n = out.dim;
  // rows: (norm, coefficients...) so one lexicographic sort gives the order
  std::vector<std::int64_t> rows;
  rows.reserve(total * (n + 1));
  std::vector<std::int64_t> orig(n);
  for (const auto& w : workers)
    for (std::size_t r = 0; r < w.norms.size(); ++r) {
      en.to_original(w.ys.data() + r * n, orig.data());
      normalize_sign(orig.data(), n);
      rows.push_back(w.norms[r]);
      rows.insert(rows.end(), orig.begin(), orig.end());
    }
  sort_rows(rows, n + 1);
  out.coefficients.reserve(total * n);
  out.scaled_norms.reserve(total);
  for (std::size_t r = 0; r < total; ++r) {
    out.scaled_norms.push_back(rows[r * (n + 1)]);
    out.coefficients.insert(out.coefficients.end(), rows.begin() + r * (n + 1) + 1, rows.begin() + (r + 1) * (n + 1));
  }
  return out;
}

}  // namespace latnab
