#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "latnab/exact.hpp"
#include "latnab/parallel.hpp"

namespace latnab {

// An LLL-reduced integral copy of a positive definite rational Gram matrix.
// gram = U * G * U^T * scale, with G the input Gram.
struct ReducedGram {
  std::size_t n = 0;
  std::int64_t scale = 1;
  std::vector<std::int64_t> gram;       // n x n, row-major
  std::vector<std::int64_t> transform;  // U, n x n, row-major
  std::int64_t at(std::size_t i, std::size_t j) const { return gram[i * n + j]; }
};

ReducedGram reduce_gram(const RationalMatrix& gram);

// Fincke-Pohst enumeration of {y : 0 < y G y^T <= bound}, one of each +-y.
// Pruning uses a floating LDL^T with a half-unit margin on the integral
// scaled norms; every reported norm is the exact integer y G y^T.
class Enumerator {
 public:
  explicit Enumerator(const RationalMatrix& gram);

  const ReducedGram& reduced() const { return red_; }
  std::size_t dim() const { return red_.n; }
  std::int64_t scale() const { return red_.scale; }
  // Largest scaled norm <= bound.
  std::int64_t scaled_bound(const Rational& bound) const;
  Rational unscaled(std::int64_t scaled_norm) const { return ratio(Integer(static_cast<long>(scaled_norm)), Integer(static_cast<long>(red_.scale))); }
  // Coefficients in the original basis of the reduced-coordinate vector y.
  void to_original(const std::int64_t* y, std::int64_t* out) const;
  std::int64_t min_diagonal() const;

  // Visits each pair {y, -y} with 0 < norm <= bound once (the representative
  // has its last nonzero reduced coordinate positive). visitors[w] is used
  // by worker w only; the visit order is schedule dependent.
  template <class Visitor>
  void enumerate(std::int64_t bound, std::vector<Visitor>& visitors) const;

 private:
  struct Task {
    std::size_t level;
    std::int64_t value;
  };
  std::vector<Task> tasks(std::int64_t bound) const;
  template <class Visitor>
  void run_task(const Task& task, std::int64_t bound, Visitor& visit) const;

  ReducedGram red_;
  std::vector<double> d_;  // pivots
  std::vector<double> l_;  // l_[j * n + i] = coefficient of y_j in the level-i center, j > i
};

template <class Visitor>
void Enumerator::enumerate(std::int64_t bound, std::vector<Visitor>& visitors) const {
  if (bound <= 0 || visitors.empty()) return;
  auto list = tasks(bound);
  parallel_for(list.size(), static_cast<unsigned>(visitors.size()),
               [&](unsigned w, std::size_t i) { run_task(list[i], bound, visitors[w]); });
}

template <class Visitor>
void Enumerator::run_task(const Task& task, std::int64_t bound, Visitor& visit) const {
  const std::size_t n = red_.n;
  const double fbound = static_cast<double>(bound) + 0.5;
  std::vector<std::int64_t> y(n, 0), hi(n, 0), s(n, 0);
  std::vector<double> center(n, 0.0), proj(n + 1, 0.0);
  std::vector<std::int64_t> exact(n + 1, 0);
  const std::int64_t* g = red_.gram.data();

  const std::size_t top = task.level;
  y[top] = task.value;
  {
    double c = 0.0;
    std::int64_t sum = 0;
    for (std::size_t j = top + 1; j < n; ++j) {
      c -= l_[j * n + top] * static_cast<double>(y[j]);
      sum += g[top * n + j] * y[j];
    }
    double diff = static_cast<double>(y[top]) - c;
    proj[top] = d_[top] * diff * diff;
    exact[top] = y[top] * (g[top * n + top] * y[top] + 2 * sum);
    if (proj[top] > fbound) return;
  }
  if (top == 0) {
    if (exact[0] <= bound) visit(y.data(), exact[0]);
    return;
  }

  auto enter = [&](std::size_t i) {
    double c = 0.0;
    std::int64_t sum = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[j] == 0) continue;
      c -= l_[j * n + i] * static_cast<double>(y[j]);
      sum += g[i * n + j] * y[j];
    }
    center[i] = c;
    s[i] = sum;
    double rem = fbound - proj[i + 1];
    if (rem < 0) {
      y[i] = 1;
      hi[i] = 0;
      return;
    }
    double r = std::sqrt(rem / d_[i]);
    y[i] = static_cast<std::int64_t>(std::ceil(c - r));
    hi[i] = static_cast<std::int64_t>(std::floor(c + r));
  };

  std::size_t level = top - 1;
  enter(level);
  for (;;) {
    if (y[level] > hi[level]) {
      y[level] = 0;
      if (++level == top) return;
      ++y[level];
      continue;
    }
    if (level == 0) {
      const std::int64_t g00 = g[0];
      const std::int64_t base = exact[1];
      const std::int64_t twice = 2 * s[0];
      const std::int64_t last = hi[0];
      for (std::int64_t v = y[0]; v <= last; ++v) {
        std::int64_t e = base + v * (g00 * v + twice);
        if (e <= bound && e > 0) {
          y[0] = v;
          visit(static_cast<const std::int64_t*>(y.data()), e);
        }
      }
      y[0] = 1;
      hi[0] = 0;
      continue;
    }
    double diff = static_cast<double>(y[level]) - center[level];
    proj[level] = proj[level + 1] + d_[level] * diff * diff;
    if (proj[level] > fbound) {
      ++y[level];
      continue;
    }
    exact[level] = exact[level + 1] + y[level] * (g[level * n + level] * y[level] + 2 * s[level]);
    --level;
    enter(level);
  }
}

}  // namespace latnab
