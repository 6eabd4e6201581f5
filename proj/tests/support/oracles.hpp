#pragma once

// Brute-force references for the unit and property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "latnab/exact.hpp"
#include "latnab/lattice.hpp"

namespace latnab::oracle {

inline Rational form(const RationalMatrix& g, const std::vector<std::int64_t>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) s += g(i, j) * x[i] * x[j];
  return s;
}

inline bool first_nonzero_positive(const std::vector<std::int64_t>& x) {
  for (auto v : x)
    if (v) return v > 0;
  return false;
}

// All x with 0 < x G x^T <= bound and first nonzero entry positive, found by
// scanning the box |x_i| <= sqrt(bound (G^-1)_ii).
inline std::set<std::pair<Rational, std::vector<std::int64_t>>> box_vectors(const RationalMatrix& g,
                                                                             const Rational& bound) {
  const std::size_t n = g.rows();
  RationalMatrix inv = inverse(g);
  std::vector<std::int64_t> reach(n);
  for (std::size_t i = 0; i < n; ++i)
    reach[i] = static_cast<std::int64_t>(std::floor(std::sqrt(Rational(bound * inv(i, i)).get_d()) + 1e-9));
  std::set<std::pair<Rational, std::vector<std::int64_t>>> out;
  std::vector<std::int64_t> x(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (!first_nonzero_positive(x)) return;
      Rational q = form(g, x);
      if (q <= bound) out.insert({q, x});
      return;
    }
    for (std::int64_t v = -reach[i]; v <= reach[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline IntegerMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntegerMatrix u = IntegerMatrix::identity(n);
  if (n < 2) {
    if (rng() & 1) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    int c = coef(rng);
    for (std::size_t j = 0; j < n; ++j) u(a, j) += c * u(b, j);
    if (rng() % 4 == 0) u.swap_rows(a, b);
  }
  if (rng() & 1)
    for (std::size_t j = 0; j < n; ++j) u(0, j) = -u(0, j);
  return u;
}

// Gram matrix B B^T of a random nonsingular integer basis, divided by a
// small random square so denominators appear.
inline RationalMatrix random_gram(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> entry(-3, 3);
  for (;;) {
    RationalMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = entry(rng);
    if (det(b) == 0) continue;
    RationalMatrix g = b * b.transpose();
    static const int denominators[] = {1, 1, 2, 3};
    return scaled(g, ratio(1, denominators[rng() % 4]));
  }
}

// Every integral M with L <= M <= L#, found as sublattices of L# in Hermite
// form (coordinates in the dual basis) of every index dividing [L#:L].
inline std::uint64_t hnf_census(const Lattice& l) {
  Lattice d = dual(l);
  const std::size_t n = l.dim();
  // Rows of L in dual-basis coordinates are the rows of the Gram matrix.
  auto [gi, gden] = clear_denominators(l.gram());
  if (gden != 1) return 0;
  std::int64_t order = std::abs(det(gi).get_si());
  std::uint64_t count = 0;
  RationalMatrix dual_gram = d.gram();
  IntegerMatrix h(n, n);
  std::function<void(std::size_t, std::int64_t)> diag = [&](std::size_t i, std::int64_t prod) {
    if (i == n) {
      // Fill above-diagonal entries in [0, pivot of their column).
      std::vector<std::pair<std::size_t, std::size_t>> cells;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) cells.push_back({r, c});
      std::function<void(std::size_t)> fill = [&](std::size_t k) {
        if (k == cells.size()) {
          RationalMatrix hq = to_rational(h);
          RationalMatrix hinv = inverse(hq);
          // L inside M: rows of G times H^-1 integral.
          RationalMatrix coords = to_rational(gi) * hinv;
          for (const auto& q : coords.data())
            if (!is_integer(q)) return;
          RationalMatrix mg = hq * dual_gram * hq.transpose();
          for (const auto& q : mg.data())
            if (!is_integer(q)) return;
          ++count;
          return;
        }
        auto [r, c] = cells[k];
        std::int64_t pivot = h(c, c).get_si();
        for (std::int64_t v = 0; v < pivot; ++v) {
          h(r, c) = v;
          fill(k + 1);
        }
        h(r, c) = 0;
      };
      fill(0);
      return;
    }
    for (std::int64_t p = 1; p * prod <= order; ++p) {
      if (order % (p * prod)) continue;
      h(i, i) = p;
      diag(i + 1, p * prod);
    }
  };
  diag(0, 1);
  return count;
}

// Exhaustive isometry test: every assignment of a-vectors of the right
// norms to the basis of b.
inline bool brute_isometric(const RationalMatrix& ga, const RationalMatrix& gb) {
  const std::size_t n = ga.rows();
  if (gb.rows() != n || det(ga) != det(gb)) return false;
  std::vector<std::vector<std::vector<std::int64_t>>> images(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [q, x] : box_vectors(ga, gb(i, i))) {
      if (q != gb(i, i)) continue;
      images[i].push_back(x);
      images[i].push_back(x);
      for (auto& v : images[i].back()) v = -v;
    }
  }
  std::vector<std::vector<std::int64_t>> chosen(n);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return true;
    for (const auto& x : images[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        Rational ip = 0;
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) ip += ga(r, c) * x[r] * chosen[j][c];
        ok = ip == gb(i, j);
      }
      if (!ok) continue;
      chosen[i] = x;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

inline Rational min_diagonal(const RationalMatrix& g) {
  Rational m = g(0, 0);
  for (std::size_t i = 1; i < g.rows(); ++i) m = std::min(m, Rational(g(i, i)));
  return m;
}

}  // namespace latnab::oracle
