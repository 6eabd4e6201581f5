#pragma once

#include <cstdint>
#include <vector>

namespace latnab::detail {

// Rank over Q of integer vectors, fraction-free.
class Echelon {
 public:
  explicit Echelon(std::size_t n) : n_(n) {}
  std::size_t rank() const { return pivots_.size(); }
  void insert(const std::int64_t* v) {
    if (pivots_.size() == n_) return;
    std::vector<__int128> x(v, v + n_);
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      std::size_t p = pivots_[r];
      if (x[p] == 0) continue;
      const auto& row = rows_[r];
      __int128 a = row[p], b = x[p];
      for (std::size_t j = 0; j < n_; ++j) x[j] = a * x[j] - b * row[j];
      normalize(x);
    }
    for (std::size_t j = 0; j < n_; ++j)
      if (x[j] != 0) {
        pivots_.push_back(j);
        rows_.push_back(std::move(x));
        return;
      }
  }

 private:
  static __int128 abs128(__int128 v) { return v < 0 ? -v : v; }
  void normalize(std::vector<__int128>& x) const {
    __int128 g = 0;
    for (auto v : x) {
      __int128 a = abs128(v), b = g;
      while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
      }
      g = a;
    }
    if (g > 1)
      for (auto& v : x) v /= g;
  }
  std::size_t n_;
  std::vector<std::size_t> pivots_;
  std::vector<std::vector<__int128>> rows_;
};

}  // namespace latnab::detail
