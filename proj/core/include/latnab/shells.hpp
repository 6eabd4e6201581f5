#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "latnab/lattice.hpp"

namespace latnab {

inline constexpr std::size_t kDefaultVectorBudget = 2'000'000;

// s_m(L) in basis coefficients. Stored as count/2 representatives whose
// first nonzero coefficient is positive, sorted lexicographically; the full
// shell in canonical order is r0, -r0, r1, -r1, ...
struct Shell {
  Rational norm;
  std::size_t dim = 0;
  std::uint64_t count = 0;
  bool materialized = false;
  std::vector<std::int32_t> half;

  std::size_t half_size() const { return dim ? half.size() / dim : 0; }
  const std::int32_t* representative(std::size_t i) const { return half.data() + i * dim; }
  std::vector<std::int64_t> coefficients(std::size_t i) const;
};

Shell shell(const Lattice& l, const Rational& m, std::size_t budget = kDefaultVectorBudget);

struct ThetaSeries {
  Rational max_norm;
  std::map<Rational, std::uint64_t> coefficients;
  std::uint64_t at(const Rational& norm) const;
};

ThetaSeries theta(const Lattice& l, const Rational& max_norm);
ThetaSeries theta_of_gram(const RationalMatrix& gram, const Rational& max_norm);
Rational minimum(const Lattice& l);
std::uint64_t kissing(const Lattice& l);

// Every vector with 0 < norm <= bound, one of each pair +-v, in basis
// coefficients (first nonzero positive), sorted by (norm, coefficients).
struct ShortVectors {
  std::size_t dim = 0;
  std::int64_t scale = 1;                 // norms are scaled_norms / scale
  std::vector<std::int64_t> coefficients;  // half set, row-major
  std::vector<std::int64_t> scaled_norms;
  std::size_t size() const { return scaled_norms.size(); }
  const std::int64_t* vector(std::size_t i) const { return coefficients.data() + i * dim; }
};

ShortVectors short_vectors(const RationalMatrix& gram, const Rational& bound, std::size_t budget = kDefaultVectorBudget);

}  // namespace latnab
