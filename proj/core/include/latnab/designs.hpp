#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latnab/lattice.hpp"
#include "latnab/shells.hpp"

namespace latnab {

inline constexpr int kDefaultTCap = 11;
inline constexpr std::uint64_t kDefaultPairwiseBudget = 100'000;

// Finite points of equal norm with (x, y) = x F y^T / scale. An antipodal set
// stores one point of each pair +-x.
struct PointSet {
  std::size_t dim = 0;
  std::vector<std::int64_t> coords;  // row-major
  std::vector<std::int64_t> form;    // dim x dim, symmetric
  std::int64_t scale = 1;
  Rational norm;
  bool antipodal = true;

  std::size_t rows() const { return dim ? coords.size() / dim : 0; }
  std::uint64_t size() const { return antipodal ? 2 * rows() : rows(); }
  const std::int64_t* point(std::size_t i) const { return coords.data() + i * dim; }
};

// The shell in ambient coordinates when the lattice is Euclidean, otherwise
// in basis coefficients against the Gram matrix.
PointSet points(const Lattice& l, const Shell& s);
// Arbitrary points under the given form; throws unless all norms agree.
PointSet points(const std::vector<RationalVector>& xs, const RationalMatrix& form, bool antipodal_half = false);

enum class DesignMethod { Pairwise, TensorMoment };

std::size_t span_dimension(const PointSet& x);

struct DistanceSet {
  bool exceeded = false;
  std::vector<Rational> raw;         // (x, y), x != y
  std::vector<Rational> normalized;  // (x, y) / m
  std::size_t s() const { return normalized.size(); }
};
DistanceSet distance_set(const PointSet& x, std::uint64_t budget = kDefaultPairwiseBudget);

// S_k = sum over ordered pairs of (x, y)^k for k = 0..kmax.
std::vector<Rational> moment_sums(const PointSet& x, int kmax, DesignMethod method);
// c_k n^2 m^k for a set of n points of norm m spanning dimension d.
Rational moment_target(int k, std::size_t d, std::uint64_t n, const Rational& m);

struct Strength {
  enum class Kind { Exact, Unbounded, AtLeast };
  Kind kind = Kind::Exact;
  int t = 0;
  std::string str() const;
  friend bool operator==(const Strength&, const Strength&) = default;
};

Strength design_strength(const PointSet& x, int t_cap = kDefaultTCap, DesignMethod method = DesignMethod::Pairwise);

struct DesignReport {
  Rational norm;
  std::size_t d = 0;
  std::uint64_t n = 0;
  DistanceSet distances;
  Strength t;
  DesignMethod method = DesignMethod::Pairwise;
};

// Pairwise when n <= budget; otherwise the tensor-moment method for t, with
// the distance set marked exceeded. Throws BudgetExceeded past the
// tensor budget or when the tensor path is disabled.
DesignReport configuration(const Lattice& l, const Rational& m, int t_cap = kDefaultTCap,
                           std::uint64_t budget = kDefaultPairwiseBudget, bool allow_tensor = true,
                           std::uint64_t tensor_budget = 1'000'000);
DesignReport configuration(const PointSet& x, int t_cap = kDefaultTCap, std::uint64_t budget = kDefaultPairwiseBudget,
                           bool allow_tensor = true);

bool is_strongly_perfect(const Lattice& l);

std::string to_string(DesignMethod m);

}  // namespace latnab
