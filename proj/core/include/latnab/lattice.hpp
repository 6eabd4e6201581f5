#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latnab/exact.hpp"

namespace latnab {

// Coordinates of a point in the ambient space of a lattice.
using LatticeVector = RationalVector;

// The ambient rational space. `form` is the identity for the orthonormal
// frame; other forms arise from Gram matrices with no rational embedding.
struct Ambient {
  RationalMatrix form;
  bool euclidean = true;

  std::size_t dim() const { return form.rows(); }
  Rational inner(std::span<const Rational> a, std::span<const Rational> b) const;
  friend bool operator==(const Ambient& a, const Ambient& b) { return a.form == b.form; }
};
using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr euclidean_ambient(std::size_t dim);
AmbientPtr form_ambient(const RationalMatrix& form);

struct CanonicalBasis {
  IntegerMatrix hnf;
  Integer denominator;
  friend bool operator==(const CanonicalBasis& a, const CanonicalBasis& b) {
    return a.denominator == b.denominator && a.hnf == b.hnf;
  }
};

class Lattice {
 public:
  Lattice() = default;
  Lattice(AmbientPtr ambient, RationalMatrix basis, std::string name = {});

  static Lattice from_basis(const RationalMatrix& rows, std::string name = {});
  static Lattice from_basis(const std::vector<LatticeVector>& rows, std::string name = {});
  // Embeds G in the orthonormal frame when its LDL^T pivots are rational
  // squares; otherwise the result is gram-only (ambient form G, basis I).
  static Lattice from_gram(const RationalMatrix& gram, std::string name = {});
  static Lattice gram_only(const RationalMatrix& gram, std::string name = {});

  std::size_t dim() const { return basis_.rows(); }
  const RationalMatrix& basis() const { return basis_; }
  const RationalMatrix& gram() const { return gram_; }
  const Rational& determinant() const { return det_; }
  bool is_gram_only() const { return !ambient_->euclidean; }
  const AmbientPtr& ambient() const { return ambient_; }
  const std::string& name() const { return name_; }
  Lattice named(std::string name) const;

  Rational inner(const LatticeVector& a, const LatticeVector& b) const { return ambient_->inner(a, b); }
  Rational norm(const LatticeVector& v) const { return ambient_->inner(v, v); }
  LatticeVector basis_vector(std::size_t i) const { return basis_.row_vector(i); }
  LatticeVector combination(std::span<const Rational> coeffs) const { return row_times(coeffs, basis_); }
  LatticeVector combination(std::span<const std::int64_t> coeffs) const;
  // Coefficients of v with respect to the basis rows.
  RationalVector coordinates(const LatticeVector& v) const;
  const RationalMatrix& basis_inverse() const;
  const CanonicalBasis& canonical() const;
  // Gram = gram_int / scale with scale the lcm of entry denominators.
  std::pair<IntegerMatrix, Integer> integer_gram() const { return clear_denominators(gram_); }

 private:
  struct Cache;
  AmbientPtr ambient_;
  RationalMatrix basis_;
  RationalMatrix gram_;
  Rational det_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

Lattice dual(const Lattice& l);
bool contains(const Lattice& l, const LatticeVector& v);
bool is_integral(const Lattice& l);
bool is_even(const Lattice& l);
// Same ambient space and same point set.
bool equals(const Lattice& a, const Lattice& b);
Integer index_in(const Lattice& sub, const Lattice& sup);
Lattice adjoin(const Lattice& l, const std::vector<LatticeVector>& xs);
Lattice orthogonal_sum(const Lattice& a, const Lattice& b);
// Multiplies the form by `factor`; stays in the orthonormal frame when
// factor is a rational square.
Lattice rescale(const Lattice& l, const Rational& factor);
// New basis U * B for a unimodular U.
Lattice change_basis(const Lattice& l, const IntegerMatrix& u);

class NeighborError : public DomainError {
 public:
  enum class Kind { NotProperCoset, IndexNotTwo, NonIntegral };
  NeighborError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// The index-2 overlattice L u (x + L).
Lattice neighbor(const Lattice& l, const LatticeVector& x);

// "a/b,c,..." or whitespace separated.
LatticeVector parse_vector(std::string_view text);
std::string format_vector(std::span<const Rational> v);

}  // namespace latnab
