#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latnab/enumerate.hpp"
#include "latnab/lattice.hpp"

namespace latnab {

inline constexpr std::uint64_t kDefaultQuotientBound = 4096;

// L#/L for an integral lattice L. With S G T = D the Smith form of the
// integral Gram G, the dual vector a G^-1 B (a an integer row) lies in the
// class with components (a T)_i mod d_i over the nontrivial factors d_i.
// Elements are indexed in mixed radix over those components.
class DiscriminantGroup {
 public:
  explicit DiscriminantGroup(const Lattice& l, std::uint64_t order_bound = kDefaultQuotientBound);

  const Lattice& lattice() const { return lattice_; }
  std::uint64_t order() const { return order_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  std::int64_t exponent() const { return exponent_; }
  const RationalMatrix& dual_gram() const { return dual_gram_; }
  const IntegerMatrix& transform() const { return t_; }
  const IntegerMatrix& transform_inverse() const { return t_inverse_; }

  std::vector<std::int64_t> element(std::size_t index) const;
  std::size_t index(std::span<const std::int64_t> components) const;
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t negate(std::size_t a) const;
  std::uint64_t element_order(std::size_t a) const;
  // E * (x, y) mod E for classes x, y; zero iff the pairing is integral.
  std::int64_t pairing(std::size_t a, std::size_t b) const;

  // Class of sum_i a_i e#_i.
  std::size_t class_of(std::span<const std::int64_t> dual_coefficients) const;
  // Dual-basis coefficients of the standard representative of a class.
  std::vector<std::int64_t> representative_coefficients(std::size_t index) const;
  LatticeVector dual_vector(std::span<const std::int64_t> dual_coefficients) const;
  LatticeVector representative(std::size_t index) const { return dual_vector(representative_coefficients(index)); }


 private:
  friend class DualEnumeration;
  Lattice lattice_;
  std::uint64_t order_ = 1;
  std::vector<Integer> factors_;
  std::vector<std::size_t> nontrivial_;  // positions of factors > 1
  std::vector<std::int64_t> moduli_;
  std::vector<std::size_t> strides_;
  std::int64_t exponent_ = 1;
  IntegerMatrix t_;
  IntegerMatrix t_inverse_;
  RationalMatrix dual_gram_;
  RationalMatrix dual_basis_;
  std::vector<std::int64_t> pair_;  // r x r, E * (g_i, g_j) mod E
};

// Fincke-Pohst over L# that also reports the class of each vector.
// Visitors are called as visit(y, scaled_norm, class) once per pair +-v,
// with y in the enumerator's reduced coordinates; -v lies in negate(class).
class DualEnumeration {
 public:
  explicit DualEnumeration(const DiscriminantGroup& group);

  const Enumerator& enumerator() const { return en_; }
  std::size_t class_of_reduced(const std::int64_t* y) const;
  void dual_coefficients(const std::int64_t* y, std::int64_t* a) const { en_.to_original(y, a); }

  template <class Visitor>
  void run(const Rational& bound, std::vector<Visitor>& visitors) const {
    struct Wrapped {
      const DualEnumeration* self;
      Visitor* inner;
      void operator()(const std::int64_t* y, std::int64_t e) { (*inner)(y, e, self->class_of_reduced(y)); }
    };
    std::vector<Wrapped> wrapped;
    wrapped.reserve(visitors.size());
    for (auto& v : visitors) wrapped.push_back(Wrapped{this, &v});
    en_.enumerate(en_.scaled_bound(bound), wrapped);
  }

 private:
  const DiscriminantGroup* group_;
  Enumerator en_;
  std::vector<std::int64_t> class_rows_;  // n x r: (U T) mod d
};

struct QuotientGroup {
  Integer order;
  std::vector<Integer> invariant_factors;  // the factors > 1
  std::vector<LatticeVector> generators;  // one per factor, of that order
};

QuotientGroup quotient_group(const Lattice& l);

struct CosetClass {
  std::size_t index = 0;
  std::vector<std::int64_t> components;
  LatticeVector leader;
  std::vector<std::int64_t> leader_coefficients;  // in the dual basis
  Rational leader_norm;
  std::uint64_t group_order = 1;
  bool is_self_negative = true;
  std::size_t negative = 0;
};

// One entry per element of L#/L, ordered by (leader norm, order, leader).
std::vector<CosetClass> coset_classes(const Lattice& l, std::uint64_t order_bound = kDefaultQuotientBound);

struct ClassTableRow {
  std::uint64_t count = 0;  // pairs when `paired`, classes otherwise
  bool paired = false;
  Rational norm;
  std::uint64_t order = 1;
  std::uint64_t classes() const { return paired ? 2 * count : count; }
  friend bool operator==(const ClassTableRow&, const ClassTableRow&) = default;
};

// Rows grouped by (leader norm, order); self-negative classes are counted
// plainly, the others as +- pairs.
std::vector<ClassTableRow> class_table(const std::vector<CosetClass>& classes);
std::vector<ClassTableRow> class_table(const Lattice& l, std::uint64_t order_bound = kDefaultQuotientBound);

}  // namespace latnab
