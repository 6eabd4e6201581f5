#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latnab/isometry.hpp"
#include "latnab/quotient.hpp"

namespace latnab {

// An integral subgroup H of L#/L, standing for the overlattice L + H.
struct CensusMember {
  std::vector<std::size_t> generators;  // class indices
  std::vector<std::size_t> elements;    // sorted class indices
  std::uint64_t order() const { return elements.size(); }
};

struct CensusBucket {
  Fingerprint fingerprint;
  std::size_t representative = 0;  // member index
  std::uint64_t count = 0;
  std::optional<std::string> name;
};

struct CatalogCandidate {
  std::string name;
  Lattice lattice;
};

enum class ClassifyPolicy { Auto, Fast, Strict };

class OverlatticeCensus {
 public:
  OverlatticeCensus(const Lattice& base, std::uint64_t order_bound);

  const Lattice& base() const { return group_->lattice(); }
  const DiscriminantGroup& group() const { return *group_; }
  const std::vector<CensusMember>& members() const { return members_; }
  std::uint64_t total() const { return members_.size(); }
  Lattice lattice(std::size_t member) const;

  bool classified() const { return classified_; }
  ClassifyPolicy policy() const { return policy_; }
  const std::vector<CensusBucket>& buckets() const { return buckets_; }
  // Bucket index of every member, filled by classify_census.
  const std::vector<std::size_t>& assignment() const { return assignment_; }

 private:
  friend OverlatticeCensus integral_overlattices(const Lattice&, std::uint64_t);
  friend OverlatticeCensus classify_census(OverlatticeCensus, ClassifyPolicy, const std::vector<CatalogCandidate>&);
  std::shared_ptr<const DiscriminantGroup> group_;
  std::vector<CensusMember> members_;
  bool classified_ = false;
  ClassifyPolicy policy_ = ClassifyPolicy::Auto;
  std::vector<CensusBucket> buckets_;
  std::vector<std::size_t> assignment_;
};

// Every subgroup H of L#/L whose preimage is integral, the trivial one
// included, ordered by (|H|, elements).
OverlatticeCensus integral_overlattices(const Lattice& l, std::uint64_t order_bound = kDefaultQuotientBound);

// Auto means Strict up to dimension 8 and Fast beyond. Fast buckets members
// by (determinant, parity, theta prefix, root profile); a bucket is named by
// the candidate with that invariant tuple, and the call throws unless the
// candidates are pairwise separated by it and every bucket finds one. With no
// candidates the buckets stay unnamed.
// Strict splits buckets by exact isometry and names classes by isometry.
OverlatticeCensus classify_census(OverlatticeCensus census, ClassifyPolicy policy = ClassifyPolicy::Auto,
                                  const std::vector<CatalogCandidate>& candidates = {});

std::string to_string(ClassifyPolicy p);

}  // namespace latnab
