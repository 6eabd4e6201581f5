#include <gtest/gtest.h>

#include "latnab/catalog.hpp"
#include "latnab/overlattice.hpp"
#include "latnab/reproduce.hpp"
#include "oracles.hpp"

using namespace latnab;

namespace {

// Integral subgroups of L#/L by exhaustive subset search.
std::uint64_t brute_subgroups(const DiscriminantGroup& g) {
  const std::size_t n = g.order();
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - 1)); ++mask) {
    std::vector<std::size_t> h{0};
    for (std::size_t i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) h.push_back(i);
    std::vector<bool> in(n);
    for (auto a : h) in[a] = true;
    bool ok = true;
    for (auto a : h)
      for (auto b : h) ok = ok && in[g.add(a, b)] && g.pairing(a, b) == 0;
    if (ok) ++count;
  }
  return count;
}

}  // namespace

TEST(Census, TotalsMatchHermiteOracle) {
  for (const char* name : {"Lambda1", "Lambda2", "Lambda3", "Lambda4", "A2", "A1pow4", "D4", "Z2"}) {
    Lattice l = catalog(name);
    EXPECT_EQ(integral_overlattices(l).total(), oracle::hnf_census(l)) << name;
  }
}

TEST(Census, Lambda3HasElevenMembers) {
  // The printed census lists twelve; the oracle agrees with eleven.
  EXPECT_EQ(integral_overlattices(catalog("Lambda3")).total(), 11u);
}

TEST(Census, TotalsMatchSubsetSearch) {
  for (const char* name : {"Lambda1", "Lambda2", "A1pow4", "D4", "A3", "Lambda4(eps1)", "A1pow2 perp A2"}) {
    Lattice l = catalog(name);
    DiscriminantGroup g(l);
    ASSERT_LE(g.order(), 16u) << name;
    EXPECT_EQ(integral_overlattices(l).total(), brute_subgroups(g)) << name;
  }
}

TEST(Census, MembersAreIntegralOverlattices) {
  Lattice l = catalog("Lambda4");
  OverlatticeCensus c = integral_overlattices(l);
  EXPECT_EQ(c.total(), 38u);
  EXPECT_EQ(c.members().front().order(), 1u);
  for (std::size_t i = 0; i < c.total(); i += 5) {
    Lattice m = c.lattice(i);
    EXPECT_TRUE(is_integral(m));
    EXPECT_EQ(index_in(l, m), c.members()[i].order());
    EXPECT_EQ(m.determinant() * c.members()[i].order() * c.members()[i].order(), l.determinant());
  }
}

TEST(Census, BudgetIsEnforced) {
  EXPECT_THROW(integral_overlattices(catalog("Lambda8"), 100), BudgetExceeded);
}

TEST(Classify, StrictAndFastAgree) {
  for (const char* name : {"Lambda4", "Lambda6"}) {
    std::vector<CatalogCandidate> candidates;
    for (const auto& n : reference_census_names(name)) candidates.push_back({n, catalog(n)});
    Lattice l = catalog(name);
    OverlatticeCensus fast = classify_census(integral_overlattices(l), ClassifyPolicy::Fast, candidates);
    OverlatticeCensus strict = classify_census(integral_overlattices(l), ClassifyPolicy::Strict, candidates);
    EXPECT_EQ(strict.policy(), ClassifyPolicy::Strict);
    EXPECT_EQ(strict.assignment().size(), strict.total());
    std::map<std::string, std::uint64_t> f, s;
    for (const auto& b : fast.buckets()) f[b.name.value_or("?")] += b.count;
    for (const auto& b : strict.buckets()) s[b.name.value_or("?")] += b.count;
    EXPECT_EQ(f, s) << name;
    EXPECT_EQ(fast.buckets().size(), strict.buckets().size()) << name;
  }
}

TEST(Classify, Lambda4Buckets) {
  std::vector<CatalogCandidate> candidates;
  for (const auto& n : reference_census_names("Lambda4")) candidates.push_back({n, catalog(n)});
  OverlatticeCensus c = classify_census(integral_overlattices(catalog("Lambda4")), ClassifyPolicy::Strict, candidates);
  std::map<std::string, std::uint64_t> got;
  for (const auto& b : c.buckets()) got[b.name.value_or("?")] += b.count;
  EXPECT_EQ(got, (std::map<std::string, std::uint64_t>{{"Lambda4", 1}, {"Lambda4(eps1)", 12}, {"A1pow4", 3},
                                                       {"Lambda4(eps1,eps2)", 18}, {"D4", 1}, {"Z4", 3}}));
}

TEST(Classify, FastWithoutCandidatesLeavesBucketsUnnamed) {
  OverlatticeCensus c = classify_census(integral_overlattices(catalog("Lambda2")), ClassifyPolicy::Fast, {});
  ASSERT_EQ(c.buckets().size(), 2u);
  for (const auto& b : c.buckets()) EXPECT_FALSE(b.name.has_value());
}

TEST(Classify, FastRejectsInseparableCandidates) {
  std::vector<CatalogCandidate> same{{"a", catalog("Lambda2")}, {"b", catalog("sqrt2*A2")}};
  EXPECT_THROW(classify_census(integral_overlattices(catalog("Lambda2")), ClassifyPolicy::Fast, same), Error);
  std::vector<CatalogCandidate> partial{{"Lambda2", catalog("Lambda2")}};
  EXPECT_THROW(classify_census(integral_overlattices(catalog("Lambda2")), ClassifyPolicy::Fast, partial), Error);
}
