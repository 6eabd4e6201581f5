#include <gtest/gtest.h>

#include "latnab/catalog.hpp"
#include "latnab/quotient.hpp"
#include "oracles.hpp"

using namespace latnab;

namespace {

struct Row {
  std::uint64_t count;
  bool paired;
  const char* norm;
  std::uint64_t order;
};

std::vector<ClassTableRow> rows(std::initializer_list<Row> r) {
  std::vector<ClassTableRow> out;
  for (const auto& x : r) out.push_back({x.count, x.paired, parse_rational(x.norm), x.order});
  return out;
}

}  // namespace

TEST(ClassTable, Lambda1To8AndBw16) {
  const std::vector<std::pair<const char*, std::vector<ClassTableRow>>> expected = {
      {"Lambda1", rows({{1, false, "0", 1}, {1, true, "1/4", 4}, {1, false, "1", 2}})},
      {"Lambda2", rows({{1, false, "0", 1}, {3, true, "1/3", 6}, {3, false, "1", 2}, {1, true, "4/3", 3}})},
      {"Lambda3", rows({{1, false, "0", 1}, {4, true, "3/8", 8}, {3, true, "1/2", 4}, {6, false, "1", 2},
                        {4, true, "11/8", 8}, {1, true, "3/2", 4}, {1, false, "2", 2}})},
      {"Lambda4", rows({{1, false, "0", 1}, {12, true, "1/2", 4}, {12, false, "1", 2}, {12, true, "3/2", 4},
                        {3, false, "2", 2}})},
      {"Lambda5", rows({{1, false, "0", 1}, {5, true, "1/2", 4}, {16, true, "5/8", 8}, {20, false, "1", 2},
                        {10, true, "3/2", 4}, {16, true, "13/8", 8}, {11, false, "2", 2}, {1, true, "5/2", 4}})},
      {"Lambda6", rows({{1, false, "0", 1}, {27, true, "2/3", 6}, {36, false, "1", 2}, {36, true, "5/3", 6},
                        {27, false, "2", 2}, {1, true, "8/3", 3}})},
      {"Lambda7", rows({{1, false, "0", 1}, {28, true, "3/4", 4}, {63, false, "1", 2}, {36, true, "7/4", 4},
                        {63, false, "2", 2}, {1, false, "3", 2}})},
      {"Lambda8", rows({{1, false, "0", 1}, {120, false, "1", 2}, {135, false, "2", 2}})},
      {"BW16", rows({{1, false, "0", 1}, {135, false, "2", 2}, {120, false, "3", 2}})},
  };
  for (const auto& [name, table] : expected) {
    Lattice l = catalog(name);
    auto got = class_table(l);
    EXPECT_EQ(got, table) << name;
    std::uint64_t total = 0;
    for (const auto& r : got) total += r.classes();
    EXPECT_EQ(Rational(static_cast<unsigned long>(total)), l.determinant()) << name;
  }
}

TEST(QuotientGroup, InvariantFactors) {
  QuotientGroup q = quotient_group(catalog("Lambda2"));
  EXPECT_EQ(q.order, 12);
  EXPECT_EQ(q.invariant_factors, (std::vector<Integer>{2, 6}));
  EXPECT_EQ(q.generators.size(), 2u);
  QuotientGroup bw = quotient_group(catalog("BW16"));
  EXPECT_EQ(bw.order, 256);
  EXPECT_EQ(bw.invariant_factors, std::vector<Integer>(8, 2));
  EXPECT_TRUE(quotient_group(catalog("Z5")).invariant_factors.empty());
  EXPECT_EQ(quotient_group(catalog("Z5")).order, 1);
  // Generator i has order exactly d_i in L#/L.
  Lattice l3 = catalog("Lambda3");
  QuotientGroup q3 = quotient_group(l3);
  EXPECT_EQ(q3.order, 32);
  EXPECT_EQ(q3.invariant_factors.back(), 8);
  for (std::size_t i = 0; i < q3.generators.size(); ++i) {
    long d = q3.invariant_factors[i].get_si();
    for (long k = 1; k <= d; ++k) {
      LatticeVector v = q3.generators[i];
      for (auto& x : v) x *= k;
      EXPECT_EQ(contains(l3, v), k == d) << i << " " << k;
    }
  }
  EXPECT_THROW(quotient_group(dual(catalog("Lambda2"))), DomainError);
}

TEST(DiscriminantGroup, GroupLaws) {
  DiscriminantGroup g(catalog("Lambda5"));
  ASSERT_EQ(g.order(), 128u);
  for (std::size_t a = 0; a < g.order(); a += 7) {
    EXPECT_EQ(g.add(a, g.negate(a)), 0u);
    for (std::size_t b = 0; b < g.order(); b += 11) {
      EXPECT_EQ(g.add(a, b), g.add(b, a));
      EXPECT_EQ(g.pairing(a, b), g.pairing(b, a));
    }
    std::size_t x = 0;
    for (std::uint64_t k = 0; k < g.element_order(a); ++k) x = g.add(x, a);
    EXPECT_EQ(x, 0u);
    EXPECT_EQ(g.index(g.element(a)), a);
    EXPECT_TRUE(contains(dual(g.lattice()), g.representative(a)));
  }
  EXPECT_THROW(DiscriminantGroup(catalog("BW16"), 100), BudgetExceeded);
}

TEST(CosetClasses, LeadersAreMinimal) {
  // Brute force: the least norm in each class over a box of dual vectors.
  for (const char* name : {"Lambda2", "Lambda3", "A1pow4", "D4"}) {
    Lattice l = catalog(name);
    DiscriminantGroup g(l);
    std::vector<Rational> best(g.order(), Rational(-1));
    best[0] = 0;
    Rational bound = 4;
    for (const auto& [norm, x] : oracle::box_vectors(g.dual_gram(), bound)) {
      std::size_t c = g.class_of(x);
      for (std::size_t k : {c, g.negate(c)})
        if (best[k] < 0 || norm < best[k]) best[k] = norm;
    }
    for (const auto& cls : coset_classes(l)) {
      ASSERT_GE(best[cls.index], 0) << name;
      EXPECT_EQ(cls.leader_norm, best[cls.index]) << name;
      EXPECT_EQ(l.norm(cls.leader), cls.leader_norm) << name;
    }
  }
}
