#include <gtest/gtest.h>

#include <random>

#include "latnab/catalog.hpp"
#include "latnab/isometry.hpp"
#include "latnab/lattice.hpp"
#include "latnab/shells.hpp"
#include "latnab/venkov.hpp"
#include "oracles.hpp"

using namespace latnab;

namespace {

RationalMatrix ints(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto row : rows) {
    r.emplace_back();
    for (long v : row) r.back().push_back(v);
  }
  return RationalMatrix::from_rows(r);
}

LatticeVector eps(std::size_t dim, std::initializer_list<std::size_t> ones) {
  LatticeVector v(dim);
  for (auto i : ones) v[i - 1] = 1;
  return v;
}

const std::vector<std::string> kCatalogSample = {
    "Z1", "Z5", "A2", "A4", "D4", "D5", "E6", "E7", "E8", "A1pow4", "D4pow2", "D8pow2",
    "Lambda1", "Lambda2", "Lambda3", "Lambda4", "Lambda5", "Lambda6", "Lambda7", "Lambda8",
    "BW16", "BW16alt", "O16", "O7", "O1", "Lambda16_2_1", "Lambda16_2_2", "Lambda16_2_3",
    "Lambda16_2_1prime", "Lambda16_2_2prime", "Lambda16_2_3prime", "D16plus", "E8perpE8",
    "sqrt2*E8", "Lambda7(o,eps1)", "E8 perp Z1", "A2^3"};

}  // namespace

TEST(FromBasis, Examples) {
  Lattice bw = catalog("BW16");
  EXPECT_EQ(bw.determinant(), 256);
  EXPECT_EQ(Lattice::from_basis(RationalMatrix::identity(5)).determinant(), 1);
  EXPECT_THROW(Lattice::from_basis(ints({{1, 2}, {2, 4}})), DomainError);
  EXPECT_THROW(Lattice::from_basis(std::vector<LatticeVector>{{1, 0}, {0}}), DomainError);
}

TEST(FromGram, Examples) {
  Lattice l2 = Lattice::from_gram(ints({{4, -2}, {-2, 4}}));
  EXPECT_EQ(l2.determinant(), 12);
  Lattice l1 = Lattice::from_gram(ints({{4}}));
  EXPECT_EQ(l1.determinant(), 4);
  EXPECT_TRUE(equals(l1, Lattice::from_basis(ints({{2}}))));
  EXPECT_EQ(Lattice::from_gram(catalog("Lambda5").gram()).determinant(), 128);
  EXPECT_THROW(Lattice::from_gram(ints({{1, 2}, {3, 1}})), DomainError);
  EXPECT_THROW(Lattice::from_gram(ints({{1, 2}, {2, 1}})), DomainError);
}

TEST(FromGram, IrrationalEmbeddingIsGramOnly) {
  Lattice l = Lattice::from_gram(ints({{2}}));
  EXPECT_TRUE(l.is_gram_only());
  EXPECT_EQ(l.gram(), ints({{2}}));
  EXPECT_FALSE(Lattice::from_gram(ints({{4, -2}, {-2, 4}})).is_gram_only() &&
               Lattice::from_gram(ints({{1, 0}, {0, 1}})).is_gram_only());
}

TEST(Catalog, LaminatedDeterminants) {
  const long expected[] = {4, 12, 32, 64, 128, 192, 256, 256};
  for (int n = 1; n <= 8; ++n) {
    Lattice l = catalog("Lambda" + std::to_string(n));
    EXPECT_EQ(l.determinant(), expected[n - 1]) << n;
    EXPECT_EQ(minimum(l), 4) << n;
    EXPECT_TRUE(is_even(l)) << n;
  }
}

TEST(Catalog, Bw16AltMatchesBw16) {
  Lattice a = catalog("BW16"), b = catalog("BW16alt");
  EXPECT_TRUE(b.is_gram_only());
  EXPECT_EQ(a.determinant(), b.determinant());
  EXPECT_EQ(theta(a, 6).coefficients, theta(b, 6).coefficients);
  EXPECT_EQ(fingerprint(a), fingerprint(b));
}

TEST(Catalog, EvenUnimodularSixteen) {
  for (const char* name : {"E8perpE8", "D16plus"}) {
    Lattice l = catalog(name);
    EXPECT_EQ(l.determinant(), 1) << name;
    EXPECT_TRUE(is_even(l)) << name;
    EXPECT_EQ(minimum(l), 2) << name;
    EXPECT_EQ(kissing(l), 480u) << name;
  }
  EXPECT_EQ(catalog("Lambda6").determinant(), 192);
}

TEST(Catalog, GlueVectorsAndErrors) {
  EXPECT_EQ(glue_vector("g1"), eps(16, {1, 5, 9, 13}));
  EXPECT_EQ(glue_vector("f").size(), 8u);
  EXPECT_THROW(catalog("Lambda9"), DomainError);
  EXPECT_THROW(catalog("BW16(e99)"), DomainError);
  EXPECT_THROW(glue_vector("g12"), DomainError);
  EXPECT_FALSE(catalog_names().empty());
}

TEST(Catalog, O16IsTheBw16Neighbor) {
  EXPECT_TRUE(equals(catalog("O16"), catalog_O16()));
  EXPECT_TRUE(equals(catalog("O16"), adjoin(catalog("BW16"), {glue_vector("f1")})));
}

TEST(Dual, Examples) {
  Lattice z = catalog("Z4");
  EXPECT_TRUE(equals(dual(z), z));
  EXPECT_TRUE(equals(dual(catalog("Lambda1")), Lattice::from_basis(std::vector<LatticeVector>{{ratio(1, 2)}})));
  Lattice bw = catalog("BW16");
  Lattice d = dual(bw);
  EXPECT_EQ(d.determinant(), ratio(1, 256));
  for (std::size_t i = 0; i < 16; ++i) {
    LatticeVector v = d.basis_vector(i);
    for (auto& q : v) q *= 2;
    EXPECT_TRUE(contains(bw, v));
  }
}

TEST(Dual, InvolutionCatalogWide) {
  for (const auto& name : kCatalogSample) {
    Lattice l = catalog(name);
    EXPECT_TRUE(equals(dual(dual(l)), l)) << name;
    EXPECT_EQ(dual(l).determinant() * l.determinant(), 1) << name;
  }
}

TEST(Contains, Examples) {
  Lattice bw = catalog("BW16");
  EXPECT_TRUE(contains(bw, eps(16, {1, 5, 9, 13})));
  EXPECT_FALSE(contains(catalog("Lambda1"), LatticeVector{1}));
  EXPECT_TRUE(contains(bw, LatticeVector(16)));
  EXPECT_THROW(contains(bw, LatticeVector(3)), DomainError);
}

TEST(Parity, Examples) {
  EXPECT_TRUE(is_integral(catalog("BW16")));
  EXPECT_TRUE(is_even(catalog("BW16")));
  Lattice o16 = catalog("O16");
  EXPECT_TRUE(is_integral(o16));
  EXPECT_FALSE(is_even(o16));
  EXPECT_EQ(minimum(o16), 3);
  EXPECT_FALSE(is_integral(dual(catalog("Lambda2"))));
}

TEST(Index, Examples) {
  Lattice bw = catalog("BW16");
  EXPECT_EQ(index_in(bw, catalog("O16")), 2);
  EXPECT_EQ(index_in(bw, bw), 1);
  EXPECT_EQ(index_in(catalog("Lambda8"), catalog("Lambda8(eps1,eps2,eps3)")), 8);
  EXPECT_THROW(index_in(catalog("Z2"), catalog("Lambda2")), DomainError);
}

TEST(Adjoin, Examples) {
  Lattice bw = catalog("BW16");
  Lattice o16 = adjoin(bw, {glue_vector("f1")});
  // Every basis vector of O16 lies in BW16 or in f1 + BW16.
  LatticeVector f1 = glue_vector("f1");
  for (std::size_t i = 0; i < 16; ++i) {
    LatticeVector v = o16.basis_vector(i), w = v;
    for (std::size_t j = 0; j < 16; ++j) w[j] -= f1[j];
    EXPECT_TRUE(contains(bw, v) || contains(bw, w));
  }
  Lattice l4 = catalog("Lambda4");
  EXPECT_TRUE(equals(adjoin(l4, {LatticeVector(4)}), l4));
  Lattice l3 = catalog("Lambda3");
  LatticeVector h1 = l3.basis_vector(0), h3 = l3.basis_vector(2);
  for (auto& q : h1) q /= 2;
  for (auto& q : h3) q /= 2;
  ThetaSeries t = theta(adjoin(l3, {h1, h3}), 2);
  EXPECT_EQ(t.at(1), 4u);
  EXPECT_EQ(t.at(2), 6u);
}

TEST(Neighbor, Examples) {
  EXPECT_TRUE(equals(neighbor(catalog("Lambda1"), LatticeVector{1}), catalog("Z1")));
  EXPECT_TRUE(equals(neighbor(catalog("BW16"), glue_vector("f1")), catalog("O16")));
}

TEST(Neighbor, DistinctErrors) {
  auto kind = [](const Lattice& l, const LatticeVector& x) {
    try {
      neighbor(l, x);
    } catch (const NeighborError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error";
    return NeighborError::Kind::NotProperCoset;
  };
  Lattice l1 = catalog("Lambda1");
  EXPECT_EQ(kind(l1, LatticeVector{2}), NeighborError::Kind::NotProperCoset);
  EXPECT_EQ(kind(l1, LatticeVector{ratio(1, 2)}), NeighborError::Kind::IndexNotTwo);
  Lattice root2 = Lattice::from_gram(ints({{2}}));
  EXPECT_EQ(kind(root2, LatticeVector{ratio(1, 2)}), NeighborError::Kind::NonIntegral);
}

TEST(Neighbor, DeterminantDropsByFour) {
  Lattice l = catalog("Lambda8");
  for (const char* v : {"1,0,0,0,0,0,0,0", "1,1,0,0,0,0,0,0", "1,1,1,1,1,1,1,1"}) {
    LatticeVector x = parse_vector(v);
    if (contains(l, x)) continue;
    Lattice n = neighbor(l, x);
    EXPECT_EQ(n.determinant() * 4, l.determinant()) << v;
    EXPECT_EQ(index_in(l, n), 2);
  }
}

TEST(Equals, IsAnEquivalenceUnderBasisChange) {
  std::mt19937_64 rng(3);
  for (const char* name : {"Lambda5", "E8", "BW16", "O7"}) {
    Lattice l = catalog(name);
    Lattice a = change_basis(l, oracle::random_unimodular(rng, l.dim()));
    Lattice b = change_basis(a, oracle::random_unimodular(rng, l.dim()));
    EXPECT_TRUE(equals(l, a));
    EXPECT_TRUE(equals(a, l));
    EXPECT_TRUE(equals(a, b) && equals(l, b));
    EXPECT_EQ(theta(l, 6).coefficients, theta(b, 6).coefficients);
  }
  EXPECT_FALSE(equals(catalog("BW16"), catalog("O16")));
}

TEST(Vectors, ParseAndFormat) {
  LatticeVector v = parse_vector("1/2, -3,0 4/6");
  EXPECT_EQ(v, (LatticeVector{ratio(1, 2), -3, 0, ratio(2, 3)}));
  EXPECT_EQ(format_vector(v), "1/2 -3 0 2/3");
  EXPECT_THROW(parse_vector("a"), DomainError);
}
