#include <gtest/gtest.h>

#include "latnab/catalog.hpp"
#include "latnab/isometry.hpp"
#include "latnab/shells.hpp"
#include "latnab/venkov.hpp"

using namespace latnab;

TEST(Venkov, Lambda8AtEveryMinimalVector) {
  Lattice l = catalog("Lambda8");
  Shell s = shell(l, 4);
  ASSERT_EQ(s.count, 240u);
  Lattice o7 = catalog("O7");
  std::optional<Lattice> first;
  for (std::size_t i = 0; i < s.count; ++i) {
    VenkovResult r = venkov_project(l, l.combination(s.coefficients(i)));
    EXPECT_EQ(r.assumption, 2);
    EXPECT_EQ(r.projected.dim(), 7u);
    EXPECT_EQ(r.projected.determinant(), 64);
    EXPECT_EQ(r.det_ratio, ratio(1, 4));
    EXPECT_EQ(minimum(r.projected), 3);
    if (!first) {
      first = r.projected;
      ThetaSeries t = theta(r.projected, 7);
      EXPECT_EQ(t.coefficients, (std::map<Rational, std::uint64_t>{{0, 1}, {3, 56}, {4, 126}, {7, 576}}));
      EXPECT_EQ(is_isometric(r.projected, o7, IsometryPolicy::Strict).status, IsometryStatus::Isometric);
    } else {
      EXPECT_EQ(kissing(r.projected), 56u);
      EXPECT_EQ(is_isometric(*first, r.projected).status, IsometryStatus::Isometric);
    }
  }
}

TEST(Venkov, Preconditions) {
  Lattice l = catalog("Lambda8");
  EXPECT_THROW(venkov_project(catalog("O7"), LatticeVector(7)), DomainError);
  EXPECT_THROW(venkov_project(catalog("E8"), LatticeVector(8)), DomainError);
  LatticeVector twice = l.basis_vector(0);
  for (auto& q : twice) q *= 2;
  EXPECT_THROW(venkov_project(l, twice), DomainError);
}

TEST(Venkov, Bw16GivesO15Like) {
  Lattice bw = catalog("BW16");
  Shell s = shell(bw, 4);
  VenkovResult r = venkov_project(bw, bw.combination(s.coefficients(0)));
  EXPECT_EQ(r.projected.dim(), 15u);
  EXPECT_TRUE(is_integral(r.projected));
  EXPECT_FALSE(is_even(r.projected));
  EXPECT_EQ(minimum(r.projected), 3);
  EXPECT_EQ(r.projected.determinant(), bw.determinant() * r.det_ratio);
}
