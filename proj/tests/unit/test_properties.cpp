#include <gtest/gtest.h>

#include <random>

#include "latnab/catalog.hpp"
#include "latnab/designs.hpp"
#include "latnab/isometry.hpp"
#include "latnab/shells.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace latnab;

TEST(Property, EnumerationMatchesBoxOracle) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + trial % 4;
    RationalMatrix g = oracle::random_gram(rng, n);
    Rational bound = oracle::min_diagonal(g) * (1 + trial % 2);
    std::set<std::pair<Rational, std::vector<std::int64_t>>> got;
    ShortVectors sv = short_vectors(g, bound);
    for (std::size_t i = 0; i < sv.size(); ++i)
      got.insert({ratio(Integer(static_cast<long>(sv.scaled_norms[i])), Integer(static_cast<long>(sv.scale))),
                  std::vector<std::int64_t>(sv.vector(i), sv.vector(i) + n)});
    ASSERT_EQ(got, oracle::box_vectors(g, bound)) << "trial " << trial;
  }
}

TEST(Property, FingerprintInvariantUnderBasisChange) {
  std::mt19937_64 rng(103);
  const char* names[] = {"Lambda2", "Lambda3", "Lambda4", "Lambda5", "Lambda6",
                         "Lambda7", "Lambda8", "O7", "D4pow2", "Lambda7(o,eps1)"};
  std::map<std::string, Fingerprint> base;
  for (int trial = 0; trial < 100; ++trial) {
    std::string name = names[trial % std::size(names)];
    Lattice l = catalog(name);
    if (!base.count(name)) base[name] = fingerprint(l);
    Lattice m = change_basis(l, oracle::random_unimodular(rng, l.dim(), 20));
    ASSERT_EQ(fingerprint(m), base[name]) << name << " trial " << trial;
  }
}

TEST(Property, PairwiseAndTensorStrengthsAgree) {
  // Every shell of norm <= 12 with at most 10^4 vectors, dimension <= 8.
  int compared = 0;
  for (const auto& name : reference::reference_lattice_names()) {
    Lattice l = catalog(name);
    if (l.dim() > 8) continue;
    ThetaSeries t = theta(l, 12);
    for (const auto& [m, count] : t.coefficients) {
      if (m == 0 || count > 10'000) continue;
      PointSet x = points(l, shell(l, m));
      ASSERT_EQ(design_strength(x, kDefaultTCap, DesignMethod::Pairwise),
                design_strength(x, kDefaultTCap, DesignMethod::TensorMoment))
          << name << " m=" << to_string(m);
      ++compared;
    }
  }
  EXPECT_GT(compared, 300);
}

TEST(Property, DualIsAnInvolutionCatalogWide) {
  for (const auto& name : reference::reference_lattice_names()) {
    Lattice l = catalog(name);
    EXPECT_TRUE(equals(dual(dual(l)), l)) << name;
  }
}
