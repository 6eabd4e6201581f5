#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latnab/lattice.hpp"
#include "latnab/shells.hpp"

namespace latnab {

inline constexpr long kDefaultFingerprintThetaBound = 6;

struct RootComponent {
  std::size_t rank = 0;
  std::uint64_t count = 0;  // vectors, both signs
  auto operator<=>(const RootComponent&) const = default;
};

enum class Parity { Even, Odd, NonIntegral };

struct Fingerprint {
  std::size_t dim = 0;
  Rational determinant;
  Parity parity = Parity::Odd;
  Rational theta_bound;
  std::map<Rational, std::uint64_t> theta;  // every norm <= theta_bound that occurs
  std::vector<RootComponent> roots;         // sorted
  bool decomposable = false;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

// Name of the first field where the fingerprints differ, empty if equal.
std::string first_difference(const Fingerprint& a, const Fingerprint& b);

Fingerprint fingerprint(const Lattice& l, const Rational& theta_bound = kDefaultFingerprintThetaBound);

// Connected components, under nonzero inner product, of the vectors of norm
// <= 2; `half` holds one of each +-v as basis coefficients.
std::vector<RootComponent> root_profile(const ShortVectors& half, const RationalMatrix& gram);
std::vector<RootComponent> root_profile(const Lattice& l);

// Indecomposable orthogonal summands as gram-only lattices, sorted by
// (dim, determinant, kissing). `bases[i]` gives the summand basis in the
// coefficients of l.
struct Decomposition {
  std::vector<Lattice> summands;
  std::vector<IntegerMatrix> bases;
};
Decomposition decompose(const Lattice& l, std::size_t budget = kDefaultVectorBudget);
std::vector<Lattice> orthogonal_decomposition(const Lattice& l);

enum class IsometryStatus { Isometric, NotIsometric, Indeterminate };
// Strict: backtracking search in every dimension. Fast: search up to
// dimension 8; beyond that only summand-wise certificates.
enum class IsometryPolicy { Strict, Fast };

struct IsometryVerdict {
  IsometryStatus status = IsometryStatus::Indeterminate;
  // Rows: coordinates, in the basis of the first lattice, of the preimages of
  // the second lattice's basis; satisfies C G1 C^T = G2.
  std::optional<RationalMatrix> certificate;
  std::string witness;
};

inline constexpr std::uint64_t kDefaultSearchNodes = 50'000'000;

// Exact backtracking search. Returns a certificate, std::nullopt after an
// exhaustive refusal; throws BudgetExceeded past `node_budget`.
std::optional<RationalMatrix> find_isometry(const Lattice& a, const Lattice& b, std::uint64_t node_budget = kDefaultSearchNodes);

bool verify_certificate(const RationalMatrix& c, const RationalMatrix& gram_a, const RationalMatrix& gram_b);

IsometryVerdict is_isometric(const Lattice& a, const Lattice& b, IsometryPolicy policy = IsometryPolicy::Fast);

std::string to_string(IsometryStatus s);
std::string to_string(Parity p);

}  // namespace latnab
