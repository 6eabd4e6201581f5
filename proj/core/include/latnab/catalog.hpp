#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "latnab/lattice.hpp"

namespace latnab {

// Resolves a catalog expression.
//
//   expr   := term (" perp " term)*
//   term   := ["sqrt2*"] atom ["^" k]
//   atom   := base ["(" vector ("," vector)* ")"]
//   vector := ["-"] part (("+" | "-") part)*
//   part   := [p["/"q]["*"]] (symbol | "(" vector ")")
//
// Bases: Z<n>, A<n>, D<n>, E6, E7, E8, A1pow<2k>, D4pow<k>, D8pow<k>,
// Lambda1..Lambda8, BW16, BW16alt, O16, O7, O1, Lambda16_2_<i>,
// Lambda16_2_<i>prime, D16plus, E8perpE8. Symbols: e<i> (basis rows of the
// base), eps<i> (ambient unit vectors), f (dimension 8), f0 f1 f2 g1..g11
// (dimension 16), f1 for Lambda5, o for Lambda7 (leader of its norm-3 class).
Lattice catalog(std::string_view name);

// Concrete names plus the parametrised families.
std::vector<std::string> catalog_names();

// Named ambient vectors of R^16 (f0, f1, f2, g1..g11) and f in R^8.
LatticeVector glue_vector(std::string_view symbol);

}  // namespace latnab
