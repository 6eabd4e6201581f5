#pragma once

#include "latnab/lattice.hpp"

namespace latnab {

struct VenkovResult {
  Lattice projected;  // rank d-1, gram-only
  int assumption = 0;  // 1: some (e,x) odd; 2: all even, some (e,x) = 2 mod 4
  Rational det_ratio;  // det(L_e) / det(L)
};

// L even integral of minimum 4, e a minimal vector. L_e is the projection
// onto e^perp of {x in L : (e,x) even}.
VenkovResult venkov_project(const Lattice& l, const LatticeVector& e);

// O16 from its generators 2eps_i, f0, f1, g1..g11.
Lattice catalog_O16();

}  // namespace latnab
