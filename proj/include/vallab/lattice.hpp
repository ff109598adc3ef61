#pragma once

// Integer row lattices in Hermite normal form. Internal helper of ogroup, exposed
// for tests.

#include <cstddef>
#include <vector>

#include "vallab/rational.hpp"

namespace vallab::lattice {

using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

// Row-style HNF of the lattice spanned by `rows` (all of equal length):
// echelon form, positive pivots, entries above each pivot reduced into
// [0, pivot). Zero rows are dropped.
IntMat hnf(IntMat rows);

// Column index of the first nonzero entry, or size() for the zero vector.
std::size_t pivot(const IntVec& row);

// Reduces v against an HNF basis. The remainder is zero iff v lies in the lattice.
IntVec reduce(IntVec v, const IntMat& basis);

bool is_zero(const IntVec& v);

// Product of the pivots of an HNF basis (the covolume inside its span).
Integer pivot_product(const IntMat& basis);

}  // namespace vallab::lattice
