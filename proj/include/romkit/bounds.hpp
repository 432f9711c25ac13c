#pragma once

#include "romkit/density.hpp"

namespace romkit {

// Stabilizer norm D(rho) = 2^{-n} sum over all 4^n Hermitian Paulis of
// |Tr(P rho)|. Multiplicative under tensor products, convex, and bounded
// above by the robustness, which makes it a cheap sub-second stand-in for
// the LP at any size the dense path can hold.
double st_norm(const DensityOperator& rho);

// (D(rho) - 2^{-n}) / (1 - 2^{-n}), clamped below at 1. Lower-bounds the
// robustness; tight for single-qubit pure states.
double rom_lower_bound(const DensityOperator& rho);

// The same bound evaluated for `copies` tensor powers of an m-qubit block
// without ever forming the product state: multiplicativity of D gives
// (D^t - 2^{-tm}) / (1 - 2^{-tm}). Valid for any t.
double product_lower_bound(const DensityOperator& block, std::uint64_t copies);

// True settles it: D(rho) > 1 certifies rho is not a stabilizer mixture.
// False is inconclusive (some magic states have D < 1 and mixed stabilizer
// states can dip below 1 as well).
bool is_magic_witnessed(const DensityOperator& rho);

}  // namespace romkit
