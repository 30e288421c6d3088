#pragma once

#include <cstdint>
#include <random>

#include "shimura/semilinear.hpp"

namespace shimura {

// All randomized sweeps draw from this engine; a seed fixes every output.
using Rng = std::mt19937_64;

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

WittElem random_elem(Rng& rng, const WittContext& ctx);
WittElem random_unit(Rng& rng, const WittContext& ctx);
// Product of random unit lower and upper triangular factors.
WMatrix random_invertible(Rng& rng, const WittContext& ctx, std::size_t n);

// U diag(p^{e_i}) U' with e_i in {0, 1}: slopes in [0, 1], V = sigma^{-1}(p M^{-1}).
// Half of the draws take U' = P (1 + pR) sigma(U)^{-1} with P a permutation.
FCrystal random_crystal(Rng& rng, const WittContext& ctx, std::size_t h);

}  // namespace shimura
