#pragma once

// Seeded instance generation for the randomized suites. Faithful states are
// Wishart-type draws pushed away from the faithfulness floor so that
// tolerances stay meaningful. Derived seeds decouple trials: each (seed,
// index) pair maps to an independent stream, which keeps reports identical
// regardless of how trials are scheduled.

#include <cstdint>
#include <random>

#include "modgeo/gns.hpp"

namespace modgeo {

/// splitmix64 step; used to derive per-trial seeds from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Complex standard-Gaussian matrix.
CMatrix random_gaussian(int n, std::mt19937_64& rng);

/// Hermitian matrix with Gaussian entries, scaled to unit operator norm.
CMatrix random_hermitian(int n, std::mt19937_64& rng);

/// (G G*/Tr G G* + eps I/n) / (1 + eps) with eps = 1e-3.
DensityMatrix random_density(int n, std::mt19937_64& rng);

/// A positive generator: random density scaled by e^u, u uniform on [-1, 1],
/// so traces both above and below 1 are exercised.
CMatrix random_positive(int n, std::mt19937_64& rng);

}  // namespace modgeo
