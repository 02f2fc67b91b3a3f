#pragma once

#include <cstdint>
#include <random>

#include "liecomm/compact_algebra.hpp"
#include "liecomm/matrix.hpp"

namespace liecomm {

using Rng = std::mt19937_64;

/// SplitMix64 mixing of a base seed with two stream indices; used so that a
/// sample's random stream does not depend on how work is split across threads.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, R diagonal made positive).
CMatrix random_unitary(std::size_t n, Rng& rng);

/// Haar unitary rescaled to determinant one.
CMatrix random_special_unitary(std::size_t n, Rng& rng);

/// Hermitian matrix with i.i.d. Gaussian entries (GUE up to scale).
CMatrix random_hermitian(std::size_t n, Rng& rng);

/// Element with uniformly random direction (in the inner-product metric) and
/// the given norm.
AlgebraElement random_element(const AlgebraPtr& algebra, double norm, Rng& rng);

}  // namespace liecomm
