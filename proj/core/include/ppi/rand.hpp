#pragma once

#include <cstdint>
#include <random>

#include "ppi/matrix.hpp"

namespace ppi {

using Rng = std::mt19937_64;

// Standard complex Gaussian: real and imaginary parts N(0, 1/2), so
// E|z|^2 = 1.
cplx complex_gaussian(Rng& rng);

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed unitary: Gram-Schmidt applied to a Gaussian matrix.
// MGS normalizes against positive real diagonal factors, which is exactly
// the phase convention that makes the result Haar.
ComplexMatrix random_unitary(std::size_t n, Rng& rng);

// Random matrix with operator norm strictly below the given bound.
ComplexMatrix random_contraction(std::size_t n, Rng& rng, double norm_bound = 1.0);

}  // namespace ppi
