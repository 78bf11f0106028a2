#pragma once

#include <cstdint>
#include <random>

#include "moments/linalg.hpp"

namespace moments {

// Stateless mixing for deriving independent per-trial seeds from a master seed.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

cplx gaussian(std::mt19937_64& rng);

// Haar-ish unitary: modified Gram-Schmidt of a complex Gaussian matrix.
ComplexMatrix random_unitary(int n, std::mt19937_64& rng);

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng);

// U diag(lambda) U* with eigenvalues uniform in the unit disc.
ComplexMatrix random_normal_matrix(int n, std::mt19937_64& rng);

// Independent complex Gaussian entries; almost surely non-normal for n >= 2.
ComplexMatrix random_ginibre(int n, std::mt19937_64& rng);

std::vector<cplx> random_unit_vector(int n, std::mt19937_64& rng);

}  // namespace moments
