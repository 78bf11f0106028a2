#pragma once

#include <complex>
#include <vector>

#include "moments/linalg.hpp"

namespace moments {

struct EnclosingDisc {
    cplx center{0, 0};
    double radius = 0;
};

enum class DistanceMethod { EnclosingDisc, ConvexDescent };

struct DistanceResult {
    cplx lambda0{0, 0};   // nearest scalar
    double distance = 0;  // ||A - lambda0 I||
    DistanceMethod method = DistanceMethod::EnclosingDisc;
};

// Welzl's randomized incremental algorithm (move-to-front), deterministic
// shuffle. Throws EmptyInput.
EnclosingDisc smallest_enclosing_disc(const std::vector<cplx>& points, unsigned long long seed = 0x5EED);

// max_{i,j} |lambda_i - lambda_j|
double spectral_diameter(const Spectrum& spectrum);

// min over scalars lambda of ||A - lambda I||. Normal input reduces to the
// smallest disc enclosing the spectrum; otherwise a subgradient ellipsoid
// iteration on the convex map lambda -> sigma_max(A - lambda I).
DistanceResult min_scalar_distance(const ComplexMatrix& a, double tol = 1e-9);

// The iterative path unconditionally, regardless of matrix class; lets
// callers cross-check it against the enclosing-disc reduction.
DistanceResult min_scalar_distance_descent(const ComplexMatrix& a, double tol = 1e-9);

}  // namespace moments
