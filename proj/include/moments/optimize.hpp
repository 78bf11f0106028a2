#pragma once

#include <cstdint>

#include "moments/states.hpp"

namespace moments {

// Closed form for real spectra: the k-th weak central moment maximum is
// ||p_k||_sup^{1/k} * (lambda_max - lambda_min), witnessed by a two-point
// state on the extreme eigenvalues with weight argmax(|p_k|) on the top one.
MomentResult weak_moment_hermitian(const Spectrum& spectrum, int k);

// Discrete-state optimizers over the spectrum of a normal matrix: enumerate
// support subsets (<=2 atoms for real spectra, <=3 otherwise), scan the weight
// simplex at resolution 1/400, refine by pattern search, and cross-check
// against an independent fixed-mean vertex scheme on a mean grid.
MomentResult strong_moment_discrete(const Spectrum& spectrum, int k, double tol = 1e-9);
MomentResult weak_moment_discrete(const Spectrum& spectrum, int k, double tol = 1e-9);
MomentResult strong_moment_discrete(const std::vector<cplx>& support, int k, double tol = 1e-9);
MomentResult weak_moment_discrete(const std::vector<cplx>& support, int k, double tol = 1e-9);

// Upper bound on max { Tr(D M) : D >= 0, Tr D = 1, Tr(D A) = mu } through the
// dual eigenvalue bound g(y) = lambda_max(M - y1 H1 - y2 H2) + y1 Re mu +
// y2 Im mu. Directions along which g is exactly flat (every Hermitian A, every
// 2x2 normal A has one) are split off analytically; the remainder is minimized
// by golden section in one dimension or the ellipsoid method in two. Any y
// gives a valid bound, so early termination only loosens the result. A mean
// that is infeasible along a flat direction drives g to -infinity, reported as
// a large negative value.
double dual_fixed_mean_value(const ComplexMatrix& a, const ComplexMatrix& m, cplx mu, double tol = 1e-8);

struct MatrixMomentResult {
    MomentResult lower;  // primal-ascent witness value
    double upper = 0;    // dual grid bound, same k-th-root units as lower.value
};

// General matrices: primal ascent over rank-2-factored density matrices for
// the lower bound; dual bound maximized over a refined mean grid (and a phase
// grid for the weak mode) for the upper bound.
MatrixMomentResult weak_moment_matrix(const ComplexMatrix& a, int k, int budget = 32, double tol = 1e-7,
                                      std::uint64_t seed = 20240501);
MatrixMomentResult strong_moment_matrix(const ComplexMatrix& a, int k, int budget = 32, double tol = 1e-7,
                                        std::uint64_t seed = 20240501);

// Lower bound alone; what the theorem suites use when the dual grid's cost
// would dominate a run whose check only needs the primal side.
MomentResult weak_moment_primal_lower(const ComplexMatrix& a, int k, int budget = 32, double tol = 1e-7,
                                      std::uint64_t seed = 20240501);
MomentResult strong_moment_primal_lower(const ComplexMatrix& a, int k, int budget = 32, double tol = 1e-7,
                                        std::uint64_t seed = 20240501);

// Exhaustive weight grid over the full simplex, no vertex reduction; the
// independent verification oracle. m <= 4 atoms, resolution <= 400.
double bruteforce_simplex_oracle(const std::vector<cplx>& support, int k, MomentMode mode, int resolution);

}  // namespace moments
