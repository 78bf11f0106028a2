#pragma once

#include <optional>
#include <vector>

#include "moments/linalg.hpp"

namespace moments {

// Finitely supported probability measure on the complex plane.
struct DiscreteState {
    std::vector<cplx> support;
    std::vector<double> weights;

    DiscreteState() = default;
    DiscreteState(std::vector<cplx> support, std::vector<double> weights);  // validates

    cplx mean() const;
};

// Density matrix: Hermitian, positive semidefinite, unit trace.
struct DensityState {
    ComplexMatrix d;

    DensityState() = default;
    explicit DensityState(ComplexMatrix d);  // validates
};

enum class MomentMode { Strong, Weak };
enum class Certificate { ClosedForm, AtomSearch, FixedMeanLP, DualSDP, PrimalAscent };

const char* moment_mode_name(MomentMode m);
const char* certificate_name(Certificate c);

struct MomentResult {
    int k = 0;
    MomentMode mode = MomentMode::Strong;
    double value = 0;  // k-th root of the optimal central moment
    cplx mean{0, 0};   // omega(a) at the optimum
    std::optional<DiscreteState> discrete_witness;
    std::optional<DensityState> density_witness;
    Certificate certificate = Certificate::AtomSearch;
    cplx raw_moment{0, 0};       // omega((a - mean)^k) before the modulus/root
    double cross_check_gap = 0;  // disagreement between the two discrete schemes
    bool flagged = false;        // cross-check disagreement above 1e-4
};

// omega((A - omega(A) 1)^k) for the given density matrix, evaluated exactly.
MomentResult weak_moment_fixed_state(const ComplexMatrix& a, const DensityState& state, int k);

}  // namespace moments
