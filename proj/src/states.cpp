#include "moments/states.hpp"

#include <cmath>

namespace moments {

DiscreteState::DiscreteState(std::vector<cplx> sup, std::vector<double> wts)
    : support(std::move(sup)), weights(std::move(wts)) {
    if (support.empty() || support.size() != weights.size())
        throw Error(ErrorCode::InvalidState, "discrete state needs matching nonempty support and weights");
    double sum = 0;
    for (double w : weights) {
        if (!(w >= -1e-15) || !std::isfinite(w))
            throw Error(ErrorCode::InvalidState, "discrete state weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1) > 1e-12)
        throw Error(ErrorCode::InvalidState, "discrete state weights must sum to one");
    for (size_t i = 0; i < support.size(); ++i)
        for (size_t j = i + 1; j < support.size(); ++j)
            if (std::abs(support[i] - support[j]) <= 1e-12)
                throw Error(ErrorCode::InvalidState, "discrete state support points must be distinct");
}

cplx DiscreteState::mean() const {
    cplx m = 0;
    for (size_t i = 0; i < support.size(); ++i) m += weights[i] * support[i];
    return m;
}

DensityState::DensityState(ComplexMatrix dm) : d(std::move(dm)) {
    const double scale = 1 + frobenius_norm(d);
    if (frobenius_norm(d - adjoint(d)) > 1e-10 * scale)
        throw Error(ErrorCode::InvalidState, "density matrix must be Hermitian");
    if (std::abs(trace(d) - cplx(1, 0)) > 1e-10)
        throw Error(ErrorCode::InvalidState, "density matrix must have unit trace");
    Spectrum sp = eig_hermitian(d, 1e-8);
    if (sp.eigenvalues.front().real() < -1e-10)
        throw Error(ErrorCode::InvalidState, "density matrix must be positive semidefinite");
}

const char* moment_mode_name(MomentMode m) { return m == MomentMode::Strong ? "strong" : "weak"; }

const char* certificate_name(Certificate c) {
    switch (c) {
        case Certificate::ClosedForm: return "closed_form";
        case Certificate::AtomSearch: return "atom_search";
        case Certificate::FixedMeanLP: return "fixed_mean_lp";
        case Certificate::DualSDP: return "dual_sdp";
        case Certificate::PrimalAscent: return "primal_ascent";
    }
    return "unknown";
}

MomentResult weak_moment_fixed_state(const ComplexMatrix& a, const DensityState& state, int k) {
    if (a.n() != state.d.n())
        throw Error(ErrorCode::DimensionMismatch, "matrix and density matrix sizes differ");
    if (k < 1 || k > 64) throw Error(ErrorCode::InvalidK, "k must be in 1..64");
    const cplx mu = trace(state.d * a);
    const cplx raw = trace(state.d * central_power(a, mu, k, false));
    MomentResult r;
    r.k = k;
    r.mode = MomentMode::Weak;
    r.value = std::pow(std::abs(raw), 1.0 / k);
    r.mean = mu;
    r.raw_moment = raw;
    r.density_witness = state;
    r.certificate = Certificate::ClosedForm;
    return r;
}

}  // namespace moments
