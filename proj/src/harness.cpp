#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "moments/distance.hpp"
#include "moments/harness.hpp"
#include "moments/optimize.hpp"
#include "moments/polynomials.hpp"
#include "moments/random.hpp"

namespace moments {

namespace {

double root_norm(int k, PolyKind kind) { return std::pow(sup_norm(build(k, kind)).value, 1.0 / k); }

std::string digest(std::uint64_t seed, int trial, int n, int k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "seed=%llu;trial=%d;n=%d;k=%d", static_cast<unsigned long long>(seed),
                  trial, n, k);
    return buf;
}

/* weight carried by witness atoms sitting on the two spectrum extremes */
double extreme_mass(const MomentResult& r, double lo, double hi, double scale) {
    if (!r.discrete_witness) return 0;
    double tol = 1e-6 * (1 + scale);
    double mass = 0;
    const DiscreteState& st = *r.discrete_witness;
    for (size_t i = 0; i < st.support.size(); ++i)
        if (std::abs(st.support[i] - cplx{lo, 0}) <= tol || std::abs(st.support[i] - cplx{hi, 0}) <= tol)
            mass += st.weights[i];
    return mass;
}

ComplexMatrix example2_matrix() { return ComplexMatrix::diagonal({cplx{1, 0}, cplx{0, 1}, cplx{0, 0}}); }

ComplexMatrix cube_roots_matrix() {
    const double s = std::sqrt(3.0) / 2;
    return ComplexMatrix::diagonal({cplx{1, 0}, cplx{-0.5, s}, cplx{-0.5, -s}});
}

struct HermitianTrial {
    ComplexMatrix a;
    Spectrum spec;
    int n = 0;
};

HermitianTrial hermitian_trial(std::uint64_t seed, std::uint64_t stream, int trial) {
    std::mt19937_64 rng(derive_seed(seed, stream, static_cast<std::uint64_t>(trial)));
    int n = 2 + static_cast<int>(rng() % 7);  // 2..8
    HermitianTrial t;
    t.n = n;
    t.a = random_hermitian(n, rng);
    t.spec = eig_hermitian(t.a);
    return t;
}

struct NormalTrial {
    ComplexMatrix a;
    Spectrum spec;
    int n = 0;
};

NormalTrial normal_trial(std::uint64_t seed, std::uint64_t stream, int trial, int n_min, int n_max) {
    std::mt19937_64 rng(derive_seed(seed, stream, static_cast<std::uint64_t>(trial)));
    int n = n_min + static_cast<int>(rng() % static_cast<std::uint64_t>(n_max - n_min + 1));
    NormalTrial t;
    t.n = n;
    t.a = random_normal_matrix(n, rng);
    t.spec = eig_normal(t.a);
    return t;
}

double spectrum_scale(const Spectrum& s) {
    double m = 0;
    for (cplx z : s.eigenvalues) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::Eq: return "eq";
        case Relation::Le: return "le";
        case Relation::Ge: return "ge";
    }
    return "?";
}

CheckReport make_report(std::string id, std::string digest_str, double lhs, double rhs, Relation rel,
                        double tol) {
    CheckReport r;
    r.check_id = std::move(id);
    r.inputs_digest = std::move(digest_str);
    r.lhs = lhs;
    r.rhs = rhs;
    r.relation = rel;
    r.tolerance = tol;
    switch (rel) {
        case Relation::Eq:
            r.residual = std::abs(lhs - rhs);
            r.passed = r.residual <= tol * (1 + std::abs(rhs));
            break;
        case Relation::Le:
            r.residual = lhs - rhs;
            r.passed = lhs <= rhs + tol;
            break;
        case Relation::Ge:
            r.residual = rhs - lhs;
            r.passed = lhs >= rhs - tol;
            break;
    }
    return r;
}

std::vector<CheckReport> check_theorem1(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        HermitianTrial t = hermitian_trial(cfg.seed, 0x7431, trial);
        double lo = t.spec.eigenvalues.front().real();
        double hi = t.spec.eigenvalues.back().real();
        for (int k : cfg.k_list) {
            char id[64];
            MomentResult opt = weak_moment_discrete(t.spec, k);
            MomentResult closed = weak_moment_hermitian(t.spec, k);
            std::snprintf(id, sizeof id, "theorem1/trial=%02d/k=%d/equality", trial, k);
            out.push_back(
                make_report(id, digest(cfg.seed, trial, t.n, k), opt.value, closed.value, Relation::Eq, 1e-5));
            std::snprintf(id, sizeof id, "theorem1/trial=%02d/k=%d/witness_extremes", trial, k);
            out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k),
                                      extreme_mass(opt, lo, hi, spectrum_scale(t.spec)), 1.0, Relation::Ge,
                                      1e-6));
        }
    }
    return out;
}

std::vector<CheckReport> check_remark_eq1(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        HermitianTrial t = hermitian_trial(cfg.seed, 0x73a1, trial);
        double diam = spectral_diameter(t.spec);
        for (int k : cfg.k_list) {
            char id[64];
            MomentResult opt = strong_moment_discrete(t.spec, k);
            std::snprintf(id, sizeof id, "remark1/trial=%02d/k=%d/q_bound", trial, k);
            out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k), opt.value,
                                      root_norm(k, PolyKind::Q) * diam, Relation::Le, 1e-6));
            if (k % 2 == 0) {
                double r0 = min_scalar_distance(t.a).distance;
                std::snprintf(id, sizeof id, "remark1/trial=%02d/k=%d/even_equality", trial, k);
                out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k), opt.value,
                                          2 * root_norm(k, PolyKind::P) * r0, Relation::Eq, 1e-5));
            }
        }
    }
    return out;
}

std::vector<CheckReport> check_theorem2_3_4(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;

    /* fixed anchors */
    {
        ComplexMatrix cube = cube_roots_matrix();
        MomentResult m = strong_moment_discrete(eig_normal(cube), 2);
        out.push_back(make_report("theorem234/fixed/cube_roots/k=2/equality", "fixed;cube-roots;k=2",
                                  m.value, 1.0, Relation::Eq, 1e-5));

        ComplexMatrix ex2 = example2_matrix();
        MomentResult d3 = strong_moment_discrete(eig_normal(ex2), 3);
        double r0 = min_scalar_distance(ex2).distance;
        out.push_back(make_report("theorem234/fixed/diag_1_i_0/k=3/p_lower", "fixed;diag(1,i,0);k=3",
                                  d3.value, 2 * root_norm(3, PolyKind::P) * r0, Relation::Ge, 1e-6));
        out.push_back(make_report("theorem234/fixed/diag_1_i_0/k=3/trace_state_lower",
                                  "fixed;diag(1,i,0);k=3", d3.value, std::cbrt(50.0) / (3 * std::sqrt(2.0)),
                                  Relation::Ge, 1e-6));
    }

    for (int trial = 0; trial < cfg.trials; ++trial) {
        NormalTrial t = normal_trial(cfg.seed, 0x7234, trial, 2, 8);
        double r0 = min_scalar_distance(t.a).distance;
        for (int k : cfg.k_list) {
            char id[72];
            MomentResult opt = strong_moment_discrete(t.spec, k);
            std::snprintf(id, sizeof id, "theorem234/trial=%02d/k=%d/q_upper", trial, k);
            out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k), opt.value,
                                      2 * root_norm(k, PolyKind::Q) * r0, Relation::Le, 1e-6));
            std::snprintf(id, sizeof id, "theorem234/trial=%02d/k=%d/p_lower", trial, k);
            out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k), opt.value,
                                      2 * root_norm(k, PolyKind::P) * r0, Relation::Ge, 1e-6));
            if (k % 2 == 0) {
                std::snprintf(id, sizeof id, "theorem234/trial=%02d/k=%d/even_equality", trial, k);
                out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k), opt.value,
                                          2 * root_norm(k, PolyKind::P) * r0, Relation::Eq, 1e-5));
            }
        }
    }
    return out;
}

std::vector<CheckReport> check_lemma3(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    {
        ComplexMatrix ex2 = example2_matrix();
        MomentResult single = strong_moment_discrete(eig_normal(ex2), 2);
        MomentResult doubled = strong_moment_discrete(eig_normal(direct_sum_conjugate(ex2)), 2);
        out.push_back(make_report("lemma3/fixed/diag_1_i_0/k=2/doubling", "fixed;diag(1,i,0);k=2",
                                  doubled.value, single.value, Relation::Eq, 1e-4));
    }
    for (int trial = 0; trial < cfg.trials; ++trial) {
        NormalTrial t = normal_trial(cfg.seed, 0x7de3, trial, 2, 4);
        Spectrum doubled_spec = eig_normal(direct_sum_conjugate(t.a));
        for (int k : cfg.k_list) {
            char id[64];
            MomentResult single = strong_moment_discrete(t.spec, k);
            MomentResult doubled = strong_moment_discrete(doubled_spec, k);
            std::snprintf(id, sizeof id, "lemma3/trial=%02d/k=%d/doubling", trial, k);
            out.push_back(make_report(id, digest(cfg.seed, trial, t.n, k), doubled.value, single.value,
                                      Relation::Eq, 1e-4));
        }
    }
    return out;
}

std::vector<CheckReport> check_theorem5(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    {
        ComplexMatrix jordan(2, {cplx{0, 0}, cplx{1, 0}, cplx{0, 0}, cplx{0, 0}});
        double dist = min_scalar_distance(jordan).distance;
        MomentResult lower = weak_moment_primal_lower(jordan, 2, 8, 1e-7, derive_seed(cfg.seed, 0x7005, 999));
        out.push_back(make_report("theorem5/fixed/jordan2/k=2/q_distance_bound", "fixed;jordan2;k=2",
                                  lower.value, 2 * root_norm(2, PolyKind::Q) * dist, Relation::Le, 1e-6));
    }
    for (int trial = 0; trial < cfg.trials; ++trial) {
        std::mt19937_64 rng(derive_seed(cfg.seed, 0x7005, static_cast<std::uint64_t>(trial)));
        int n = 2 + static_cast<int>(rng() % 5);  // 2..6
        ComplexMatrix a = random_ginibre(n, rng);
        double dist = min_scalar_distance(a).distance;
        for (int k : cfg.k_list) {
            char id[64];
            MomentResult lower =
                weak_moment_primal_lower(a, k, 8, 1e-7, derive_seed(cfg.seed, 0x70a5, trial));
            std::snprintf(id, sizeof id, "theorem5/trial=%02d/k=%d/q_distance_bound", trial, k);
            /* residual = lhs - rhs < 0; its magnitude is the observed gap */
            out.push_back(make_report(id, digest(cfg.seed, trial, n, k), lower.value,
                                      2 * root_norm(k, PolyKind::Q) * dist, Relation::Le, 1e-6));
        }
    }
    return out;
}

std::vector<CheckReport> run_examples() {
    std::vector<CheckReport> out;

    ComplexMatrix cube = cube_roots_matrix();
    Spectrum cube_spec = eig_normal(cube);
    out.push_back(make_report("examples/cube_roots/k=2/strong", "fixed;cube-roots;k=2;strong",
                              strong_moment_discrete(cube_spec, 2).value, 1.0, Relation::Eq, 1e-4));
    out.push_back(make_report("examples/cube_roots/k=2/weak", "fixed;cube-roots;k=2;weak",
                              weak_moment_discrete(cube_spec, 2).value, std::sqrt(3.0) / 2, Relation::Eq,
                              1e-4));

    ComplexMatrix ex2 = example2_matrix();
    DensityState trace_state(cplx{1.0 / 3, 0} * ComplexMatrix::identity(3));
    out.push_back(make_report("examples/diag_1_i_0/k=3/trace_state_weak", "fixed;diag(1,i,0);k=3;trace",
                              weak_moment_fixed_state(ex2, trace_state, 3).value,
                              std::cbrt(50.0) / (3 * std::sqrt(2.0)), Relation::Eq, 1e-9));
    out.push_back(make_report("examples/diag_1_i_0/k=3/p_lower_side", "fixed;diag(1,i,0);k=3;p-side",
                              2 * root_norm(3, PolyKind::P) * min_scalar_distance(ex2).distance,
                              std::sqrt(2.0) * std::pow(108.0, -1.0 / 6), Relation::Eq, 1e-9));

    Spectrum pm1 = eig_hermitian(ComplexMatrix::diagonal({cplx{1, 0}, cplx{-1, 0}}));
    out.push_back(make_report("examples/diag_1_m1/k=2/weak", "fixed;diag(1,-1);k=2",
                              weak_moment_discrete(pm1, 2).value, 2 * root_norm(2, PolyKind::P),
                              Relation::Eq, 1e-4));
    out.push_back(make_report("examples/diag_1_m1/k=4/weak", "fixed;diag(1,-1);k=4",
                              weak_moment_discrete(pm1, 4).value, 2 * root_norm(4, PolyKind::P),
                              Relation::Eq, 1e-4));

    /* the shift-operator equalities need a non-invertible isometry, which no
       finite matrix is; recorded untestable, the inequality directions are
       covered by the theorem5 suite */
    out.push_back(make_report("examples/shift_isometry_equalities",
                              "untestable;no finite-dimensional isometry is non-invertible", 0.0, 0.0,
                              Relation::Eq, 0.0));
    return out;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"theorem1", "remark1",  "theorem234",
                                                   "lemma3",   "theorem5", "examples"};
    return names;
}

std::vector<CheckReport> run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "theorem1") return check_theorem1(cfg);
    if (name == "remark1") return check_remark_eq1(cfg);
    if (name == "theorem234" || name == "theorem2" || name == "theorem3" || name == "theorem4")
        return check_theorem2_3_4(cfg);
    if (name == "lemma3") return check_lemma3(cfg);
    if (name == "theorem5") return check_theorem5(cfg);
    if (name == "examples") return run_examples();
    throw Error(ErrorCode::UnknownSuite, "unknown suite: " + name);
}

std::vector<CheckReport> run_all(const SuiteConfig& cfg) {
    std::vector<CheckReport> out;
    for (const std::string& name : suite_names()) {
        std::vector<CheckReport> part = run_suite(name, cfg);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace moments
