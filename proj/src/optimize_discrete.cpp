#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "moments/optimize.hpp"
#include "moments/polynomials.hpp"

namespace moments {

namespace {

/* |z|^k and z^k for small integer k, avoiding std::pow in the hot loops */
double abs_pow(cplx z, int k) {
    double n2 = std::norm(z);
    double r = 1.0;
    for (int i = 0; i < k / 2; ++i) r *= n2;
    if (k & 1) r *= std::sqrt(n2);
    return r;
}

cplx int_pow(cplx z, int k) {
    cplx r{1, 0};
    while (k > 0) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

void require_k(int k) {
    if (k < 1 || k > 64) throw Error(ErrorCode::InvalidK, "moment order must be in 1..64");
}

/* objective in moment units (value^k); weights need not be normalized exactly */
double objective(const std::vector<cplx>& atoms, const std::vector<double>& w, int k, MomentMode mode,
                 cplx* raw_out = nullptr) {
    cplx mu{0, 0};
    for (size_t i = 0; i < atoms.size(); ++i) mu += w[i] * atoms[i];
    if (mode == MomentMode::Strong) {
        double s = 0;
        for (size_t i = 0; i < atoms.size(); ++i) s += w[i] * abs_pow(atoms[i] - mu, k);
        if (raw_out) *raw_out = cplx{s, 0};
        return s;
    }
    cplx s{0, 0};
    for (size_t i = 0; i < atoms.size(); ++i) s += w[i] * int_pow(atoms[i] - mu, k);
    if (raw_out) *raw_out = s;
    return std::abs(s);
}

std::vector<cplx> dedupe(const std::vector<cplx>& points) {
    double scale = 0;
    for (cplx z : points) scale = std::max(scale, std::abs(z));
    double tol = 1e-10 * (1 + scale);
    std::vector<cplx> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    std::vector<cplx> out;
    for (cplx z : sorted) {
        bool fresh = true;
        for (cplx u : out)
            if (std::abs(z - u) <= tol) fresh = false;
        if (fresh) out.push_back(z);
    }
    return out;
}

bool all_real(const std::vector<cplx>& atoms) {
    double scale = 0;
    for (cplx z : atoms) scale = std::max(scale, std::abs(z));
    for (cplx z : atoms)
        if (std::abs(z.imag()) > 1e-12 * (1 + scale)) return false;
    return true;
}

struct Candidate {
    double vk = -1;  // objective, moment units
    std::vector<cplx> atoms;
    std::vector<double> weights;
    cplx raw{0, 0};
};

void consider(Candidate& best, const std::vector<cplx>& atoms, const std::vector<double>& w, int k,
              MomentMode mode) {
    cplx raw;
    double vk = objective(atoms, w, k, mode, &raw);
    /* strict improvement only, so earlier (smaller, lexicographically first)
       supports win ties */
    if (vk > best.vk * (1 + 1e-12) + 1e-300) {
        best.vk = vk;
        best.atoms = atoms;
        best.weights = w;
        best.raw = raw;
    }
}

/* pattern search over the weight simplex, m-1 free coordinates */
void refine_weights(const std::vector<cplx>& atoms, std::vector<double>& w, int k, MomentMode mode,
                    double step0, double floor_step) {
    size_t m = atoms.size();
    if (m < 2) return;
    double f = objective(atoms, w, k, mode);
    double step = step0;
    int evals = 0;
    auto try_point = [&](const std::vector<double>& cand) {
        double fc = objective(atoms, cand, k, mode);
        ++evals;
        if (fc > f + 1e-300) {
            f = fc;
            w = cand;
            return true;
        }
        return false;
    };
    while (step >= floor_step && evals < 20000) {
        bool moved = false;
        if (m == 2) {
            for (double d : {step, -step}) {
                double t = w[0] + d;
                if (t < 0 || t > 1) continue;
                if (try_point({t, 1 - t})) moved = true;
            }
        } else {
            static const std::array<std::array<double, 2>, 8> dirs = {
                {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
            for (const auto& d : dirs) {
                double t1 = w[0] + step * d[0];
                double t2 = w[1] + step * d[1];
                if (t1 < 0 || t2 < 0 || t1 + t2 > 1) continue;
                if (try_point({t1, t2, 1 - t1 - t2})) moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
}

/* scheme (a): per-subset simplex grid at 1/400, then pattern refinement */
Candidate atom_search(const std::vector<cplx>& atoms, int k, MomentMode mode, int max_support, double tol) {
    const int res = 400;
    const double floor_step = std::max(1e-12, tol * 1e-3);
    int m = static_cast<int>(atoms.size());
    Candidate best;

    for (int i = 0; i < m; ++i) consider(best, {atoms[i]}, {1.0}, k, mode);

    if (max_support >= 2) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                std::vector<cplx> sub = {atoms[i], atoms[j]};
                std::vector<double> wbest = {0, 1};
                double fbest = -1;
                for (int t = 0; t <= res; ++t) {
                    std::vector<double> w = {static_cast<double>(t) / res, 1 - static_cast<double>(t) / res};
                    double f = objective(sub, w, k, mode);
                    if (f > fbest + 1e-300) {
                        fbest = f;
                        wbest = w;
                    }
                }
                refine_weights(sub, wbest, k, mode, 1.0 / res, floor_step);
                consider(best, sub, wbest, k, mode);
            }
    }

    if (max_support >= 3) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int l = j + 1; l < m; ++l) {
                    std::vector<cplx> sub = {atoms[i], atoms[j], atoms[l]};
                    std::vector<double> wbest = {0, 0, 1};
                    double fbest = -1;
                    /* coarser grid here; the refinement closes the gap and the
                       pair grids above already cover the simplex edges */
                    const int res3 = 60;
                    for (int t1 = 0; t1 <= res3; ++t1)
                        for (int t2 = 0; t2 + t1 <= res3; ++t2) {
                            std::vector<double> w = {static_cast<double>(t1) / res3,
                                                     static_cast<double>(t2) / res3,
                                                     1 - static_cast<double>(t1 + t2) / res3};
                            double f = objective(sub, w, k, mode);
                            if (f > fbest + 1e-300) {
                                fbest = f;
                                wbest = w;
                            }
                        }
                    refine_weights(sub, wbest, k, mode, 1.0 / res3, floor_step);
                    consider(best, sub, wbest, k, mode);
                }
    }
    return best;
}

/* scheme (b): fixed-mean vertex scan. For each mean mu on a refined grid over
   the support's bounding box, enumerate the basic feasible states (supports of
   size <= 3, weights solved from the mean constraints) and keep the best. An
   independent route to the same maximum: stationarity in mu makes the grid
   error second order in the spacing. */
struct LpResult {
    Candidate best;
};

void lp_consider_mu(const std::vector<cplx>& atoms, cplx mu, int k, MomentMode mode, bool real_case,
                    double scale, Candidate& best) {
    int m = static_cast<int>(atoms.size());
    double feas = 1e-9 * (1 + scale);

    for (int i = 0; i < m; ++i)
        if (std::abs(atoms[i] - mu) <= feas) consider(best, {atoms[i]}, {1.0}, k, mode);

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            cplx d = atoms[i] - atoms[j];
            double dn = std::norm(d);
            if (dn <= feas * feas) continue;
            double t = ((mu - atoms[j]) * std::conj(d)).real() / dn;
            if (t < -1e-12 || t > 1 + 1e-12) continue;
            t = std::clamp(t, 0.0, 1.0);
            if (std::abs(t * atoms[i] + (1 - t) * atoms[j] - mu) > feas) continue;
            consider(best, {atoms[i], atoms[j]}, {t, 1 - t}, k, mode);
        }

    if (real_case) return;

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int l = j + 1; l < m; ++l) {
                /* solve [1 1 1; Re; Im] t = [1; Re mu; Im mu] by Cramer */
                double x1 = atoms[i].real(), y1 = atoms[i].imag();
                double x2 = atoms[j].real(), y2 = atoms[j].imag();
                double x3 = atoms[l].real(), y3 = atoms[l].imag();
                double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
                if (std::abs(det) <= 1e-13 * (1 + scale) * (1 + scale)) continue;
                double bx = mu.real() - x1, by = mu.imag() - y1;
                double t2 = (bx * (y3 - y1) - (x3 - x1) * by) / det;
                double t3 = ((x2 - x1) * by - bx * (y2 - y1)) / det;
                double t1 = 1 - t2 - t3;
                if (t1 < -1e-10 || t2 < -1e-10 || t3 < -1e-10) continue;
                std::vector<double> w = {std::max(0.0, t1), std::max(0.0, t2), std::max(0.0, t3)};
                double s = w[0] + w[1] + w[2];
                for (double& x : w) x /= s;
                consider(best, {atoms[i], atoms[j], atoms[l]}, w, k, mode);
            }
}

Candidate lp_fixed_mean(const std::vector<cplx>& atoms, int k, MomentMode mode, bool real_case) {
    double scale = 0;
    for (cplx z : atoms) scale = std::max(scale, std::abs(z));
    double re_lo = atoms[0].real(), re_hi = re_lo, im_lo = atoms[0].imag(), im_hi = im_lo;
    for (cplx z : atoms) {
        re_lo = std::min(re_lo, z.real());
        re_hi = std::max(re_hi, z.real());
        im_lo = std::min(im_lo, z.imag());
        im_hi = std::max(im_hi, z.imag());
    }
    if (real_case) im_lo = im_hi = 0.5 * (im_lo + im_hi);

    Candidate best;
    cplx center{0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)};
    double hw_re = 0.5 * (re_hi - re_lo), hw_im = 0.5 * (im_hi - im_lo);
    cplx best_mu = center;

    for (int level = 0; level < 4; ++level) {
        int steps = level == 0 ? (real_case ? 200 : 40) : (real_case ? 80 : 20);
        double axis_floor = 1e-12 * (1 + scale);
        double sp_re = hw_re > axis_floor ? 2 * hw_re / steps : 0;
        double sp_im = hw_im > axis_floor ? 2 * hw_im / steps : 0;
        Candidate level_best = best;
        for (int ix = 0; ix <= (sp_re > 0 ? steps : 0); ++ix)
            for (int iy = 0; iy <= (sp_im > 0 ? steps : 0); ++iy) {
                cplx mu{center.real() - hw_re + ix * sp_re, center.imag() - hw_im + iy * sp_im};
                mu = {std::clamp(mu.real(), re_lo, re_hi), std::clamp(mu.imag(), im_lo, im_hi)};
                Candidate before = level_best;
                lp_consider_mu(atoms, mu, k, mode, real_case, scale, level_best);
                if (level_best.vk > before.vk) best_mu = mu;
            }
        best = level_best;
        center = best_mu;
        hw_re = sp_re > 0 ? 2 * sp_re : 0;
        hw_im = sp_im > 0 ? 2 * sp_im : 0;
    }
    return best;
}

MomentResult finish(const Candidate& cand, int k, MomentMode mode, Certificate cert, double gap) {
    MomentResult r;
    r.k = k;
    r.mode = mode;
    r.certificate = cert;
    r.cross_check_gap = gap;
    r.flagged = gap > 1e-4;
    r.raw_moment = cand.raw;
    r.value = cand.vk > 0 ? std::pow(cand.vk, 1.0 / k) : 0;

    std::vector<cplx> support;
    std::vector<double> weights;
    for (size_t i = 0; i < cand.atoms.size(); ++i)
        if (cand.weights[i] > 1e-12) {
            support.push_back(cand.atoms[i]);
            weights.push_back(cand.weights[i]);
        }
    if (support.empty()) {
        support.push_back(cand.atoms.front());
        weights.push_back(1);
    }
    double s = 0;
    for (double w : weights) s += w;
    for (double& w : weights) w /= s;
    DiscreteState st(support, weights);
    r.mean = st.mean();
    r.discrete_witness = std::move(st);
    return r;
}

MomentResult moment_discrete(const std::vector<cplx>& support, int k, MomentMode mode, double tol) {
    require_k(k);
    if (support.empty()) throw Error(ErrorCode::EmptyInput, "empty spectrum");
    std::vector<cplx> atoms = dedupe(support);
    bool real_case = all_real(atoms);
    int max_support = real_case ? 2 : 3;

    Candidate a = atom_search(atoms, k, mode, max_support, tol);
    if (atoms.size() == 1) return finish(a, k, mode, Certificate::AtomSearch, 0);

    Candidate b = lp_fixed_mean(atoms, k, mode, real_case);
    double va = a.vk > 0 ? std::pow(a.vk, 1.0 / k) : 0;
    double vb = b.vk > 0 ? std::pow(b.vk, 1.0 / k) : 0;
    double gap = std::abs(va - vb) / (1 + std::max(va, vb));

    if (b.vk > a.vk * (1 + 1e-12)) return finish(b, k, mode, Certificate::FixedMeanLP, gap);
    return finish(a, k, mode, Certificate::AtomSearch, gap);
}

}  // namespace

MomentResult weak_moment_hermitian(const Spectrum& spectrum, int k) {
    require_k(k);
    if (spectrum.eigenvalues.empty()) throw Error(ErrorCode::EmptyInput, "empty spectrum");
    double scale = 0;
    for (cplx z : spectrum.eigenvalues) scale = std::max(scale, std::abs(z));
    for (cplx z : spectrum.eigenvalues)
        if (std::abs(z.imag()) > 1e-9 * (1 + scale))
            throw Error(ErrorCode::NonRealSpectrum, "closed form needs a real spectrum");

    double lo = spectrum.eigenvalues.front().real(), hi = lo;
    for (cplx z : spectrum.eigenvalues) {
        lo = std::min(lo, z.real());
        hi = std::max(hi, z.real());
    }
    double diam = hi - lo;
    SupNormResult s = sup_norm(build(k, PolyKind::P));

    MomentResult r;
    r.k = k;
    r.mode = MomentMode::Weak;
    r.certificate = Certificate::ClosedForm;
    r.value = std::pow(s.value, 1.0 / k) * diam;
    double xi = s.argmax;
    if (diam <= 1e-15 * (1 + scale) || xi <= 1e-15 || xi >= 1 - 1e-15) {
        DiscreteState st({cplx{lo, 0}}, {1.0});
        r.mean = st.mean();
        r.discrete_witness = std::move(st);
        r.raw_moment = cplx{0, 0};
        return r;
    }
    /* xi delta_max + (1-xi) delta_min realizes |p_k(xi)| diam^k */
    DiscreteState st({cplx{hi, 0}, cplx{lo, 0}}, {xi, 1 - xi});
    r.mean = st.mean();
    cplx raw{0, 0};
    for (size_t i = 0; i < st.support.size(); ++i) raw += st.weights[i] * int_pow(st.support[i] - r.mean, k);
    r.raw_moment = raw;
    r.discrete_witness = std::move(st);
    return r;
}

MomentResult strong_moment_discrete(const std::vector<cplx>& support, int k, double tol) {
    return moment_discrete(support, k, MomentMode::Strong, tol);
}

MomentResult weak_moment_discrete(const std::vector<cplx>& support, int k, double tol) {
    return moment_discrete(support, k, MomentMode::Weak, tol);
}

MomentResult strong_moment_discrete(const Spectrum& spectrum, int k, double tol) {
    return moment_discrete(spectrum.eigenvalues, k, MomentMode::Strong, tol);
}

MomentResult weak_moment_discrete(const Spectrum& spectrum, int k, double tol) {
    return moment_discrete(spectrum.eigenvalues, k, MomentMode::Weak, tol);
}

double bruteforce_simplex_oracle(const std::vector<cplx>& support, int k, MomentMode mode, int resolution) {
    require_k(k);
    size_t m = support.size();
    if (m == 0) throw Error(ErrorCode::EmptyInput, "empty support");
    if (m > 4) throw Error(ErrorCode::TooManyAtoms, "oracle handles at most 4 atoms");
    if (resolution < 1) throw Error(ErrorCode::InvalidState, "resolution must be positive");
    if (resolution > 400) throw Error(ErrorCode::ResolutionTooHigh, "oracle resolution capped at 400");

    const int R = resolution;
    double best = 0;
    std::vector<double> w(m, 0.0);
    auto eval = [&] {
        double f = objective(support, w, k, mode);
        if (f > best) best = f;
    };
    if (m == 1) {
        w[0] = 1;
        eval();
    } else if (m == 2) {
        for (int i = 0; i <= R; ++i) {
            w[0] = static_cast<double>(i) / R;
            w[1] = 1 - w[0];
            eval();
        }
    } else if (m == 3) {
        for (int i = 0; i <= R; ++i)
            for (int j = 0; i + j <= R; ++j) {
                w[0] = static_cast<double>(i) / R;
                w[1] = static_cast<double>(j) / R;
                w[2] = 1 - w[0] - w[1];
                eval();
            }
    } else {
        for (int i = 0; i <= R; ++i)
            for (int j = 0; i + j <= R; ++j)
                for (int l = 0; i + j + l <= R; ++l) {
                    w[0] = static_cast<double>(i) / R;
                    w[1] = static_cast<double>(j) / R;
                    w[2] = static_cast<double>(l) / R;
                    w[3] = 1 - w[0] - w[1] - w[2];
                    eval();
                }
    }
    return best > 0 ? std::pow(best, 1.0 / k) : 0;
}

}  // namespace moments
