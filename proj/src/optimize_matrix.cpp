#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "moments/optimize.hpp"
#include "moments/random.hpp"

namespace moments {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    int n = a.n();
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
    return h;
}

ComplexMatrix skew_part_over_i(const ComplexMatrix& a) {
    int n = a.n();
    ComplexMatrix h(n);
    const cplx half_over_i{0, -0.5};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = half_over_i * (a.at(i, j) - std::conj(a.at(j, i)));
    return h;
}

double lambda_max_h(const ComplexMatrix& m) {
    Spectrum s = eig_hermitian(m, 1e-6);
    return s.eigenvalues.back().real();
}

/* (e^{i theta} B + e^{-i theta} B*) / 2 */
ComplexMatrix phase_hermitian(const ComplexMatrix& b, double theta) {
    int n = b.n();
    cplx ph = std::polar(1.0, theta);
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = 0.5 * (ph * b.at(i, j) + std::conj(ph * b.at(j, i)));
    return m;
}

double dual_g(const ComplexMatrix& m, const ComplexMatrix& h1, const ComplexMatrix& h2, cplx mu, double y1,
              double y2) {
    int n = m.n();
    ComplexMatrix t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.at(i, j) = m.at(i, j) - y1 * h1.at(i, j) - y2 * h2.at(i, j);
    return lambda_max_h(t) + y1 * mu.real() + y2 * mu.imag();
}

double frob_inner(const ComplexMatrix& x, const ComplexMatrix& z) {  // Re tr(x z), Hermitian pair
    const int n = x.n();
    double s = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += (x.at(i, j) * z.at(j, i)).real();
    return s;
}

/* q(y) = lambda_max(M - y1 H1 - y2 H2) + y1 c1 + y2 c2 is convex in y, with
   exact subgradient (c1 - <v, H1 v>, c2 - <v, H2 v>) at any top unit
   eigenvector v (Danskin). Splitting the constraint matrices into trace part
   plus trace-free part K_i rewrites q as lambda_max(M - y.K) + y.(c - t),
   which is affine along every null combination of (K1, K2): Hermitian inputs
   (K2 = 0) and any 2x2 normal input have one, and iterating across such a
   flat ray collapses an ellipsoid to machine-degenerate conditioning. So
   quotient the exact null directions of the K-Gram matrix first. A nonzero
   affine slope along a flat direction means the dual is unbounded below (the
   mean is infeasible on that axis), reported as a large negative sentinel; a
   slope within tolerance absorbs the floating-point drift of means that sit
   on a thin numerical range. The reduced problem is solved exactly: 0-dim
   directly, 1-dim by bracketed golden section, 2-dim by the ellipsoid
   method, whose central cuts never lose a minimizer and whose every iterate
   is a valid bound on its own. */
double dual_minimize(const ComplexMatrix& m, const ComplexMatrix& h1, const ComplexMatrix& h2, cplx mu,
                     std::array<double, 2>& y, double step0, double tol_step, int max_evals) {
    const int n = m.n();
    const double y_in0 = y[0], y_in1 = y[1];
    y = {0, 0};

    double t1 = 0, t2 = 0;
    for (int i = 0; i < n; ++i) {
        t1 += h1.at(i, i).real();
        t2 += h2.at(i, i).real();
    }
    t1 /= n;
    t2 /= n;
    ComplexMatrix k1 = h1, k2 = h2;
    for (int i = 0; i < n; ++i) {
        k1.at(i, i) -= t1;
        k2.at(i, i) -= t2;
    }
    const double c1 = mu.real() - t1, c2 = mu.imag() - t2;
    const double cnorm = std::hypot(c1, c2);
    const double sentinel = -1e12 * (1 + frobenius_norm(m));

    const double g11 = frob_inner(k1, k1), g12 = frob_inner(k1, k2), g22 = frob_inner(k2, k2);
    const double gtr = g11 + g22;
    const double gmid = 0.5 * (g11 + g22);
    const double gdr = std::sqrt(0.25 * (g11 - g22) * (g11 - g22) + g12 * g12);
    const double lam_hi = gmid + gdr, lam_lo = std::max(0.0, gmid - gdr);
    // orthonormal eigenvectors of the 2x2 Gram matrix
    double uh0, uh1;
    if (gdr <= 1e-300) {
        uh0 = 1;
        uh1 = 0;
    } else if (std::abs(g12) > std::abs(lam_hi - g11)) {
        uh0 = g12;
        uh1 = lam_hi - g11;
    } else {
        uh0 = lam_hi - g22;
        uh1 = g12;
    }
    {
        const double nn = std::hypot(uh0, uh1);
        if (nn > 0) {
            uh0 /= nn;
            uh1 /= nn;
        } else {
            uh0 = 1;
            uh1 = 0;
        }
    }
    const double ul0 = -uh1, ul1 = uh0;

    const double keep_tol = 1e-12 * (gtr + 1e-300);
    const bool keep_hi = lam_hi > keep_tol, keep_lo = lam_lo > keep_tol;
    auto flat_slope_ok = [&](double s) { return std::abs(s) <= 1e-8 * (1 + cnorm); };

    if (!keep_hi) {  // K1 = K2 = 0: A is a scalar, only the trace terms remain
        if (!(flat_slope_ok(c1) && flat_slope_ok(c2))) return sentinel;
        return lambda_max_h(m);
    }

    if (!keep_lo) {  // one flat direction
        if (!flat_slope_ok(c1 * ul0 + c2 * ul1)) return sentinel;
        const double cu = c1 * uh0 + c2 * uh1;
        ComplexMatrix ku(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ku.at(i, j) = uh0 * k1.at(i, j) + uh1 * k2.at(i, j);
        auto phi = [&](double al) {
            ComplexMatrix t(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) t.at(i, j) = m.at(i, j) - al * ku.at(i, j);
            return lambda_max_h(t) + al * cu;
        };
        int evals = 0;
        double best_a = 0, best_f = phi(0);
        ++evals;
        auto probe = [&](double al) {
            double f = phi(al);
            ++evals;
            if (f < best_f) {
                best_f = f;
                best_a = al;
            }
            return f;
        };
        double h = 0.25 * (1 + frobenius_norm(m)) / std::sqrt(lam_hi);
        h = std::max(h, tol_step);
        const double f0 = best_f;
        double fp = probe(h), fm = probe(-h);
        double lo, hi;
        if (f0 <= fp && f0 <= fm) {
            lo = -h;
            hi = h;
        } else {
            const double dir = fp < fm ? 1.0 : -1.0;
            double prev_a = 0, cur_a = dir * h, cur_f = dir > 0 ? fp : fm;
            double step = h;
            lo = -h;
            hi = h;
            while (evals + 1 <= max_evals) {
                step *= 2;
                const double nxt_a = cur_a + dir * step;
                const double nf = probe(nxt_a);
                if (nf >= cur_f || std::abs(nxt_a) > 1e14) {
                    lo = std::min(prev_a, nxt_a);
                    hi = std::max(prev_a, nxt_a);
                    break;
                }
                prev_a = cur_a;
                cur_a = nxt_a;
                cur_f = nf;
            }
        }
        const double gr = 0.5 * (std::sqrt(5.0) - 1);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = probe(x1), f2 = probe(x2);
        while (hi - lo > std::max(tol_step, 1e-13 * (1 + std::abs(lo) + std::abs(hi))) &&
               evals + 1 <= max_evals) {
            if (f1 <= f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = probe(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = probe(x2);
            }
        }
        y = {best_a * uh0, best_a * uh1};
        return best_f;
    }

    // generic two-dimensional case: ellipsoid on y with the original data
    const double gscale = 1 + cnorm + frobenius_norm(h1) + frobenius_norm(h2);
    const double radius0 = 1e5 * step0;
    double e00 = radius0 * radius0, e01 = 0, e11 = radius0 * radius0;
    double yc0 = y_in0, yc1 = y_in1;
    double best = 0;
    bool first = true;
    for (int it = 0; it < max_evals; ++it) {
        ComplexMatrix t(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) t.at(i, j) = m.at(i, j) - yc0 * h1.at(i, j) - yc1 * h2.at(i, j);
        Spectrum sp = eig_hermitian(t, 1e-6);
        const double q = sp.eigenvalues.back().real() + yc0 * mu.real() + yc1 * mu.imag();
        if (first || q < best) {
            best = q;
            y = {yc0, yc1};
            first = false;
        }

        double vh1 = 0, vh2 = 0;
        for (int i = 0; i < n; ++i) {
            cplx r1{0, 0}, r2{0, 0};
            for (int j = 0; j < n; ++j) {
                r1 += h1.at(i, j) * sp.basis.at(j, n - 1);
                r2 += h2.at(i, j) * sp.basis.at(j, n - 1);
            }
            vh1 += (std::conj(sp.basis.at(i, n - 1)) * r1).real();
            vh2 += (std::conj(sp.basis.at(i, n - 1)) * r2).real();
        }
        const double g0 = mu.real() - vh1, g1 = mu.imag() - vh2;
        if (std::hypot(g0, g1) <= 1e-14 * gscale) break;  // 0 in the subdifferential

        const double mid = 0.5 * (e00 + e11);
        const double dr = std::sqrt(0.25 * (e00 - e11) * (e00 - e11) + e01 * e01);
        if (std::sqrt(std::max(0.0, mid + dr)) <= tol_step) break;

        const double denom = std::sqrt(g0 * (e00 * g0 + e01 * g1) + g1 * (e01 * g0 + e11 * g1));
        if (!(denom > 0) || !std::isfinite(denom)) break;
        const double b0 = (e00 * g0 + e01 * g1) / denom;
        const double b1 = (e01 * g0 + e11 * g1) / denom;
        yc0 -= b0 / 3;
        yc1 -= b1 / 3;
        e00 = (4.0 / 3.0) * (e00 - (2.0 / 3.0) * b0 * b0);
        e01 = (4.0 / 3.0) * (e01 - (2.0 / 3.0) * b0 * b1);
        e11 = (4.0 / 3.0) * (e11 - (2.0 / 3.0) * b1 * b1);
    }
    return best;
}

struct MeanBox {
    double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
};

MeanBox exact_mean_box(const ComplexMatrix& h1, const ComplexMatrix& h2) {
    Spectrum s1 = eig_hermitian(h1, 1e-6);
    Spectrum s2 = eig_hermitian(h2, 1e-6);
    MeanBox b;
    b.re_lo = s1.eigenvalues.front().real();
    b.re_hi = s1.eigenvalues.back().real();
    b.im_lo = s2.eigenvalues.front().real();
    b.im_hi = s2.eigenvalues.back().real();
    return b;
}

/* bounding box of 512 numerical-range samples v*Av, padded by 10% a side,
   clipped to the exact box; trims the grid to where means actually live */
MeanBox sampled_mean_box(const ComplexMatrix& a, const MeanBox& exact, std::uint64_t seed) {
    int n = a.n();
    std::mt19937_64 rng(derive_seed(seed, 0xB0C5, 0));
    double re_lo = 0, re_hi = 0, im_lo = 0, im_hi = 0;
    for (int s = 0; s < 512; ++s) {
        std::vector<cplx> v = random_unit_vector(n, rng);
        cplx val{0, 0};
        for (int i = 0; i < n; ++i) {
            cplx row{0, 0};
            for (int j = 0; j < n; ++j) row += a.at(i, j) * v[j];
            val += std::conj(v[i]) * row;
        }
        if (s == 0) {
            re_lo = re_hi = val.real();
            im_lo = im_hi = val.imag();
        } else {
            re_lo = std::min(re_lo, val.real());
            re_hi = std::max(re_hi, val.real());
            im_lo = std::min(im_lo, val.imag());
            im_hi = std::max(im_hi, val.imag());
        }
    }
    double pad_re = 0.10 * (re_hi - re_lo), pad_im = 0.10 * (im_hi - im_lo);
    MeanBox b;
    b.re_lo = std::max(re_lo - pad_re, exact.re_lo);
    b.re_hi = std::min(re_hi + pad_re, exact.re_hi);
    b.im_lo = std::max(im_lo - pad_im, exact.im_lo);
    b.im_hi = std::min(im_hi + pad_im, exact.im_hi);
    if (b.re_lo > b.re_hi) b.re_lo = b.re_hi = 0.5 * (exact.re_lo + exact.re_hi);
    if (b.im_lo > b.im_hi) b.im_lo = b.im_hi = 0.5 * (exact.im_lo + exact.im_hi);
    return b;
}

struct DualPoint {
    cplx mu{0, 0};
    double theta = 0;
    double g = 0;
    std::array<double, 2> y{0, 0};
};

class UpperBound {
  public:
    UpperBound(const ComplexMatrix& a, int k, MomentMode mode, double tol, std::uint64_t seed)
        : a_(a), k_(k), mode_(mode), tol_(tol) {
        h1_ = hermitian_part(a);
        h2_ = skew_part_over_i(a);
        exact_ = exact_mean_box(h1_, h2_);
        box_ = sampled_mean_box(a, exact_, seed);
        hscale_ = 1 + frobenius_norm(h1_) + frobenius_norm(h2_);
    }

    /* pin the search to the primal witness's own mean and phase: the converged
       dual there can never fall under the witness value, so the final bound
       cannot invert against the reported lower bound even when the grid peak
       sits elsewhere */
    void seed(cplx mu, double theta) {
        seed_mu_ = mu;
        seed_theta_ = theta;
        has_seed_ = true;
    }

    /* max over the mean grid (and phase grid in the weak mode) of the
       converged dual bound; the polished value is still a per-point upper
       bound, so the running max never loses validity */
    double run() {
        double ext_re = box_.re_hi - box_.re_lo, ext_im = box_.im_hi - box_.im_lo;
        double scale = 1 + std::max(std::abs(box_.re_lo), std::abs(box_.re_hi)) +
                       std::max(std::abs(box_.im_lo), std::abs(box_.im_hi));
        double axis_floor = 1e-11 * scale;

        double clo = box_.re_lo, chi = box_.re_hi, dlo = box_.im_lo, dhi = box_.im_hi;
        std::vector<double> thetas;
        const double two_pi = 8 * std::atan(1.0);
        if (mode_ == MomentMode::Weak)
            for (int j = 0; j < 64; ++j) thetas.push_back(two_pi * j / 64);
        else
            thetas.push_back(0);
        double dtheta = two_pi / 64;

        DualPoint best;
        best.mu = {0.5 * (clo + chi), 0.5 * (dlo + dhi)};
        best.g = -1e300;
        double upper = -1e300;
        /* cheap cell duals only rank the cells (they can only overshoot the
           true dual, never undershoot it); the reported bound comes from fully
           converged duals at the leading cells, otherwise a single unconverged
           cell would inflate the upper bound permanently */
        std::vector<DualPoint> leaders;
        auto keep_leader = [&](const DualPoint& p) {
            leaders.push_back(p);
            std::sort(leaders.begin(), leaders.end(),
                      [](const DualPoint& u, const DualPoint& v) { return u.g > v.g; });
            if (leaders.size() > 3) leaders.pop_back();
        };

        for (int level = 0; level < 3; ++level) {
            std::vector<double> xs = linspace(clo, chi, axis_floor);
            std::vector<double> ys = linspace(dlo, dhi, axis_floor);
            std::array<double, 2> y_roll = best.y;
            leaders.clear();
            for (double yc : ys)
                for (double xc : xs) {
                    cplx mu{xc, yc};
                    ComplexMatrix base = central_power(a_, mu, k_, mode_ == MomentMode::Strong);
                    for (double th : thetas) {
                        const ComplexMatrix m =
                            mode_ == MomentMode::Weak ? phase_hermitian(base, th) : base;
                        double mscale = 1 + frobenius_norm(m);
                        const double step0 = std::max(0.25 * mscale / hscale_, 1e-3);
                        const double tol_step = 1e-7 * mscale / hscale_;
                        std::array<double, 2> y = y_roll;
                        double g = dual_minimize(m, h1_, h2_, mu, y, step0, tol_step, 220);
                        /* a warm start inherited from an infeasible-mean cell can be
                           stranded at huge |y|; descending from zero caps the cell at
                           lambda_max(m), which the stranded run may never reach */
                        if (g > dual_g(m, h1_, h2_, mu, 0, 0)) {
                            std::array<double, 2> yz{0, 0};
                            double gz = dual_minimize(m, h1_, h2_, mu, yz, step0, tol_step, 220);
                            if (gz < g) {
                                g = gz;
                                y = yz;
                            }
                        }
                        y_roll = g < -10 * mscale ? std::array<double, 2>{0, 0} : y;
                        keep_leader(DualPoint{mu, th, g, y});
                    }
                }
            /* re-rank the level by converged duals before shrinking; the raw
               winner may owe its rank to an unfinished descent */
            for (DualPoint& p : leaders) {
                std::array<double, 2> y = p.y;
                p.g = converged_dual(p.mu, p.theta, y);
                p.y = y;
            }
            for (const DualPoint& p : leaders)
                if (p.g > best.g) best = p;
            upper = std::max(upper, best.g);
            /* shrink to 1.5 cells around the winner */
            double sp_re = xs.size() > 1 ? xs[1] - xs[0] : 0;
            double sp_im = ys.size() > 1 ? ys[1] - ys[0] : 0;
            clo = std::max(box_.re_lo, best.mu.real() - 1.5 * sp_re);
            chi = std::min(box_.re_hi, best.mu.real() + 1.5 * sp_re);
            dlo = std::max(box_.im_lo, best.mu.imag() - 1.5 * sp_im);
            dhi = std::min(box_.im_hi, best.mu.imag() + 1.5 * sp_im);
            if (mode_ == MomentMode::Weak) {
                thetas.clear();
                for (int j = -4; j <= 4; ++j) thetas.push_back(best.theta + j * 1.5 * dtheta / 4);
                dtheta = 1.5 * dtheta / 4;
            }
        }

        if (has_seed_) {
            DualPoint ps;
            ps.mu = {std::clamp(seed_mu_.real(), exact_.re_lo, exact_.re_hi),
                     std::clamp(seed_mu_.imag(), exact_.im_lo, exact_.im_hi)};
            ps.theta = seed_theta_;
            std::array<double, 2> y{0, 0};
            ps.g = converged_dual(ps.mu, ps.theta, y);
            ps.y = y;
            upper = std::max(upper, ps.g);
            if (ps.g > best.g) best = ps;
        }

        return std::max(upper, polish(best, std::max(ext_re, ext_im), dtheta));
    }

  private:
    std::vector<double> linspace(double lo, double hi, double axis_floor) const {
        if (hi - lo <= axis_floor) return {0.5 * (lo + hi)};
        std::vector<double> v;
        for (int i = 0; i <= 20; ++i) v.push_back(lo + (hi - lo) * i / 20);
        return v;
    }

    double converged_dual(cplx mu, double theta, std::array<double, 2>& y) const {
        ComplexMatrix base = central_power(a_, mu, k_, mode_ == MomentMode::Strong);
        const ComplexMatrix m = mode_ == MomentMode::Weak ? phase_hermitian(base, theta) : base;
        double mscale = 1 + frobenius_norm(m);
        const double step0 = std::max(0.25 * mscale / hscale_, 1e-3);
        const double tol_step = 1e-9 * mscale / hscale_;
        double g = dual_minimize(m, h1_, h2_, mu, y, step0, tol_step, 1200);
        if (g > dual_g(m, h1_, h2_, mu, 0, 0)) {
            std::array<double, 2> yz{0, 0};
            double gz = dual_minimize(m, h1_, h2_, mu, yz, step0, tol_step, 1200);
            if (gz < g) {
                g = gz;
                y = yz;
            }
        }
        return g;
    }

    /* local max-search over the mean (and the phase) with fully converged
       duals; closes the grid gap when the dual surface peaks between cells */
    double polish(DualPoint start, double extent, double dtheta) {
        DualPoint cur = start;
        {
            std::array<double, 2> y = cur.y;
            cur.g = converged_dual(cur.mu, cur.theta, y);
            cur.y = y;
        }
        double upper = cur.g;
        double step = std::max(extent / 40, 1e-12);
        double step_th = dtheta;
        const double quarter = 2 * std::atan(1.0);
        const double step_floor = std::max(1e-6 * extent, 1e-12);
        int rotation = 0, probes = 0;
        while ((step >= step_floor || (mode_ == MomentMode::Weak && step_th >= 1e-6)) && probes < 360) {
            bool improved = false;
            const double base = rotation % 2 == 0 ? 0.0 : quarter / 4;
            for (int dir = 0; dir < 8 && step >= step_floor; ++dir) {
                const double ang = base + dir * quarter / 2;
                cplx mu{std::clamp(cur.mu.real() + step * std::cos(ang), exact_.re_lo, exact_.re_hi),
                        std::clamp(cur.mu.imag() + step * std::sin(ang), exact_.im_lo, exact_.im_hi)};
                std::array<double, 2> y = cur.y;
                double g = converged_dual(mu, cur.theta, y);
                ++probes;
                upper = std::max(upper, g);
                if (g > cur.g) {
                    cur = DualPoint{mu, cur.theta, g, y};
                    improved = true;
                }
            }
            if (mode_ == MomentMode::Weak && step_th >= 1e-6) {
                for (double d : {step_th, -step_th}) {
                    std::array<double, 2> y = cur.y;
                    double g = converged_dual(cur.mu, cur.theta + d, y);
                    ++probes;
                    upper = std::max(upper, g);
                    if (g > cur.g) {
                        cur = DualPoint{cur.mu, cur.theta + d, g, y};
                        improved = true;
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
                step_th *= 0.5;
                ++rotation;
            }
        }
        return upper;
    }

    const ComplexMatrix& a_;
    int k_;
    MomentMode mode_;
    double tol_;
    ComplexMatrix h1_, h2_;
    MeanBox exact_, box_;
    double hscale_ = 1;
    cplx seed_mu_{0, 0};
    double seed_theta_ = 0;
    bool has_seed_ = false;
};

void require_k(int k) {
    if (k < 1 || k > 64) throw Error(ErrorCode::InvalidK, "moment order must be in 1..64");
}

/* objective over rank-2 factors; v holds the two columns stacked */
class PrimalEval {
  public:
    PrimalEval(const ComplexMatrix& a, int k, MomentMode mode) : a_(a), k_(k), mode_(mode), n_(a.n()) {}

    double operator()(const std::vector<cplx>& v, cplx* mean_out = nullptr, cplx* raw_out = nullptr) const {
        double nrm = 0;
        for (cplx z : v) nrm += std::norm(z);
        if (nrm <= 1e-300) return -1;
        cplx mu{0, 0};
        std::vector<cplx> w(n_);
        for (int c = 0; c < 2; ++c) {
            const cplx* vc = v.data() + static_cast<size_t>(c) * n_;
            apply(vc, w.data());
            for (int i = 0; i < n_; ++i) mu += std::conj(vc[i]) * w[i];
        }
        mu /= nrm;
        if (mean_out) *mean_out = mu;

        if (mode_ == MomentMode::Weak) {
            cplx raw{0, 0};
            std::vector<cplx> t(n_);
            for (int c = 0; c < 2; ++c) {
                const cplx* vc = v.data() + static_cast<size_t>(c) * n_;
                std::copy(vc, vc + n_, w.begin());
                for (int p = 0; p < k_; ++p) {
                    apply(w.data(), t.data());
                    for (int i = 0; i < n_; ++i) t[i] -= mu * w[i];
                    w.swap(t);
                }
                for (int i = 0; i < n_; ++i) raw += std::conj(vc[i]) * w[i];
            }
            raw /= nrm;
            if (raw_out) *raw_out = raw;
            return std::abs(raw);
        }

        ComplexMatrix m = central_power(a_, mu, k_, true);
        double s = 0;
        for (int c = 0; c < 2; ++c) {
            const cplx* vc = v.data() + static_cast<size_t>(c) * n_;
            for (int i = 0; i < n_; ++i) {
                cplx row{0, 0};
                for (int j = 0; j < n_; ++j) row += m.at(i, j) * vc[j];
                s += (std::conj(vc[i]) * row).real();
            }
        }
        s /= nrm;
        if (raw_out) *raw_out = cplx{s, 0};
        return s;
    }

    int n() const { return n_; }

  private:
    void apply(const cplx* x, cplx* out) const {
        for (int i = 0; i < n_; ++i) {
            cplx row{0, 0};
            for (int j = 0; j < n_; ++j) row += a_.at(i, j) * x[j];
            out[i] = row;
        }
    }

    const ComplexMatrix& a_;
    int k_;
    MomentMode mode_;
    int n_;
};

void normalize(std::vector<cplx>& v) {
    double nrm = 0;
    for (cplx z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    if (nrm > 0)
        for (cplx& z : v) z /= nrm;
}

MomentResult primal_ascent(const ComplexMatrix& a, int k, MomentMode mode, int budget, double tol,
                           std::uint64_t seed) {
    require_k(k);
    (void)tol;
    const int n = a.n();
    PrimalEval eval(a, k, mode);
    const double h = 1e-6;  // forward-difference step
    const std::uint64_t stream = mode == MomentMode::Weak ? 0x3E57 : 0x57A6;

    double f_best = -1;
    std::vector<cplx> v_best;

    for (int restart = 0; restart < std::max(1, budget); ++restart) {
        std::mt19937_64 rng(derive_seed(seed, stream, static_cast<std::uint64_t>(restart)));
        std::vector<cplx> v(2 * static_cast<size_t>(n));
        for (cplx& z : v) z = gaussian(rng);
        normalize(v);
        double f = eval(v);
        double alpha = 0.05;

        for (int iter = 0; iter < 2000; ++iter) {
            std::vector<cplx> grad(v.size());
            double gn2 = 0;
            for (size_t i = 0; i < v.size(); ++i) {
                std::vector<cplx> vp = v;
                vp[i] += h;
                double dre = (eval(vp) - f) / h;
                vp[i] = v[i] + cplx{0, h};
                double dim = (eval(vp) - f) / h;
                grad[i] = {dre, dim};
                gn2 += dre * dre + dim * dim;
            }
            double gn = std::sqrt(gn2);
            if (gn <= 1e-9 * (1 + std::abs(f))) break;

            bool moved = false;
            while (alpha >= 1e-12) {
                std::vector<cplx> vp = v;
                for (size_t i = 0; i < v.size(); ++i) vp[i] += (alpha / gn) * grad[i];
                normalize(vp);
                double fp = eval(vp);
                if (fp > f) {
                    v.swap(vp);
                    f = fp;
                    alpha = std::min(alpha * 1.6, 0.5);
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) break;
        }
        if (f > f_best) {
            f_best = f;
            v_best = v;
        }
    }

    MomentResult r;
    r.k = k;
    r.mode = mode;
    r.certificate = Certificate::PrimalAscent;
    cplx mu, raw;
    f_best = eval(v_best, &mu, &raw);
    r.value = f_best > 0 ? std::pow(f_best, 1.0 / k) : 0;
    r.mean = mu;
    r.raw_moment = raw;

    double nrm = 0;
    for (cplx z : v_best) nrm += std::norm(z);
    ComplexMatrix d(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s{0, 0};
            for (int c = 0; c < 2; ++c)
                s += v_best[static_cast<size_t>(c) * n + i] * std::conj(v_best[static_cast<size_t>(c) * n + j]);
            d.at(i, j) = s / nrm;
        }
    r.density_witness = DensityState(d);
    return r;
}

}  // namespace

double dual_fixed_mean_value(const ComplexMatrix& a, const ComplexMatrix& m, cplx mu, double tol) {
    if (a.n() != m.n()) throw Error(ErrorCode::DimensionMismatch, "objective and constraint sizes differ");
    if (classify(m) != MatrixClass::Hermitian)
        throw Error(ErrorCode::NotHermitianM, "dual objective matrix must be Hermitian");
    ComplexMatrix h1 = hermitian_part(a);
    ComplexMatrix h2 = skew_part_over_i(a);
    MeanBox box = exact_mean_box(h1, h2);
    double scale = 1 + frobenius_norm(a);
    double slack = 1e-6 * scale;
    if (mu.real() < box.re_lo - slack || mu.real() > box.re_hi + slack || mu.imag() < box.im_lo - slack ||
        mu.imag() > box.im_hi + slack)
        throw Error(ErrorCode::InvalidState, "mean constraint lies outside the numerical range box");

    std::array<double, 2> y{0, 0};
    double mscale = 1 + frobenius_norm(m);
    return dual_minimize(m, h1, h2, mu, y, std::max(0.5 * mscale, 1e-2), tol, 20000);
}

MatrixMomentResult weak_moment_matrix(const ComplexMatrix& a, int k, int budget, double tol,
                                      std::uint64_t seed) {
    require_k(k);
    MatrixMomentResult r;
    r.lower = primal_ascent(a, k, MomentMode::Weak, budget, tol, seed);
    UpperBound ub(a, k, MomentMode::Weak, tol, seed);
    ub.seed(r.lower.mean, -std::arg(r.lower.raw_moment));
    double g = ub.run();
    r.upper = g > 0 ? std::pow(g, 1.0 / k) : 0;
    return r;
}

MatrixMomentResult strong_moment_matrix(const ComplexMatrix& a, int k, int budget, double tol,
                                        std::uint64_t seed) {
    require_k(k);
    MatrixMomentResult r;
    r.lower = primal_ascent(a, k, MomentMode::Strong, budget, tol, seed);
    UpperBound ub(a, k, MomentMode::Strong, tol, seed);
    ub.seed(r.lower.mean, 0);
    double g = ub.run();
    r.upper = g > 0 ? std::pow(g, 1.0 / k) : 0;
    return r;
}

MomentResult weak_moment_primal_lower(const ComplexMatrix& a, int k, int budget, double tol,
                                      std::uint64_t seed) {
    return primal_ascent(a, k, MomentMode::Weak, budget, tol, seed);
}

MomentResult strong_moment_primal_lower(const ComplexMatrix& a, int k, int budget, double tol,
                                        std::uint64_t seed) {
    return primal_ascent(a, k, MomentMode::Strong, budget, tol, seed);
}

}  // namespace moments
