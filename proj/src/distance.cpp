#include "moments/distance.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace moments {

namespace {

bool in_disc(const EnclosingDisc& d, cplx p) {
    return std::abs(p - d.center) <= d.radius * (1 + 1e-12) + 1e-14;
}

EnclosingDisc disc2(cplx a, cplx b) {
    EnclosingDisc d;
    d.center = 0.5 * (a + b);
    d.radius = 0.5 * std::abs(a - b);
    return d;
}

// Circumdisc of three points; falls back to the best two-point disc when the
// points are (near-)collinear, which is also the minimal disc in that case.
EnclosingDisc disc3(cplx a, cplx b, cplx c) {
    const double ax = a.real(), ay = a.imag();
    const double bx = b.real() - ax, by = b.imag() - ay;
    const double cx = c.real() - ax, cy = c.imag() - ay;
    const double dd = 2 * (bx * cy - by * cx);
    const double scale = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy), 1e-300});
    if (std::abs(dd) <= 1e-14 * scale * scale) {
        EnclosingDisc best = disc2(a, b);
        for (const EnclosingDisc& d : {disc2(a, c), disc2(b, c)})
            if (d.radius > best.radius) best = d;
        return best;
    }
    const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const double ux = (cy * b2 - by * c2) / dd;
    const double uy = (bx * c2 - cx * b2) / dd;
    EnclosingDisc d;
    d.center = cplx(ax + ux, ay + uy);
    d.radius = std::max({std::abs(a - d.center), std::abs(b - d.center), std::abs(c - d.center)});
    return d;
}

EnclosingDisc disc_of_boundary(const std::vector<cplx>& r) {
    switch (r.size()) {
        case 0: return EnclosingDisc{};
        case 1: return EnclosingDisc{r[0], 0};
        case 2: return disc2(r[0], r[1]);
        default: return disc3(r[0], r[1], r[2]);
    }
}

EnclosingDisc welzl(std::vector<cplx>& pts, size_t limit, std::vector<cplx>& boundary) {
    if (limit == 0 || boundary.size() == 3) return disc_of_boundary(boundary);
    EnclosingDisc d = welzl(pts, limit - 1, boundary);
    if (in_disc(d, pts[limit - 1])) return d;
    boundary.push_back(pts[limit - 1]);
    d = welzl(pts, limit - 1, boundary);
    boundary.pop_back();
    // move-to-front: points found outside migrate toward the front so later
    // passes test them early
    cplx p = pts[limit - 1];
    pts.erase(pts.begin() + (limit - 1));
    pts.insert(pts.begin(), p);
    return d;
}

}  // namespace

EnclosingDisc smallest_enclosing_disc(const std::vector<cplx>& points, unsigned long long seed) {
    if (points.empty()) throw Error(ErrorCode::EmptyInput, "smallest_enclosing_disc needs at least one point");
    std::vector<cplx> pts = points;
    std::mt19937_64 rng(seed);
    for (size_t i = pts.size(); i > 1; --i) {
        std::uniform_int_distribution<size_t> pick(0, i - 1);
        std::swap(pts[i - 1], pts[pick(rng)]);
    }
    std::vector<cplx> boundary;
    return welzl(pts, pts.size(), boundary);
}

double spectral_diameter(const Spectrum& spectrum) {
    double d = 0;
    const std::vector<cplx>& ev = spectrum.eigenvalues;
    for (size_t i = 0; i < ev.size(); ++i)
        for (size_t j = i + 1; j < ev.size(); ++j) d = std::max(d, std::abs(ev[i] - ev[j]));
    return d;
}

DistanceResult min_scalar_distance(const ComplexMatrix& a, double tol) {
    const int n = a.n();
    const cplx mean_diag = trace(a) / static_cast<double>(n);

    // A = cI has distance zero; the optimizers below would divide by scale 0.
    if (frobenius_norm(a - mean_diag * ComplexMatrix::identity(n)) <= 1e-14 * (1 + frobenius_norm(a)))
        return DistanceResult{mean_diag, 0.0, DistanceMethod::EnclosingDisc};

    if (classify(a) != MatrixClass::General) {
        Spectrum sp = eig_normal(a);
        EnclosingDisc d = smallest_enclosing_disc(sp.eigenvalues);
        return DistanceResult{d.center, d.radius, DistanceMethod::EnclosingDisc};
    }
    return min_scalar_distance_descent(a, tol);
}

DistanceResult min_scalar_distance_descent(const ComplexMatrix& a, double tol) {
    const int n = a.n();
    const cplx mean_diag = trace(a) / static_cast<double>(n);
    if (frobenius_norm(a - mean_diag * ComplexMatrix::identity(n)) <= 1e-14 * (1 + frobenius_norm(a)))
        return DistanceResult{mean_diag, 0.0, DistanceMethod::ConvexDescent};

    /* f(lambda) = sigma_max(A - lambda I) is convex and 1-Lipschitz in lambda,
       with kinks wherever the top singular value ties. A fixed-stencil pattern
       search stalls in the narrow descent cones those kinks create, so run the
       ellipsoid method instead: for a top singular pair (u, v) of A - lambda I
       the vector (-Re<u,v>, Im<u,v>) is a subgradient, every central cut keeps
       the minimizer, and a zero subgradient certifies global optimality.
       Inside a kink valley the cuts alternate between near-antiparallel
       subgradients, which collapses one ellipsoid axis while stretching the
       other until the quadratic form degenerates in floating point (condition
       growth is a factor of three per cut). Restart rounds absorb that: each
       round recenters a fresh, smaller ball on the best point so far, which
       resets the conditioning while every evaluation keeps lowering the
       tracked minimum, and the final rounds run at a radius small enough to
       reach the axis stop before degeneration can recur. */
    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const double anorm = operator_norm(a);
    // f(l) >= |l| - ||A|| pins the minimizer inside |l| <= 2||A||, and the
    // starting center tr(A)/n inside |l| <= ||A||.
    const double r0 = 3 * anorm;
    const double stop_axis = std::max(1e-12 * r0, 1e-2 * tol);

    cplx best_x = mean_diag;
    double best_f = 0;
    bool first = true;
    bool converged = false;

    double radius = r0;
    for (int round = 0; round < 8 && !converged; ++round) {
        cplx x = best_x;
        double h00 = radius * radius, h01 = 0, h11 = radius * radius;  // ellipsoid {x + H^{1/2} u}
        for (int it = 0; it < 260; ++it) {
            ComplexMatrix b = a - x * eye;
            Spectrum sp = eig_hermitian(adjoint(b) * b, 1e-6);
            const double sigma = std::sqrt(std::max(0.0, sp.eigenvalues.back().real()));
            if (first || sigma < best_f) {
                best_f = sigma;
                best_x = x;
                first = false;
            }

            // semi-axes of H; the minimizer stays inside every ellipsoid, so
            // once the longest axis is below stop_axis the current center is
            // optimal to that length (Lipschitz constant one).
            const double mid = 0.5 * (h00 + h11);
            const double det_root = std::sqrt(0.25 * (h00 - h11) * (h00 - h11) + h01 * h01);
            if (std::sqrt(std::max(0.0, mid + det_root)) <= stop_axis) {
                converged = true;
                break;
            }

            std::vector<cplx> v(n), u(n);
            for (int r = 0; r < n; ++r) v[static_cast<size_t>(r)] = sp.basis.at(r, n - 1);
            for (int r = 0; r < n; ++r) {
                cplx acc = 0;
                for (int c = 0; c < n; ++c) acc += b.at(r, c) * v[static_cast<size_t>(c)];
                u[static_cast<size_t>(r)] = acc / sigma;
            }
            cplx s = 0;  // <u, v>; d sigma = -Re(d lambda * s)
            for (int r = 0; r < n; ++r) s += std::conj(u[static_cast<size_t>(r)]) * v[static_cast<size_t>(r)];
            const double g0 = -s.real(), g1 = s.imag();
            if (std::hypot(g0, g1) <= 1e-13) {  // 0 in the subdifferential
                converged = true;
                break;
            }

            const double denom = std::sqrt(g0 * (h00 * g0 + h01 * g1) + g1 * (h01 * g0 + h11 * g1));
            if (!(denom > 0) || !std::isfinite(denom)) break;  // degenerate: next round
            const double b0 = (h00 * g0 + h01 * g1) / denom;
            const double b1 = (h01 * g0 + h11 * g1) / denom;
            x -= cplx(b0, b1) / 3.0;
            h00 = (4.0 / 3.0) * (h00 - (2.0 / 3.0) * b0 * b0);
            h01 = (4.0 / 3.0) * (h01 - (2.0 / 3.0) * b0 * b1);
            h11 = (4.0 / 3.0) * (h11 - (2.0 / 3.0) * b1 * b1);
        }
        radius = std::max(1e-2 * radius, 8 * stop_axis);
    }
    return DistanceResult{best_x, best_f, DistanceMethod::ConvexDescent};
}

}  // namespace moments
