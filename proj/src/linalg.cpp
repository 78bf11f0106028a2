#include "moments/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace moments {

namespace {

constexpr int kMaxDim = 64;

void check_dim(int n) {
    if (n < 1 || n > kMaxDim)
        throw Error(ErrorCode::NonSquare, "matrix dimension must be in 1..64, got " + std::to_string(n));
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, cplx(0, 0)) { check_dim(n); }

ComplexMatrix::ComplexMatrix(int n, std::vector<cplx> entries) : n_(n), a_(std::move(entries)) {
    check_dim(n);
    if (a_.size() != static_cast<size_t>(n) * n)
        throw Error(ErrorCode::NonSquare, "entry count " + std::to_string(a_.size()) +
                                              " does not match " + std::to_string(n) + "x" + std::to_string(n));
    for (const cplx& z : a_)
        if (!finite(z)) throw Error(ErrorCode::NonFiniteEntry, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cplx>& d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m.at(i, i) = d[i];
    return m;
}

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.n() != y.n()) throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
    ComplexMatrix r(x.n());
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) r.at(i, j) = x.at(i, j) + y.at(i, j);
    return r;
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.n() != y.n()) throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
    ComplexMatrix r(x.n());
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) r.at(i, j) = x.at(i, j) - y.at(i, j);
    return r;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.n() != y.n()) throw Error(ErrorCode::DimensionMismatch, "matrix sizes differ");
    const int n = x.n();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            const cplx xil = x.at(i, l);
            if (xil == cplx(0, 0)) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += xil * y.at(l, j);
        }
    return r;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& x) {
    ComplexMatrix r(x.n());
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) r.at(i, j) = s * x.at(i, j);
    return r;
}

ComplexMatrix adjoint(const ComplexMatrix& x) {
    ComplexMatrix r(x.n());
    for (int i = 0; i < x.n(); ++i)
        for (int j = 0; j < x.n(); ++j) r.at(i, j) = std::conj(x.at(j, i));
    return r;
}

cplx trace(const ComplexMatrix& x) {
    cplx t = 0;
    for (int i = 0; i < x.n(); ++i) t += x.at(i, i);
    return t;
}

double frobenius_norm(const ComplexMatrix& x) {
    double s = 0;
    for (const cplx& z : x.entries()) s += std::norm(z);
    return std::sqrt(s);
}

const char* matrix_class_name(MatrixClass c) {
    switch (c) {
        case MatrixClass::Hermitian: return "hermitian";
        case MatrixClass::NormalNonHermitian: return "normal";
        case MatrixClass::General: return "general";
    }
    return "unknown";
}

MatrixClass classify(const ComplexMatrix& a, double tol_class) {
    const double nf = frobenius_norm(a);
    if (frobenius_norm(a - adjoint(a)) <= tol_class * (1 + nf)) return MatrixClass::Hermitian;
    const ComplexMatrix ad = adjoint(a);
    if (frobenius_norm(a * ad - ad * a) <= tol_class * (1 + nf * nf)) return MatrixClass::NormalNonHermitian;
    return MatrixClass::General;
}

namespace {

/* One complex Jacobi rotation zeroing A[p][q]. With beta = A[p][q] = b e^{i phi},
   the unitary G acts on columns (p,q) as
       col_p <- c col_p + s e^{-i phi} col_q
       col_q <- -s e^{i phi} col_p + c col_q
   where tan(theta) = t solves t^2 + 2 tau t - 1 = 0, tau = (A[q][q]-A[p][p])/(2b). */
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& u, int p, int q) {
    const cplx beta = a.at(p, q);
    const double b = std::abs(beta);
    if (b == 0) return;
    const cplx phase = beta / b;  // e^{i phi}
    const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2 * b);
    // small-magnitude root of t^2 - 2 tau t - 1 = 0
    const double t = (tau >= 0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
    const double c = 1 / std::sqrt(1 + t * t);
    const double s = t * c;
    const cplx sp = s * std::conj(phase);   // multiplies col_q contribution into col_p
    const cplx sm = s * phase;

    const int n = a.n();
    for (int i = 0; i < n; ++i) {  // A <- A G (columns p, q)
        const cplx aip = a.at(i, p), aiq = a.at(i, q);
        a.at(i, p) = c * aip + sp * aiq;
        a.at(i, q) = -sm * aip + c * aiq;
    }
    for (int j = 0; j < n; ++j) {  // A <- G^* A (rows p, q)
        const cplx apj = a.at(p, j), aqj = a.at(q, j);
        a.at(p, j) = c * apj + sm * aqj;
        a.at(q, j) = -sp * apj + c * aqj;
    }
    a.at(p, q) = 0;
    a.at(q, p) = 0;
    a.at(p, p) = cplx(a.at(p, p).real(), 0);
    a.at(q, q) = cplx(a.at(q, q).real(), 0);
    for (int i = 0; i < n; ++i) {  // U <- U G
        const cplx uip = u.at(i, p), uiq = u.at(i, q);
        u.at(i, p) = c * uip + sp * uiq;
        u.at(i, q) = -sm * uip + c * uiq;
    }
}

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

void sort_spectrum(Spectrum& sp, bool by_real_only) {
    const int n = static_cast<int>(sp.eigenvalues.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        const cplx &x = sp.eigenvalues[i], &y = sp.eigenvalues[j];
        if (by_real_only) return x.real() < y.real();
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    std::vector<cplx> ev(n);
    ComplexMatrix basis(n);
    for (int c = 0; c < n; ++c) {
        ev[c] = sp.eigenvalues[idx[c]];
        for (int r = 0; r < n; ++r) basis.at(r, c) = sp.basis.at(r, idx[c]);
    }
    sp.eigenvalues = std::move(ev);
    sp.basis = std::move(basis);
}

}  // namespace

Spectrum eig_hermitian(const ComplexMatrix& a, double tol_class) {
    if (classify(a, tol_class) != MatrixClass::Hermitian)
        throw Error(ErrorCode::NotHermitian, "eig_hermitian requires a Hermitian matrix");
    const int n = a.n();
    ComplexMatrix w = a;
    // Symmetrize exactly so rounding in the input cannot bias rotations.
    for (int i = 0; i < n; ++i) {
        w.at(i, i) = cplx(w.at(i, i).real(), 0);
        for (int j = i + 1; j < n; ++j) {
            const cplx m = 0.5 * (w.at(i, j) + std::conj(w.at(j, i)));
            w.at(i, j) = m;
            w.at(j, i) = std::conj(m);
        }
    }
    ComplexMatrix u = ComplexMatrix::identity(n);
    const double tol = 1e-14 * (1 + frobenius_norm(w));
    bool converged = (n == 1) || offdiag_norm(w) <= tol;
    for (int sweep = 0; sweep < 64 && !converged; ++sweep) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(w.at(p, q)) > tol / (n * n)) jacobi_rotate(w, u, p, q);
        converged = offdiag_norm(w) <= tol;
    }
    if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweeps did not converge");

    Spectrum sp;
    sp.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) sp.eigenvalues[i] = cplx(w.at(i, i).real(), 0);
    sp.basis = u;
    sort_spectrum(sp, /*by_real_only=*/true);
    double on = 0;
    for (const cplx& ev : sp.eigenvalues) on = std::max(on, std::abs(ev));
    sp.source_norm = on;
    return sp;
}

Spectrum eig_normal(const ComplexMatrix& a, double tol_class) {
    const MatrixClass cls = classify(a, tol_class);
    if (cls == MatrixClass::General)
        throw Error(ErrorCode::NotNormal, "eig_normal requires a normal matrix");
    const int n = a.n();
    const ComplexMatrix ad = adjoint(a);
    const ComplexMatrix h = 0.5 * (a + ad);
    const ComplexMatrix k = cplx(0, -0.5) * (a - ad);

    Spectrum hs = eig_hermitian(h, 1e-6);  // h is Hermitian by construction
    ComplexMatrix u = hs.basis;

    // K preserves each H eigenspace; diagonalize K within each cluster of
    // near-equal H eigenvalues.
    const double cluster_tol = 1e-8 * (1 + frobenius_norm(h));
    int start = 0;
    while (start < n) {
        int stop = start + 1;
        while (stop < n &&
               hs.eigenvalues[stop].real() - hs.eigenvalues[stop - 1].real() <= cluster_tol)
            ++stop;
        const int m = stop - start;
        if (m > 1) {
            // kk = U_C^* K U_C restricted to the cluster columns
            ComplexMatrix kk(m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    cplx sum = 0;
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c)
                            sum += std::conj(u.at(r, start + i)) * k.at(r, c) * u.at(c, start + j);
                    kk.at(i, j) = sum;
                }
            Spectrum ks = eig_hermitian(kk, 1e-6);
            ComplexMatrix newcols(n);
            for (int r = 0; r < n; ++r)
                for (int j = 0; j < m; ++j) {
                    cplx sum = 0;
                    for (int i = 0; i < m; ++i) sum += u.at(r, start + i) * ks.basis.at(i, j);
                    newcols.at(r, j) = sum;
                }
            for (int r = 0; r < n; ++r)
                for (int j = 0; j < m; ++j) u.at(r, start + j) = newcols.at(r, j);
        }
        start = stop;
    }

    // Read eigenvalues off U^* A U and verify it is diagonal.
    ComplexMatrix d = adjoint(u) * a * u;
    const double resid_tol = 1e-8 * (1 + frobenius_norm(a));
    if (offdiag_norm(d) > resid_tol)
        throw Error(ErrorCode::NotNormal, "commuting-pair reduction left off-diagonal residue");

    Spectrum sp;
    sp.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) sp.eigenvalues[i] = d.at(i, i);
    sp.basis = u;
    sort_spectrum(sp, /*by_real_only=*/false);
    double on = 0;
    for (const cplx& ev : sp.eigenvalues) on = std::max(on, std::abs(ev));
    sp.source_norm = on;
    return sp;
}

ComplexMatrix direct_sum_conjugate(const ComplexMatrix& a) {
    const int n = a.n();
    ComplexMatrix r(2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            r.at(i, j) = a.at(i, j);
            r.at(n + i, n + j) = std::conj(a.at(j, i));  // A* = conjugate transpose
        }
    return r;
}

ComplexMatrix central_power(const ComplexMatrix& a, cplx mu, int k, bool absolute) {
    if (k < 1 || k > kMaxDim)
        throw Error(ErrorCode::InvalidK, "k must be in 1..64, got " + std::to_string(k));
    ComplexMatrix b = a - mu * ComplexMatrix::identity(a.n());
    if (!absolute) {
        ComplexMatrix r = b;
        for (int i = 1; i < k; ++i) r = r * b;
        return r;
    }
    // |B|^k = (B^*B)^{k/2} through the eigendecomposition of B^*B; the
    // half-integer eigenvalue power is what makes odd k meaningful.
    Spectrum sp = eig_hermitian(adjoint(b) * b, 1e-6);
    const int n = a.n();
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx sum = 0;
            for (int l = 0; l < n; ++l) {
                const double ev = std::max(0.0, sp.eigenvalues[l].real());
                sum += sp.basis.at(i, l) * std::pow(ev, 0.5 * k) * std::conj(sp.basis.at(j, l));
            }
            r.at(i, j) = sum;
        }
    return r;
}

double operator_norm(const ComplexMatrix& a) {
    Spectrum sp = eig_hermitian(adjoint(a) * a, 1e-6);
    return std::sqrt(std::max(0.0, sp.eigenvalues.back().real()));
}

}  // namespace moments
