#include "moments/random.hpp"

#include <cmath>

namespace moments {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(stream ^ splitmix64(index)));
}

cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    const double re = n01(rng);
    const double im = n01(rng);
    return cplx(re, im) / std::sqrt(2.0);
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = gaussian(rng);
    // modified Gram-Schmidt on columns
    for (int c = 0; c < n; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cplx dot = 0;
            for (int r = 0; r < n; ++r) dot += std::conj(g.at(r, prev)) * g.at(r, c);
            for (int r = 0; r < n; ++r) g.at(r, c) -= dot * g.at(r, prev);
        }
        double nrm = 0;
        for (int r = 0; r < n; ++r) nrm += std::norm(g.at(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < n; ++r) g.at(r, c) /= nrm;
    }
    return g;
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i) {
        g.at(i, i) = std::normal_distribution<double>(0.0, 1.0)(rng);
        for (int j = i + 1; j < n; ++j) {
            const cplx z = gaussian(rng);
            g.at(i, j) = z;
            g.at(j, i) = std::conj(z);
        }
    }
    return g;
}

ComplexMatrix random_normal_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::vector<cplx> ev(n);
    for (int i = 0; i < n; ++i) {
        const double r = std::sqrt(u01(rng));
        const double phi = 2 * M_PI * u01(rng);
        ev[i] = cplx(r * std::cos(phi), r * std::sin(phi));
    }
    const ComplexMatrix u = random_unitary(n, rng);
    return u * ComplexMatrix::diagonal(ev) * adjoint(u);
}

ComplexMatrix random_ginibre(int n, std::mt19937_64& rng) {
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.at(i, j) = gaussian(rng);
    return g;
}

std::vector<cplx> random_unit_vector(int n, std::mt19937_64& rng) {
    std::vector<cplx> v(n);
    double nrm = 0;
    for (int i = 0; i < n; ++i) {
        v[i] = gaussian(rng);
        nrm += std::norm(v[i]);
    }
    nrm = std::sqrt(nrm);
    for (cplx& z : v) z /= nrm;
    return v;
}

}  // namespace moments
