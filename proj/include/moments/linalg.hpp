#pragma once

#include <complex>
#include <vector>

#include "moments/errors.hpp"

namespace moments {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major. Entries are validated finite on
// construction; dimensions 1..64.
class ComplexMatrix {
  public:
    ComplexMatrix() : n_(0) {}
    explicit ComplexMatrix(int n);                              // zero matrix
    ComplexMatrix(int n, std::vector<cplx> entries);

    int n() const { return n_; }
    cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    const std::vector<cplx>& entries() const { return a_; }

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(const std::vector<cplx>& d);

  private:
    int n_;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator*(cplx s, const ComplexMatrix& x);

ComplexMatrix adjoint(const ComplexMatrix& x);
cplx trace(const ComplexMatrix& x);
double frobenius_norm(const ComplexMatrix& x);

enum class MatrixClass { Hermitian, NormalNonHermitian, General };

const char* matrix_class_name(MatrixClass c);

// Most specific class first: Hermitian, then normal, else general.
// tol_class is relative (scaled by 1 + ||A||_F resp. 1 + ||A||_F^2).
MatrixClass classify(const ComplexMatrix& a, double tol_class = 1e-10);

// Eigenvalues with multiplicity plus an optional orthonormal eigenbasis
// (columns of `basis`). Eigenvalues of Hermitian input are real and sorted
// ascending; normal input is sorted by (Re, Im).
struct Spectrum {
    std::vector<cplx> eigenvalues;
    ComplexMatrix basis;      // n x n unitary, empty when not computed
    double source_norm = 0;   // operator norm of the decomposed matrix
};

// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
Spectrum eig_hermitian(const ComplexMatrix& a, double tol_class = 1e-10);

// Normal matrices via the commuting Hermitian pair H=(A+A*)/2, K=(A-A*)/2i:
// diagonalize H, then K restricted to each H eigenspace (cluster threshold
// 1e-8*(1+||H||_F)). Throws NotNormal for inputs that fail classify.
Spectrum eig_normal(const ComplexMatrix& a, double tol_class = 1e-10);

// diag(A, A*): the element a (+) a* whose spectrum is sigma(A) u conj(sigma(A)).
ComplexMatrix direct_sum_conjugate(const ComplexMatrix& a);

// (A - mu I)^k, or |A - mu I|^k = ((A-mu I)*(A-mu I))^{k/2} when absolute.
// k in 1..64.
ComplexMatrix central_power(const ComplexMatrix& a, cplx mu, int k, bool absolute);

// sigma_max(A) via eig_hermitian(A*A).
double operator_norm(const ComplexMatrix& a);

}  // namespace moments
