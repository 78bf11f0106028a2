#pragma once

#include <vector>

#include "moments/errors.hpp"

namespace moments {

enum class PolyKind { P, Q };

// The extremal central-moment polynomials on [0,1]:
//   p_k(x) = x(1-x)^k + (-1)^k x^k (1-x)
//   q_k(x) = x(1-x)^k + x^k (1-x)
// Stored in the monomial basis, coefficients[j] multiplies x^j, degree <= k+1.
struct MomentPolynomial {
    int k = 0;
    PolyKind kind = PolyKind::P;
    std::vector<double> coefficients;  // size k+2

    double eval(double x) const;  // Horner
};

struct SupNormResult {
    double value = 0;
    double argmax = 0;  // smallest maximizer of |poly| on [0,1]
};

// k in 1..64. For even k the two kinds coincide.
MomentPolynomial build(int k, PolyKind kind);

// Max of |poly| on [0,1]: derivative sign changes on a 10^4-point grid,
// bisection to 1e-14, candidates compared against the endpoints.
SupNormResult sup_norm(const MomentPolynomial& poly);

}  // namespace moments
