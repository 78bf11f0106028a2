#include "moments/polynomials.hpp"

#include <algorithm>
#include <cmath>

namespace moments {

namespace {

double horner(const std::vector<double>& c, double x) {
    double v = 0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

}  // namespace

double MomentPolynomial::eval(double x) const { return horner(coefficients, x); }

MomentPolynomial build(int k, PolyKind kind) {
    if (k < 1 || k > 64) throw Error(ErrorCode::InvalidK, "k must be in 1..64, got " + std::to_string(k));
    MomentPolynomial p;
    p.k = k;
    p.kind = kind;
    p.coefficients.assign(static_cast<size_t>(k) + 2, 0.0);

    // x(1-x)^k contributes binom(k,j)(-1)^j to the coefficient of x^{j+1}.
    double binom = 1;
    for (int j = 0; j <= k; ++j) {
        p.coefficients[j + 1] += (j % 2 == 0 ? binom : -binom);
        binom = binom * (k - j) / (j + 1);
    }
    // x^k(1-x) = x^k - x^{k+1}, with sign (-1)^k for kind P.
    const double sign = (kind == PolyKind::Q || k % 2 == 0) ? 1.0 : -1.0;
    p.coefficients[k] += sign;
    p.coefficients[k + 1] -= sign;
    return p;
}

SupNormResult sup_norm(const MomentPolynomial& poly) {
    const std::vector<double>& c = poly.coefficients;
    std::vector<double> dc(c.size() > 1 ? c.size() - 1 : 1, 0.0);
    for (size_t j = 1; j < c.size(); ++j) dc[j - 1] = j * c[j];

    const int grid = 10000;
    std::vector<double> candidates = {0.0, 1.0};
    double prev_x = 0, prev_d = horner(dc, 0.0);
    if (prev_d == 0) candidates.push_back(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double d = horner(dc, x);
        if (d == 0) {
            candidates.push_back(x);
        } else if (prev_d != 0 && ((prev_d < 0) != (d < 0))) {
            // bisect the bracket to 1e-14
            double lo = prev_x, hi = x, flo = prev_d;
            while (hi - lo > 1e-14) {
                const double mid = 0.5 * (lo + hi);
                const double fm = horner(dc, mid);
                if (fm == 0) {
                    lo = hi = mid;
                    break;
                }
                if ((flo < 0) == (fm < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            candidates.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_d = d;
    }

    std::sort(candidates.begin(), candidates.end());
    SupNormResult best;
    best.value = 0;
    for (double x : candidates) best.value = std::max(best.value, std::abs(horner(c, x)));
    // ties (e.g. the symmetric pair of critical points of odd-k P) resolve to
    // the smallest argmax
    best.argmax = 1.0;
    for (double x : candidates) {
        if (std::abs(horner(c, x)) >= best.value - 1e-13 * (1 + best.value)) {
            best.argmax = x;
            break;
        }
    }
    return best;
}

}  // namespace moments
