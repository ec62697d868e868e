#include "bode/roots.hpp"

#include <algorithm>
#include <cmath>

namespace bode {

namespace {

using C = std::complex<double>;

C horner(const std::vector<C>& coeffs, C x) {
    C acc = coeffs.back();
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

RootResult find_roots(const std::vector<double>& coeffs) {
    RootResult result;
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && coeffs[degree] == 0.0) --degree;
    if (degree < 1) {
        result.converged = degree == 0;
        return result;
    }

    double max_coeff = 0.0;
    for (int i = 0; i <= degree; ++i) max_coeff = std::max(max_coeff, std::abs(coeffs[i]));

    // Monic normalization keeps the iteration well scaled.
    std::vector<C> monic(degree + 1);
    for (int i = 0; i <= degree; ++i) monic[i] = coeffs[i] / coeffs[degree];

    // Cauchy bound on root magnitude, used to scale the start points.
    double bound = 0.0;
    for (int i = 0; i < degree; ++i) bound = std::max(bound, std::abs(monic[i]));
    bound += 1.0;

    std::vector<C> z(degree);
    const C seed(0.4, 0.9);  // deliberately non-real, non-unit modulus
    C p(1.0, 0.0);
    for (int i = 0; i < degree; ++i) {
        p *= seed;
        z[i] = p * bound;
    }

    const int max_iter = 500;
    for (int iter = 0; iter < max_iter; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < degree; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < degree; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == C(0.0, 0.0)) {
                // Collided iterates; nudge apart and retry next sweep.
                z[i] += C(1e-8 * bound, 1e-8 * bound);
                shift = 1.0;
                continue;
            }
            const C delta = horner(monic, z[i]) / denom;
            z[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift <= 1e-14 * bound) break;
    }

    // Residuals are checked against the original (unnormalized) polynomial.
    std::vector<C> orig(coeffs.begin(), coeffs.begin() + degree + 1);
    double max_residual = 0.0;
    for (const auto& r : z) max_residual = std::max(max_residual, std::abs(horner(orig, r)));

    result.roots = std::move(z);
    result.max_residual = max_residual;
    result.converged = max_residual <= 1e-8 * max_coeff;
    return result;
}

}  // namespace bode
