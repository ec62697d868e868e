#pragma once

#include <complex>
#include <vector>

namespace bode {

/// Result of solving p(x) = 0 for a real-coefficient polynomial given in
/// ascending order (coeffs[k] multiplies x^k).
struct RootResult {
    std::vector<std::complex<double>> roots;
    bool converged = false;
    double max_residual = 0.0;  // max |p(root)| over all roots
};

/// All complex roots via Durand-Kerner (Weierstrass) simultaneous iteration.
/// Converged means every root satisfies |p(root)| <= 1e-8 * max |coefficient|.
RootResult find_roots(const std::vector<double>& coeffs);

}  // namespace bode
