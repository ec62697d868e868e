#pragma once

#include <vector>

#include "bode/tf_model.hpp"

namespace bode {

struct FrequencyGrid {
    std::vector<double> omega;  // strictly increasing, all positive
    int points_per_decade = 0;
};

/// floor(ppd*log10(max/min)) + 1 log-spaced points including both endpoints.
/// Throws InvalidRange unless 0 < omega_min < omega_max and ppd >= 1.
FrequencyGrid log_grid(double omega_min, double omega_max, int points_per_decade);

/// G(j*omega) evaluated factor by factor (never through expanded
/// polynomials). Throws PoleOnAxis when a denominator term vanishes exactly.
Complex evaluate(const TransferFunction& tf, double omega);

struct ResponseSample {
    double omega = 0.0;
    double mag_db = 0.0;
    double phase_rad = 0.0;  // unwrapped
    bool pole = false;       // true when the sample sits on an axis pole
};

/// Exact response over a grid. Phases are unwrapped by nearest continuation
/// and then shifted by the whole number of turns that puts the first sample
/// within (-pi, pi] of phi_0 + 2*pi*branch_offset. Pole hits are flagged,
/// not fatal.
std::vector<ResponseSample> sweep(const TransferFunction& tf, const FrequencyGrid& grid,
                                  int branch_offset = 0);

}  // namespace bode
