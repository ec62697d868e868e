#pragma once

#include <string>

#include "bode/direct_method.hpp"
#include "bode/exact_response.hpp"

namespace bode {

/// All curves of one two-panel Bode figure: asymptotic magnitude, stepwise
/// and asymptotic phase, and the exact response sampled on the shared grid.
struct PlotBundle {
    FrequencyGrid grid;
    MagnitudePlot magnitude;
    StepwisePhasePlot stepwise;
    AsymptoticPhasePlot asymptotic;
    std::vector<ResponseSample> exact;
};

PlotBundle make_plot_bundle(const TransferFunction& tf, const FrequencyGrid& grid,
                            int branch_offset = 0);

/// One decade below the first critical frequency to one decade above the
/// last (around omega = 1 when there are none).
FrequencyGrid default_plot_grid(const TransferFunction& tf, int points_per_decade = 200);

/// Header omega_rad_s,asym_mag_db,exact_mag_db,stepwise_phase_deg,
/// asym_phase_deg,exact_phase_deg; one row per grid point, LF endings,
/// 12-significant-digit floats.
std::string to_csv(const PlotBundle& bundle);

/// Deterministic two-panel SVG (magnitude over phase, shared log axis).
std::string to_svg(const PlotBundle& bundle);

}  // namespace bode
