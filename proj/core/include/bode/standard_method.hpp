#pragma once

#include <vector>

#include "bode/tf_model.hpp"

namespace bode {

enum class ComponentKind { Gain, OriginPole, FirstOrder, SecondOrder };

/// One factor of the classical construction, DC-normalized so every dynamic
/// component is 1 + c1*s + c2*s^2 raised to +-multiplicity. Sign flips from
/// the normalization live in the Gain component.
struct Component {
    ComponentKind kind = ComponentKind::Gain;
    double gain = 1.0;   // Gain component value (K0)
    int origin_exp = 0;  // OriginPole component exponent
    double c1 = 0.0;     // normalized s coefficient
    double c2 = 0.0;     // normalized s^2 coefficient
    int multiplicity = 1;
    Side side = Side::Denominator;
    TermAttributes attrs;  // populated for FirstOrder/SecondOrder
};

/// Gain + optional origin pole + one component per polynomial term.
/// The product of all components reconstructs the original function.
std::vector<Component> factor_components(const TransferFunction& tf);

/// Complex value of one component at a point s.
Complex component_value(const Component& c, Complex s);

struct SampledPlot {
    std::vector<double> grid;
    std::vector<double> mag_db;
    std::vector<double> phase_rad;
};

enum class PhaseStyle { Stepwise, Asymptotic };

/// Textbook asymptotes of a single component sampled on a grid. Stepwise
/// phase jumps at the critical frequency; Asymptotic ramps between
/// omega_c/4.81^w and omega_c*4.81^w.
SampledPlot component_asymptotes(const Component& c, const std::vector<double>& grid,
                                 PhaseStyle style);

/// Elementwise dB/phase sums; throws GridMismatch unless all grids are
/// identical. An empty list yields an all-zero plot over an empty grid.
SampledPlot sum_components(const std::vector<SampledPlot>& plots);

/// 200 points/decade from one decade below min(omega_c, 1) to one decade
/// above max(omega_c, 1).
std::vector<double> comparison_grid(const TransferFunction& tf, int points_per_decade = 200);

/// Direct-vs-standard comparison on a shared grid. Grid points within 1e-6
/// relative of a breakpoint (or ramp endpoint, for the asymptotic phase) are
/// skipped.
struct CompareResult {
    double max_mag_delta_db = 0.0;
    double max_step_phase_delta_rad = 0.0;
    double max_asym_phase_delta_rad = 0.0;
    int points_compared = 0;
    bool pass = false;  // 1e-6 dB and 1e-9 rad tolerances
};

CompareResult compare_methods(const TransferFunction& tf, const std::vector<double>& grid);

}  // namespace bode
