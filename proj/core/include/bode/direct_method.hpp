#pragma once

#include <utility>
#include <vector>

#include "bode/tf_model.hpp"

namespace bode {

/// Phase ramps span omega_c / 4.81^w .. omega_c * 4.81^w in log frequency,
/// with w = 1 for first-order terms and w = |damping| for second-order ones.
inline constexpr double kPhaseRampBase = 4.81;

/// Distinct critical frequencies in increasing order, with the set of term
/// indices that break at each one. index_sets partitions all term indices.
struct CriticalSet {
    std::vector<double> freqs;                 // omega_1 .. omega_r
    std::vector<std::vector<int>> index_sets;  // I_k, 0-based term indices
};

/// Near-equal critical frequencies are merged when
/// |wa - wb| <= 1e-9 * max(wa, wb).
CriticalSet critical_set(const TransferFunction& tf);

/// k-th approximating function K_k/s^t_k on band B_k, k in 0..r.
/// Terms with omega_ci <= omega_k are replaced by their highest-order part,
/// the rest by their constant coefficient.
ApproxFunction approx_function(const TransferFunction& tf, int k);

/// t_0..t_r from the recursion t_k = t_{k-1} - sum_{i in I_k} r_i S_i^zp n_i,
/// starting at t_0 = h.
std::vector<int> relative_degrees(const TransferFunction& tf);

/// M_k = |G_{k-1}(j omega_k)|, cross-checked against |G_k(j omega_k)|.
/// Throws InconsistentGain if the two evaluations disagree beyond 1e-9
/// relative.
std::vector<double> critical_gains_direct(const TransferFunction& tf);

/// M_1 = |G_0(j omega_1)|, then M_{k+1} = M_k (omega_k/omega_{k+1})^{t_k}.
std::vector<double> critical_gains_recursive(const TransferFunction& tf);

struct MagnitudeBreakpoint {
    double omega = 0.0;
    double gain = 0.0;     // linear M_k
    double gain_db = 0.0;  // 20*log10(M_k)
};

/// Piecewise-linear magnitude geometry on a dB vs log10(omega) grid.
/// Segment k (band B_k) has slope -20*slopes[k] dB/decade; slopes[0] = h and
/// slopes[r] is the relative degree. low_anchor_db anchors the r = 0 case
/// (and equals the low asymptote's value at omega = 1).
struct MagnitudePlot {
    std::vector<MagnitudeBreakpoint> breakpoints;
    std::vector<int> slopes;
    double low_anchor_db = 0.0;
};

MagnitudePlot magnitude_plot(const TransferFunction& tf);

/// Asymptotic magnitude in dB at any omega > 0 (linear interpolation in dB
/// between breakpoints, external segments beyond them).
double mag_db_at(const MagnitudePlot& plot, double omega);

/// Piecewise-constant phase: level k holds on band B_k = [omega_k,
/// omega_{k+1}). Levels are exact quarter-turn multiples:
/// levels[k] == quarter_turns[k] * (pi/2).
struct StepwisePhasePlot {
    std::vector<double> levels;
    std::vector<long> quarter_turns;
    std::vector<std::pair<double, double>> bands;  // last band's high is +inf
};

/// branch_offset shifts phi_0 by 2*pi*branch_offset; the phase steps are
/// unaffected. phi_0 = arg0(K_0) - h*pi/2 with arg0(x) = 0 for x > 0 and -pi
/// for x < 0.
StepwisePhasePlot stepwise_phase(const TransferFunction& tf, int branch_offset = 0);

/// Level applying at omega (right-continuous at the breakpoints).
double stepwise_phase_at(const StepwisePhasePlot& plot, double omega);

struct PhaseNode {
    double omega = 0.0;
    double phase = 0.0;
};

/// Piecewise-linear (in log10 omega) phase. Vertical jumps appear as two
/// nodes sharing one omega (undamped second-order terms).
struct AsymptoticPhasePlot {
    std::vector<PhaseNode> nodes;
};

AsymptoticPhasePlot asymptotic_phase(const TransferFunction& tf, int branch_offset = 0);

/// Interpolated phase at omega; clamps to the first/last node outside the
/// node range. At a vertical jump the right value wins.
double asymptotic_phase_at(const AsymptoticPhasePlot& plot, double omega);

/// One per term: the phase ramp replacing its share of the stepwise jump.
struct PhaseRamp {
    int term_index = 0;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double delta_phi = 0.0;  // rad, full height including multiplicity
};

std::vector<PhaseRamp> phase_ramps(const TransferFunction& tf);

}  // namespace bode
