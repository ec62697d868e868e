#include "bode/standard_method.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bode/direct_method.hpp"

namespace bode {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double ramp_fraction(double omega, double omega_a, double omega_b) {
    if (omega_a == omega_b) return omega >= omega_a ? 1.0 : 0.0;
    if (omega <= omega_a) return 0.0;
    if (omega >= omega_b) return 1.0;
    return (std::log10(omega) - std::log10(omega_a)) /
           (std::log10(omega_b) - std::log10(omega_a));
}

}  // namespace

std::vector<Component> factor_components(const TransferFunction& tf) {
    std::vector<Component> out;

    Component gain;
    gain.kind = ComponentKind::Gain;
    gain.gain = low_freq_approx(tf).k_coeff;
    out.push_back(gain);

    if (tf.origin_exp != 0) {
        Component origin;
        origin.kind = ComponentKind::OriginPole;
        origin.origin_exp = tf.origin_exp;
        out.push_back(origin);
    }

    for (const auto& term : tf.terms) {
        Component c;
        c.kind = term.order() == 1 ? ComponentKind::FirstOrder : ComponentKind::SecondOrder;
        c.c1 = term.a1 / term.a0;
        c.c2 = term.a2 / term.a0;
        c.multiplicity = term.multiplicity;
        c.side = term.side;
        c.attrs = compute_attributes(term);
        out.push_back(c);
    }
    return out;
}

Complex component_value(const Component& c, Complex s) {
    switch (c.kind) {
        case ComponentKind::Gain:
            return Complex(c.gain, 0.0);
        case ComponentKind::OriginPole: {
            Complex v(1.0, 0.0);
            for (int i = 0; i < c.origin_exp; ++i) v /= s;
            for (int i = 0; i > c.origin_exp; --i) v *= s;
            return v;
        }
        case ComponentKind::FirstOrder:
        case ComponentKind::SecondOrder: {
            const Complex base = (c.c2 * s + c.c1) * s + 1.0;
            Complex v(1.0, 0.0);
            for (int i = 0; i < c.multiplicity; ++i)
                v = c.side == Side::Numerator ? v * base : v / base;
            return v;
        }
    }
    return Complex(0.0, 0.0);
}

SampledPlot component_asymptotes(const Component& c, const std::vector<double>& grid,
                                 PhaseStyle style) {
    SampledPlot plot;
    plot.grid = grid;
    plot.mag_db.resize(grid.size());
    plot.phase_rad.resize(grid.size());

    switch (c.kind) {
        case ComponentKind::Gain: {
            const double mag = 20.0 * std::log10(std::abs(c.gain));
            const double phase = c.gain < 0.0 ? -std::numbers::pi : 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                plot.mag_db[i] = mag;
                plot.phase_rad[i] = phase;
            }
            break;
        }
        case ComponentKind::OriginPole: {
            const double phase = -c.origin_exp * kHalfPi;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                plot.mag_db[i] = -20.0 * c.origin_exp * std::log10(grid[i]);
                plot.phase_rad[i] = phase;
            }
            break;
        }
        case ComponentKind::FirstOrder:
        case ComponentKind::SecondOrder: {
            const auto& at = c.attrs;
            const double omega_c = at.critical_freq;
            const double slope = 20.0 * at.zp_sign * c.multiplicity * at.order;
            const double delta =
                static_cast<double>(c.multiplicity * at.zp_sign * at.st_sign * at.order) * kHalfPi;
            const double width = at.order == 1
                                     ? kPhaseRampBase
                                     : std::pow(kPhaseRampBase, std::abs(at.damping));
            const double omega_a = omega_c / width;
            const double omega_b = omega_c * width;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double w = grid[i];
                plot.mag_db[i] = w <= omega_c ? 0.0 : slope * (std::log10(w) - std::log10(omega_c));
                plot.phase_rad[i] = style == PhaseStyle::Stepwise
                                        ? (w >= omega_c ? delta : 0.0)
                                        : delta * ramp_fraction(w, omega_a, omega_b);
            }
            break;
        }
    }
    return plot;
}

SampledPlot sum_components(const std::vector<SampledPlot>& plots) {
    SampledPlot total;
    if (plots.empty()) return total;
    total.grid = plots.front().grid;
    total.mag_db.assign(total.grid.size(), 0.0);
    total.phase_rad.assign(total.grid.size(), 0.0);
    for (const auto& p : plots) {
        if (p.grid != total.grid) throw GridMismatch("sampled plots use different grids");
        for (std::size_t i = 0; i < total.grid.size(); ++i) {
            total.mag_db[i] += p.mag_db[i];
            total.phase_rad[i] += p.phase_rad[i];
        }
    }
    return total;
}

std::vector<double> comparison_grid(const TransferFunction& tf, int points_per_decade) {
    double lo = 1.0, hi = 1.0;
    for (double w : critical_set(tf).freqs) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    lo /= 10.0;
    hi *= 10.0;
    const int count =
        static_cast<int>(std::floor(points_per_decade * std::log10(hi / lo))) + 1;
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double step = (std::log10(hi) - std::log10(lo)) / (count - 1);
    for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] =
        std::pow(10.0, std::log10(lo) + i * step);
    grid.back() = hi;
    return grid;
}

CompareResult compare_methods(const TransferFunction& tf, const std::vector<double>& grid) {
    const auto components = factor_components(tf);
    std::vector<SampledPlot> step_plots, asym_plots;
    step_plots.reserve(components.size());
    asym_plots.reserve(components.size());
    for (const auto& c : components) {
        step_plots.push_back(component_asymptotes(c, grid, PhaseStyle::Stepwise));
        asym_plots.push_back(component_asymptotes(c, grid, PhaseStyle::Asymptotic));
    }
    const SampledPlot step_sum = sum_components(step_plots);
    const SampledPlot asym_sum = sum_components(asym_plots);

    const auto magnitude = magnitude_plot(tf);
    const auto stepwise = stepwise_phase(tf);
    const auto asymptotic = asymptotic_phase(tf);
    const auto ramps = phase_ramps(tf);

    std::vector<double> breakpoints;
    for (const auto& bp : magnitude.breakpoints) breakpoints.push_back(bp.omega);
    std::vector<double> ramp_edges;
    for (const auto& r : ramps) {
        ramp_edges.push_back(r.omega_a);
        ramp_edges.push_back(r.omega_b);
    }

    auto near_any = [](double w, const std::vector<double>& edges) {
        for (double e : edges)
            if (std::abs(w - e) <= 1e-6 * std::max(w, e)) return true;
        return false;
    };

    CompareResult result;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = grid[i];
        if (near_any(w, breakpoints)) continue;
        ++result.points_compared;
        result.max_mag_delta_db = std::max(
            result.max_mag_delta_db, std::abs(step_sum.mag_db[i] - mag_db_at(magnitude, w)));
        result.max_step_phase_delta_rad =
            std::max(result.max_step_phase_delta_rad,
                     std::abs(step_sum.phase_rad[i] - stepwise_phase_at(stepwise, w)));
        if (!near_any(w, ramp_edges))
            result.max_asym_phase_delta_rad =
                std::max(result.max_asym_phase_delta_rad,
                         std::abs(asym_sum.phase_rad[i] - asymptotic_phase_at(asymptotic, w)));
    }
    result.pass = result.max_mag_delta_db <= 1e-6 &&
                  result.max_step_phase_delta_rad <= 1e-9 &&
                  result.max_asym_phase_delta_rad <= 1e-9;
    return result;
}

}  // namespace bode
