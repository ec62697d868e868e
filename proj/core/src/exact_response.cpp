#include "bode/exact_response.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace bode {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

FrequencyGrid log_grid(double omega_min, double omega_max, int points_per_decade) {
    if (!(omega_min > 0.0) || !(omega_min < omega_max) || points_per_decade < 1)
        throw InvalidRange("log_grid needs 0 < omega_min < omega_max and ppd >= 1");
    const double decades = std::log10(omega_max / omega_min);
    const int count = static_cast<int>(std::floor(points_per_decade * decades)) + 1;

    FrequencyGrid grid;
    grid.points_per_decade = points_per_decade;
    grid.omega.resize(static_cast<std::size_t>(std::max(count, 2)));
    const int n = static_cast<int>(grid.omega.size());
    const double lo = std::log10(omega_min);
    const double step = decades / (n - 1);
    for (int i = 0; i < n; ++i) grid.omega[static_cast<std::size_t>(i)] = std::pow(10.0, lo + i * step);
    grid.omega.front() = omega_min;
    grid.omega.back() = omega_max;
    return grid;
}

Complex evaluate(const TransferFunction& tf, double omega) {
    const Complex jw(0.0, omega);
    Complex value(tf.gain, 0.0);
    for (int i = 0; i < tf.origin_exp; ++i) value /= jw;
    for (int i = 0; i > tf.origin_exp; --i) value *= jw;
    for (std::size_t t = 0; t < tf.terms.size(); ++t) {
        const auto& term = tf.terms[t];
        const Complex p = term_value(term, jw);
        if (term.side == Side::Denominator && p == Complex(0.0, 0.0))
            throw PoleOnAxis(omega, static_cast<int>(t));
        for (int i = 0; i < term.multiplicity; ++i)
            value = term.side == Side::Numerator ? value * p : value / p;
    }
    return value;
}

std::vector<ResponseSample> sweep(const TransferFunction& tf, const FrequencyGrid& grid,
                                  int branch_offset) {
    std::vector<ResponseSample> samples;
    samples.reserve(grid.omega.size());

    bool have_prev = false;
    double prev_phase = 0.0;
    for (double w : grid.omega) {
        ResponseSample s;
        s.omega = w;
        try {
            const Complex v = evaluate(tf, w);
            s.mag_db = 20.0 * std::log10(std::abs(v));
            double phase = std::arg(v);
            if (have_prev) phase += kTwoPi * std::round((prev_phase - phase) / kTwoPi);
            prev_phase = phase;
            have_prev = true;
            s.phase_rad = phase;
        } catch (const PoleOnAxis&) {
            s.pole = true;
            s.mag_db = std::numeric_limits<double>::infinity();
            s.phase_rad = std::numeric_limits<double>::quiet_NaN();
        }
        samples.push_back(s);
    }

    // Anchor the whole sweep to the low-frequency branch.
    const ApproxFunction g0 = low_freq_approx(tf);
    const double phi0 = (g0.k_coeff < 0.0 ? -kPi : 0.0) - tf.origin_exp * (kPi / 2.0) +
                        kTwoPi * branch_offset;
    for (const auto& s : samples) {
        if (s.pole) continue;
        double shift = kTwoPi * std::round((phi0 - s.phase_rad) / kTwoPi);
        const double diff = s.phase_rad + shift - phi0;
        if (diff <= -kPi) shift += kTwoPi;  // keep the anchor inside (-pi, pi]
        if (diff > kPi) shift -= kTwoPi;
        if (shift != 0.0)
            for (auto& t : samples)
                if (!t.pole) t.phase_rad += shift;
        break;
    }
    return samples;
}

}  // namespace bode
