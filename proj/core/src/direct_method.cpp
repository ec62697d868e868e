#include "bode/direct_method.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace bode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = std::numbers::pi / 2.0;

std::vector<TermAttributes> all_attributes(const TransferFunction& tf) {
    std::vector<TermAttributes> out;
    out.reserve(tf.terms.size());
    for (const auto& t : tf.terms) out.push_back(compute_attributes(t));
    return out;
}

bool merged_equal(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(a, b); }

// Integer quarter-turn count of phi_0: arg0(K0) contributes 0 or -2, the
// origin exponent -h, the branch offset 4 per full turn.
long phi0_quarters(const TransferFunction& tf, int branch_offset) {
    const double k0 = low_freq_approx(tf).k_coeff;
    return (k0 < 0.0 ? -2L : 0L) - tf.origin_exp + 4L * branch_offset;
}

// Signed quarter turns contributed by one term: r * S_zp * S_st * n.
long step_quarters(const PolyTerm& term, const TermAttributes& at) {
    return static_cast<long>(term.multiplicity) * at.zp_sign * at.st_sign * at.order;
}

}  // namespace

CriticalSet critical_set(const TransferFunction& tf) {
    const auto attrs = all_attributes(tf);
    std::vector<int> order(tf.terms.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return attrs[a].critical_freq < attrs[b].critical_freq;
    });

    CriticalSet set;
    for (int idx : order) {
        const double w = attrs[idx].critical_freq;
        if (!set.freqs.empty() && merged_equal(set.freqs.back(), w)) {
            set.index_sets.back().push_back(idx);
        } else {
            set.freqs.push_back(w);
            set.index_sets.push_back({idx});
        }
    }
    return set;
}

ApproxFunction approx_function(const TransferFunction& tf, int k) {
    const auto set = critical_set(tf);
    const int r = static_cast<int>(set.freqs.size());
    const double omega_k = k == 0 ? 0.0 : set.freqs[k - 1];

    double coeff = tf.gain;
    int degree = tf.origin_exp;
    for (const auto& term : tf.terms) {
        const auto at = compute_attributes(term);
        // Merged comparison keeps terms grouped with their band boundary.
        const bool broken = k > 0 && (at.critical_freq < omega_k ||
                                      merged_equal(at.critical_freq, omega_k));
        const double base = broken ? at.highest_coeff : term.a0;
        const int power = broken ? at.order * term.multiplicity : 0;
        const double p = std::pow(base, term.multiplicity);
        if (term.side == Side::Numerator) {
            coeff *= p;
            degree -= power;
        } else {
            coeff /= p;
            degree += power;
        }
    }

    ApproxFunction g;
    g.k_coeff = coeff;
    g.rel_degree = degree;
    g.band_low = omega_k;
    g.band_high = k == r ? kInf : set.freqs[k];
    return g;
}

std::vector<int> relative_degrees(const TransferFunction& tf) {
    const auto set = critical_set(tf);
    const auto attrs = all_attributes(tf);
    std::vector<int> t;
    t.reserve(set.freqs.size() + 1);
    t.push_back(tf.origin_exp);
    for (const auto& indices : set.index_sets) {
        int step = 0;
        for (int i : indices) {
            const auto& term = tf.terms[static_cast<std::size_t>(i)];
            step += term.multiplicity * attrs[static_cast<std::size_t>(i)].zp_sign *
                    attrs[static_cast<std::size_t>(i)].order;
        }
        t.push_back(t.back() - step);
    }
    return t;
}

std::vector<double> critical_gains_direct(const TransferFunction& tf) {
    const auto set = critical_set(tf);
    std::vector<double> gains;
    gains.reserve(set.freqs.size());
    ApproxFunction prev = approx_function(tf, 0);
    for (std::size_t k = 0; k < set.freqs.size(); ++k) {
        const double omega = set.freqs[k];
        const ApproxFunction next = approx_function(tf, static_cast<int>(k) + 1);
        const double from_prev = approx_magnitude(prev, omega);
        const double from_next = approx_magnitude(next, omega);
        if (std::abs(from_prev - from_next) > 1e-9 * std::max(from_prev, from_next))
            throw InconsistentGain("critical gain mismatch at omega = " + std::to_string(omega));
        gains.push_back(from_prev);
        prev = next;
    }
    return gains;
}

std::vector<double> critical_gains_recursive(const TransferFunction& tf) {
    const auto set = critical_set(tf);
    const auto t = relative_degrees(tf);
    std::vector<double> gains;
    gains.reserve(set.freqs.size());
    if (set.freqs.empty()) return gains;
    gains.push_back(approx_magnitude(low_freq_approx(tf), set.freqs[0]));
    for (std::size_t k = 1; k < set.freqs.size(); ++k) {
        const double ratio = set.freqs[k - 1] / set.freqs[k];
        gains.push_back(gains.back() * std::pow(ratio, t[k]));
    }
    return gains;
}

MagnitudePlot magnitude_plot(const TransferFunction& tf) {
    const auto set = critical_set(tf);
    const auto gains = critical_gains_direct(tf);

    MagnitudePlot plot;
    plot.slopes = relative_degrees(tf);
    plot.low_anchor_db = 20.0 * std::log10(std::abs(low_freq_approx(tf).k_coeff));
    plot.breakpoints.reserve(gains.size());
    for (std::size_t k = 0; k < gains.size(); ++k)
        plot.breakpoints.push_back({set.freqs[k], gains[k], 20.0 * std::log10(gains[k])});
    return plot;
}

double mag_db_at(const MagnitudePlot& plot, double omega) {
    const auto& bp = plot.breakpoints;
    if (bp.empty()) return plot.low_anchor_db - 20.0 * plot.slopes.front() * std::log10(omega);
    if (omega <= bp.front().omega)
        return bp.front().gain_db -
               20.0 * plot.slopes.front() * (std::log10(omega) - std::log10(bp.front().omega));
    if (omega >= bp.back().omega)
        return bp.back().gain_db -
               20.0 * plot.slopes.back() * (std::log10(omega) - std::log10(bp.back().omega));
    std::size_t k = 0;
    while (k + 1 < bp.size() && bp[k + 1].omega < omega) ++k;
    const double x0 = std::log10(bp[k].omega), x1 = std::log10(bp[k + 1].omega);
    const double y0 = bp[k].gain_db, y1 = bp[k + 1].gain_db;
    return y0 + (y1 - y0) / (x1 - x0) * (std::log10(omega) - x0);
}

StepwisePhasePlot stepwise_phase(const TransferFunction& tf, int branch_offset) {
    const auto set = critical_set(tf);
    const auto attrs = all_attributes(tf);

    StepwisePhasePlot plot;
    plot.quarter_turns.push_back(phi0_quarters(tf, branch_offset));
    for (const auto& indices : set.index_sets) {
        long step = 0;
        for (int i : indices)
            step += step_quarters(tf.terms[static_cast<std::size_t>(i)],
                                  attrs[static_cast<std::size_t>(i)]);
        plot.quarter_turns.push_back(plot.quarter_turns.back() + step);
    }
    plot.levels.reserve(plot.quarter_turns.size());
    for (long q : plot.quarter_turns) plot.levels.push_back(static_cast<double>(q) * kHalfPi);

    plot.bands.reserve(plot.levels.size());
    double lo = 0.0;
    for (double w : set.freqs) {
        plot.bands.emplace_back(lo, w);
        lo = w;
    }
    plot.bands.emplace_back(lo, kInf);
    return plot;
}

double stepwise_phase_at(const StepwisePhasePlot& plot, double omega) {
    std::size_t k = 0;
    while (k + 1 < plot.bands.size() && omega >= plot.bands[k].second) ++k;
    return plot.levels[k];
}

std::vector<PhaseRamp> phase_ramps(const TransferFunction& tf) {
    std::vector<PhaseRamp> ramps;
    ramps.reserve(tf.terms.size());
    for (std::size_t i = 0; i < tf.terms.size(); ++i) {
        const auto& term = tf.terms[i];
        const auto at = compute_attributes(term);
        const double width =
            at.order == 1 ? kPhaseRampBase : std::pow(kPhaseRampBase, std::abs(at.damping));
        ramps.push_back({static_cast<int>(i), at.critical_freq / width, at.critical_freq * width,
                         static_cast<double>(step_quarters(term, at)) * kHalfPi});
    }
    return ramps;
}

AsymptoticPhasePlot asymptotic_phase(const TransferFunction& tf, int branch_offset) {
    const auto stepwise = stepwise_phase(tf, branch_offset);
    const double phi0 = stepwise.levels.front();

    AsymptoticPhasePlot plot;
    const auto ramps = phase_ramps(tf);
    if (ramps.empty()) {
        plot.nodes.push_back({1.0, phi0});
        return plot;
    }

    struct LogRamp {
        double la, lb, delta;
    };
    std::vector<LogRamp> lr;
    lr.reserve(ramps.size());
    std::vector<double> xs;
    for (const auto& r : ramps) {
        const double la = std::log10(r.omega_a), lb = std::log10(r.omega_b);
        lr.push_back({la, lb, r.delta_phi});
        xs.push_back(la);
        xs.push_back(lb);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    // steps_before: jump ramps (la == lb) strictly left of x count as done;
    // steps_at additionally includes jumps exactly at x.
    auto value = [&](double x, bool include_jump_at_x) {
        double phi = phi0;
        for (const auto& r : lr) {
            if (r.la == r.lb) {
                if (r.la < x || (include_jump_at_x && r.la == x)) phi += r.delta;
            } else if (x >= r.lb) {
                phi += r.delta;
            } else if (x > r.la) {
                phi += r.delta * (x - r.la) / (r.lb - r.la);
            }
        }
        return phi;
    };

    for (double x : xs) {
        const double before = value(x, false);
        const double after = value(x, true);
        plot.nodes.push_back({std::pow(10.0, x), before});
        if (after != before) plot.nodes.push_back({std::pow(10.0, x), after});
    }

    // The construction sums to the last stepwise level; pin the endpoints so
    // they match it bit-for-bit.
    plot.nodes.front().phase = phi0;
    plot.nodes.back().phase = stepwise.levels.back();
    return plot;
}

double asymptotic_phase_at(const AsymptoticPhasePlot& plot, double omega) {
    const auto& nodes = plot.nodes;
    if (omega <= nodes.front().omega) return nodes.front().phase;
    if (omega >= nodes.back().omega) return nodes.back().phase;
    std::size_t k = 0;
    while (k + 1 < nodes.size() && nodes[k + 1].omega <= omega) ++k;
    if (nodes[k].omega == omega) return nodes[k].phase;
    const double x0 = std::log10(nodes[k].omega), x1 = std::log10(nodes[k + 1].omega);
    const double y0 = nodes[k].phase, y1 = nodes[k + 1].phase;
    return y0 + (y1 - y0) / (x1 - x0) * (std::log10(omega) - x0);
}

}  // namespace bode
