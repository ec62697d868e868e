#include "bode/tf_model.hpp"

#include <cmath>
#include <limits>

namespace bode {

namespace {

// Smallest critical frequency, or +inf when there are no terms.
double min_critical_freq(const TransferFunction& tf) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& t : tf.terms) lo = std::min(lo, compute_attributes(t).critical_freq);
    return lo;
}

double max_critical_freq(const TransferFunction& tf) {
    double hi = 0.0;
    for (const auto& t : tf.terms) hi = std::max(hi, compute_attributes(t).critical_freq);
    return hi;
}

}  // namespace

const char* rule_name(Rule rule) {
    switch (rule) {
        case Rule::ZeroGain: return "ZeroGain";
        case Rule::RootAtOriginInTerm: return "RootAtOriginInTerm";
        case Rule::DegenerateTerm: return "DegenerateTerm";
        case Rule::RealRootsInQuadratic: return "RealRootsInQuadratic";
        case Rule::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
    }
    return "Unknown";
}

int TransferFunction::zero_count() const {
    int n = origin_exp < 0 ? -origin_exp : 0;
    for (const auto& t : terms)
        if (t.side == Side::Numerator) n += t.multiplicity * t.order();
    return n;
}

int TransferFunction::pole_count() const {
    int n = origin_exp > 0 ? origin_exp : 0;
    for (const auto& t : terms)
        if (t.side == Side::Denominator) n += t.multiplicity * t.order();
    return n;
}

int TransferFunction::relative_degree() const { return pole_count() - zero_count(); }

TermAttributes compute_attributes(const PolyTerm& term) {
    if (term.a0 == 0.0)
        throw InvalidTerm("term has a root at the origin (a0 = 0); fold it into the origin exponent");

    TermAttributes at;
    at.zp_sign = term.side == Side::Numerator ? 1 : -1;

    if (term.a2 == 0.0) {
        if (term.a1 == 0.0) throw InvalidTerm("degenerate constant term (a1 = a2 = 0)");
        at.order = 1;
        at.main_root = Complex(-term.a0 / term.a1, 0.0);
        at.critical_freq = std::abs(term.a0 / term.a1);
        at.highest_coeff = term.a1;
        at.damping = 0.0;
    } else {
        const double disc = term.a1 * term.a1 - 4.0 * term.a2 * term.a0;
        if (disc >= 0.0)
            throw InvalidTerm("quadratic term has real roots; split it into first-order terms");
        at.order = 2;
        // Root with nonnegative imaginary part, regardless of the sign of a2.
        at.main_root = Complex(-term.a1 / (2.0 * term.a2),
                               std::sqrt(-disc) / (2.0 * std::abs(term.a2)));
        at.critical_freq = std::sqrt(term.a0 / term.a2);
        at.highest_coeff = term.a2;
        at.damping = term.a1 / (2.0 * std::sqrt(term.a2 * term.a0));
    }

    at.st_sign = at.main_root.real() <= 0.0 ? 1 : -1;
    return at;
}

ApproxFunction low_freq_approx(const TransferFunction& tf) {
    double k0 = tf.gain;
    for (const auto& t : tf.terms) {
        const double p = std::pow(t.a0, t.multiplicity);
        if (t.side == Side::Numerator)
            k0 *= p;
        else
            k0 /= p;
    }
    return ApproxFunction{k0, tf.origin_exp, 0.0, min_critical_freq(tf)};
}

ApproxFunction high_freq_approx(const TransferFunction& tf) {
    double kinf = tf.gain;
    for (const auto& t : tf.terms) {
        const double p = std::pow(compute_attributes(t).highest_coeff, t.multiplicity);
        if (t.side == Side::Numerator)
            kinf *= p;
        else
            kinf /= p;
    }
    return ApproxFunction{kinf, tf.relative_degree(), max_critical_freq(tf),
                          std::numeric_limits<double>::infinity()};
}

std::vector<Violation> validate(const TransferFunction& tf) {
    std::vector<Violation> out;
    if (tf.gain == 0.0) out.push_back({-1, Rule::ZeroGain, "gain K must be nonzero"});
    for (int i = 0; i < static_cast<int>(tf.terms.size()); ++i) {
        const auto& t = tf.terms[i];
        if (t.multiplicity < 1)
            out.push_back({i, Rule::NonPositiveMultiplicity, "multiplicity must be >= 1"});
        if (t.a0 == 0.0) {
            out.push_back({i, Rule::RootAtOriginInTerm, "constant coefficient a0 must be nonzero"});
            continue;
        }
        if (t.a2 == 0.0) {
            if (t.a1 == 0.0)
                out.push_back({i, Rule::DegenerateTerm, "first-order term needs a1 != 0"});
        } else if (t.a1 * t.a1 - 4.0 * t.a2 * t.a0 >= 0.0) {
            out.push_back({i, Rule::RealRootsInQuadratic,
                           "quadratic term must have complex-conjugate roots"});
        }
    }
    return out;
}

Complex term_value(const PolyTerm& term, Complex s) {
    return (term.a2 * s + term.a1) * s + term.a0;
}

double approx_magnitude(const ApproxFunction& g, double omega) {
    return std::abs(g.k_coeff) / std::pow(omega, g.rel_degree);
}

Complex approx_value(const ApproxFunction& g, double omega) {
    const Complex jw(0.0, omega);
    Complex v(g.k_coeff, 0.0);
    for (int i = 0; i < g.rel_degree; ++i) v /= jw;
    for (int i = 0; i > g.rel_degree; --i) v *= jw;
    return v;
}

}  // namespace bode
