#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bode/errors.hpp"

namespace bode {

using Complex = std::complex<double>;

enum class Side { Numerator, Denominator };

/// One factored polynomial term a2*s^2 + a1*s + a0, raised to `multiplicity`
/// on the numerator or denominator side. First-order terms have a2 == 0.
/// Quadratics are assumed to have complex-conjugate roots; anything else is
/// split by the parser before it reaches this model.
struct PolyTerm {
    double a0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    int multiplicity = 1;
    Side side = Side::Denominator;

    int order() const { return a2 != 0.0 ? 2 : 1; }

    bool operator==(const PolyTerm&) const = default;
};

/// Per-term characterization: order, main root, zero/pole and stability
/// signs, critical frequency, highest-order coefficient and damping.
struct TermAttributes {
    int order = 1;
    Complex main_root;          // order 2: the root with imag >= 0
    int zp_sign = 1;            // +1 numerator (zero), -1 denominator (pole)
    int st_sign = 1;            // +1 when real(main_root) <= 0
    double critical_freq = 0.0; // rad/s
    double highest_coeff = 0.0; // a1 for order 1, a2 for order 2
    double damping = 0.0;       // signed; 0 for first-order terms
};

/// Factored rational transfer function K/s^h * prod(num terms)/prod(den terms).
/// origin_exp counts poles at the origin; a negative value represents zeros
/// at the origin.
struct TransferFunction {
    double gain = 1.0;
    int origin_exp = 0;
    std::vector<PolyTerm> terms;

    int zero_count() const;      // counts multiplicity * order, plus origin zeros
    int pole_count() const;
    int relative_degree() const; // pole_count() - zero_count()

    bool operator==(const TransferFunction&) const = default;
};

/// Monomial k_coeff / s^rel_degree approximating the response on one
/// frequency band. band_high is +inf for the last band.
struct ApproxFunction {
    double k_coeff = 1.0;
    int rel_degree = 0;
    double band_low = 0.0;
    double band_high = 0.0;
};

/// Named invariant violations reported by validate().
enum class Rule {
    ZeroGain,
    RootAtOriginInTerm,
    DegenerateTerm,
    RealRootsInQuadratic,
    NonPositiveMultiplicity,
};

struct Violation {
    int term_index = -1;  // -1 for function-level violations
    Rule rule = Rule::ZeroGain;
    std::string detail;
};

const char* rule_name(Rule rule);

/// All six attributes of Definition-style term characterization.
/// Throws InvalidTerm if the term breaks the factored-form assumptions.
TermAttributes compute_attributes(const PolyTerm& term);

/// Low-frequency approximant K0/s^h.
ApproxFunction low_freq_approx(const TransferFunction& tf);

/// High-frequency approximant Kinf/s^rtilde built from the highest-order
/// coefficients.
ApproxFunction high_freq_approx(const TransferFunction& tf);

/// Non-throwing invariant check; empty result means the function is valid.
std::vector<Violation> validate(const TransferFunction& tf);

/// Value of a single term polynomial at a complex point.
Complex term_value(const PolyTerm& term, Complex s);

/// |G_k(j*omega)| for a monomial approximant.
double approx_magnitude(const ApproxFunction& g, double omega);

/// Complex value K_k (j*omega)^-t of a monomial approximant.
Complex approx_value(const ApproxFunction& g, double omega);

}  // namespace bode
