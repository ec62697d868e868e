#pragma once

#include <stdexcept>
#include <string>

namespace bode {

/// Base class for all analysis errors thrown by this library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A polynomial term violates the factored-form assumptions (constant term
/// zero, or a quadratic with real roots).
class InvalidTerm : public Error {
   public:
    using Error::Error;
};

/// The two critical-gain evaluations |G_{k-1}(jw_k)| and |G_k(jw_k)|
/// disagree beyond tolerance. Signals an upstream bug, never bad input.
class InconsistentGain : public Error {
   public:
    using Error::Error;
};

/// Sampled plots with different grids were combined.
class GridMismatch : public Error {
   public:
    using Error::Error;
};

/// Invalid frequency range for grid construction.
class InvalidRange : public Error {
   public:
    using Error::Error;
};

/// A denominator term vanishes exactly at jw (undamped resonance hit).
class PoleOnAxis : public Error {
   public:
    PoleOnAxis(double omega, int term_index)
        : Error("pole on the imaginary axis at omega = " + std::to_string(omega)),
          omega(omega),
          term_index(term_index) {}

    double omega;
    int term_index;
};

}  // namespace bode
