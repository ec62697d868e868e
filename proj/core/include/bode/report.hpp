#pragma once

#include <string>
#include <vector>

#include "bode/tf_model.hpp"

namespace bode {

/// Flat, serialization-ready view of one analysis. Fields mirror the JSON
/// schema one-to-one so that parse -> re-emit is byte identical.
struct ReportTerm {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0;
    int multiplicity = 1;
    std::string side;  // "numerator" | "denominator"
    int order = 1;
    double omega_c = 0.0;
    int zp_sign = 1;
    int st_sign = 1;
    double damping = 0.0;
};

struct ReportApproximant {
    int k = 0;
    double k_coeff = 0.0;
    int rel_degree = 0;
    double band_lo = 0.0;
    double band_hi = 0.0;  // +inf serialized as the string "inf"
};

struct ReportGain {
    double omega = 0.0;
    double gain = 0.0;
    double gain_db = 0.0;
};

struct ReportPhase {
    double band_lo = 0.0;
    double band_hi = 0.0;
    double phi_rad = 0.0;
};

struct ReportRamp {
    int term_index = 0;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double delta_phi_rad = 0.0;
};

struct AnalysisReport {
    std::string input;  // canonical expression text
    double gain = 1.0;
    int origin_exp = 0;
    std::vector<ReportTerm> terms;
    std::vector<double> omega_c;
    std::vector<ReportApproximant> approximants;
    std::vector<ReportGain> gains;
    std::vector<ReportPhase> phases;
    std::vector<ReportRamp> ramps;
};

/// Runs the direct method end to end and assembles the report.
AnalysisReport analyze(const TransferFunction& tf, int branch_offset = 0);

/// Canonical JSON: fixed key order, 12-significant-digit floats, 2-space
/// indent, trailing newline.
std::string to_json(const AnalysisReport& report);

/// Inverse of to_json for round-tripping; throws Error on malformed input.
AnalysisReport report_from_json(const std::string& json_text);

/// Aligned human-readable tables; phases shown in both radians and degrees.
std::string to_text(const AnalysisReport& report);

}  // namespace bode
