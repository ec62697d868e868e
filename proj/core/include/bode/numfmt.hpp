#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace bode {

/// Shortest decimal string that round-trips to the same double.
inline std::string format_shortest(double value) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

/// Fixed 12-significant-digit formatting used by the CSV and JSON emitters.
/// "-0" is normalized to "0" so output depends only on the numeric value.
inline std::string format_sig12(double value) {
    if (value == 0.0) return "0";
    char buf[40];
    int n = std::snprintf(buf, sizeof(buf), "%.12g", value);
    return std::string(buf, buf + n);
}

}  // namespace bode
