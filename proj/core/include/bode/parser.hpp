#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "bode/tf_model.hpp"

namespace bode {

/// Byte range [start, end) inside the parsed input.
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

enum class ParseErrorKind { Syntax, NonRational, UnfactorableTerm, ZeroCoefficient };

struct ParseError {
    SourceSpan span;
    ParseErrorKind kind = ParseErrorKind::Syntax;
    std::string message;
};

const char* parse_error_kind_name(ParseErrorKind kind);

using ParseResult = std::variant<TransferFunction, ParseError>;

/// Parses a transfer-function expression such as
///   60*(s^2+0.8*s+4)/(s*(s-30)*(s/200+1)^2)
/// into factored form. Factors of s move into the origin exponent, numeric
/// gains fold into K, and polynomial factors that are not first-order or
/// complex-conjugate quadratics are split by root finding.
ParseResult parse(std::string_view text);

/// Canonical text form; parse(format(tf)) reproduces the same function.
std::string format(const TransferFunction& tf);

/// "error: <message>" plus the offending input line with a caret marker.
std::string render_parse_error(std::string_view input, const ParseError& error);

}  // namespace bode
