#include "bode/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "bode/numfmt.hpp"
#include "bode/roots.hpp"

namespace bode {

const char* parse_error_kind_name(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::Syntax: return "Syntax";
        case ParseErrorKind::NonRational: return "NonRational";
        case ParseErrorKind::UnfactorableTerm: return "UnfactorableTerm";
        case ParseErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    }
    return "Unknown";
}

namespace {

struct ParseFailure {
    ParseError error;
};

[[noreturn]] void fail(SourceSpan span, ParseErrorKind kind, std::string message) {
    throw ParseFailure{ParseError{span, kind, std::move(message)}};
}

enum class Tok { Number, S, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    SourceSpan span;
    double number = 0.0;
};

class Lexer {
   public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

   private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            current_ = {Tok::End, {start, start}, 0.0};
            return;
        }
        const char c = text_[pos_];
        auto single = [&](Tok k) {
            ++pos_;
            current_ = {k, {start, pos_}, 0.0};
        };
        switch (c) {
            case '+': return single(Tok::Plus);
            case '-': return single(Tok::Minus);
            case '*': return single(Tok::Star);
            case '/': return single(Tok::Slash);
            case '^': return single(Tok::Caret);
            case '(': return single(Tok::LParen);
            case ')': return single(Tok::RParen);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const auto res =
                std::from_chars(text_.data() + start, text_.data() + text_.size(), value);
            if (res.ec == std::errc::result_out_of_range)
                fail({start, start + 1}, ParseErrorKind::Syntax, "number out of range");
            if (res.ec != std::errc())
                fail({start, start + 1}, ParseErrorKind::Syntax, "malformed number");
            pos_ = static_cast<std::size_t>(res.ptr - text_.data());
            current_ = {Tok::Number, {start, pos_}, value};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            const std::string_view word = text_.substr(start, end - start);
            pos_ = end;
            current_ = {word == "s" ? Tok::S : Tok::Ident, {start, end}, 0.0};
            return;
        }
        fail({start, start + 1}, ParseErrorKind::Syntax,
             std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token current_;
};

// Working form between parsing and normalization: a numeric coefficient, a
// net power of s, and parenthesized polynomial factors with signed exponents
// (negative exponents sit on the denominator side).
struct RawFactor {
    std::vector<double> coeffs;  // ascending powers, degree >= 1, coeffs[0] may be 0
    long long exponent = 1;
    SourceSpan span;
};

struct Factored {
    double coeff = 1.0;
    long long s_power = 0;
    std::vector<RawFactor> factors;

    bool is_monomial() const { return factors.empty(); }
};

class Parser {
   public:
    explicit Parser(std::string_view text) : lexer_(text) {}

    Factored parse_expression() {
        Factored top = parse_product(true);
        const Token t = lexer_.peek();
        if (t.kind != Tok::End)
            fail(t.span, ParseErrorKind::Syntax, "unexpected trailing input");
        return top;
    }

   private:
    // product := [sign] factor (("*"|"/"|adjacency) factor-or-product)*
    // A "/" divides by one full slash-free product, so a/b/c = (a/b)/c.
    Factored parse_product(bool allow_slash) {
        double sign = 1.0;
        while (lexer_.peek().kind == Tok::Plus || lexer_.peek().kind == Tok::Minus) {
            if (lexer_.next().kind == Tok::Minus) sign = -sign;
        }
        Factored acc = parse_factor();
        acc.coeff *= sign;
        for (;;) {
            const Tok k = lexer_.peek().kind;
            if (k == Tok::Star) {
                lexer_.next();
                multiply(acc, parse_factor());
            } else if (k == Tok::S || k == Tok::LParen) {
                // Implicit multiplication: ")(", ")s", "8s", "60(" and similar.
                multiply(acc, parse_factor());
            } else if (k == Tok::Slash && allow_slash) {
                const Token slash = lexer_.next();
                divide(acc, parse_product(false), slash.span);
            } else {
                break;
            }
        }
        return acc;
    }

    Factored parse_factor() {
        const Token t = lexer_.peek();
        Factored f;
        switch (t.kind) {
            case Tok::Number:
                lexer_.next();
                f.coeff = t.number;
                break;
            case Tok::S:
                lexer_.next();
                f.s_power = 1;
                break;
            case Tok::LParen:
                lexer_.next();
                f = parse_paren_body(t.span);
                break;
            case Tok::Ident:
                fail(t.span, ParseErrorKind::NonRational,
                     "unsupported symbol; only rational functions of s are accepted");
            default:
                fail(t.span, ParseErrorKind::Syntax, "expected a number, 's' or '('");
        }
        if (lexer_.peek().kind == Tok::Caret) {
            lexer_.next();
            raise_to(f, parse_signed_integer());
        }
        return f;
    }

    // Content between parens: a single product chain (pure grouping) or a
    // sum of monomials forming one polynomial factor.
    Factored parse_paren_body(SourceSpan open) {
        std::vector<std::pair<Factored, SourceSpan>> addends;
        for (;;) {
            const std::size_t addend_start = lexer_.peek().span.start;
            Factored addend = parse_product(true);
            addends.push_back({std::move(addend), {addend_start, lexer_.peek().span.start}});
            const Tok k = lexer_.peek().kind;
            if (k != Tok::Plus && k != Tok::Minus) break;
            // The sign is left in place for parse_product to consume.
        }
        const Token close = lexer_.peek();
        if (close.kind != Tok::RParen) fail(close.span, ParseErrorKind::Syntax, "expected ')'");
        lexer_.next();

        if (addends.size() == 1) return std::move(addends.front().first);

        // A sum: every addend must reduce to coeff * s^k with k >= 0.
        std::vector<double> coeffs;
        for (const auto& [a, span] : addends) {
            if (!a.is_monomial() || a.s_power < 0)
                fail(span, ParseErrorKind::Syntax,
                     "polynomial sums may only contain monomials in s");
            const auto p = static_cast<std::size_t>(a.s_power);
            if (coeffs.size() <= p) coeffs.resize(p + 1, 0.0);
            coeffs[p] += a.coeff;
        }
        while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();

        Factored f;
        if (coeffs.size() == 1)
            f.coeff = coeffs[0];
        else
            f.factors.push_back(RawFactor{std::move(coeffs), 1, {open.start, close.span.end}});
        return f;
    }

    long long parse_signed_integer() {
        long long sign = 1;
        Token t = lexer_.next();
        if (t.kind == Tok::Plus || t.kind == Tok::Minus) {
            if (t.kind == Tok::Minus) sign = -1;
            t = lexer_.next();
        }
        if (t.kind != Tok::Number || t.number != std::floor(t.number))
            fail(t.span, ParseErrorKind::Syntax, "exponent must be an integer");
        if (std::abs(t.number) > 64.0)
            fail(t.span, ParseErrorKind::Syntax, "exponent too large");
        return sign * static_cast<long long>(t.number);
    }

    static void multiply(Factored& acc, Factored rhs) {
        acc.coeff *= rhs.coeff;
        acc.s_power += rhs.s_power;
        for (auto& f : rhs.factors) acc.factors.push_back(std::move(f));
    }

    static void divide(Factored& acc, Factored rhs, SourceSpan at) {
        if (rhs.coeff == 0.0) fail(at, ParseErrorKind::ZeroCoefficient, "division by zero");
        acc.coeff /= rhs.coeff;
        acc.s_power -= rhs.s_power;
        for (auto& f : rhs.factors) {
            f.exponent = -f.exponent;
            acc.factors.push_back(std::move(f));
        }
    }

    static void raise_to(Factored& f, long long e) {
        if (e == 0) {
            f = Factored{};
            return;
        }
        f.coeff = std::pow(f.coeff, static_cast<double>(e));
        f.s_power *= e;
        for (auto& raw : f.factors) raw.exponent *= e;
    }

    Lexer lexer_;
};

// --- normalization: RawFactor list -> PolyTerm list ------------------------

struct Builder {
    double gain = 1.0;
    long long s_power = 0;  // net power of s in the numerator
    std::vector<PolyTerm> terms;

    void fold_gain(double base, long long exponent, SourceSpan span) {
        if (base == 0.0) fail(span, ParseErrorKind::ZeroCoefficient, "factor is identically zero");
        gain *= std::pow(base, static_cast<double>(exponent));
    }

    void add_term(double a0, double a1, double a2, long long exponent) {
        const Side side = exponent > 0 ? Side::Numerator : Side::Denominator;
        const int mult = static_cast<int>(exponent > 0 ? exponent : -exponent);
        terms.push_back(PolyTerm{a0, a1, a2, mult, side});
    }
};

void normalize_factor(Builder& b, RawFactor raw) {
    while (raw.coeffs.size() > 1 && raw.coeffs.back() == 0.0) raw.coeffs.pop_back();

    // Roots at the origin move into the net power of s.
    std::size_t origin = 0;
    while (origin < raw.coeffs.size() && raw.coeffs[origin] == 0.0) ++origin;
    if (origin == raw.coeffs.size())
        fail(raw.span, ParseErrorKind::ZeroCoefficient, "factor is identically zero");
    if (origin > 0) {
        b.s_power += static_cast<long long>(origin) * raw.exponent;
        raw.coeffs.erase(raw.coeffs.begin(), raw.coeffs.begin() + static_cast<long>(origin));
    }

    const std::size_t degree = raw.coeffs.size() - 1;
    if (degree == 0) {
        b.fold_gain(raw.coeffs[0], raw.exponent, raw.span);
        return;
    }
    if (degree == 1) {
        b.add_term(raw.coeffs[0], raw.coeffs[1], 0.0, raw.exponent);
        return;
    }
    if (degree == 2) {
        const double a0 = raw.coeffs[0], a1 = raw.coeffs[1], a2 = raw.coeffs[2];
        const double disc = a1 * a1 - 4.0 * a2 * a0;
        if (disc < 0.0) {
            b.add_term(a0, a1, a2, raw.exponent);
            return;
        }
        // Real roots: split into first-order terms, leading coefficient into
        // the gain. Stable quadratic formula (no cancellation).
        const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1 == 0.0 ? 1.0 : a1));
        const double r1 = q != 0.0 ? q / a2 : 0.0;
        const double r2 = q != 0.0 ? a0 / q : 0.0;
        b.fold_gain(a2, raw.exponent, raw.span);
        b.add_term(-r1, 1.0, 0.0, raw.exponent);
        b.add_term(-r2, 1.0, 0.0, raw.exponent);
        return;
    }

    // Degree >= 3: numeric factorization.
    const RootResult rr = find_roots(raw.coeffs);
    if (!rr.converged)
        fail(raw.span, ParseErrorKind::UnfactorableTerm,
             "root finding did not converge for this factor");

    std::vector<Complex> roots = rr.roots;
    for (auto& z : roots)
        if (std::abs(z.imag()) <= 1e-9 * std::abs(z)) z = Complex(z.real(), 0.0);

    b.fold_gain(raw.coeffs.back(), raw.exponent, raw.span);

    std::vector<Complex> plus, minus;
    for (const auto& z : roots) {
        if (z.imag() > 0.0)
            plus.push_back(z);
        else if (z.imag() < 0.0)
            minus.push_back(z);
        else
            b.add_term(-z.real(), 1.0, 0.0, raw.exponent);
    }
    if (plus.size() != minus.size())
        fail(raw.span, ParseErrorKind::UnfactorableTerm,
             "complex roots of a real factor did not pair up");

    // Nearest-conjugate matching.
    for (const auto& p : plus) {
        std::size_t best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < minus.size(); ++i) {
            const double d = std::abs(std::conj(p) - minus[i]);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        const Complex root = 0.5 * (p + std::conj(minus[best]));
        minus.erase(minus.begin() + static_cast<long>(best));
        b.add_term(std::norm(root), -2.0 * root.real(), 1.0, raw.exponent);
    }
}

}  // namespace

ParseResult parse(std::string_view text) {
    try {
        Parser parser(text);
        Factored top = parser.parse_expression();

        Builder b;
        b.gain = top.coeff;
        b.s_power = top.s_power;
        for (auto& raw : top.factors) normalize_factor(b, std::move(raw));
        if (b.gain == 0.0)
            fail({0, text.size()}, ParseErrorKind::ZeroCoefficient, "expression reduces to zero");

        // Numerator terms first (the factored form's index convention),
        // preserving appearance order within each side.
        TransferFunction tf;
        tf.gain = b.gain;
        tf.origin_exp = static_cast<int>(-b.s_power);
        for (const auto& t : b.terms)
            if (t.side == Side::Numerator) tf.terms.push_back(t);
        for (const auto& t : b.terms)
            if (t.side == Side::Denominator) tf.terms.push_back(t);
        return tf;
    } catch (const ParseFailure& f) {
        return f.error;
    }
}

namespace {

// a2*s^2+a1*s+a0 with unit coefficients elided.
std::string format_polynomial(const PolyTerm& t) {
    std::string out;
    auto monomial = [&](double c, int power) {
        if (c == 0.0) return;
        const bool leading = out.empty();
        if (c < 0.0)
            out += '-';
        else if (!leading)
            out += '+';
        const double mag = std::abs(c);
        if (power == 0 || mag != 1.0) {
            out += format_shortest(mag);
            if (power > 0) out += '*';
        }
        if (power >= 1) out += 's';
        if (power == 2) out += "^2";
    };
    monomial(t.a2, 2);
    monomial(t.a1, 1);
    monomial(t.a0, 0);
    return out;
}

std::string format_side(const TransferFunction& tf, Side side, bool with_origin) {
    std::string out;
    auto push = [&](const std::string& piece) {
        if (!out.empty()) out += '*';
        out += piece;
    };
    if (with_origin) {
        const int h = std::abs(tf.origin_exp);
        push(h == 1 ? "s" : "s^" + std::to_string(h));
    }
    for (const auto& t : tf.terms) {
        if (t.side != side) continue;
        std::string piece = "(" + format_polynomial(t) + ")";
        if (t.multiplicity > 1) piece += "^" + std::to_string(t.multiplicity);
        push(piece);
    }
    return out;
}

}  // namespace

std::string format(const TransferFunction& tf) {
    const std::string num = format_side(tf, Side::Numerator, tf.origin_exp < 0);
    const std::string den = format_side(tf, Side::Denominator, tf.origin_exp > 0);

    std::string out;
    if (tf.gain != 1.0 || num.empty()) {
        out = format_shortest(tf.gain);
        if (!num.empty()) out += '*';
    }
    out += num;
    if (!den.empty()) {
        out += '/';
        out += den.find('*') != std::string::npos ? "(" + den + ")" : den;
    }
    return out;
}

std::string render_parse_error(std::string_view input, const ParseError& error) {
    std::string out = "error: ";
    out += parse_error_kind_name(error.kind);
    out += ": ";
    out += error.message;
    out += '\n';
    out += "  ";
    out += input;
    out += "\n  ";
    const std::size_t start = std::min(error.span.start, input.size());
    const std::size_t end = std::min(std::max(error.span.end, start + 1), input.size() + 1);
    out.append(start, ' ');
    out.append(end - start, '^');
    out += '\n';
    return out;
}

}  // namespace bode
