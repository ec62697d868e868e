#include "bode/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "bode/direct_method.hpp"
#include "bode/numfmt.hpp"
#include "bode/parser.hpp"

namespace bode {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string side_name(Side side) {
    return side == Side::Numerator ? "numerator" : "denominator";
}

}  // namespace

AnalysisReport analyze(const TransferFunction& tf, int branch_offset) {
    AnalysisReport rep;
    rep.input = format(tf);
    rep.gain = tf.gain;
    rep.origin_exp = tf.origin_exp;

    for (const auto& term : tf.terms) {
        const auto at = compute_attributes(term);
        rep.terms.push_back({term.a0, term.a1, term.a2, term.multiplicity, side_name(term.side),
                             at.order, at.critical_freq, at.zp_sign, at.st_sign, at.damping});
    }

    const auto set = critical_set(tf);
    rep.omega_c = set.freqs;

    const int r = static_cast<int>(set.freqs.size());
    for (int k = 0; k <= r; ++k) {
        const auto g = approx_function(tf, k);
        rep.approximants.push_back({k, g.k_coeff, g.rel_degree, g.band_low, g.band_high});
    }

    const auto plot = magnitude_plot(tf);
    for (const auto& bp : plot.breakpoints) rep.gains.push_back({bp.omega, bp.gain, bp.gain_db});

    const auto phases = stepwise_phase(tf, branch_offset);
    for (std::size_t k = 0; k < phases.levels.size(); ++k)
        rep.phases.push_back({phases.bands[k].first, phases.bands[k].second, phases.levels[k]});

    for (const auto& ramp : phase_ramps(tf))
        rep.ramps.push_back({ramp.term_index, ramp.omega_a, ramp.omega_b, ramp.delta_phi});

    return rep;
}

// --- JSON ------------------------------------------------------------------

namespace {

class JsonWriter {
   public:
    void begin_object() { open('{'); }
    void end_object() { close('}'); }
    void begin_array() { open('['); }
    void end_array() { close(']'); }

    void key(const char* name) {
        comma_if_needed();
        indent();
        out_ += '"';
        out_ += name;
        out_ += "\": ";
        pending_value_ = true;
    }

    void value_string(const std::string& s) {
        prefix();
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                default: out_ += c;
            }
        }
        out_ += '"';
    }

    void value_number(double v) {
        prefix();
        out_ += format_sig12(v);
    }

    void value_int(long long v) {
        prefix();
        out_ += std::to_string(v);
    }

    /// Finite numbers as numbers, +inf as the string "inf".
    void value_band_edge(double v) {
        if (std::isinf(v))
            value_string("inf");
        else
            value_number(v);
    }

    std::string take() {
        out_ += '\n';
        return std::move(out_);
    }

   private:
    void open(char c) {
        prefix();
        out_ += c;
        ++depth_;
        first_in_scope_ = true;
    }

    void close(char c) {
        --depth_;
        if (!first_in_scope_) {
            out_ += '\n';
            indent();
        }
        out_ += c;
        first_in_scope_ = false;
    }

    void prefix() {
        if (pending_value_) {
            pending_value_ = false;
            first_in_scope_ = false;
            return;
        }
        comma_if_needed();
        indent();
        first_in_scope_ = false;
    }

    void comma_if_needed() {
        if (!first_in_scope_)
            out_ += ",\n";
        else if (!out_.empty())
            out_ += '\n';
    }

    void indent() { out_.append(2 * static_cast<std::size_t>(depth_), ' '); }

    std::string out_;
    int depth_ = 0;
    bool first_in_scope_ = true;
    bool pending_value_ = false;
};

}  // namespace

std::string to_json(const AnalysisReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("input");
    w.value_string(rep.input);
    w.key("gain");
    w.value_number(rep.gain);
    w.key("origin_exp");
    w.value_int(rep.origin_exp);

    w.key("terms");
    w.begin_array();
    for (const auto& t : rep.terms) {
        w.begin_object();
        w.key("a0");
        w.value_number(t.a0);
        w.key("a1");
        w.value_number(t.a1);
        w.key("a2");
        w.value_number(t.a2);
        w.key("multiplicity");
        w.value_int(t.multiplicity);
        w.key("side");
        w.value_string(t.side);
        w.key("order");
        w.value_int(t.order);
        w.key("omega_c");
        w.value_number(t.omega_c);
        w.key("zp_sign");
        w.value_int(t.zp_sign);
        w.key("st_sign");
        w.value_int(t.st_sign);
        w.key("damping");
        w.value_number(t.damping);
        w.end_object();
    }
    w.end_array();

    w.key("omega_c");
    w.begin_array();
    for (double v : rep.omega_c) w.value_number(v);
    w.end_array();

    w.key("approximants");
    w.begin_array();
    for (const auto& a : rep.approximants) {
        w.begin_object();
        w.key("k");
        w.value_int(a.k);
        w.key("K_k");
        w.value_number(a.k_coeff);
        w.key("t_k");
        w.value_int(a.rel_degree);
        w.key("band");
        w.begin_array();
        w.value_band_edge(a.band_lo);
        w.value_band_edge(a.band_hi);
        w.end_array();
        w.end_object();
    }
    w.end_array();

    w.key("gains");
    w.begin_array();
    for (const auto& g : rep.gains) {
        w.begin_object();
        w.key("omega");
        w.value_number(g.omega);
        w.key("M");
        w.value_number(g.gain);
        w.key("M_db");
        w.value_number(g.gain_db);
        w.end_object();
    }
    w.end_array();

    w.key("phases");
    w.begin_array();
    for (const auto& p : rep.phases) {
        w.begin_object();
        w.key("band");
        w.begin_array();
        w.value_band_edge(p.band_lo);
        w.value_band_edge(p.band_hi);
        w.end_array();
        w.key("phi_rad");
        w.value_number(p.phi_rad);
        w.end_object();
    }
    w.end_array();

    w.key("ramps");
    w.begin_array();
    for (const auto& rmp : rep.ramps) {
        w.begin_object();
        w.key("term_index");
        w.value_int(rmp.term_index);
        w.key("omega_a");
        w.value_number(rmp.omega_a);
        w.key("omega_b");
        w.value_number(rmp.omega_b);
        w.key("delta_phi_rad");
        w.value_number(rmp.delta_phi_rad);
        w.end_object();
    }
    w.end_array();

    w.end_object();
    return w.take();
}

namespace {

double band_edge_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw Error("unexpected band edge string");
    }
    return j.get<double>();
}

}  // namespace

AnalysisReport report_from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad report JSON: ") + e.what());
    }
    try {
        AnalysisReport rep;
        rep.input = j.at("input").get<std::string>();
        rep.gain = j.at("gain").get<double>();
        rep.origin_exp = j.at("origin_exp").get<int>();
        for (const auto& t : j.at("terms")) {
            rep.terms.push_back({t.at("a0").get<double>(), t.at("a1").get<double>(),
                                 t.at("a2").get<double>(), t.at("multiplicity").get<int>(),
                                 t.at("side").get<std::string>(), t.at("order").get<int>(),
                                 t.at("omega_c").get<double>(), t.at("zp_sign").get<int>(),
                                 t.at("st_sign").get<int>(), t.at("damping").get<double>()});
        }
        for (const auto& v : j.at("omega_c")) rep.omega_c.push_back(v.get<double>());
        for (const auto& a : j.at("approximants")) {
            rep.approximants.push_back({a.at("k").get<int>(), a.at("K_k").get<double>(),
                                        a.at("t_k").get<int>(),
                                        band_edge_from_json(a.at("band").at(0)),
                                        band_edge_from_json(a.at("band").at(1))});
        }
        for (const auto& g : j.at("gains"))
            rep.gains.push_back({g.at("omega").get<double>(), g.at("M").get<double>(),
                                 g.at("M_db").get<double>()});
        for (const auto& p : j.at("phases"))
            rep.phases.push_back({band_edge_from_json(p.at("band").at(0)),
                                  band_edge_from_json(p.at("band").at(1)),
                                  p.at("phi_rad").get<double>()});
        for (const auto& rmp : j.at("ramps"))
            rep.ramps.push_back({rmp.at("term_index").get<int>(), rmp.at("omega_a").get<double>(),
                                 rmp.at("omega_b").get<double>(),
                                 rmp.at("delta_phi_rad").get<double>()});
        return rep;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("bad report JSON: ") + e.what());
    }
}

// --- text ------------------------------------------------------------------

namespace {

std::string num6(double v) {
    if (v == 0.0) return "0";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const int n = std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf, buf + n);
}

std::string polynomial_text(const ReportTerm& t) {
    PolyTerm p{t.a0, t.a1, t.a2, 1, Side::Numerator};
    std::string s;
    auto mono = [&](double c, int pw) {
        if (c == 0.0) return;
        if (c < 0.0)
            s += s.empty() ? "-" : " - ";
        else if (!s.empty())
            s += " + ";
        const double m = std::abs(c);
        if (pw == 0 || m != 1.0) s += num6(m);
        if (pw >= 1) s += pw == 2 ? "s^2" : "s";
    };
    mono(p.a2, 2);
    mono(p.a1, 1);
    mono(p.a0, 0);
    return s;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostringstream& os) const {
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
        for (const auto& row : rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                width[c] = std::max(width[c], row[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            os << "  ";
            for (std::size_t c = 0; c < cells.size(); ++c) {
                os << cells[c];
                if (c + 1 < cells.size())
                    os << std::string(width[c] - cells[c].size() + 2, ' ');
            }
            os << '\n';
        };
        line(header);
        for (const auto& row : rows) line(row);
    }
};

std::string band_text(double lo, double hi) {
    return "[" + num6(lo) + ", " + (std::isinf(hi) ? "inf" : num6(hi)) + "]";
}

}  // namespace

std::string to_text(const AnalysisReport& rep) {
    constexpr double kRadToDeg = 180.0 / std::numbers::pi;
    std::ostringstream os;
    os << "transfer function: " << rep.input << '\n';
    os << "  gain K = " << num6(rep.gain) << ", origin exponent h = " << rep.origin_exp << '\n';

    if (!rep.terms.empty()) {
        os << "\nterms:\n";
        Table t;
        t.header = {"#", "side", "polynomial", "r", "order", "omega_c", "zp", "st", "damping"};
        for (std::size_t i = 0; i < rep.terms.size(); ++i) {
            const auto& term = rep.terms[i];
            t.rows.push_back({std::to_string(i + 1), term.side, polynomial_text(term),
                              std::to_string(term.multiplicity), std::to_string(term.order),
                              num6(term.omega_c), term.zp_sign > 0 ? "+1" : "-1",
                              term.st_sign > 0 ? "+1" : "-1", num6(term.damping)});
        }
        t.print(os);
    }

    os << "\ncritical frequencies (rad/s): ";
    if (rep.omega_c.empty()) {
        os << "none\n";
    } else {
        for (std::size_t i = 0; i < rep.omega_c.size(); ++i)
            os << (i ? ", " : "") << num6(rep.omega_c[i]);
        os << '\n';
    }

    os << "\napproximating functions:\n";
    {
        Table t;
        t.header = {"k", "K_k", "t_k", "band (rad/s)"};
        for (const auto& a : rep.approximants)
            t.rows.push_back({std::to_string(a.k), num6(a.k_coeff), std::to_string(a.rel_degree),
                              band_text(a.band_lo, a.band_hi)});
        t.print(os);
    }

    if (!rep.gains.empty()) {
        os << "\ncritical gains:\n";
        Table t;
        t.header = {"omega (rad/s)", "M", "M (dB)"};
        for (const auto& g : rep.gains)
            t.rows.push_back({num6(g.omega), num6(g.gain), num6(g.gain_db)});
        t.print(os);
    }

    os << "\nstepwise phase:\n";
    {
        Table t;
        t.header = {"band (rad/s)", "phi (rad)", "phi (deg)"};
        for (const auto& p : rep.phases)
            t.rows.push_back({band_text(p.band_lo, p.band_hi), num6(p.phi_rad),
                              num6(p.phi_rad * kRadToDeg)});
        t.print(os);
    }

    if (!rep.ramps.empty()) {
        os << "\nphase ramps (asymptotic plot):\n";
        Table t;
        t.header = {"term", "omega_a (rad/s)", "omega_b (rad/s)", "delta_phi (deg)"};
        for (const auto& rmp : rep.ramps)
            t.rows.push_back({std::to_string(rmp.term_index + 1), num6(rmp.omega_a),
                              num6(rmp.omega_b), num6(rmp.delta_phi_rad * kRadToDeg)});
        t.print(os);
    }
    return os.str();
}

}  // namespace bode
