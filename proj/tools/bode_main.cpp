// bode: asymptotic Bode plot construction for rational transfer functions.
//
// Subcommands:
//   analyze   critical frequencies, approximating functions, gains, phases
//   plot      SVG and/or CSV of the asymptotic, stepwise and exact curves
//   compare   direct construction vs per-factor summation on a shared grid
//   eval      exact frequency response at given frequencies
//
// Exit codes: 0 success/PASS, 1 compare FAIL, 2 parse error, 3 I/O error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bode/exact_response.hpp"
#include "bode/numfmt.hpp"
#include "bode/parser.hpp"
#include "bode/plot.hpp"
#include "bode/report.hpp"
#include "bode/standard_method.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCompareFail = 1;
constexpr int kExitParseError = 2;
constexpr int kExitIoError = 3;

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    int ppd = 0;
};

// "MIN:MAX:PPD", e.g. 0.01:100:200
bool parse_grid_spec(const std::string& text, GridSpec& out) {
    std::istringstream is(text);
    char c1 = 0, c2 = 0;
    if (!(is >> out.min >> c1 >> out.max >> c2 >> out.ppd)) return false;
    if (c1 != ':' || c2 != ':') return false;
    is >> std::ws;
    return is.eof() && out.min > 0.0 && out.max > out.min && out.ppd >= 1;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Expression from the positional argument or --file (UTF-8, one expression).
std::optional<std::string> load_expression(const std::string& positional,
                                           const std::string& file_path) {
    if (!file_path.empty()) {
        std::ifstream in(file_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << file_path << "\n";
            return std::nullopt;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        return trim(buf.str());
    }
    return positional;
}

std::optional<bode::TransferFunction> parse_or_report(const std::string& expr) {
    bode::ParseResult result = bode::parse(expr);
    if (const auto* err = std::get_if<bode::ParseError>(&result)) {
        std::cerr << bode::render_parse_error(expr, *err);
        return std::nullopt;
    }
    return std::get<bode::TransferFunction>(std::move(result));
}

// Whole-file atomic write: temp file in the same directory, then rename.
bool write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "error: cannot write " << tmp << "\n";
            return false;
        }
        out << contents;
        if (!out.flush()) {
            std::cerr << "error: short write to " << tmp << "\n";
            return false;
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::cerr << "error: cannot rename " << tmp << " to " << path << ": " << ec.message()
                  << "\n";
        return false;
    }
    return true;
}

int run_analyze(const std::string& expr, bool json, int branch_offset) {
    const auto tf = parse_or_report(expr);
    if (!tf) return kExitParseError;
    const bode::AnalysisReport report = bode::analyze(*tf, branch_offset);
    std::cout << (json ? bode::to_json(report) : bode::to_text(report));
    return kExitPass;
}

int run_plot(const std::string& expr, std::string svg_path, std::string csv_path,
             const std::string& grid_spec, int branch_offset) {
    const auto tf = parse_or_report(expr);
    if (!tf) return kExitParseError;

    bode::FrequencyGrid grid;
    if (grid_spec.empty()) {
        grid = bode::default_plot_grid(*tf);
    } else {
        GridSpec gs;
        parse_grid_spec(grid_spec, gs);  // validated by CLI11 already
        grid = bode::log_grid(gs.min, gs.max, gs.ppd);
    }

    if (svg_path.empty() && csv_path.empty()) {
        svg_path = "bode.svg";
        csv_path = "bode.csv";
    }

    const bode::PlotBundle bundle = bode::make_plot_bundle(*tf, grid, branch_offset);
    if (!svg_path.empty()) {
        if (!write_file(svg_path, bode::to_svg(bundle))) return kExitIoError;
        std::cout << "wrote " << svg_path << "\n";
    }
    if (!csv_path.empty()) {
        if (!write_file(csv_path, bode::to_csv(bundle))) return kExitIoError;
        std::cout << "wrote " << csv_path << "\n";
    }
    return kExitPass;
}

int run_compare(const std::string& expr, const std::string& grid_spec) {
    const auto tf = parse_or_report(expr);
    if (!tf) return kExitParseError;

    std::vector<double> grid;
    if (grid_spec.empty()) {
        grid = bode::comparison_grid(*tf);
    } else {
        GridSpec gs;
        parse_grid_spec(grid_spec, gs);
        grid = bode::log_grid(gs.min, gs.max, gs.ppd).omega;
    }

    const bode::CompareResult r = bode::compare_methods(*tf, grid);
    std::cout << "points compared:      " << r.points_compared << "\n"
              << "max |d magnitude|:    " << bode::format_sig12(r.max_mag_delta_db) << " dB\n"
              << "max |d stepwise phi|: " << bode::format_sig12(r.max_step_phase_delta_rad)
              << " rad\n"
              << "max |d asymptote phi|: " << bode::format_sig12(r.max_asym_phase_delta_rad)
              << " rad\n"
              << (r.pass ? "PASS" : "FAIL") << " (tolerances: 1e-6 dB, 1e-9 rad)\n";
    return r.pass ? kExitPass : kExitCompareFail;
}

int run_eval(const std::string& expr, const std::vector<double>& omegas) {
    const auto tf = parse_or_report(expr);
    if (!tf) return kExitParseError;

    constexpr double kRadToDeg = 180.0 / std::numbers::pi;
    std::cout << "omega_rad_s  re  im  mag_db  phase_deg\n";
    for (double w : omegas) {
        std::cout << bode::format_sig12(w) << "  ";
        try {
            const bode::Complex v = bode::evaluate(*tf, w);
            std::cout << bode::format_sig12(v.real()) << "  " << bode::format_sig12(v.imag())
                      << "  " << bode::format_sig12(20.0 * std::log10(std::abs(v))) << "  "
                      << bode::format_sig12(std::arg(v) * kRadToDeg) << "\n";
        } catch (const bode::PoleOnAxis&) {
            std::cout << "pole on the imaginary axis\n";
        }
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic Bode plot construction for rational transfer functions"};
    app.require_subcommand(1);

    const auto grid_validator = CLI::Validator(
        [](std::string& s) {
            GridSpec gs;
            return parse_grid_spec(s, gs) ? std::string()
                                          : std::string("expected MIN:MAX:PPD with 0 < MIN < MAX");
        },
        "GRID");

    std::string expr, file_path, grid_spec, svg_path, csv_path;
    bool json = false;
    int branch_offset = 0;
    std::vector<double> omegas;

    auto add_expr_options = [&](CLI::App* cmd) {
        cmd->add_option("expr", expr, "transfer-function expression, e.g. \"1/(s*(s+1))\"");
        cmd->add_option("--file", file_path, "read the expression from a UTF-8 file");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "print the direct-method analysis");
    add_expr_options(analyze);
    analyze->add_flag("--json", json, "emit the JSON report");
    analyze->add_option("--branch-offset", branch_offset,
                        "shift phi_0 by this many full turns (2*pi)");

    CLI::App* plot = app.add_subcommand("plot", "emit SVG and/or CSV plots");
    add_expr_options(plot);
    plot->add_option("--svg", svg_path, "SVG output path");
    plot->add_option("--csv", csv_path, "CSV output path");
    plot->add_option("--grid", grid_spec, "frequency grid MIN:MAX:PPD")->check(grid_validator);
    plot->add_option("--branch-offset", branch_offset,
                     "shift phi_0 by this many full turns (2*pi)");

    CLI::App* compare = app.add_subcommand("compare", "direct method vs factor summation");
    add_expr_options(compare);
    compare->add_option("--grid", grid_spec, "frequency grid MIN:MAX:PPD")->check(grid_validator);

    CLI::App* eval = app.add_subcommand("eval", "exact response at given frequencies");
    add_expr_options(eval);
    eval->add_option("--omega", omegas, "frequencies in rad/s (comma separated)")
        ->required()
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    const auto expression = load_expression(expr, file_path);
    if (!expression) return kExitIoError;
    if (expression->empty()) {
        std::cerr << "error: no expression given (pass it as an argument or via --file)\n";
        return kExitParseError;
    }

    try {
        if (analyze->parsed()) return run_analyze(*expression, json, branch_offset);
        if (plot->parsed()) return run_plot(*expression, svg_path, csv_path, grid_spec,
                                            branch_offset);
        if (compare->parsed()) return run_compare(*expression, grid_spec);
        if (eval->parsed()) return run_eval(*expression, omegas);
    } catch (const bode::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    }
    return kExitPass;
}
