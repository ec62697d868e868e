#include "bode/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "bode/numfmt.hpp"

namespace bode {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

constexpr const char* kBlue = "#1f4fd8";
constexpr const char* kRed = "#d81f1f";

}  // namespace

PlotBundle make_plot_bundle(const TransferFunction& tf, const FrequencyGrid& grid,
                            int branch_offset) {
    PlotBundle b;
    b.grid = grid;
    b.magnitude = magnitude_plot(tf);
    b.stepwise = stepwise_phase(tf, branch_offset);
    b.asymptotic = asymptotic_phase(tf, branch_offset);
    b.exact = sweep(tf, grid, branch_offset);
    return b;
}

FrequencyGrid default_plot_grid(const TransferFunction& tf, int points_per_decade) {
    double lo = 1.0, hi = 1.0;
    const auto set = critical_set(tf);
    if (!set.freqs.empty()) {
        lo = set.freqs.front();
        hi = set.freqs.back();
    }
    return log_grid(lo / 10.0, hi * 10.0, points_per_decade);
}

std::string to_csv(const PlotBundle& b) {
    std::string out =
        "omega_rad_s,asym_mag_db,exact_mag_db,stepwise_phase_deg,asym_phase_deg,exact_phase_deg\n";
    for (std::size_t i = 0; i < b.grid.omega.size(); ++i) {
        const double w = b.grid.omega[i];
        const auto& ex = b.exact[i];
        out += format_sig12(w);
        out += ',';
        out += format_sig12(mag_db_at(b.magnitude, w));
        out += ',';
        out += format_sig12(ex.mag_db);
        out += ',';
        out += format_sig12(stepwise_phase_at(b.stepwise, w) * kRadToDeg);
        out += ',';
        out += format_sig12(asymptotic_phase_at(b.asymptotic, w) * kRadToDeg);
        out += ',';
        out += format_sig12(ex.phase_rad * kRadToDeg);
        out += '\n';
    }
    return out;
}

// --- SVG --------------------------------------------------------------------

namespace {

std::string fmt2(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf, buf + n);
}

std::string fmtg(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof(buf), "%g", v);
    return std::string(buf, buf + n);
}

struct Panel {
    double x0, y0, width, height;             // outer box
    double ml = 70, mr = 25, mt = 45, mb = 55;  // margins
    double lx_min, lx_max;                    // log10 omega range
    double y_min, y_max;                      // data range (dB or deg)

    double px(double lx) const {
        return x0 + ml + (lx - lx_min) / (lx_max - lx_min) * (width - ml - mr);
    }
    double py(double y) const {
        const double t = (y - y_min) / (y_max - y_min);
        return y0 + height - mb - t * (height - mt - mb);
    }
    double clamp_y(double y) const { return std::min(std::max(y, y_min), y_max); }
};

void round_range(double& lo, double& hi, double unit) {
    lo = std::floor(lo / unit) * unit;
    hi = std::ceil(hi / unit) * unit;
    if (lo == hi) {
        lo -= unit;
        hi += unit;
    }
}

struct Pt {
    double lx, y;
};

void polyline(std::ostringstream& os, const Panel& p, const std::vector<Pt>& pts,
              const char* color, bool dashed = false) {
    if (pts.size() < 2) return;
    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dashed) os << " stroke-dasharray=\"6,4\"";
    os << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) os << ' ';
        os << fmt2(p.px(pts[i].lx)) << ',' << fmt2(p.py(p.clamp_y(pts[i].y)));
    }
    os << "\"/>\n";
}

void text(std::ostringstream& os, double x, double y, const std::string& s,
          const char* anchor = "middle", const char* color = "#333333", int size = 12) {
    os << "  <text x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" font-family=\"sans-serif\""
       << " font-size=\"" << size << "\" fill=\"" << color << "\" text-anchor=\"" << anchor
       << "\">" << s << "</text>\n";
}

void draw_frame(std::ostringstream& os, const Panel& p, double y_unit, const char* y_label,
                const std::string& title, bool x_labels) {
    // horizontal gridlines + y tick labels
    for (double y = p.y_min; y <= p.y_max + 1e-9; y += y_unit) {
        os << "  <line x1=\"" << fmt2(p.px(p.lx_min)) << "\" y1=\"" << fmt2(p.py(y)) << "\" x2=\""
           << fmt2(p.px(p.lx_max)) << "\" y2=\"" << fmt2(p.py(y))
           << "\" stroke=\"#d8d8d8\" stroke-width=\"0.8\"/>\n";
        text(os, p.x0 + p.ml - 8, p.py(y) + 4, fmtg(y), "end");
    }
    // decade gridlines + x tick labels
    for (double lx = std::ceil(p.lx_min - 1e-9); lx <= p.lx_max + 1e-9; lx += 1.0) {
        os << "  <line x1=\"" << fmt2(p.px(lx)) << "\" y1=\"" << fmt2(p.py(p.y_max))
           << "\" x2=\"" << fmt2(p.px(lx)) << "\" y2=\"" << fmt2(p.py(p.y_min))
           << "\" stroke=\"#d8d8d8\" stroke-width=\"0.8\"/>\n";
        if (x_labels)
            text(os, p.px(lx), p.y0 + p.height - p.mb + 18, fmtg(std::pow(10.0, lx)));
    }
    // frame
    os << "  <rect x=\"" << fmt2(p.px(p.lx_min)) << "\" y=\"" << fmt2(p.py(p.y_max))
       << "\" width=\"" << fmt2(p.px(p.lx_max) - p.px(p.lx_min)) << "\" height=\""
       << fmt2(p.py(p.y_min) - p.py(p.y_max))
       << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    text(os, p.x0 + 18, p.y0 + p.mt - 26 + (p.height - p.mt - p.mb) / 2 + 26, y_label, "middle");
    text(os, p.x0 + p.ml + (p.width - p.ml - p.mr) / 2, p.y0 + 24, title, "middle", "#111111",
         14);
    if (x_labels)
        text(os, p.x0 + p.ml + (p.width - p.ml - p.mr) / 2, p.y0 + p.height - 12,
             "omega [rad/s]");
}

void legend(std::ostringstream& os, const Panel& p,
            const std::vector<std::tuple<const char*, bool, const char*>>& entries) {
    const double w = 118, row = 18;
    const double h = row * static_cast<double>(entries.size()) + 10;
    const double x = p.px(p.lx_max) - w - 10, y = p.py(p.y_max) + 10;
    os << "  <rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" width=\"" << fmt2(w)
       << "\" height=\"" << fmt2(h)
       << "\" fill=\"white\" stroke=\"#333333\" stroke-width=\"0.8\"/>\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [color, dashed, label] = entries[i];
        const double ly = y + 14 + row * static_cast<double>(i);
        os << "  <line x1=\"" << fmt2(x + 8) << "\" y1=\"" << fmt2(ly - 4) << "\" x2=\""
           << fmt2(x + 34) << "\" y2=\"" << fmt2(ly - 4) << "\" stroke=\"" << color
           << "\" stroke-width=\"1.5\"" << (dashed ? " stroke-dasharray=\"6,4\"" : "")
           << "/>\n";
        text(os, x + 40, ly, label, "start");
    }
}

// Exact samples as one or more polylines, split at flagged or non-finite
// samples.
void exact_polylines(std::ostringstream& os, const Panel& p,
                     const std::vector<ResponseSample>& samples, bool phase) {
    std::vector<Pt> run;
    auto flush = [&] {
        polyline(os, p, run, kRed);
        run.clear();
    };
    for (const auto& s : samples) {
        const double v = phase ? s.phase_rad * kRadToDeg : s.mag_db;
        if (s.pole || !std::isfinite(v)) {
            flush();
            continue;
        }
        run.push_back({std::log10(s.omega), v});
    }
    flush();
}

}  // namespace

std::string to_svg(const PlotBundle& b) {
    const double lx_min = std::log10(b.grid.omega.front());
    const double lx_max = std::log10(b.grid.omega.back());

    // magnitude range
    double mag_lo = 0.0, mag_hi = 0.0;
    {
        bool first = true;
        auto take = [&](double v) {
            if (!std::isfinite(v)) return;
            if (first) {
                mag_lo = mag_hi = v;
                first = false;
            } else {
                mag_lo = std::min(mag_lo, v);
                mag_hi = std::max(mag_hi, v);
            }
        };
        take(mag_db_at(b.magnitude, b.grid.omega.front()));
        take(mag_db_at(b.magnitude, b.grid.omega.back()));
        for (const auto& bp : b.magnitude.breakpoints) take(bp.gain_db);
        for (const auto& s : b.exact)
            if (!s.pole) take(s.mag_db);
        round_range(mag_lo, mag_hi, 20.0);
    }

    // phase range (degrees)
    double ph_lo = 0.0, ph_hi = 0.0;
    {
        bool first = true;
        auto take = [&](double v) {
            if (!std::isfinite(v)) return;
            if (first) {
                ph_lo = ph_hi = v;
                first = false;
            } else {
                ph_lo = std::min(ph_lo, v);
                ph_hi = std::max(ph_hi, v);
            }
        };
        for (double lv : b.stepwise.levels) take(lv * kRadToDeg);
        for (const auto& s : b.exact)
            if (!s.pole) take(s.phase_rad * kRadToDeg);
        round_range(ph_lo, ph_hi, 90.0);
    }

    Panel mag{0, 0, 800, 600, 70, 25, 45, 55, lx_min, lx_max, mag_lo, mag_hi};
    Panel ph{0, 600, 800, 600, 70, 25, 45, 55, lx_min, lx_max, ph_lo, ph_hi};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"1200\" "
          "viewBox=\"0 0 800 1200\">\n";
    os << "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"1200\" fill=\"white\"/>\n";

    // ---- magnitude panel ----
    draw_frame(os, mag, 20.0, "[dB]", "Bode magnitude", false);

    // asymptotic magnitude: grid edges plus every breakpoint inside them
    {
        std::vector<Pt> pts;
        pts.push_back({lx_min, mag_db_at(b.magnitude, b.grid.omega.front())});
        for (const auto& bp : b.magnitude.breakpoints) {
            const double lx = std::log10(bp.omega);
            if (lx > lx_min && lx < lx_max) pts.push_back({lx, bp.gain_db});
        }
        pts.push_back({lx_max, mag_db_at(b.magnitude, b.grid.omega.back())});
        polyline(os, mag, pts, kBlue);

        // slope shorthand: integer n means 20*n dB/dec
        std::vector<double> edges{lx_min};
        for (const auto& bp : b.magnitude.breakpoints) {
            const double lx = std::log10(bp.omega);
            if (lx > lx_min && lx < lx_max) edges.push_back(lx);
        }
        edges.push_back(lx_max);
        for (std::size_t k = 0; k + 1 < edges.size() && k < b.magnitude.slopes.size(); ++k) {
            const double lx = 0.5 * (edges[k] + edges[k + 1]);
            const double w = std::pow(10.0, lx);
            const int shorthand = -b.magnitude.slopes[k];
            text(os, mag.px(lx), mag.py(mag.clamp_y(mag_db_at(b.magnitude, w))) - 8,
                 std::to_string(shorthand), "middle", kBlue);
        }
    }
    exact_polylines(os, mag, b.exact, false);
    legend(os, mag, {{kBlue, false, "Asymptotic"}, {kRed, false, "Actual"}});

    // ---- phase panel ----
    draw_frame(os, ph, 90.0, "[deg]", "Bode phase", true);

    // stepwise: horizontal levels joined by vertical segments
    {
        std::vector<Pt> pts;
        double lo = lx_min;
        for (std::size_t k = 0; k < b.stepwise.levels.size(); ++k) {
            const double level = b.stepwise.levels[k] * kRadToDeg;
            const double hi = k + 1 < b.stepwise.levels.size()
                                  ? std::log10(b.stepwise.bands[k].second)
                                  : lx_max;
            pts.push_back({lo, level});
            pts.push_back({hi, level});
            lo = hi;
        }
        polyline(os, ph, pts, kBlue);
    }

    // asymptotic phase (dashed)
    {
        std::vector<Pt> pts;
        pts.push_back({lx_min, asymptotic_phase_at(b.asymptotic, b.grid.omega.front()) * kRadToDeg});
        for (const auto& n : b.asymptotic.nodes) {
            const double lx = std::log10(n.omega);
            if (lx > lx_min && lx < lx_max) pts.push_back({lx, n.phase * kRadToDeg});
        }
        pts.push_back({lx_max, asymptotic_phase_at(b.asymptotic, b.grid.omega.back()) * kRadToDeg});
        polyline(os, ph, pts, kBlue, true);
    }
    exact_polylines(os, ph, b.exact, true);
    legend(os, ph, {{kBlue, false, "Stepwise"}, {kBlue, true, "Asymptotic"}, {kRed, false, "Actual"}});

    os << "</svg>\n";
    return os.str();
}

}  // namespace bode
