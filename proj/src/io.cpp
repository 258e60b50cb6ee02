#include "nearcurve/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "nearcurve/errors.hpp"

namespace nearcurve {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf; // 17 significant digits always round-trip
}

void write_asymptotic_csv(const std::vector<SweepRow>& rows, CountMode mode,
                          std::ostream& out) {
    out << "Q,delta,mode,count,main_term,ratio,abs_error,wall_ms\n";
    const char* m = count_mode_name(mode);
    for (const SweepRow& r : rows) {
        out << r.Q << ',' << fmt_double(r.delta) << ',' << m << ',' << r.count << ','
            << fmt_double(r.main_term) << ',' << fmt_double(r.ratio) << ','
            << fmt_double(r.abs_error) << ',' << fmt_double(r.wall_ms) << '\n';
    }
}

void write_sandwich_csv(const std::vector<SandwichRow>& rows, std::ostream& out) {
    out << "Q,delta,count,main_term,observed_ratio,lower_const,upper_const,"
           "conjectured\n";
    for (const SandwichRow& r : rows) {
        out << r.Q << ',' << fmt_double(r.delta) << ',' << r.report.count << ','
            << fmt_double(r.report.main_term) << ','
            << fmt_double(r.report.observed_ratio) << ','
            << fmt_double(r.report.lower_const) << ','
            << fmt_double(r.report.upper_const) << ','
            << fmt_double(r.report.conjectured) << '\n';
    }
}

void write_floor_csv(const std::vector<FloorRow>& rows, std::ostream& out) {
    out << "Q,delta,count,on_curve_count\n";
    for (const FloorRow& r : rows) {
        out << r.Q << ',' << fmt_double(r.delta.to_double()) << ',' << r.count << ','
            << r.on_curve_count << '\n';
    }
}

void write_discrepancy_csv(const std::vector<DiscrepancyRow>& rows, std::ostream& out) {
    out << "Q,N,D_surrogate,D_over_N34\n";
    for (const DiscrepancyRow& r : rows) {
        out << r.Q << ',' << r.N << ',' << fmt_double(r.D_surrogate) << ','
            << fmt_double(r.D_over_N34) << '\n';
    }
}

void write_sp_error_csv(const std::vector<SpErrorRow>& rows, std::ostream& out) {
    out << "lambda,direct_re,direct_im,sp_re,sp_im,abs_diff,budget\n";
    for (const SpErrorRow& r : rows) {
        out << r.lambda << ',' << fmt_double(r.direct.real()) << ','
            << fmt_double(r.direct.imag()) << ',' << fmt_double(r.stationary.real())
            << ',' << fmt_double(r.stationary.imag()) << ','
            << fmt_double(r.abs_diff) << ',' << fmt_double(r.budget) << '\n';
    }
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string o;
    o.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': o += "&amp;"; break;
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '"': o += "&quot;"; break;
        default: o += c;
        }
    }
    return o;
}

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

// Tick label like "1e+03" without printf's platform-variable exponent width.
std::string decade_label(int e) {
    return "1e" + std::string(e < 0 ? "-" : "+") + std::to_string(std::abs(e));
}

} // namespace

std::string svg_loglog_plot(const std::vector<PlotSeries>& series,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label) {
    double lx0 = 0, lx1 = 0, ly0 = 0, ly1 = 0;
    bool any = false;
    for (const PlotSeries& s : series) {
        for (auto [x, y] : s.points) {
            if (!(x > 0) || !(y > 0)) continue;
            double lx = std::log10(x), ly = std::log10(y);
            if (!any) {
                lx0 = lx1 = lx;
                ly0 = ly1 = ly;
                any = true;
            } else {
                lx0 = std::min(lx0, lx);
                lx1 = std::max(lx1, lx);
                ly0 = std::min(ly0, ly);
                ly1 = std::max(ly1, ly);
            }
        }
    }
    if (!any) throw DomainError("svg_loglog_plot: no positive data points");
    if (lx1 - lx0 < 1e-9) { lx0 -= 0.5; lx1 += 0.5; }
    if (ly1 - ly0 < 1e-9) { ly0 -= 0.5; ly1 += 0.5; }
    const double padx = 0.04 * (lx1 - lx0), pady = 0.04 * (ly1 - ly0);
    lx0 -= padx; lx1 += padx; ly0 -= pady; ly1 += pady;

    const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 55;
    auto X = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (W - ml - mr); };
    auto Y = [&](double ly) { return H - mb - (ly - ly0) / (ly1 - ly0) * (H - mt - mb); };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + xml_escape(title) + "</text>\n";

    // Decade grid lines and tick labels.
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        std::string x = fmt_coord(X(e));
        svg += "<line x1=\"" + x + "\" y1=\"" + fmt_coord(mt) + "\" x2=\"" + x +
               "\" y2=\"" + fmt_coord(H - mb) + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + x + "\" y=\"" + fmt_coord(H - mb + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               decade_label(e) + "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        std::string y = fmt_coord(Y(e));
        svg += "<line x1=\"" + fmt_coord(ml) + "\" y1=\"" + y + "\" x2=\"" +
               fmt_coord(W - mr) + "\" y2=\"" + y + "\" stroke=\"#dddddd\"/>\n";
        svg += "<text x=\"" + fmt_coord(ml - 6) + "\" y=\"" + fmt_coord(Y(e) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               decade_label(e) + "</text>\n";
    }

    // Axes box and labels.
    svg += "<rect x=\"" + fmt_coord(ml) + "\" y=\"" + fmt_coord(mt) + "\" width=\"" +
           fmt_coord(W - ml - mr) + "\" height=\"" + fmt_coord(H - mt - mb) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + fmt_coord(ml + (W - ml - mr) / 2) + "\" y=\"" +
           fmt_coord(H - 12) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           xml_escape(x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt_coord(mt + (H - mt - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " + fmt_coord(mt + (H - mt - mb) / 2) + ")\">" +
           xml_escape(y_label) + "</text>\n";

    // Series polylines, point markers, legend.
    for (size_t si = 0; si < series.size(); ++si) {
        const char* color = kColors[si % 6];
        std::string pts;
        for (auto [x, y] : series[si].points) {
            if (!(x > 0) || !(y > 0)) continue;
            pts += fmt_coord(X(std::log10(x))) + "," + fmt_coord(Y(std::log10(y))) + " ";
        }
        if (pts.empty()) continue;
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"1.5\"/>\n";
        for (auto [x, y] : series[si].points) {
            if (!(x > 0) || !(y > 0)) continue;
            svg += "<circle cx=\"" + fmt_coord(X(std::log10(x))) + "\" cy=\"" +
                   fmt_coord(Y(std::log10(y))) + "\" r=\"2.5\" fill=\"" + color +
                   "\"/>\n";
        }
        double ly = mt + 16 + 16 * static_cast<double>(si);
        svg += "<line x1=\"" + fmt_coord(W - mr - 130) + "\" y1=\"" + fmt_coord(ly - 4) +
               "\" x2=\"" + fmt_coord(W - mr - 110) + "\" y2=\"" + fmt_coord(ly - 4) +
               "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + fmt_coord(W - mr - 105) + "\" y=\"" + fmt_coord(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" +
               xml_escape(series[si].label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace nearcurve
