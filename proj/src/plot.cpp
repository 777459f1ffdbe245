#include "ogtt/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "ogtt/config.hpp"
#include "ogtt/errors.hpp"

namespace ogtt {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 150.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 60.0;

const char* category_color(Category c) {
    switch (c) {
        case Category::NGT: return "#2b8cbe";
        case Category::IFG: return "#41ae76";
        case Category::IGT: return "#fe9929";
        case Category::IFG_IGT: return "#d95f0e";
        case Category::T2DM: return "#cb181d";
    }
    return "#000000";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

using DataPoint = std::array<double, 2>;  // (A, alpha)

struct Frame {
    double a_min, a_max, alpha_min, alpha_max;

    double x(double a) const { return kLeft + (a - a_min) / (a_max - a_min) * (kWidth - kLeft - kRight); }
    double y(double alpha) const {
        return kHeight - kBottom - (alpha - alpha_min) / (alpha_max - alpha_min) * (kHeight - kTop - kBottom);
    }
};

// Decision value is linear in raw coordinates: f = ga * A + galpha * alpha + g0.
struct LinearForm {
    double ga, galpha, g0;
    double at(const DataPoint& p) const { return ga * p[0] + galpha * p[1] + g0; }
};

LinearForm raw_form(const SvmModel& m) {
    const double ga = m.w[0] / m.scaling.a.scale;
    const double galpha = m.w[1] / m.scaling.alpha.scale;
    return {ga, galpha, m.b - ga * m.scaling.a.shift - galpha * m.scaling.alpha.shift};
}

// Sutherland-Hodgman clip of a convex polygon to {p : sign * (f(p) - level) <= 0}.
std::vector<DataPoint> clip(const std::vector<DataPoint>& poly, const LinearForm& f, double level, double sign) {
    std::vector<DataPoint> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const DataPoint& p = poly[i];
        const DataPoint& q = poly[(i + 1) % poly.size()];
        const double fp = sign * (f.at(p) - level);
        const double fq = sign * (f.at(q) - level);
        if (fp <= 0.0) out.push_back(p);
        if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
            const double t = fp / (fp - fq);
            out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
        }
    }
    return out;
}

// Segment of {f = level} inside the frame, if any.
std::vector<DataPoint> level_segment(const Frame& fr, const LinearForm& f, double level) {
    std::vector<DataPoint> pts;
    if (f.galpha != 0.0) {
        for (double a : {fr.a_min, fr.a_max}) {
            const double alpha = (level - f.g0 - f.ga * a) / f.galpha;
            if (alpha >= fr.alpha_min && alpha <= fr.alpha_max) pts.push_back({a, alpha});
        }
    }
    if (f.ga != 0.0) {
        for (double alpha : {fr.alpha_min, fr.alpha_max}) {
            const double a = (level - f.g0 - f.galpha * alpha) / f.ga;
            if (a > fr.a_min && a < fr.a_max) pts.push_back({a, alpha});
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 2) return {};
    return {pts.front(), pts.back()};
}

}  // namespace

std::string render_svg(const CohortReport& report) {
    // Coordinates at report precision, so a report re-read from JSON renders
    // the same bytes.
    std::vector<ReportEntry> shown_entries;
    for (const auto& e : report.entries) {
        if (!e.converged) continue;
        ReportEntry r = e;
        r.params.a = round_sig9(e.params.a);
        r.params.alpha = round_sig9(e.params.alpha);
        shown_entries.push_back(std::move(r));
    }
    std::vector<const ReportEntry*> shown;
    for (const auto& e : shown_entries) shown.push_back(&e);
    Frame fr{0.0, 1.0, 0.0, 1.0};
    if (!shown.empty()) {
        fr = {shown[0]->params.a, shown[0]->params.a, shown[0]->params.alpha, shown[0]->params.alpha};
        for (const auto* e : shown) {
            fr.a_min = std::min(fr.a_min, e->params.a);
            fr.a_max = std::max(fr.a_max, e->params.a);
            fr.alpha_min = std::min(fr.alpha_min, e->params.alpha);
            fr.alpha_max = std::max(fr.alpha_max, e->params.alpha);
        }
        const double pad_a = std::max(0.05 * (fr.a_max - fr.a_min), 1.0);
        const double pad_alpha = std::max(0.05 * (fr.alpha_max - fr.alpha_min), 1e-4);
        fr = {std::max(0.0, fr.a_min - pad_a), fr.a_max + pad_a, std::max(0.0, fr.alpha_min - pad_alpha),
              fr.alpha_max + pad_alpha};
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";
    svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
        << "\" height=\"" << num(kHeight - kTop - kBottom) << "\" fill=\"none\" stroke=\"#444444\"/>\n";

    const LinearForm f = raw_form(report.model);
    std::vector<DataPoint> strip{{fr.a_min, fr.alpha_min}, {fr.a_max, fr.alpha_min}, {fr.a_max, fr.alpha_max},
                                 {fr.a_min, fr.alpha_max}};
    strip = clip(strip, f, 1.0, 1.0);
    strip = clip(strip, f, -1.0, -1.0);
    if (strip.size() >= 3) {
        svg << "<polygon class=\"margin\" fill=\"#999999\" fill-opacity=\"0.15\" points=\"";
        for (std::size_t i = 0; i < strip.size(); ++i) {
            svg << (i ? " " : "") << num(fr.x(strip[i][0])) << ',' << num(fr.y(strip[i][1]));
        }
        svg << "\"/>\n";
    }

    for (const auto* e : shown) {
        svg << "<circle class=\"" << to_string(e->category) << "\" cx=\"" << num(fr.x(e->params.a)) << "\" cy=\""
            << num(fr.y(e->params.alpha)) << "\" r=\"2.5\" fill=\"" << category_color(e->category)
            << "\" fill-opacity=\"0.8\"><title>" << xml_escape(e->patient_id) << "</title></circle>\n";
    }

    if (const auto seg = level_segment(fr, f, 0.0); !seg.empty()) {
        svg << "<line class=\"decision\" x1=\"" << num(fr.x(seg[0][0])) << "\" y1=\"" << num(fr.y(seg[0][1]))
            << "\" x2=\"" << num(fr.x(seg[1][0])) << "\" y2=\"" << num(fr.y(seg[1][1]))
            << "\" stroke=\"#000000\" stroke-width=\"1.5\" data-a1=\"" << format_double(seg[0][0])
            << "\" data-alpha1=\"" << format_double(seg[0][1]) << "\" data-a2=\"" << format_double(seg[1][0])
            << "\" data-alpha2=\"" << format_double(seg[1][1]) << "\"/>\n";
    }
    for (double level : {-1.0, 1.0}) {
        if (const auto seg = level_segment(fr, f, level); !seg.empty()) {
            svg << "<line class=\"margin-edge\" x1=\"" << num(fr.x(seg[0][0])) << "\" y1=\"" << num(fr.y(seg[0][1]))
                << "\" x2=\"" << num(fr.x(seg[1][0])) << "\" y2=\"" << num(fr.y(seg[1][1]))
                << "\" stroke=\"#666666\" stroke-dasharray=\"4 3\"/>\n";
        }
    }

    // Axes labels and tick values at the frame corners.
    svg << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">A (mg/dl)</text>\n";
    svg << "<text x=\"20\" y=\"" << num((kTop + kHeight - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << num((kTop + kHeight - kBottom) / 2) << ")\" font-family=\"sans-serif\" font-size=\"13\">alpha (1/min)</text>\n";
    char tick[64];
    std::snprintf(tick, sizeof tick, "%.4g", fr.a_min);
    svg << "<text x=\"" << num(kLeft) << "\" y=\"" << num(kHeight - kBottom + 16) << "\" font-family=\"sans-serif\" font-size=\"11\">" << tick << "</text>\n";
    std::snprintf(tick, sizeof tick, "%.4g", fr.a_max);
    svg << "<text x=\"" << num(kWidth - kRight) << "\" y=\"" << num(kHeight - kBottom + 16) << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick << "</text>\n";
    std::snprintf(tick, sizeof tick, "%.4g", fr.alpha_min);
    svg << "<text x=\"" << num(kLeft - 4) << "\" y=\"" << num(kHeight - kBottom) << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick << "</text>\n";
    std::snprintf(tick, sizeof tick, "%.4g", fr.alpha_max);
    svg << "<text x=\"" << num(kLeft - 4) << "\" y=\"" << num(kTop + 10) << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick << "</text>\n";

    // Legend lists only categories that have points.
    double legend_y = kTop + 10;
    for (Category c : kAllCategories) {
        const bool present = std::any_of(shown.begin(), shown.end(), [&](const ReportEntry* e) { return e->category == c; });
        if (!present) continue;
        svg << "<g class=\"legend\"><circle cx=\"" << num(kWidth - kRight + 20) << "\" cy=\"" << num(legend_y)
            << "\" r=\"4\" fill=\"" << category_color(c) << "\"/><text x=\"" << num(kWidth - kRight + 30) << "\" y=\""
            << num(legend_y + 4) << "\" font-family=\"sans-serif\" font-size=\"12\">" << to_string(c) << "</text></g>\n";
        legend_y += 18;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_plot_csv(const CohortReport& report) {
    std::ostringstream out;
    out << "patient_id,A,alpha,category,predicted,distance\n";
    for (const auto& e : report.entries) {
        std::string id = e.patient_id;
        if (id.find_first_of(",\"") != std::string::npos) {
            std::string q = "\"";
            for (char ch : id) {
                if (ch == '"') q += '"';
                q += ch;
            }
            id = q + "\"";
        }
        out << id << ',' << format_double(round_sig9(e.params.a)) << ',' << format_double(round_sig9(e.params.alpha))
            << ',' << to_string(e.category) << ',';
        if (e.prediction) {
            out << (e.prediction->label == Glycemia::Normoglycemic ? "1" : "-1") << ','
                << format_double(round_sig9(e.prediction->signed_distance));
        } else {
            out << ',';
        }
        out << '\n';
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

void emit_plot(const CohortReport& report, const std::string& path, PlotFormat format) {
    write_text_file(path, format == PlotFormat::Svg ? render_svg(report) : render_plot_csv(report));
}

}  // namespace ogtt
