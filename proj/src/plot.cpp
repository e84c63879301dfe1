// SPDX-License-Identifier: Apache-2.0
#include "rimnull/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "rimnull/errors.hpp"

namespace rimnull {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr double kDynamicRange = 70.0;

std::string fmt(double v, int digits = 2)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string caption(const CsvTable& t)
{
    const auto get = [&](const char* key) { return t.meta.count(key) ? t.meta.at(key) : std::string("?"); };
    return "rimnull " + get("rimnull") + "  " + get("kind") + "  " + get("config_hash") + "  " + get("mesh");
}

struct Curve {
    std::vector<double> x;
    std::vector<double> y;
};

Curve read_curve(const CsvTable& t, std::string_view column)
{
    Curve c;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        c.x.push_back(t.number(i, "theta_z_deg"));
        c.y.push_back(t.number(i, column));
    }
    return c;
}

}  // namespace

std::string pattern_svg(const CsvTable& pattern, const CsvTable* reference)
{
    if (pattern.rows.empty()) {
        throw ConfigError("pattern plot: no rows");
    }
    const Curve co = read_curve(pattern, "D_co_dB");
    const Curve cr = read_curve(pattern, "D_cr_dB");
    Curve ref;
    if (reference != nullptr) {
        ref = read_curve(*reference, "D_co_dB");
    }

    double top = -std::numeric_limits<double>::infinity();
    for (const Curve* c : {&co, &cr, static_cast<const Curve*>(&ref)}) {
        for (double v : c->y) {
            if (std::isfinite(v)) {
                top = std::max(top, v);
            }
        }
    }
    if (!std::isfinite(top)) {
        top = 0.0;
    }
    const double y_max = std::ceil(top / 10.0) * 10.0;
    const double y_min = y_max - kDynamicRange;
    double x_min = co.x.front();
    double x_max = co.x.front();
    for (double v : co.x) {
        x_min = std::min(x_min, v);
        x_max = std::max(x_max, v);
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    const auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
    const auto sy = [&](double y) {
        const double c = std::isfinite(y) ? std::clamp(y, y_min, y_max) : y_min;
        return kTop + (y_max - c) / (y_max - y_min) * ph;
    };
    const auto polyline = [&](const Curve& c, const std::string& style) {
        std::string pts;
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            pts += fmt(sx(c.x[i])) + "," + fmt(sy(c.y[i])) + " ";
        }
        return "<polyline fill=\"none\" " + style + " points=\"" + pts + "\"/>\n";
    };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft << "\" y=\"20\" font-size=\"11\">" << escape_xml(caption(pattern)) << "</text>\n";

    for (double y = y_min; y <= y_max + 1e-9; y += 10.0) {
        s << "<line x1=\"" << fmt(kLeft) << "\" x2=\"" << fmt(kLeft + pw) << "\" y1=\"" << fmt(sy(y)) << "\" y2=\""
          << fmt(sy(y)) << "\" stroke=\"#ddd\"/>\n"
          << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(sy(y) + 4) << "\" text-anchor=\"end\">" << fmt(y, 0)
          << "</text>\n";
    }
    const double span = x_max - x_min;
    const double tick = span > 20 ? 5.0 : span > 8 ? 2.0 : span > 3 ? 1.0 : 0.5;
    for (double x = std::ceil(x_min / tick) * tick; x <= x_max + 1e-9; x += tick) {
        s << "<line x1=\"" << fmt(sx(x)) << "\" x2=\"" << fmt(sx(x)) << "\" y1=\"" << fmt(kTop) << "\" y2=\""
          << fmt(kTop + ph) << "\" stroke=\"#eee\"/>\n"
          << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">"
          << fmt(x, tick < 1 ? 1 : 0) << "</text>\n";
    }
    s << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\">theta_z (deg)</text>\n"
      << "<text transform=\"translate(18," << fmt(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">directivity (dBi)</text>\n";

    if (reference != nullptr) {
        s << polyline(ref, "stroke=\"#999\" stroke-width=\"1\"");
    }
    s << polyline(co, "stroke=\"#1f4e9c\" stroke-width=\"1.2\"")
      << polyline(cr, "stroke=\"#c0392b\" stroke-width=\"1\" stroke-dasharray=\"4 3\"");

    double ly = kTop + 16;
    const auto legend = [&](const std::string& label, const std::string& style) {
        s << "<line x1=\"" << fmt(kLeft + pw - 150) << "\" x2=\"" << fmt(kLeft + pw - 120) << "\" y1=\"" << fmt(ly)
          << "\" y2=\"" << fmt(ly) << "\" " << style << "/>\n"
          << "<text x=\"" << fmt(kLeft + pw - 112) << "\" y=\"" << fmt(ly + 4) << "\">" << label << "</text>\n";
        ly += 16;
    };
    legend("co-pol", "stroke=\"#1f4e9c\" stroke-width=\"1.2\"");
    legend("cross-pol", "stroke=\"#c0392b\" stroke-dasharray=\"4 3\"");
    if (reference != nullptr) {
        legend("reference co-pol", "stroke=\"#999\"");
    }
    s << "</svg>\n";
    return s.str();
}

std::string state_map_svg(const CsvTable& switch_map)
{
    constexpr double size = 520.0;
    constexpr double cx = size / 2;
    constexpr double cy = size / 2 + 10;
    constexpr double r_inner = 90.0;
    constexpr double r_outer = 230.0;

    std::map<int, int> per_ring;
    int max_ring = 0;
    for (std::size_t i = 0; i < switch_map.rows.size(); ++i) {
        const int ring = static_cast<int>(switch_map.number(i, "ring"));
        ++per_ring[ring];
        max_ring = std::max(max_ring, ring);
    }
    const double width = (r_outer - r_inner) / (max_ring + 1);

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size + 20
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"10\" y=\"18\" font-size=\"10\">" << escape_xml(caption(switch_map)) << "</text>\n";

    const auto point = [&](double r, double phi) {
        return fmt(cx + r * std::cos(phi)) + "," + fmt(cy - r * std::sin(phi));
    };
    int n_on = 0;
    for (std::size_t i = 0; i < switch_map.rows.size(); ++i) {
        const int ring = static_cast<int>(switch_map.number(i, "ring"));
        const double phi = deg_to_rad(switch_map.number(i, "phi_p_deg"));
        const double half = constants::pi / per_ring[ring];
        const double r0 = r_inner + ring * width;
        const double r1 = r0 + width;
        const bool on = parse_switch_state(switch_map.text(i, "state")) == SwitchState::on;
        n_on += on ? 1 : 0;
        const int large = 2 * half > constants::pi ? 1 : 0;
        s << "<path d=\"M" << point(r0, phi - half) << " L" << point(r1, phi - half) << " A" << fmt(r1) << ","
          << fmt(r1) << " 0 " << large << " 0 " << point(r1, phi + half) << " L" << point(r0, phi + half) << " A"
          << fmt(r0) << "," << fmt(r0) << " 0 " << large << " 1 " << point(r0, phi - half) << " Z\" fill=\""
          << (on ? "#222" : "#f2f2f2") << "\" stroke=\"#888\" stroke-width=\"0.2\"/>\n";
    }
    s << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(cx + r_inner * 0.8) << "\" y2=\""
      << fmt(cy) << "\" stroke=\"black\"/><text x=\"" << fmt(cx + r_inner * 0.8 + 4) << "\" y=\"" << fmt(cy + 4)
      << "\">x</text>\n"
      << "<line x1=\"" << fmt(cx) << "\" y1=\"" << fmt(cy) << "\" x2=\"" << fmt(cx) << "\" y2=\""
      << fmt(cy - r_inner * 0.8) << "\" stroke=\"black\"/><text x=\"" << fmt(cx - 4) << "\" y=\""
      << fmt(cy - r_inner * 0.8 - 6) << "\">y</text>\n"
      << "<text x=\"10\" y=\"" << size + 12 << "\">" << switch_map.rows.size() << " cells in " << per_ring.size()
      << " rings; " << n_on << " on (dark), " << switch_map.rows.size() - n_on << " off (light)</text>\n"
      << "</svg>\n";
    return s.str();
}

void write_text_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << contents;
    if (!out) {
        throw std::runtime_error("write failed for '" + path + "'");
    }
}

}  // namespace rimnull
