#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "kuwall/walls.hpp"

namespace kuwall {

/// The (ch1/rk, ch2/rk) picture at a fixed beta: the Delta = 0 parabola, B_i
/// points, the target, and for each wall the kernel point (0, alpha^2/2) of Z
/// with the line through it that carries every class of the target's slope.
struct ScanPlot {
    Character target;
    Rational beta;
    std::vector<Rational> walls;
    long b_min = -3;
    long b_max = 3;
};

namespace detail {

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string fmt(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

} // namespace detail

inline std::string render_scan_svg(const ScanPlot& plot)
{
    constexpr double width = 640, height = 480, margin = 40;
    const Character t = plot.target.at_frame(plot.beta);

    struct Pt {
        double x, y;
    };
    std::vector<std::pair<long, Pt>> bpts;
    for (long i = plot.b_min; i <= plot.b_max; ++i) {
        const Character b = b_char(i).at_frame(plot.beta);
        bpts.push_back({i, {(b.c1() / b.rank()).to_double(), (b.c2() / b.rank()).to_double()}});
    }
    double x0 = -0.5, x1 = 0.5, y0 = -0.1, y1 = 0.2;
    auto grow = [&](Pt p) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const auto& [i, p] : bpts) grow(p);
    const bool has_point = !t.rank().is_zero();
    Pt target{0, 0};
    if (has_point) {
        target = {(t.c1() / t.rank()).to_double(), (t.c2() / t.rank()).to_double()};
        grow(target);
    }
    for (const auto& a : plot.walls) grow({0, a.to_double() / 2});
    const double padx = (x1 - x0) * 0.08, pady = (y1 - y0) * 0.08;
    x0 -= padx;
    x1 += padx;
    y0 -= pady;
    y1 += pady;

    auto sx = [&](double x) { return margin + (x - x0) / (x1 - x0) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin); };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
       << "<title>" << detail::xml_escape("target " + t.str() + " at beta=" + plot.beta.str()) << "</title>\n"
       << "<defs><clipPath id=\"plot-area\"><rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
       << width - 2 * margin << "\" height=\"" << height - 2 * margin << "\"/></clipPath></defs>\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    os << "<g id=\"axes\" stroke=\"#999\" stroke-width=\"1\">\n"
       << "  <line x1=\"" << detail::fmt(sx(x0)) << "\" y1=\"" << detail::fmt(sy(0)) << "\" x2=\"" << detail::fmt(sx(x1))
       << "\" y2=\"" << detail::fmt(sy(0)) << "\"/>\n"
       << "  <line x1=\"" << detail::fmt(sx(0)) << "\" y1=\"" << detail::fmt(sy(y0)) << "\" x2=\"" << detail::fmt(sx(0))
       << "\" y2=\"" << detail::fmt(sy(y1)) << "\"/>\n"
       << "  <text x=\"" << detail::fmt(width - margin) << "\" y=\"" << detail::fmt(sy(0) - 4)
       << "\" font-size=\"11\" text-anchor=\"end\">ch1/rk</text>\n"
       << "  <text x=\"" << detail::fmt(sx(0) + 4) << "\" y=\"" << detail::fmt(margin - 6)
       << "\" font-size=\"11\">ch2/rk</text>\n"
       << "</g>\n";

    os << "<g id=\"parabola\" class=\"discriminant-zero\" clip-path=\"url(#plot-area)\">\n  <path d=\"";
    constexpr int steps = 200;
    for (int k = 0; k <= steps; ++k) {
        const double x = x0 + (x1 - x0) * k / steps;
        os << (k == 0 ? "M" : " L") << detail::fmt(sx(x)) << "," << detail::fmt(sy(x * x / 2));
    }
    os << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n"
       << "  <text x=\"" << detail::fmt(sx(x0) + 6) << "\" y=\"" << detail::fmt(margin + 14)
       << "\" font-size=\"11\" fill=\"#1f77b4\">Delta = 0</text>\n</g>\n";

    os << "<g id=\"walls\" clip-path=\"url(#plot-area)\">\n";
    for (const auto& a : plot.walls) {
        const Pt k{0, a.to_double() / 2};
        Pt dir = has_point ? Pt{target.x - k.x, target.y - k.y} : Pt{t.c1().to_double(), t.c2().to_double()};
        const double len = std::hypot(dir.x, dir.y);
        if (len > 0) dir = {dir.x / len, dir.y / len};
        const double span = 4 * ((x1 - x0) + (y1 - y0));
        os << "  <g class=\"wall\" data-alpha-sq=\"" << a.str() << "\">\n"
           << "    <line class=\"wall-line\" x1=\"" << detail::fmt(sx(k.x - span * dir.x)) << "\" y1=\""
           << detail::fmt(sy(k.y - span * dir.y)) << "\" x2=\"" << detail::fmt(sx(k.x + span * dir.x)) << "\" y2=\""
           << detail::fmt(sy(k.y + span * dir.y)) << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\"/>\n"
           << "    <circle class=\"kernel\" cx=\"" << detail::fmt(sx(k.x)) << "\" cy=\"" << detail::fmt(sy(k.y))
           << "\" r=\"3\" fill=\"#d62728\"/>\n"
           << "    <text x=\"" << detail::fmt(sx(k.x) + 5) << "\" y=\"" << detail::fmt(sy(k.y) - 5)
           << "\" font-size=\"10\" fill=\"#d62728\">alpha^2 = " << a.str() << "</text>\n"
           << "  </g>\n";
    }
    os << "</g>\n";

    os << "<g id=\"b-points\">\n";
    for (const auto& [i, p] : bpts) {
        os << "  <g class=\"b-point\" id=\"B" << i << "\">\n"
           << "    <circle cx=\"" << detail::fmt(sx(p.x)) << "\" cy=\"" << detail::fmt(sy(p.y))
           << "\" r=\"3.5\" fill=\"black\"/>\n"
           << "    <text x=\"" << detail::fmt(sx(p.x) + 5) << "\" y=\"" << detail::fmt(sy(p.y) + 12)
           << "\" font-size=\"11\">B" << i << "</text>\n"
           << "  </g>\n";
    }
    os << "</g>\n";

    os << "<g id=\"target\">\n";
    if (has_point) {
        os << "  <circle cx=\"" << detail::fmt(sx(target.x)) << "\" cy=\"" << detail::fmt(sy(target.y))
           << "\" r=\"4\" fill=\"#2ca02c\"/>\n"
           << "  <text x=\"" << detail::fmt(sx(target.x) + 6) << "\" y=\"" << detail::fmt(sy(target.y) - 6)
           << "\" font-size=\"11\" fill=\"#2ca02c\">" << detail::xml_escape(t.str()) << "</text>\n";
    } else {
        os << "  <text x=\"" << detail::fmt(width - margin) << "\" y=\"" << detail::fmt(height - 12)
           << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#2ca02c\">"
           << detail::xml_escape("rank 0 target " + t.str() + ": wall lines run parallel to (ch1, ch2)")
           << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

} // namespace kuwall
