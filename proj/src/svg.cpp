#include "toroton/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace toroton {

namespace {

constexpr int kW = 720, kH = 480;
constexpr int kMargin = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

void check_finite(const std::vector<Series>& series) {
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i)
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                throw std::invalid_argument("render_svg: non-finite data in series " + s.name);
}

}  // namespace

void render_svg_series(const std::vector<Series>& series, const std::string& title,
                       const std::string& path) {
    check_finite(series);
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    bool any = false;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg: series length mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            any = true;
            x_lo = std::min(x_lo, s.x[i]);
            x_hi = std::max(x_hi, s.x[i]);
            y_lo = std::min(y_lo, s.y[i]);
            y_hi = std::max(y_hi, s.y[i]);
        }
    }
    if (!any) {
        x_lo = 0.0;
        x_hi = 1.0;
        y_lo = 0.0;
        y_hi = 1.0;
    }
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;

    auto px = [&](double x) {
        return kMargin + (x - x_lo) / (x_hi - x_lo) * (kW - 2 * kMargin);
    };
    auto py = [&](double y) {
        return kH - kMargin - (y - y_lo) / (y_hi - y_lo) * (kH - 2 * kMargin);
    };

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("render_svg: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    // axes
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
        << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << kH - kMargin + 18 << "\" font-size=\"11\">"
        << num(x_lo) << "</text>\n";
    out << "<text x=\"" << kW - kMargin << "\" y=\"" << kH - kMargin + 18
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(x_hi) << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kH - kMargin
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(y_lo) << "</text>\n";
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << kMargin + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << num(y_hi) << "</text>\n";

    std::size_t ci = 0;
    for (const auto& s : series) {
        if (s.x.empty()) continue;
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[ci % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            out << num(px(s.x[i])) << "," << num(py(s.y[i])) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << kW - kMargin << "\" y=\"" << kMargin + 16 * (ci + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << kPalette[ci % 6] << "\">"
            << s.name << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
}

void render_svg_heatmap(const ScalarField& field, const std::string& title,
                        const std::string& path) {
    for (const auto& a : field.amp)
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument("render_svg_heatmap: non-finite field");

    const std::size_t cells = 256;
    const std::size_t bx = std::max<std::size_t>(1, field.nx / cells);
    const std::size_t by = std::max<std::size_t>(1, field.ny / cells);
    const std::size_t mx = field.nx / bx, my = field.ny / by;

    std::vector<double> img(mx * my, 0.0);
    double peak = 0.0;
    for (std::size_t iy = 0; iy < my * by; ++iy)
        for (std::size_t ix = 0; ix < mx * bx; ++ix) {
            const double v = std::norm(field.at(ix, iy));
            img[(iy / by) * mx + ix / bx] += v;
        }
    for (double v : img) peak = std::max(peak, v);

    const double cell_w = static_cast<double>(kW - 2 * kMargin) / static_cast<double>(mx);
    const double cell_h = static_cast<double>(kH - 2 * kMargin) / static_cast<double>(my);

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("render_svg_heatmap: cannot open " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    for (std::size_t iy = 0; iy < my; ++iy)
        for (std::size_t ix = 0; ix < mx; ++ix) {
            const double t = peak > 0.0 ? img[iy * mx + ix] / peak : 0.0;
            const int g = 255 - static_cast<int>(std::lround(t * 255.0));
            char color[8];
            std::snprintf(color, sizeof color, "#%02x%02x%02x", g, g, g);
            out << "<rect x=\"" << num(kMargin + ix * cell_w) << "\" y=\""
                << num(kH - kMargin - (iy + 1) * cell_h) << "\" width=\"" << num(cell_w + 0.5)
                << "\" height=\"" << num(cell_h + 0.5) << "\" fill=\"" << color << "\"/>\n";
        }
    out << "</svg>\n";
}

}  // namespace toroton
