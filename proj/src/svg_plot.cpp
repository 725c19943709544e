/*
 Copyright 2026 The pogo-codesign Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "pogo/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pogo/csv.hpp"
#include "pogo/errors.hpp"

namespace pogo {

namespace {

constexpr double kW = 640, kH = 400;
constexpr double kLeft = 80, kRight = 20, kTop = 40, kBottom = 50;

// fixed-width text keeps the SVG bytes stable across runs
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axes {
    double x0, x1, y0, y1;
    double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kW - kLeft - kRight); }
    double py(double y) const { return kH - kBottom - (y - y0) / (y1 - y0) * (kH - kTop - kBottom); }
};

void frame(std::ostringstream& os, const Axes& ax, const std::string& title, const std::string& xl,
           const std::string& yl) {
    os << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kW - kLeft - kRight)
       << "\" height=\"" << num(kH - kTop - kBottom) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = ax.x0 + (ax.x1 - ax.x0) * i / 4.0;
        const double yv = ax.y0 + (ax.y1 - ax.y0) * i / 4.0;
        os << "<text x=\"" << num(ax.px(xv)) << "\" y=\"" << num(kH - kBottom + 16)
           << "\" font-size=\"11\" text-anchor=\"middle\">" << tick(xv) << "</text>\n";
        os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(ax.py(yv) + 4)
           << "\" font-size=\"11\" text-anchor=\"end\">" << tick(yv) << "</text>\n";
    }
    os << "<text x=\"" << num(kW / 2) << "\" y=\"" << num(kTop - 14)
       << "\" font-size=\"14\" text-anchor=\"middle\">" << escape(title) << "</text>\n";
    os << "<text x=\"" << num(kW / 2) << "\" y=\"" << num(kH - 12)
       << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
    os << "<text x=\"16\" y=\"" << num(kH / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
       << "transform=\"rotate(-90 16 " << num(kH / 2) << ")\">" << escape(yl) << "</text>\n";
}

std::string header(double w, double h) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
       << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os.str();
}

// viridis-ish ramp, five stops
std::string color(double t) {
    static const double stops[5][3] = {
        {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 4.0;
    const int i = std::min(3, static_cast<int>(t));
    const double f = t - i;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                  static_cast<int>(std::lround(stops[i][0] + f * (stops[i + 1][0] - stops[i][0]))),
                  static_cast<int>(std::lround(stops[i][1] + f * (stops[i + 1][1] - stops[i][1]))),
                  static_cast<int>(std::lround(stops[i][2] + f * (stops[i + 1][2] - stops[i][2]))));
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PogoError("cannot write " + path.string());
    out << text;
}

}  // namespace

std::string band_plot_svg(const BandSeries& s) {
    if (s.x.empty() || s.x.size() != s.mean.size() || s.x.size() != s.std.size())
        throw PogoError("band plot needs equally long, non-empty series");
    double lo = s.mean[0] - s.std[0], hi = s.mean[0] + s.std[0];
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        lo = std::min(lo, s.mean[i] - s.std[i]);
        hi = std::max(hi, s.mean[i] + s.std[i]);
    }
    if (!(hi > lo)) {
        const double pad = std::abs(hi) > 0 ? 0.05 * std::abs(hi) : 1.0;
        lo -= pad;
        hi += pad;
    }
    const double x1 = s.x.size() > 1 ? s.x.back() : s.x.front() + 1.0;
    const Axes ax{s.x.front(), x1, lo, hi};

    std::ostringstream os;
    os << header(kW, kH);
    os << "<path fill=\"#1f77b4\" fill-opacity=\"0.25\" stroke=\"none\" d=\"M";
    for (std::size_t i = 0; i < s.x.size(); ++i)
        os << (i ? " L" : "") << num(ax.px(s.x[i])) << ',' << num(ax.py(s.mean[i] + s.std[i]));
    for (std::size_t i = s.x.size(); i-- > 0;)
        os << " L" << num(ax.px(s.x[i])) << ',' << num(ax.py(s.mean[i] - s.std[i]));
    os << " Z\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.2\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
        os << (i ? " " : "") << num(ax.px(s.x[i])) << ',' << num(ax.py(s.mean[i]));
    os << "\"/>\n";
    frame(os, ax, s.title, "episode", s.y_label);
    os << "</svg>\n";
    return os.str();
}

std::string surface_heatmap_svg(const PerformanceSurface& surface) {
    const auto na = surface.alphas.size(), nz = surface.zetas.size();
    if (na == 0 || nz == 0) throw PogoError("empty surface");
    const double hmin = surface.heights.minCoeff(), hmax = surface.heights.maxCoeff();
    const double span = hmax > hmin ? hmax - hmin : 1.0;
    const Axes ax{surface.alphas.front(), surface.alphas.back() > surface.alphas.front() ? surface.alphas.back() : surface.alphas.front() + 1.0,
                  surface.zetas.front(), surface.zetas.back() > surface.zetas.front() ? surface.zetas.back() : surface.zetas.front() + 1.0};
    const double cw = (kW - kLeft - kRight) / static_cast<double>(na);
    const double ch = (kH - kTop - kBottom) / static_cast<double>(nz);

    std::ostringstream os;
    os << header(kW + 70, kH);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nz; ++j)
            os << "<rect x=\"" << num(kLeft + i * cw) << "\" y=\"" << num(kH - kBottom - (j + 1) * ch)
               << "\" width=\"" << num(cw + 0.3) << "\" height=\"" << num(ch + 0.3) << "\" fill=\""
               << color((surface.heights(i, j) - hmin) / span) << "\"/>\n";
    const DesignPoint best = argmax_design(surface);
    os << "<circle cx=\"" << num(ax.px(best.alpha)) << "\" cy=\"" << num(ax.py(best.zeta))
       << "\" r=\"5\" fill=\"none\" stroke=\"red\" stroke-width=\"2\"/>\n";
    // color bar
    for (int k = 0; k < 50; ++k)
        os << "<rect x=\"" << num(kW + 10) << "\" y=\"" << num(kH - kBottom - (k + 1) * (kH - kTop - kBottom) / 50.0)
           << "\" width=\"14\" height=\"" << num((kH - kTop - kBottom) / 50.0 + 0.3) << "\" fill=\""
           << color(k / 49.0) << "\"/>\n";
    os << "<text x=\"" << num(kW + 28) << "\" y=\"" << num(kTop + 4) << "\" font-size=\"10\">"
       << tick(hmax) << "</text>\n";
    os << "<text x=\"" << num(kW + 28) << "\" y=\"" << num(kH - kBottom) << "\" font-size=\"10\">"
       << tick(hmin) << "</text>\n";
    frame(os, ax, "Apex height [m], " + surface.space + " design space", "spring constant [N/m]",
          "damping ratio");
    os << "</svg>\n";
    return os.str();
}

void render_training_plots(const std::filesystem::path& aggregate_csv,
                           const std::filesystem::path& plots_dir) {
    std::ifstream in(aggregate_csv);
    if (!in) throw PogoError("cannot open " + aggregate_csv.string());
    std::string line;
    std::getline(in, line);  // metadata
    std::getline(in, line);
    const auto cols = split_csv_line(line);
    if (cols.size() != 9 || cols[0] != "episode")
        throw PogoError(aggregate_csv.string() + ": unexpected columns");
    std::vector<std::vector<double>> data(9);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 9) throw PogoError(aggregate_csv.string() + ": malformed row");
        for (int k = 0; k < 9; ++k) data[k].push_back(std::stod(f[k]));
    }
    std::filesystem::create_directories(plots_dir);
    struct Spec {
        const char* file;
        const char* title;
        const char* label;
        int col;
    };
    const Spec specs[] = {{"apex.svg", "Height reached during training", "apex height [m]", 1},
                          {"reward.svg", "Reward during training", "reward", 3},
                          {"alpha.svg", "Spring constant selected during training", "alpha [N/m]", 5},
                          {"zeta.svg", "Damping ratio selected during training", "zeta", 7}};
    for (const auto& sp : specs) {
        BandSeries s{sp.title, sp.label, data[0], data[sp.col], data[sp.col + 1]};
        write_text(plots_dir / sp.file, band_plot_svg(s));
    }
}

void render_surface_plot(const std::filesystem::path& surface_csv,
                         const std::filesystem::path& out_svg) {
    std::ifstream in(surface_csv);
    if (!in) throw PogoError("cannot open " + surface_csv.string());
    const PerformanceSurface s = read_surface_csv(in);
    if (out_svg.has_parent_path()) std::filesystem::create_directories(out_svg.parent_path());
    write_text(out_svg, surface_heatmap_svg(s));
}

}  // namespace pogo
