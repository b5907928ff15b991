#include "fountain/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fountain {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    bool log = true;
    double lo = 0.0;
    double hi = 1.0;

    double map(double v) const { return log ? std::log10(v) : v; }
    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
};

Axis make_axis(bool log, const std::vector<double>& values) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!a.usable(v)) continue;
        lo = std::min(lo, a.map(v));
        hi = std::max(hi, a.map(v));
    }
    if (!std::isfinite(lo)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    a.lo = lo - pad;
    a.hi = hi + pad;
    return a;
}

std::string tick_label(const Axis& a, double t) {
    std::ostringstream s;
    if (a.log) {
        s << "1e" << static_cast<int>(std::lround(t));
    } else {
        s.precision(3);
        s << t;
    }
    return s.str();
}

std::vector<double> ticks(const Axis& a) {
    std::vector<double> t;
    if (a.log) {
        const int lo = static_cast<int>(std::ceil(a.lo));
        const int hi = static_cast<int>(std::floor(a.hi));
        const int step = std::max(1, (hi - lo) / 8 + 1);
        for (int e = lo; e <= hi; e += step) t.push_back(e);
        if (t.empty()) t.push_back(0.5 * (a.lo + a.hi));
    } else {
        for (int i = 0; i <= 4; ++i) t.push_back(a.lo + (a.hi - a.lo) * i / 4.0);
    }
    return t;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
    std::vector<double> xs, ys;
    for (const auto& s : spec.series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Axis ax = make_axis(spec.log_x, xs);
    const Axis ay = make_axis(spec.log_y, ys);
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * pw; };
    auto py = [&](double v) { return kTop + (ay.hi - ay.map(v)) / (ay.hi - ay.lo) * ph; };

    std::ostringstream o;
    o.precision(6);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(spec.title)
      << "</text>\n";
    o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (double t : ticks(ax)) {
        const double x = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
        o << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\"" << kTop + ph
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << x << "\" y=\"" << kTop + ph + 16 << "\" text-anchor=\"middle\">" << tick_label(ax, t)
          << "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = kTop + (ay.hi - t) / (ay.hi - ay.lo) * ph;
        o << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + pw << "\" y2=\"" << y
          << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << kLeft - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick_label(ay, t)
          << "</text>\n";
    }
    o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 18 << "\" text-anchor=\"middle\">"
      << escape(spec.xlabel) << "</text>\n";
    o << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << kTop + ph / 2 << ")\">" << escape(spec.ylabel) << "</text>\n";

    for (std::size_t s = 0; s < spec.series.size(); ++s) {
        const auto& series = spec.series[s];
        const char* colour = kColours[s % std::size(kColours)];
        std::ostringstream pts;
        pts.precision(6);
        for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
            if (!ax.usable(series.x[i]) || !ay.usable(series.y[i])) continue;
            pts << px(series.x[i]) << ',' << py(series.y[i]) << ' ';
        }
        o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
          << (series.markers ? "" : " stroke-dasharray=\"6 4\"") << " points=\"" << pts.str() << "\"/>\n";
        if (series.markers) {
            for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
                if (!ax.usable(series.x[i]) || !ay.usable(series.y[i])) continue;
                o << "<circle cx=\"" << px(series.x[i]) << "\" cy=\"" << py(series.y[i]) << "\" r=\"3\" fill=\""
                  << colour << "\"/>\n";
            }
        }
        const double ly = kTop + 14 + 18.0 * s;
        o << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kLeft + pw + 30 << "\" y2=\""
          << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"1.5\""
          << (series.markers ? "" : " stroke-dasharray=\"6 4\"") << "/>\n";
        o << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly << "\">" << escape(series.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void write_svg(const PlotSpec& spec, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << render_svg(spec);
}

}  // namespace fountain
