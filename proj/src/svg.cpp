#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "monoeq/bench.hpp"

namespace monoeq {

namespace {

const char* kPalette[] = {"#1b6ca8", "#d1495b", "#66a182", "#edae49",
                          "#8d6a9f", "#2e4057", "#c97b63", "#4f9d69"};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

} // namespace

std::string render_profiles_svg(const std::vector<ProfileCurve>& curves,
                                const std::string& metric_label) {
    const double width = 720, height = 480;
    const double ml = 64, mr = 24, mt = 40, mb = 56;
    const double pw = width - ml - mr;
    const double ph = height - mt - mb;

    double tau_max = 2.0;
    for (const auto& c : curves)
        for (const auto& [tau, rho] : c.points)
            if (std::isfinite(tau)) tau_max = std::max(tau_max, tau);
    const double lmax = std::log(tau_max);

    const auto xpos = [&](double tau) {
        const double t = std::log(std::max(tau, 1.0)) / lmax;
        return ml + t * pw;
    };
    const auto ypos = [&](double rho) { return mt + (1.0 - rho) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">Performance profile (" << metric_label
        << ")</text>\n";

    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (double rho = 0.0; rho <= 1.0001; rho += 0.2) {
        const double y = ypos(rho);
        svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
            << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << y + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt(rho) << "</text>\n";
    }

    std::vector<double> xticks{1.0};
    for (double t = 2.0; t < tau_max; t *= 2.0) xticks.push_back(t);
    xticks.push_back(tau_max);
    while (xticks.size() > 14) {
        std::vector<double> thinned;
        for (std::size_t i = 0; i < xticks.size(); i += 2) thinned.push_back(xticks[i]);
        if (thinned.back() != xticks.back()) thinned.push_back(xticks.back());
        xticks = std::move(thinned);
    }
    for (double t : xticks) {
        const double x = xpos(t);
        svg << "<line x1=\"" << x << "\" y1=\"" << mt + ph << "\" x2=\"" << x << "\" y2=\""
            << mt + ph + 6 << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << fmt(t) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << "performance ratio tau (log scale)</text>\n";
    svg << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">fraction of instances</text>\n";

    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const auto& c = curves[ci];
        if (c.points.empty()) continue;
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream path;
        path << "M " << fmt(xpos(c.points[0].first)) << ' ' << fmt(ypos(c.points[0].second));
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            path << " H " << fmt(xpos(c.points[i].first));
            if (c.points[i].second != c.points[i - 1].second)
                path << " V " << fmt(ypos(c.points[i].second));
        }
        path << " H " << fmt(ml + pw);
        svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.8\"/>\n";
    }

    const double lx = ml + 12, ly = mt + 12;
    svg << "<rect x=\"" << lx - 6 << "\" y=\"" << ly - 10 << "\" width=\"170\" height=\""
        << 20 * curves.size() + 8 << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999\"/>\n";
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        const char* color = kPalette[ci % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const double y = ly + 20.0 * double(ci);
        svg << "<line x1=\"" << lx << "\" y1=\"" << y << "\" x2=\"" << lx + 28 << "\" y2=\"" << y
            << "\" stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";
        svg << "<text x=\"" << lx + 36 << "\" y=\"" << y + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << curves[ci].method
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

} // namespace monoeq
