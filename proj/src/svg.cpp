#include "nstrat/svg.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace nstrat {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

double to_double(const Rational& r) {
    return static_cast<double>(numerator(r)) / static_cast<double>(denominator(r));
}

}  // namespace

std::string render_polygons_svg(const std::vector<std::pair<std::string, NewtonPolygon>>& polygons,
                                int width, int height) {
    if (polygons.empty()) throw std::invalid_argument("render_polygons_svg: nothing to draw");
    double xmax = 1, ymax = 1;
    for (const auto& [label, poly] : polygons) {
        xmax = std::max(xmax, static_cast<double>(poly.x_max()));
        ymax = std::max(ymax, to_double(poly.vertices().back().second));
    }
    const double margin = 48;
    const double sx = (width - 2 * margin) / xmax;
    const double sy = (height - 2 * margin) / ymax;
    auto px = [&](double x) { return margin + x * sx; };
    auto py = [&](double y) { return height - margin - y * sy; };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and integer grid
    os << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (long long gx = 0; gx <= static_cast<long long>(xmax); ++gx)
        os << "<line x1=\"" << px(gx) << "\" y1=\"" << py(0) << "\" x2=\"" << px(gx) << "\" y2=\""
           << py(ymax) << "\"/>\n";
    os << "</g>\n";
    os << "<g stroke=\"black\" stroke-width=\"1.5\">\n";
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(xmax) << "\" y2=\"" << py(0)
       << "\"/>\n";
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\"" << py(ymax)
       << "\"/>\n";
    os << "</g>\n";
    for (long long gx = 0; gx <= static_cast<long long>(xmax); ++gx)
        os << "<text x=\"" << px(gx) << "\" y=\"" << py(0) + 16 << "\" font-size=\"11\" text-anchor=\"middle\">"
           << gx << "</text>\n";

    for (std::size_t k = 0; k < polygons.size(); ++k) {
        const auto& [label, poly] = polygons[k];
        const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : poly.vertices())
            os << px(static_cast<double>(x)) << "," << py(to_double(y)) << " ";
        os << "\"/>\n";
        for (const auto& [x, y] : poly.vertices())
            os << "<circle cx=\"" << px(static_cast<double>(x)) << "\" cy=\"" << py(to_double(y))
               << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << width - margin - 140 << "\" y=\"" << margin + 16 * static_cast<double>(k)
           << "\" font-size=\"12\" fill=\"" << color << "\">" << label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace nstrat
