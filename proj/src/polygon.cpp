#include "nstrat/polygon.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace nstrat {

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

}  // namespace

NewtonPolygon::NewtonPolygon(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.empty()) throw std::invalid_argument("NewtonPolygon: empty vertex list");
    if (vertices_.front().first != 0 || vertices_.front().second != 0)
        throw std::invalid_argument("NewtonPolygon: first vertex must be (0, 0)");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (vertices_[i].first <= vertices_[i - 1].first)
            throw std::invalid_argument("NewtonPolygon: abscissas must strictly increase");
    }
    for (std::size_t i = 2; i < vertices_.size(); ++i) {
        Rational s1 = (vertices_[i - 1].second - vertices_[i - 2].second) /
                      Rational(vertices_[i - 1].first - vertices_[i - 2].first);
        Rational s2 = (vertices_[i].second - vertices_[i - 1].second) /
                      Rational(vertices_[i].first - vertices_[i - 1].first);
        if (!(s1 < s2))
            throw std::invalid_argument("NewtonPolygon: vertex list is not strictly lower-convex");
    }
}

std::vector<std::pair<Rational, long long>> NewtonPolygon::slopes() const {
    std::vector<std::pair<Rational, long long>> out;
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        long long len = vertices_[i].first - vertices_[i - 1].first;
        Rational s = (vertices_[i].second - vertices_[i - 1].second) / Rational(len);
        out.emplace_back(s, len);
    }
    return out;
}

Rational NewtonPolygon::value_at(long long x) const {
    if (x < vertices_.front().first || x > vertices_.back().first)
        throw std::invalid_argument("NewtonPolygon: abscissa outside range");
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        if (x > vertices_[i].first) continue;
        const auto& [x0, y0] = vertices_[i - 1];
        const auto& [x1, y1] = vertices_[i];
        return y0 + (y1 - y0) * Rational(x - x0) / Rational(x1 - x0);
    }
    return vertices_.back().second;
}

std::string NewtonPolygon::to_tsv() const {
    std::ostringstream os;
    for (const auto& [x, y] : vertices_) os << x << "\t" << rational_str(y) << "\n";
    return os.str();
}

NewtonPolygon lower_convex_hull(const std::vector<PolygonPoint>& points) {
    std::vector<PolygonPoint> pts = points;
    std::sort(pts.begin(), pts.end(), [](const PolygonPoint& a, const PolygonPoint& b) { return a.x < b.x; });
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x == pts[i - 1].x)
            throw std::invalid_argument("lower_convex_hull: duplicate abscissa");
    if (pts.empty() || pts.front().x != 0 || !pts.front().y || *pts.front().y != 0)
        throw std::invalid_argument("lower_convex_hull: points must include (0, 0)");
    if (!pts.back().y)
        throw std::domain_error("lower_convex_hull: terminal ordinate is infinite (degenerate polygon)");

    std::vector<NewtonPolygon::Vertex> hull;
    for (const PolygonPoint& pt : pts) {
        if (!pt.y) continue;
        NewtonPolygon::Vertex v{pt.x, *pt.y};
        // Keep only strictly increasing slopes; collinear interior points are
        // absorbed into the segment.
        while (hull.size() >= 2) {
            const auto& [x1, y1] = hull[hull.size() - 2];
            const auto& [x2, y2] = hull[hull.size() - 1];
            // (y2-y1)/(x2-x1) >= (v.y-y1)/(v.x-x1), cross-multiplied (positive widths).
            if ((y2 - y1) * Rational(v.first - x1) >= (v.second - y1) * Rational(x2 - x1))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(std::move(v));
    }
    return NewtonPolygon(std::move(hull));
}

NewtonPolygon hodge_polygon(long long d) {
    if (d < 2) throw std::invalid_argument("hodge_polygon: d must be >= 2");
    std::vector<PolygonPoint> pts;
    for (long long n = 0; n <= d - 1; ++n)
        pts.push_back({n, Rational(n * (n + 1)) / Rational(2 * d)});
    return lower_convex_hull(pts);
}

NewtonPolygon generic_polygon(const StratumParams& params) {
    if (!params.tier_theorem())
        throw std::domain_error("generic_polygon: requires p >= 3d");
    std::vector<PolygonPoint> pts;
    for (int n = 0; n <= params.d() - 1; ++n)
        pts.push_back({n, Rational(y_n(params, n)) / Rational(params.p() - 1)});
    return lower_convex_hull(pts);
}

bool lies_above(const NewtonPolygon& a, const NewtonPolygon& b) {
    if (a.x_max() != b.x_max())
        throw std::invalid_argument("lies_above: polygons span different ranges");
    for (long long x = 0; x <= a.x_max(); ++x)
        if (a.value_at(x) < b.value_at(x)) return false;
    return true;
}

bool is_symmetric(const NewtonPolygon& a) {
    std::map<Rational, long long> length_by_slope;
    for (const auto& [s, len] : a.slopes()) length_by_slope[s] += len;
    for (const auto& [s, len] : length_by_slope) {
        auto it = length_by_slope.find(Rational(1) - s);
        if (it == length_by_slope.end() || it->second != len) return false;
    }
    return true;
}

}  // namespace nstrat
