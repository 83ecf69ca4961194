#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nstrat/common.hpp"
#include "nstrat/strata.hpp"

namespace nstrat {

/// One input point for a hull: integer abscissa and an exact rational
/// ordinate, where an empty ordinate means +infinity (the convention for a
/// vanishing coefficient).
struct PolygonPoint {
    long long x = 0;
    std::optional<Rational> y;
};

/// Lower-convex polygon with exact rational ordinates. Canonical form: only
/// genuine hull vertices are stored (consecutive slopes strictly increase)
/// and the first vertex is (0, 0).
class NewtonPolygon {
public:
    using Vertex = std::pair<long long, Rational>;

    explicit NewtonPolygon(std::vector<Vertex> vertices);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    long long x_max() const { return vertices_.back().first; }

    /// Segments as (slope, horizontal length) pairs, in order.
    std::vector<std::pair<Rational, long long>> slopes() const;

    /// Ordinate of the polygon at integer x inside its range.
    Rational value_at(long long x) const;

    bool operator==(const NewtonPolygon& o) const { return vertices_ == o.vertices_; }
    bool operator!=(const NewtonPolygon& o) const { return !(*this == o); }

    /// One `x<TAB>num/den` line per vertex.
    std::string to_tsv() const;

private:
    std::vector<Vertex> vertices_;
};

/// Lower convex hull of points with distinct integer abscissas. The set must
/// contain (0, 0); +infinity ordinates drop out of the hull, except that an
/// infinite terminal ordinate is an error (degenerate polygon), reported via
/// std::domain_error.
NewtonPolygon lower_convex_hull(const std::vector<PolygonPoint>& points);

/// HP(d): vertices (n, n(n+1)/(2d)) for 0 <= n <= d-1.
NewtonPolygon hodge_polygon(long long d);

/// GNP(d, p): lower convex hull of (n, Y_n/(p-1)); requires p >= 3d.
NewtonPolygon generic_polygon(const StratumParams& params);

/// True when a's ordinate is >= b's at every integer abscissa of the shared
/// range; both polygons must span the same range.
bool lies_above(const NewtonPolygon& a, const NewtonPolygon& b);

/// True when for every slope s of total length l there is slope 1-s of total
/// length l.
bool is_symmetric(const NewtonPolygon& a);

}  // namespace nstrat
