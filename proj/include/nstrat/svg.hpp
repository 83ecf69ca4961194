#pragma once

#include <string>
#include <vector>

#include "nstrat/polygon.hpp"

namespace nstrat {

/// Static SVG overlay of several polygons (no interactivity). Rationals are
/// converted to double for plotting only.
std::string render_polygons_svg(const std::vector<std::pair<std::string, NewtonPolygon>>& polygons,
                                int width = 640, int height = 480);

}  // namespace nstrat
