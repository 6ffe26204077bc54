#pragma once

#include "qgeo/numerics.h"

#include <array>
#include <vector>

namespace qgeo::testing {

// Triangulated convex hull of a 3D point set in general position, faces
// oriented outward (counterclockwise seen from outside). Incremental
// construction; deterministic for a fixed input order.
std::vector<std::array<int, 3>> convexHull(const std::vector<Vec3>& points);

} // namespace qgeo::testing
