#pragma once

#include "qgeo/mesh.h"

namespace qgeo::testing {

// Unit regular tetrahedron, built intrinsically: 4 equilateral faces.
IntrinsicMesh tetrahedron();

// Two unit equilateral triangles glued along all three sides.
IntrinsicMesh doubledTriangle();

// Unit cube, each square split by a diagonal; the diagonals all touch
// corners 0 and 7, giving max degree 6.
IntrinsicMesh triangulatedCube();

// Regular icosahedron with unit edges.
IntrinsicMesh icosahedron();

// Two unit squares glued rim-to-rim, each split by a diagonal. The diagonals
// form a doubled vertex pair, so loading requires one subdivision.
IntrinsicMesh pillow();

// Closed fan of 8 unit equilateral triangles around a concave center
// (cone angle 8*pi/3), capped by 8 isoceles triangles to an apex.
IntrinsicMesh concaveSpindle();

// Convex hull of seeded random points on the unit sphere.
IntrinsicMesh randomConvexHull(unsigned seed, int nPoints);

} // namespace qgeo::testing
