#pragma once

#include "qgeo/mesh.h"
#include "qgeo/surface_point.h"

#include <utility>

namespace qgeo {

// A tangent direction. Away from vertices it is a unit vector in a face
// chart. At a vertex it is the cone coordinate: the angle in [0, coneAngle)
// measured counterclockwise from the reference ray of the vertex fan (the
// wedge-start ray of the lowest-id incident face).
struct Direction {
  bool atVertex = false;
  int vertex = -1;
  double angle = 0;
  int face = -1;
  Vec2 vec;

  static Direction atVertexAngle(int v, double angle) { return {true, v, angle, -1, {}}; }
  static Direction inFace(int f, Vec2 unit) { return {false, -1, 0, f, unit}; }
};

// Cone coordinate at v of a chart direction anchored in an incident face.
double vertexDirectionOf(const IntrinsicMesh& mesh, int v, int face, Vec2 chartDir);

// Resolve a cone coordinate to (face, chart direction). The angle is wrapped
// into [0, coneAngle).
std::pair<int, Vec2> resolveVertexDirection(const IntrinsicMesh& mesh, int v, double angle);

// Direction from vertex v along edge e (which must be incident), as a cone
// coordinate.
double vertexDirectionAlongEdge(const IntrinsicMesh& mesh, int v, int e);

// Side angles of a curve passing through a vertex: inDir points back along
// the incoming branch, outDir along the outgoing branch. Returns
// (left, right) with left + right = coneAngle; right is the angle swept
// counterclockwise from inDir to outDir.
std::pair<double, double> sideAnglesAtVertex(const IntrinsicMesh& mesh, const Direction& inDir,
                                             const Direction& outDir);

} // namespace qgeo
