#pragma once

#include "qgeo/mesh.h"

#include <string>

namespace qgeo {

// A point on the surface in one of three charts. Edge points are
// parameterized along the canonical edge direction (lower vertex id to
// higher); face points carry barycentric coordinates over the face corners.
struct SurfacePoint {
  enum class Type { Vertex, Edge, Face };
  Type type = Type::Vertex;
  int id = -1;
  double t = 0;
  std::array<double, 3> bary{0, 0, 0};

  static SurfacePoint vertex(int v) { return {Type::Vertex, v, 0, {}}; }
  static SurfacePoint edge(int e, double t) { return {Type::Edge, e, t, {}}; }
  static SurfacePoint face(int f, double b0, double b1, double b2) { return {Type::Face, f, 0, {b0, b1, b2}}; }

  bool isVertex() const { return type == Type::Vertex; }
  bool isEdge() const { return type == Type::Edge; }
  bool isFace() const { return type == Type::Face; }
};

// Snap near-degenerate coordinates to the lower-dimensional chart: face
// points onto edges or vertices, edge parameters onto endpoints. Distances
// are measured in length units against geomTolerance().
SurfacePoint canonicalizePoint(const IntrinsicMesh& mesh, const SurfacePoint& p);

bool pointsEqual(const IntrinsicMesh& mesh, const SurfacePoint& a, const SurfacePoint& b);

// Position of p in the canonical chart of face f. p must lie in the closure
// of f (throws otherwise).
Vec2 chartPosition(const IntrinsicMesh& mesh, int f, const SurfacePoint& p);

bool pointInFaceClosure(const IntrinsicMesh& mesh, int f, const SurfacePoint& p);

// Faces whose closure contains p, ascending ids.
std::vector<int> facesContaining(const IntrinsicMesh& mesh, const SurfacePoint& p);

// Build a surface point from chart coordinates in face f, snapping to the
// boundary within tolerance.
SurfacePoint pointFromChart(const IntrinsicMesh& mesh, int f, Vec2 pos);

std::string describe(const SurfacePoint& p);

} // namespace qgeo
