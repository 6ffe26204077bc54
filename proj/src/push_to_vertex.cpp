#include "qgeo/search.h"
#include "qgeo/geometry.h"

#include <algorithm>

namespace qgeo {

namespace {

int sideCornerA(int s) { return (s + 1) % 3; }
int sideCornerB(int s) { return (s + 2) % 3; }

double placementRotationOf(const IntrinsicMesh& mesh, int f, const Placement& placed) {
  const auto& chart = mesh.chart(f);
  return angleOf(placed[1] - placed[0]) - angleOf(chart[1] - chart[0]);
}

} // namespace

PLCurve pushToVertex(const IntrinsicMesh& mesh, const PLCurve& geodesic, double tol) {
  CurveGeometry g = CurveGeometry::make(mesh, geodesic);
  if (g.touchesVertex()) {
    throw PushError(PushError::Kind::Precondition, "curve already passes through a vertex");
  }
  NumericReport rep = checkCurveNumeric(mesh, geodesic, tol);
  if (!rep.accepted) {
    throw PushError(PushError::Kind::Precondition,
                    "curve is not a geodesic at the requested tolerance (defect " +
                        std::to_string(std::max(rep.maxStraightnessDefect, rep.maxAngleViolation)) + ")");
  }

  // crossing sequence: all points of a vertex-free closed geodesic are edge
  // crossings after canonicalization
  std::vector<SurfacePoint> pts;
  std::vector<int> firstFaces;
  for (int i = 0; i < g.size(); i++) {
    if (g.point(i).isEdge()) {
      pts.push_back(g.point(i));
      firstFaces.push_back(g.segment(i).face);
    }
  }
  if (pts.empty()) {
    throw PushError(PushError::Kind::Precondition, "curve crosses no edges");
  }

  std::vector<int> edges;
  for (size_t i = 1; i < pts.size(); i++) edges.push_back(pts[i].id);
  edges.push_back(pts[0].id); // close the band
  UnfoldedStrip strip = unfoldStrip(mesh, pts[0], edges, pts[0], firstFaces[0]);

  Vec2 S = strip.startImage, E = strip.endImage;
  double len = distance(S, E);
  if (len <= geomTolerance()) {
    throw PushError(PushError::Kind::Precondition, "degenerate band");
  }
  Vec2 axis = (E - S) / len;
  Vec2 normal = perp(axis);

  // the band must close by a pure translation for the parallel family to
  // stay closed
  double deckRotation = placementRotationOf(mesh, strip.faces.back(), strip.placed.back()) -
                        placementRotationOf(mesh, strip.faces.front(), strip.placed.front());
  deckRotation = std::remainder(deckRotation, kTwoPi);
  if (std::abs(deckRotation) > 1e-7) {
    throw PushError(PushError::Kind::NoVertexHit,
                    "band closes with a rotation of " + std::to_string(deckRotation) + ", no parallel family");
  }

  // signed offsets of all placed corners from the geodesic line
  double best = std::numeric_limits<double>::infinity();
  for (const Placement& pl : strip.placed) {
    for (const Vec2& c : pl) {
      double off = dot(normal, c - S);
      if (std::abs(off) < std::abs(best)) best = off;
    }
  }
  if (!std::isfinite(best)) {
    throw PushError(PushError::Kind::NoVertexHit, "no corner offset found in the band");
  }
  if (std::abs(best) <= geomTolerance()) {
    throw PushError(PushError::Kind::Precondition, "curve grazes a vertex already");
  }

  // translate and re-trace the crossings
  Vec2 S2 = S + normal * best;
  Vec2 dir = axis;
  PLCurve out;
  for (size_t i = 0; i < edges.size(); i++) {
    int f = strip.faces[i];
    int s = mesh.sideOfEdge(f, edges[i]);
    const Placement& pl = strip.placed[i];
    Vec2 A = pl[sideCornerA(s)], B = pl[sideCornerB(s)];
    double den = cross(dir, B - A);
    if (std::abs(den) < 1e-300) {
      throw PushError(PushError::Kind::NoVertexHit, "band edge parallel to the geodesic");
    }
    double u = cross(A - S2, dir) / den;
    const EdgeData& e = mesh.edge(edges[i]);
    double tc = mesh.face(f).vertex[sideCornerA(s)] == e.vA ? u : 1 - u;
    out.points.push_back(canonicalizePoint(mesh, SurfacePoint::edge(edges[i], tc)));
  }
  // the stretch after crossing edges[i] lies in strip face i+1; the final
  // crossing closes back into the first face
  for (size_t i = 0; i + 1 < edges.size(); i++) out.segmentFace.push_back(strip.faces[i + 1]);
  out.segmentFace.push_back(strip.faces[0]);

  PLCurve canonical = CurveGeometry::make(mesh, out).toCurve();
  if (!CurveGeometry::make(mesh, canonical).touchesVertex()) {
    throw PushError(PushError::Kind::NoVertexHit, "translation by the nearest corner offset missed every vertex");
  }
  NumericReport post = checkCurveNumeric(mesh, canonical, std::max(tol, 1e-7));
  if (!post.accepted) {
    throw PushError(PushError::Kind::NoVertexHit, "pushed curve fails the numeric check");
  }
  double newLen = curveLength(mesh, canonical);
  if (std::abs(newLen - len) > 1e-6 * std::max(1.0, len)) {
    throw PushError(PushError::Kind::NoVertexHit, "pushed curve changed length");
  }
  return canonical;
}

} // namespace qgeo
