#include "qgeo/geometry.h"

#include <algorithm>

namespace qgeo {

namespace {

int sideCornerA(int s) { return (s + 1) % 3; }
int sideCornerB(int s) { return (s + 2) % 3; }

} // namespace

Placement placeNeighborAcross(const IntrinsicMesh& mesh, int f, int s, const Placement& placed) {
  SideRef t = mesh.twin({f, s});
  const auto& chart2 = mesh.chart(t.face);
  // Orientation-reversing gluing: corner A2 of the twin side lands on our
  // side's endpoint B and vice versa.
  Vec2 target1 = placed[sideCornerB(s)]; // image of twin corner A2
  Vec2 target2 = placed[sideCornerA(s)]; // image of twin corner B2
  Vec2 src1 = chart2[sideCornerA(t.side)];
  Vec2 src2 = chart2[sideCornerB(t.side)];
  Vec2 u = src2 - src1;
  Vec2 w = target2 - target1;
  double n2 = norm2(u);
  double c = dot(u, w) / n2, sn = cross(u, w) / n2;
  auto apply = [&](Vec2 p) {
    Vec2 d = p - src1;
    return Vec2{target1.x + c * d.x - sn * d.y, target1.y + sn * d.x + c * d.y};
  };
  Placement out;
  for (int k = 0; k < 3; k++) out[k] = apply(chart2[k]);
  return out;
}

double vertexDirectionOf(const IntrinsicMesh& mesh, int v, int face, Vec2 chartDir) {
  int k = mesh.cornerOfVertex(face, v);
  int j = mesh.fanIndexOf(v, face);
  if (k < 0 || j < 0) throw std::runtime_error("vertexDirectionOf: face not incident to vertex");
  const auto& chart = mesh.chart(face);
  Vec2 wedgeRay = chart[(k + 1) % 3] - chart[k];
  double local = ccwAngle(wedgeRay, chartDir);
  const VertexStar& star = mesh.star(v);
  // Directions in the closed wedge have local angle in [0, cornerAngle];
  // anything beyond is numerical spill from an adjacent wedge.
  double corner = mesh.cornerAngles(face)[k];
  if (local > corner + kPi) local -= kTwoPi; // wrapped negative
  local = std::clamp(local, 0.0, corner);
  return wrapAngle(star.wedgeStart[j] + local, star.coneAngle);
}

std::pair<int, Vec2> resolveVertexDirection(const IntrinsicMesh& mesh, int v, double angle) {
  const VertexStar& star = mesh.star(v);
  double a = wrapAngle(angle, star.coneAngle);
  int j = static_cast<int>(star.fan.size()) - 1;
  for (size_t i = 0; i + 1 < star.fan.size(); i++) {
    if (a < star.wedgeStart[i + 1]) {
      j = static_cast<int>(i);
      break;
    }
  }
  auto [face, k] = star.fan[j];
  const auto& chart = mesh.chart(face);
  Vec2 wedgeRay = normalize(chart[(k + 1) % 3] - chart[k]);
  return {face, rotate(wedgeRay, a - star.wedgeStart[j])};
}

double vertexDirectionAlongEdge(const IntrinsicMesh& mesh, int v, int e) {
  const EdgeData& ed = mesh.edge(e);
  if (ed.vA != v && ed.vB != v) throw std::runtime_error("vertexDirectionAlongEdge: edge not incident");
  for (SideRef sr : {ed.sideA, ed.sideB}) {
    // e is side sr.side of sr.face; v is one of its two side corners
    int k = mesh.cornerOfVertex(sr.face, v);
    int other = mesh.face(sr.face).vertex[sideCornerA(sr.side)] == v ? sideCornerB(sr.side) : sideCornerA(sr.side);
    if (k < 0) continue;
    if (k != sideCornerA(sr.side) && k != sideCornerB(sr.side)) continue;
    const auto& chart = mesh.chart(sr.face);
    return vertexDirectionOf(mesh, v, sr.face, chart[other] - chart[k]);
  }
  throw std::runtime_error("vertexDirectionAlongEdge: inconsistent incidence");
}

std::pair<double, double> sideAnglesAtVertex(const IntrinsicMesh& mesh, const Direction& inDir,
                                             const Direction& outDir) {
  if (!inDir.atVertex || !outDir.atVertex || inDir.vertex != outDir.vertex) {
    throw std::runtime_error("sideAnglesAtVertex: directions must sit at the same vertex");
  }
  double cone = mesh.star(inDir.vertex).coneAngle;
  double right = wrapAngle(outDir.angle - inDir.angle, cone);
  return {cone - right, right};
}

UnfoldedStrip unfoldStrip(const IntrinsicMesh& mesh, const SurfacePoint& start, std::span<const int> edges,
                          const SurfacePoint& end, int firstFace) {
  UnfoldedStrip strip;
  strip.start = start;
  strip.end = end;
  strip.crossedEdges.assign(edges.begin(), edges.end());

  int f0 = -1;
  if (edges.empty()) {
    for (int f : facesContaining(mesh, start)) {
      if (!pointInFaceClosure(mesh, f, end)) continue;
      if (firstFace >= 0 && f != firstFace) continue;
      f0 = f;
      break;
    }
    if (f0 < 0) throw NonAdjacentLetters(0, "start and end share no face");
  } else {
    for (int f : facesContaining(mesh, start)) {
      if (mesh.sideOfEdge(f, edges[0]) < 0) continue;
      if (firstFace >= 0 && f != firstFace) continue;
      f0 = f;
      break;
    }
    if (f0 < 0) throw NonAdjacentLetters(0, "start point and first edge share no face");
  }

  strip.faces.push_back(f0);
  strip.placed.push_back(mesh.chart(f0));
  for (size_t i = 0; i < edges.size(); i++) {
    int f = strip.faces.back();
    int s = mesh.sideOfEdge(f, edges[i]);
    if (s < 0) {
      throw NonAdjacentLetters(static_cast<int>(i), "edge " + std::to_string(edges[i]) + " is not a side of face " +
                                                        std::to_string(f));
    }
    strip.placed.push_back(placeNeighborAcross(mesh, f, s, strip.placed.back()));
    strip.faces.push_back(mesh.otherFace(edges[i], f));
  }
  if (!pointInFaceClosure(mesh, strip.faces.back(), end)) {
    throw NonAdjacentLetters(static_cast<int>(edges.size()), "end point is not on the final strip face");
  }

  auto imageIn = [&](int idx, const SurfacePoint& p) {
    // Express p barycentrically over the face, then map through the placement.
    int f = strip.faces[idx];
    Vec2 local = chartPosition(mesh, f, p);
    const auto& chart = mesh.chart(f);
    Vec2 v0 = chart[1] - chart[0], v1 = chart[2] - chart[0], v2 = local - chart[0];
    double den = cross(v0, v1);
    double b1 = cross(v2, v1) / den, b2 = cross(v0, v2) / den;
    const Placement& pl = strip.placed[idx];
    return pl[0] * (1 - b1 - b2) + pl[1] * b1 + pl[2] * b2;
  };
  strip.startImage = imageIn(0, start);
  strip.endImage = imageIn(static_cast<int>(strip.faces.size()) - 1, end);
  return strip;
}

} // namespace qgeo
