#include "qgeo/surface_point.h"

#include <algorithm>
#include <set>

namespace qgeo {

namespace {

int sideCornerA(int s) { return (s + 1) % 3; }
int sideCornerB(int s) { return (s + 2) % 3; }

} // namespace

SurfacePoint canonicalizePoint(const IntrinsicMesh& mesh, const SurfacePoint& p) {
  double tol = geomTolerance();
  switch (p.type) {
  case SurfacePoint::Type::Vertex:
    return p;
  case SurfacePoint::Type::Edge: {
    const EdgeData& e = mesh.edge(p.id);
    if (p.t * e.length <= tol) return SurfacePoint::vertex(e.vA);
    if ((1 - p.t) * e.length <= tol) return SurfacePoint::vertex(e.vB);
    return p;
  }
  case SurfacePoint::Type::Face: {
    int f = p.id;
    const auto& chart = mesh.chart(f);
    Vec2 pos = chart[0] * p.bary[0] + chart[1] * p.bary[1] + chart[2] * p.bary[2];
    return pointFromChart(mesh, f, pos);
  }
  }
  return p;
}

Vec2 chartPosition(const IntrinsicMesh& mesh, int f, const SurfacePoint& p) {
  const auto& chart = mesh.chart(f);
  switch (p.type) {
  case SurfacePoint::Type::Vertex: {
    int k = mesh.cornerOfVertex(f, p.id);
    if (k < 0) throw std::runtime_error("chartPosition: vertex not on face");
    return chart[k];
  }
  case SurfacePoint::Type::Edge: {
    int s = mesh.sideOfEdge(f, p.id);
    if (s < 0) throw std::runtime_error("chartPosition: edge not on face");
    const EdgeData& e = mesh.edge(p.id);
    int ca = sideCornerA(s), cb = sideCornerB(s);
    // side corners in face order; match against canonical direction vA->vB
    if (mesh.face(f).vertex[ca] == e.vA) {
      return chart[ca] * (1 - p.t) + chart[cb] * p.t;
    }
    return chart[cb] * (1 - p.t) + chart[ca] * p.t;
  }
  case SurfacePoint::Type::Face:
    if (p.id != f) throw std::runtime_error("chartPosition: face point on a different face");
    return chart[0] * p.bary[0] + chart[1] * p.bary[1] + chart[2] * p.bary[2];
  }
  throw std::runtime_error("chartPosition: bad point");
}

bool pointInFaceClosure(const IntrinsicMesh& mesh, int f, const SurfacePoint& p) {
  switch (p.type) {
  case SurfacePoint::Type::Vertex:
    return mesh.cornerOfVertex(f, p.id) >= 0;
  case SurfacePoint::Type::Edge:
    return mesh.sideOfEdge(f, p.id) >= 0;
  case SurfacePoint::Type::Face:
    return p.id == f;
  }
  return false;
}

std::vector<int> facesContaining(const IntrinsicMesh& mesh, const SurfacePoint& p) {
  std::set<int> out;
  switch (p.type) {
  case SurfacePoint::Type::Vertex:
    for (const auto& [f, k] : mesh.star(p.id).fan) out.insert(f);
    break;
  case SurfacePoint::Type::Edge:
    out.insert(mesh.edge(p.id).sideA.face);
    out.insert(mesh.edge(p.id).sideB.face);
    break;
  case SurfacePoint::Type::Face:
    out.insert(p.id);
    break;
  }
  return {out.begin(), out.end()};
}

SurfacePoint pointFromChart(const IntrinsicMesh& mesh, int f, Vec2 pos) {
  const auto& chart = mesh.chart(f);
  double tol = geomTolerance();
  // vertex snap
  for (int k = 0; k < 3; k++) {
    if (distance(pos, chart[k]) <= tol) return SurfacePoint::vertex(mesh.face(f).vertex[k]);
  }
  // side snap: distance from the side's support segment
  for (int s = 0; s < 3; s++) {
    Vec2 a = chart[sideCornerA(s)], b = chart[sideCornerB(s)];
    Vec2 ab = b - a;
    double u = dot(pos - a, ab) / norm2(ab);
    if (u <= 0 || u >= 1) continue;
    if (distance(pos, a + ab * u) <= tol) {
      int e = mesh.sideEdge(f, s);
      double t = (mesh.face(f).vertex[sideCornerA(s)] == mesh.edge(e).vA) ? u : 1 - u;
      return canonicalizePoint(mesh, SurfacePoint::edge(e, t));
    }
  }
  // generic interior point: barycentric from chart
  Vec2 v0 = chart[1] - chart[0], v1 = chart[2] - chart[0], v2 = pos - chart[0];
  double den = cross(v0, v1);
  double b1 = cross(v2, v1) / den;
  double b2 = cross(v0, v2) / den;
  double b0 = 1 - b1 - b2;
  return SurfacePoint::face(f, b0, b1, b2);
}

bool pointsEqual(const IntrinsicMesh& mesh, const SurfacePoint& a, const SurfacePoint& b) {
  SurfacePoint ca = canonicalizePoint(mesh, a);
  SurfacePoint cb = canonicalizePoint(mesh, b);
  double tol = geomTolerance();
  if (ca.type != cb.type) return false;
  switch (ca.type) {
  case SurfacePoint::Type::Vertex:
    return ca.id == cb.id;
  case SurfacePoint::Type::Edge:
    return ca.id == cb.id && std::abs(ca.t - cb.t) * mesh.edge(ca.id).length <= tol;
  case SurfacePoint::Type::Face: {
    if (ca.id != cb.id) return false;
    Vec2 pa = chartPosition(mesh, ca.id, ca), pb = chartPosition(mesh, cb.id, cb);
    return distance(pa, pb) <= tol;
  }
  }
  return false;
}

std::string describe(const SurfacePoint& p) {
  switch (p.type) {
  case SurfacePoint::Type::Vertex:
    return "V" + std::to_string(p.id);
  case SurfacePoint::Type::Edge:
    return "E" + std::to_string(p.id) + "@" + std::to_string(p.t);
  case SurfacePoint::Type::Face:
    return "F" + std::to_string(p.id);
  }
  return "?";
}

} // namespace qgeo
