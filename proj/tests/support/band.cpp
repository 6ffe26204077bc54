#include "support/band.h"

#include <stdexcept>

namespace qgeo::testing {

namespace {

Vec2 stripEdgeImage(const IntrinsicMesh& mesh, const UnfoldedStrip& strip, int edgeIdx, double tCanonical) {
  int f = strip.faces[edgeIdx];
  int s = mesh.sideOfEdge(f, strip.crossedEdges[edgeIdx]);
  const Placement& pl = strip.placed[edgeIdx];
  Vec2 A = pl[(s + 1) % 3], B = pl[(s + 2) % 3];
  const EdgeData& e = mesh.edge(strip.crossedEdges[edgeIdx]);
  double u = mesh.face(f).vertex[(s + 1) % 3] == e.vA ? tCanonical : 1 - tCanonical;
  return A * (1 - u) + B * u;
}

} // namespace

CubeBand makeCubeBand(const IntrinsicMesh& cube, double z) {
  int f = -1;
  for (int i = 0; i < cube.numFaces(); i++) {
    auto vs = cube.face(i).vertex;
    if (vs[0] == 0 && vs[1] == 1 && vs[2] == 5) f = i;
  }
  if (f < 0) throw std::runtime_error("makeCubeBand: lateral face not found");
  SurfacePoint start = SurfacePoint::face(f, (1 - z) / 2, (1 - z) / 2, z);
  Vec2 dir = normalize(cube.chart(f)[1] - cube.chart(f)[0]);
  RayResult ray = traceRay(cube, start, Direction::inFace(f, dir), 4.0);
  if (!pointsEqual(cube, ray.points.front(), ray.points.back())) {
    throw std::runtime_error("makeCubeBand: band did not close");
  }
  CubeBand band;
  band.geodesic.points.assign(ray.points.begin(), ray.points.end() - 1);
  band.geodesic.segmentFace = ray.faces;

  // crossing edges in band order; extend by one wrap so seeded curves can
  // overshoot the closing edge
  std::vector<int> crossings;
  for (const Letter& l : ray.word.letters) {
    if (l.kind == Letter::Kind::Cross) crossings.push_back(l.id);
  }
  if (crossings.size() != 8) throw std::runtime_error("makeCubeBand: expected 8 crossings");
  double t0 = ray.points[1].t;
  std::vector<int> edges(crossings.begin() + 1, crossings.end());
  edges.push_back(crossings[0]);
  edges.push_back(crossings[1]);
  SurfacePoint from = ray.points[1];
  SurfacePoint to = SurfacePoint::edge(crossings[1], ray.points[2].t);
  band.strip = unfoldStrip(cube, from, edges, to);
  (void)t0;

  band.origin = band.strip.startImage;
  Vec2 closing = stripEdgeImage(cube, band.strip, 7, ray.points[1].t); // the copy of the first crossing
  band.axis = normalize(closing - band.origin);
  band.normal = perp(band.axis);
  return band;
}

PLCurve bandZigzag(const IntrinsicMesh& cube, const CubeBand& band, double amp) {
  std::vector<Vec2> poly;
  for (int k = 0; k < 9; k++) {
    double x = 0.25 + 0.5 * k;
    double y = (k % 2 == 0) ? amp : -amp;
    poly.push_back(band.origin + band.axis * x + band.normal * y);
  }
  PLCurve open = polylineInStrip(cube, band.strip, poly, false);
  // first and last map to the same surface point; drop the duplicate to close
  PLCurve closed;
  closed.points.assign(open.points.begin(), open.points.end() - 1);
  closed.segmentFace = open.segmentFace;
  return closed;
}

} // namespace qgeo::testing
