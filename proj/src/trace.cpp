#include "qgeo/geometry.h"

#include <algorithm>

namespace qgeo {

namespace {

int sideCornerA(int s) { return (s + 1) % 3; }
int sideCornerB(int s) { return (s + 2) % 3; }

double canonicalEdgeParam(const IntrinsicMesh& mesh, int f, int s, double u) {
  int e = mesh.sideEdge(f, s);
  return mesh.face(f).vertex[sideCornerA(s)] == mesh.edge(e).vA ? u : 1 - u;
}

double placementRotation(const IntrinsicMesh& mesh, int f, const Placement& placed) {
  const auto& chart = mesh.chart(f);
  return angleOf(placed[1] - placed[0]) - angleOf(chart[1] - chart[0]);
}

} // namespace

const char* traceStatusName(TraceReport::Status s) {
  switch (s) {
  case TraceReport::Status::Accept:
    return "Accept";
  case TraceReport::Status::SideViolation:
    return "SideViolation";
  case TraceReport::Status::CrossingOutOfRange:
    return "CrossingOutOfRange";
  case TraceReport::Status::OrderViolation:
    return "OrderViolation";
  case TraceReport::Status::VertexGraze:
    return "VertexGraze";
  case TraceReport::Status::DegenerateSegment:
    return "DegenerateSegment";
  }
  return "Unknown";
}

TraceReport traceSegment(const IntrinsicMesh& mesh, const UnfoldedStrip& strip) {
  TraceReport report;
  double tol = geomTolerance();
  Vec2 S = strip.startImage, E = strip.endImage;
  Vec2 D = E - S;
  double L = norm(D);
  report.length = L;
  if (L <= tol) {
    report.status = TraceReport::Status::DegenerateSegment;
    return report;
  }
  size_t k = strip.crossedEdges.size();
  double prevT = 0;
  for (size_t i = 0; i < k; i++) {
    int f = strip.faces[i];
    int s = mesh.sideOfEdge(f, strip.crossedEdges[i]);
    const Placement& pl = strip.placed[i];
    Vec2 A = pl[sideCornerA(s)], B = pl[sideCornerB(s)];
    Vec2 AB = B - A;
    double den = cross(D, AB);
    if (std::abs(den) <= tol * L) {
      report.status = TraceReport::Status::CrossingOutOfRange;
      report.position = static_cast<int>(i);
      return report;
    }
    double t = cross(A - S, AB) / den;
    double u = cross(A - S, D) / den;
    double sideLen = norm(AB);
    // graze: the crossing point lands within tolerance of a placed corner
    if (std::abs(u) * sideLen <= tol || std::abs(1 - u) * sideLen <= tol) {
      report.status = TraceReport::Status::VertexGraze;
      report.position = static_cast<int>(i);
      return report;
    }
    if (u < 0 || u > 1 || t * L <= tol || (1 - t) * L <= tol) {
      report.status = TraceReport::Status::CrossingOutOfRange;
      report.position = static_cast<int>(i);
      return report;
    }
    if ((t - prevT) * L <= tol) {
      report.status = TraceReport::Status::OrderViolation;
      report.position = static_cast<int>(i);
      return report;
    }
    // side assignment in the triangle entered through edge i-1 and left
    // through edge i: the shared corner sits alone on its side of the line
    if (i > 0) {
      int sPrev = mesh.sideOfEdge(f, strip.crossedEdges[i - 1]);
      int shared = -1;
      for (int ca : {sideCornerA(s), sideCornerB(s)}) {
        if (ca == sideCornerA(sPrev) || ca == sideCornerB(sPrev)) shared = ca;
      }
      if (shared < 0) {
        report.status = TraceReport::Status::SideViolation;
        report.position = static_cast<int>(i);
        return report;
      }
      double dShared = 0;
      bool grazed = false;
      double signOthers = 0;
      bool violated = false;
      for (int c = 0; c < 3; c++) {
        double d = cross(D, pl[c] - S) / L;
        if (std::abs(d) <= tol) grazed = true;
        if (c == shared) {
          dShared = d;
        } else {
          if (signOthers != 0 && signOthers * d < 0) violated = true;
          signOthers = d;
        }
      }
      if (grazed) {
        report.status = TraceReport::Status::VertexGraze;
        report.position = static_cast<int>(i);
        return report;
      }
      if (violated || dShared * signOthers > 0) {
        report.status = TraceReport::Status::SideViolation;
        report.position = static_cast<int>(i);
        return report;
      }
    }
    report.sigmaParams.push_back(t);
    report.edgeParams.push_back(canonicalEdgeParam(mesh, f, s, u));
    prevT = t;
  }
  return report;
}

SegmentRealization realizeSegment(const IntrinsicMesh& mesh, const UnfoldedStrip& strip, const TraceReport& report) {
  if (!report.accepted()) throw std::runtime_error("realizeSegment: segment was not accepted");
  SegmentRealization out;
  out.length = report.length;
  out.points.push_back(strip.start);
  for (size_t i = 0; i < strip.crossedEdges.size(); i++) {
    out.points.push_back(SurfacePoint::edge(strip.crossedEdges[i], report.edgeParams[i]));
    out.faces.push_back(strip.faces[i]);
  }
  out.points.push_back(strip.end);
  out.faces.push_back(strip.faces.back());

  Vec2 D = normalize(strip.endImage - strip.startImage);
  // the first placement is the canonical chart, so D is already chart-local
  out.dirAtStart = D;
  double rotLast = placementRotation(mesh, strip.faces.back(), strip.placed.back());
  out.dirAtEnd = rotate(-D, -rotLast);
  return out;
}

RayResult traceRay(const IntrinsicMesh& mesh, const SurfacePoint& start, const Direction& dir, double maxLen) {
  RayResult out;
  double tol = geomTolerance();
  int f;
  Vec2 u;
  if (dir.atVertex) {
    if (!start.isVertex() || start.id != dir.vertex) throw std::runtime_error("traceRay: direction vertex mismatch");
    std::tie(f, u) = resolveVertexDirection(mesh, dir.vertex, dir.angle);
  } else {
    f = dir.face;
    u = normalize(dir.vec);
    if (!pointInFaceClosure(mesh, f, start)) throw std::runtime_error("traceRay: start not on direction face");
  }
  Vec2 p = chartPosition(mesh, f, start);
  double remaining = maxLen;
  out.points.push_back(canonicalizePoint(mesh, start));

  const int maxSteps = 1000000;
  for (int step = 0; step < maxSteps; step++) {
    const auto& chart = mesh.chart(f);
    double bestT = std::numeric_limits<double>::infinity();
    int bestSide = -1;
    double bestU = 0;
    for (int s = 0; s < 3; s++) {
      Vec2 A = chart[sideCornerA(s)], B = chart[sideCornerB(s)];
      Vec2 AB = B - A;
      double den = cross(u, AB);
      if (std::abs(den) <= 1e-300) continue;
      double t = cross(A - p, AB) / den;
      double uu = cross(A - p, u) / den;
      if (t <= tol) continue;
      if (uu < -tol / norm(AB) || uu > 1 + tol / norm(AB)) continue;
      if (t < bestT) {
        bestT = t;
        bestSide = s;
        bestU = uu;
      }
    }
    if (bestSide < 0) throw std::runtime_error("traceRay: ray found no exit (degenerate geometry)");
    if (bestT >= remaining) {
      SurfacePoint endPt = pointFromChart(mesh, f, p + u * remaining);
      out.points.push_back(endPt);
      out.faces.push_back(f);
      out.length += remaining;
      if (endPt.isVertex()) {
        out.hitVertex = true;
        out.vertexId = endPt.id;
        out.word.letters.push_back(Letter::vertex(endPt.id));
      }
      return out;
    }
    Vec2 hit = p + u * bestT;
    // vertex hit: the exit point lands on a corner of the face
    int hitCorner = -1;
    for (int c = 0; c < 3; c++) {
      if (distance(hit, chart[c]) <= tol) hitCorner = c;
    }
    if (hitCorner >= 0) {
      int v = mesh.face(f).vertex[hitCorner];
      out.points.push_back(SurfacePoint::vertex(v));
      out.faces.push_back(f);
      out.length += bestT;
      out.hitVertex = true;
      out.vertexId = v;
      out.word.letters.push_back(Letter::vertex(v));
      return out;
    }
    int e = mesh.sideEdge(f, bestSide);
    double tc = canonicalEdgeParam(mesh, f, bestSide, bestU);
    SurfacePoint cp = canonicalizePoint(mesh, SurfacePoint::edge(e, tc));
    if (cp.isVertex()) {
      out.points.push_back(cp);
      out.faces.push_back(f);
      out.length += bestT;
      out.hitVertex = true;
      out.vertexId = cp.id;
      out.word.letters.push_back(Letter::vertex(cp.id));
      return out;
    }
    out.points.push_back(cp);
    out.faces.push_back(f);
    out.word.letters.push_back(Letter::cross(e));
    out.length += bestT;
    remaining -= bestT;

    // transfer into the neighbor chart
    Placement neighbor = placeNeighborAcross(mesh, f, bestSide, mesh.chart(f));
    int f2 = mesh.otherFace(e, f);
    double rot = placementRotation(mesh, f2, neighbor);
    u = normalize(rotate(u, -rot));
    f = f2;
    p = chartPosition(mesh, f, cp);
  }
  throw std::runtime_error("traceRay: step limit exceeded");
}

PLCurve polylineInStrip(const IntrinsicMesh& mesh, const UnfoldedStrip& strip, std::span<const Vec2> polyline,
                        bool closed) {
  PLCurve curve;
  double tol = geomTolerance();
  int nPts = static_cast<int>(polyline.size());
  int nSegs = closed ? nPts : nPts - 1;

  auto containing = [&](Vec2 q, int hint) {
    // search near the hint first so points on shared sides resolve stably
    auto inside = [&](int idx) {
      const Placement& pl = strip.placed[idx];
      double s1 = cross(pl[1] - pl[0], q - pl[0]);
      double s2 = cross(pl[2] - pl[1], q - pl[1]);
      double s3 = cross(pl[0] - pl[2], q - pl[2]);
      double m = -tol * 10;
      return s1 >= m && s2 >= m && s3 >= m;
    };
    if (hint >= 0 && hint < static_cast<int>(strip.faces.size()) && inside(hint)) return hint;
    for (int i = 0; i < static_cast<int>(strip.faces.size()); i++) {
      if (inside(i)) return i;
    }
    throw std::runtime_error("polylineInStrip: point outside strip");
  };

  auto toSurface = [&](int idx, Vec2 q) {
    const Placement& pl = strip.placed[idx];
    Vec2 v0 = pl[1] - pl[0], v1 = pl[2] - pl[0], v2 = q - pl[0];
    double den = cross(v0, v1);
    double b1 = cross(v2, v1) / den, b2 = cross(v0, v2) / den;
    Vec2 local = mesh.chart(strip.faces[idx])[0] * (1 - b1 - b2) + mesh.chart(strip.faces[idx])[1] * b1 +
                 mesh.chart(strip.faces[idx])[2] * b2;
    return pointFromChart(mesh, strip.faces[idx], local);
  };

  int cur = containing(polyline[0], 0);
  for (int i = 0; i < nSegs; i++) {
    Vec2 P = polyline[i];
    Vec2 Q = polyline[(i + 1) % nPts];
    curve.points.push_back(toSurface(cur, P));
    curve.segmentFace.push_back(strip.faces[cur]);
    // cross interior strip edges in index order until Q's triangle is reached
    int target = containing(Q, cur);
    while (cur != target) {
      int step = cur < target ? 1 : -1;
      int edgeIdx = cur < target ? cur : cur - 1;
      int f = strip.faces[edgeIdx];
      int s = mesh.sideOfEdge(f, strip.crossedEdges[edgeIdx]);
      const Placement& pl = strip.placed[edgeIdx];
      Vec2 A = pl[sideCornerA(s)], B = pl[sideCornerB(s)];
      double den = cross(Q - P, B - A);
      if (std::abs(den) <= 1e-300) throw std::runtime_error("polylineInStrip: segment parallel to strip edge");
      double uu = cross(A - P, Q - P) / den;
      curve.points.push_back(SurfacePoint::edge(strip.crossedEdges[edgeIdx], canonicalEdgeParam(mesh, f, s, uu)));
      cur += step;
      curve.segmentFace.push_back(strip.faces[cur]);
    }
  }
  if (!closed) curve.points.push_back(toSurface(cur, polyline[nPts - 1]));
  return curve;
}

} // namespace qgeo
