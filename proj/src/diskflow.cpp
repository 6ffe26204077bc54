#include "qgeo/diskflow.h"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace qgeo {

namespace {

enum class Zone { Interior, Boundary, Outside };

struct StarContext {
  int v;
  const VertexStar* star;
  std::set<int> faces;
  std::set<int> spokes;
  std::set<int> linkEdges;
  std::set<int> linkVertices;
};

StarContext starContext(const IntrinsicMesh& mesh, int v) {
  StarContext ctx;
  ctx.v = v;
  ctx.star = &mesh.star(v);
  for (const auto& [f, k] : ctx.star->fan) {
    ctx.faces.insert(f);
    ctx.linkEdges.insert(mesh.sideEdge(f, k)); // side opposite the vertex corner
    ctx.spokes.insert(mesh.sideEdge(f, (k + 1) % 3));
    ctx.spokes.insert(mesh.sideEdge(f, (k + 2) % 3));
    for (int c = 0; c < 3; c++) {
      int w = mesh.face(f).vertex[c];
      if (w != v) ctx.linkVertices.insert(w);
    }
  }
  return ctx;
}

Zone pointZone(const StarContext& ctx, const SurfacePoint& p) {
  switch (p.type) {
  case SurfacePoint::Type::Vertex:
    if (p.id == ctx.v) return Zone::Interior;
    return ctx.linkVertices.count(p.id) ? Zone::Boundary : Zone::Outside;
  case SurfacePoint::Type::Edge:
    if (ctx.spokes.count(p.id)) return Zone::Interior;
    return ctx.linkEdges.count(p.id) ? Zone::Boundary : Zone::Outside;
  case SurfacePoint::Type::Face:
    return ctx.faces.count(p.id) ? Zone::Interior : Zone::Outside;
  }
  return Zone::Outside;
}

Zone segmentZone(const StarContext& ctx, const SegmentInfo& s) {
  if (s.onEdge) {
    if (ctx.spokes.count(s.edge)) return Zone::Interior;
    return ctx.linkEdges.count(s.edge) ? Zone::Boundary : Zone::Outside;
  }
  return ctx.faces.count(s.face) ? Zone::Interior : Zone::Outside;
}

// Fan angle around the star vertex of a point, resolved in the context of a
// segment the point bounds. Unwrapped: the value is wedgeStart + local, so
// within one wedge differences carry the true swept angle and the last wedge
// reaches the full cone angle instead of wrapping to zero.
double fanAngleInContext(const IntrinsicMesh& mesh, const StarContext& ctx, const SegmentInfo& seg,
                         const SurfacePoint& p, int* wedgeFace = nullptr) {
  int f = seg.face;
  if (seg.onEdge && ctx.spokes.count(seg.edge)) {
    // along a spoke: the ray angle; either adjacent wedge gives the same value
    if (wedgeFace) *wedgeFace = mesh.edge(seg.edge).sideA.face;
    return vertexDirectionAlongEdge(mesh, ctx.v, seg.edge);
  }
  if (wedgeFace) *wedgeFace = f;
  int k = mesh.cornerOfVertex(f, ctx.v);
  int j = mesh.fanIndexOf(ctx.v, f);
  if (k < 0 || j < 0) throw std::runtime_error("fanAngleInContext: segment face not in star");
  Vec2 vPos = mesh.chart(f)[k];
  Vec2 pos = chartPosition(mesh, f, p);
  Vec2 wedgeRay = mesh.chart(f)[(k + 1) % 3] - vPos;
  double corner = mesh.cornerAngles(f)[k];
  double local = ccwAngle(wedgeRay, pos - vPos);
  if (local > corner + kPi) local -= kTwoPi;
  local = std::clamp(local, 0.0, corner);
  return ctx.star->wedgeStart[j] + local;
}

double radiusFrom(const IntrinsicMesh& mesh, const StarContext& ctx, const SegmentInfo& seg, const SurfacePoint& p) {
  int f = seg.face;
  int k = mesh.cornerOfVertex(f, ctx.v);
  if (k < 0) {
    // spoke reference face may be outside the fan list ordering; fall back to
    // any star face containing the point
    for (int g : facesContaining(mesh, p)) {
      if (ctx.faces.count(g)) {
        f = g;
        k = mesh.cornerOfVertex(f, ctx.v);
        break;
      }
    }
  }
  if (k < 0) throw std::runtime_error("radiusFrom: point not on the star");
  return distance(chartPosition(mesh, f, p), mesh.chart(f)[k]);
}

struct InteriorRun {
  int gateA = -1, gateB = -1; // point indices in the curve
  bool throughVertex = false;
  double liftDelta = 0; // signed swept angle for vertex-avoiding runs
  double length = 0;
  Gate A, B;
};

struct StarDecomposition {
  bool anyBoundary = false;
  bool allInterior = false;
  std::vector<InteriorRun> runs;
  std::vector<Zone> ptZone, segZone;
};

StarDecomposition decomposeStar(const IntrinsicMesh& mesh, const CurveGeometry& g, const StarContext& ctx) {
  StarDecomposition d;
  int n = g.size();
  d.ptZone.resize(n);
  d.segZone.resize(n);
  bool anyInterior = false, anyOther = false;
  for (int i = 0; i < n; i++) {
    d.ptZone[i] = pointZone(ctx, g.point(i));
    d.segZone[i] = segmentZone(ctx, g.segment(i));
    if (d.ptZone[i] == Zone::Boundary || d.segZone[i] == Zone::Boundary) d.anyBoundary = true;
    if (d.ptZone[i] == Zone::Interior || d.segZone[i] == Zone::Interior) anyInterior = true;
    if (d.ptZone[i] == Zone::Outside || d.segZone[i] == Zone::Outside) anyOther = true;
  }
  if (!d.anyBoundary) {
    d.allInterior = anyInterior && !anyOther;
    if (anyInterior && anyOther) {
      throw std::runtime_error("decomposeStar: interior/outside transition without a boundary point");
    }
    return d;
  }

  std::vector<int> boundaryPts;
  for (int i = 0; i < n; i++) {
    if (d.ptZone[i] == Zone::Boundary) boundaryPts.push_back(i);
  }
  if (boundaryPts.empty()) {
    // boundary touched only along a segment? cannot happen: a boundary
    // segment's endpoints lie on the link
    throw std::runtime_error("decomposeStar: boundary segment without boundary endpoints");
  }

  int bCount = static_cast<int>(boundaryPts.size());
  for (int bi = 0; bi < bCount; bi++) {
    int from = boundaryPts[bi];
    int to = boundaryPts[(bi + 1) % bCount];
    // elements strictly between the two boundary points
    int span = (to - from + n) % n;
    if (span == 0) span = n; // single boundary point: the run wraps all the way around
    bool interior = true;
    bool sawVertex = false;
    for (int off = 0; off < span; off++) {
      int seg = g.wrap(from + off);
      if (d.segZone[seg] != Zone::Interior) interior = false;
      if (off > 0) {
        int pt = g.wrap(from + off);
        if (d.ptZone[pt] != Zone::Interior) interior = false;
        if (g.point(pt).isVertex() && g.point(pt).id == ctx.v) sawVertex = true;
      }
    }
    if (!interior) continue; // outside stretch or boundary-following stretch

    InteriorRun run;
    run.gateA = from;
    run.gateB = to;
    run.throughVertex = sawVertex;

    // gate data from the adjacent run segments
    const SegmentInfo& firstSeg = g.segment(from);
    const SegmentInfo& lastSeg = g.segment(g.wrap(to - 1));
    run.A.point = g.point(from);
    run.A.pointIndex = from;
    run.A.fanAngle = fanAngleInContext(mesh, ctx, firstSeg, run.A.point, &run.A.face);
    run.A.radius = radiusFrom(mesh, ctx, firstSeg, run.A.point);
    run.A.openRight = true;
    run.B.point = g.point(to);
    run.B.pointIndex = to;
    run.B.fanAngle = fanAngleInContext(mesh, ctx, lastSeg, run.B.point, &run.B.face);
    run.B.radius = radiusFrom(mesh, ctx, lastSeg, run.B.point);
    run.B.openLeft = true;

    // lifted angular sweep, accumulated per segment inside its own wedge
    if (!run.throughVertex) {
      double delta = 0;
      for (int off = 0; off < span; off++) {
        int si = g.wrap(from + off);
        const SegmentInfo& s = g.segment(si);
        if (s.onEdge && ctx.spokes.count(s.edge)) continue; // radial: no sweep
        // both angles live in the same closed wedge of the unwrapped fan, so
        // the difference is the true swept angle
        delta += fanAngleInContext(mesh, ctx, s, g.point(si + 1)) - fanAngleInContext(mesh, ctx, s, g.point(si));
      }
      double cone = ctx.star->coneAngle;
      run.liftDelta = std::clamp(delta, -cone, cone);
    }
    for (int off = 0; off < span; off++) run.length += g.segment(g.wrap(from + off)).length;
    d.runs.push_back(run);
  }
  return d;
}

int wedgeIndexFor(const VertexStar& star, double phi) {
  double a = wrapAngle(phi, star.coneAngle);
  for (size_t j = 0; j + 1 < star.wedgeStart.size(); j++) {
    if (a < star.wedgeStart[j + 1] - 1e-13) return static_cast<int>(j);
  }
  return static_cast<int>(star.wedgeStart.size()) - 1;
}

struct SectorSpoke {
  double psi; // angle from the sector start
  int edge;
  int linkVertex;
  double length;
};

// Shortest path from A to B inside the sector swept counterclockwise from
// A's ray by `sweep`, via a visibility graph over the sector polygon
// (apex, A, link vertices, B).
PathFragment funnelInSector(const IntrinsicMesh& mesh, const StarContext& ctx, const Gate& A, const Gate& B,
                            double sweep) {
  PathFragment frag;
  double tol = geomTolerance();
  const VertexStar& star = *ctx.star;

  if (sweep <= 1e-12) {
    frag.points = {A.point, B.point};
    frag.faces = {A.face};
    frag.length = std::abs(A.radius - B.radius);
    return frag;
  }

  // collect spokes strictly inside the sector, walking wedges ccw from A
  std::vector<SectorSpoke> spokes;
  int j = wedgeIndexFor(star, A.fanAngle);
  auto wedgeAngle = [&](int idx) {
    auto [f, k] = star.fan[idx];
    return mesh.cornerAngles(f)[k];
  };
  double psi = star.wedgeStart[j] + wedgeAngle(j) - wrapAngle(A.fanAngle, star.coneAngle);
  std::vector<int> wedgeOfInterval{j}; // face wedge between consecutive spokes
  int guard = 0;
  while (psi < sweep - 1e-12) {
    if (++guard > 4 * star.degree + 8) throw std::runtime_error("funnelInSector: wedge walk runaway");
    int jNext = (j + 1) % star.degree;
    auto [f, k] = star.fan[j];
    SectorSpoke sp;
    sp.psi = psi;
    sp.edge = mesh.sideEdge(f, (k + 1) % 3); // ccw-end spoke of wedge j
    sp.linkVertex = mesh.face(f).vertex[(k + 2) % 3];
    sp.length = mesh.face(f).length[(k + 1) % 3];
    spokes.push_back(sp);
    j = jNext;
    wedgeOfInterval.push_back(j);
    psi += wedgeAngle(j);
  }

  auto polar = [](double r, double ang) { return Vec2{r * std::cos(ang), r * std::sin(ang)}; };
  Vec2 aImg = polar(A.radius, 0);
  Vec2 bImg = polar(B.radius, sweep);

  // polygon vertices: 0 = A, 1..m = roof link vertices, m+1 = B, m+2 = apex
  std::vector<Vec2> nodes{aImg};
  for (const auto& sp : spokes) nodes.push_back(polar(sp.length, sp.psi));
  nodes.push_back(bImg);
  nodes.push_back({0, 0});
  int m = static_cast<int>(spokes.size());
  int apexIdx = static_cast<int>(nodes.size()) - 1;
  int bIdx = apexIdx - 1;

  // boundary: roof chain A, roofs..., B plus the two cut chords to the apex
  std::vector<int> roof{0};
  for (int i = 1; i <= m; i++) roof.push_back(i);
  roof.push_back(bIdx);
  std::vector<std::pair<int, int>> boundary;
  for (size_t r = 0; r + 1 < roof.size(); r++) boundary.push_back({roof[r], roof[r + 1]});
  boundary.push_back({apexIdx, 0});
  boundary.push_back({apexIdx, bIdx});

  auto properCross = [&](Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
    double d = cross(p2 - p1, q2 - q1);
    if (std::abs(d) < 1e-300) return false;
    double t = cross(q1 - p1, q2 - q1) / d;
    double u = cross(q1 - p1, p2 - p1) / d;
    double s1 = norm(p2 - p1), s2 = norm(q2 - q1);
    return t * s1 > tol && (1 - t) * s1 > tol && u * s2 > tol && (1 - u) * s2 > tol;
  };
  auto visible = [&](int x, int y) {
    for (const auto& [r1, r2] : boundary) {
      if (x == r1 || x == r2 || y == r1 || y == r2) continue;
      if (properCross(nodes[x], nodes[y], nodes[r1], nodes[r2])) return false;
    }
    Vec2 mid = (nodes[x] + nodes[y]) * 0.5;
    double r = norm(mid);
    if (r <= tol) return true;
    double ang = angleOf(mid);
    // stay inside the angular wedge (angles just below the start ray read as
    // almost a full turn)
    if (ang > sweep + 1e-9 && ang < kTwoPi - 1e-9) return false;
    // stay radially below the roof polyline
    for (size_t q = 0; q + 1 < roof.size(); q++) {
      Vec2 p1 = nodes[roof[q]], p2 = nodes[roof[q + 1]];
      double a1 = angleOf(p1), a2 = angleOf(p2);
      if (roof[q] == 0) a1 = 0; // A sits exactly on the start ray
      if (ang < std::min(a1, a2) - 1e-12 || ang > std::max(a1, a2) + 1e-12) continue;
      Vec2 dir{std::cos(ang), std::sin(ang)};
      double den = cross(dir, p2 - p1);
      if (std::abs(den) < 1e-300) continue;
      double rr = cross(p1, p2 - p1) / den;
      if (rr > 0 && r > rr + tol) return false;
    }
    return true;
  };

  int nNodes = static_cast<int>(nodes.size());
  std::vector<double> dist(nNodes, std::numeric_limits<double>::infinity());
  std::vector<int> prev(nNodes, -1);
  dist[0] = 0;
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>, std::greater<>> pq;
  pq.push({0, 0});
  while (!pq.empty()) {
    auto [dcur, x] = pq.top();
    pq.pop();
    if (dcur > dist[x] + 1e-15) continue;
    if (x == bIdx) break;
    for (int y = 0; y < nNodes; y++) {
      if (y == x || y == 0) continue;
      if (!visible(x, y)) continue;
      double nd = dist[x] + distance(nodes[x], nodes[y]);
      if (nd < dist[y] - 1e-15) {
        dist[y] = nd;
        prev[y] = x;
        pq.push({nd, y});
      }
    }
  }
  if (!std::isfinite(dist[bIdx])) throw std::runtime_error("funnelInSector: no path through sector");

  std::vector<int> pathNodes;
  for (int x = bIdx; x != -1; x = prev[x]) pathNodes.push_back(x);
  std::reverse(pathNodes.begin(), pathNodes.end());

  auto surfaceOf = [&](int idx) -> SurfacePoint {
    if (idx == 0) return A.point;
    if (idx == bIdx) return B.point;
    if (idx == apexIdx) return SurfacePoint::vertex(ctx.v);
    return SurfacePoint::vertex(spokes[idx - 1].linkVertex);
  };
  auto wedgeFaceAt = [&](double ang) {
    int interval = 0;
    for (int s = 0; s < m; s++) {
      if (ang > spokes[s].psi) interval = s + 1;
    }
    return star.fan[wedgeOfInterval[interval]].first;
  };

  frag.length = dist[bIdx];
  for (size_t step = 0; step + 1 < pathNodes.size(); step++) {
    Vec2 P = nodes[pathNodes[step]], Q = nodes[pathNodes[step + 1]];
    frag.points.push_back(surfaceOf(pathNodes[step]));
    // spoke crossings strictly inside this straight piece
    struct Crossing {
      double t, radius;
      int spoke;
    };
    std::vector<Crossing> crossings;
    for (int s = 0; s < m; s++) {
      Vec2 dir{std::cos(spokes[s].psi), std::sin(spokes[s].psi)};
      double c1 = cross(dir, P), c2 = cross(dir, Q);
      if ((c1 > tol && c2 < -tol) || (c1 < -tol && c2 > tol)) {
        double t = c1 / (c1 - c2);
        Vec2 X = P + (Q - P) * t;
        double r = dot(dir, X);
        if (r > tol) crossings.push_back({t, r, s});
      }
    }
    std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) { return a.t < b.t; });
    Vec2 last = P;
    for (const auto& c : crossings) {
      const SectorSpoke& sp = spokes[c.spoke];
      double param = c.radius / sp.length;
      const EdgeData& e = mesh.edge(sp.edge);
      double tc = e.vA == ctx.v ? param : 1 - param;
      SurfacePoint cp = canonicalizePoint(mesh, SurfacePoint::edge(sp.edge, tc));
      Vec2 hit = P + (Q - P) * c.t;
      frag.faces.push_back(wedgeFaceAt(angleOf((last + hit) * 0.5)));
      frag.points.push_back(cp);
      last = hit;
    }
    Vec2 midFinal = (last + Q) * 0.5;
    if (norm(midFinal) <= tol) {
      // segment into or out of the apex: use the wedge of the far endpoint
      midFinal = norm(Q) > norm(last) ? Q : last;
    }
    frag.faces.push_back(wedgeFaceAt(angleOf(midFinal)));
  }
  frag.points.push_back(B.point);
  return frag;
}

PathFragment vertexPath(int v, const Gate& A, const Gate& B) {
  PathFragment frag;
  frag.points = {A.point, SurfacePoint::vertex(v), B.point};
  frag.faces = {A.face, B.face};
  frag.length = A.radius + B.radius;
  return frag;
}

} // namespace

std::vector<Arc> decomposeArcs(const IntrinsicMesh& mesh, const CurveGeometry& g, int starVertex) {
  StarContext ctx = starContext(mesh, starVertex);
  int n = g.size();
  std::vector<Zone> ptZone(n), segZone(n);
  for (int i = 0; i < n; i++) {
    ptZone[i] = pointZone(ctx, g.point(i));
    segZone[i] = segmentZone(ctx, g.segment(i));
  }
  auto inStar = [&](Zone z) { return z != Zone::Outside; };

  std::vector<Arc> arcs;
  bool allIn = true;
  for (int i = 0; i < n; i++) {
    if (!inStar(ptZone[i]) || !inStar(segZone[i])) allIn = false;
  }
  StarDecomposition d = decomposeStar(mesh, g, ctx);
  if (allIn) {
    Arc arc;
    arc.firstPoint = 0;
    arc.lastPoint = n - 1;
    arc.meetsInterior = std::any_of(ptZone.begin(), ptZone.end(), [](Zone z) { return z == Zone::Interior; }) ||
                        std::any_of(segZone.begin(), segZone.end(), [](Zone z) { return z == Zone::Interior; });
    arc.interiorLoop = d.allInterior;
    for (const auto& run : d.runs) {
      arc.throughVertex = arc.throughVertex || run.throughVertex;
      arc.gates.push_back(run.A);
      arc.gates.push_back(run.B);
    }
    arcs.push_back(arc);
    return arcs;
  }

  // maximal cyclic stretches of in-star elements
  std::vector<char> visited(n, 0);
  for (int i = 0; i < n; i++) {
    bool prevOutside = !inStar(segZone[g.wrap(i - 1)]);
    if (!inStar(ptZone[i]) || !prevOutside || visited[i]) continue;
    Arc arc;
    arc.firstPoint = i;
    int jq = i;
    while (true) {
      visited[g.wrap(jq)] = 1;
      if (inStar(ptZone[g.wrap(jq)])) {
        if (ptZone[g.wrap(jq)] == Zone::Interior) arc.meetsInterior = true;
        if (g.point(jq).isVertex() && g.point(jq).id == starVertex) arc.throughVertex = true;
      }
      if (!inStar(segZone[g.wrap(jq)])) break;
      if (segZone[g.wrap(jq)] == Zone::Interior) arc.meetsInterior = true;
      jq++;
      if (g.wrap(jq) == i) break;
    }
    arc.lastPoint = g.wrap(jq);
    for (const auto& run : d.runs) {
      // gates belonging to this stretch
      int span = (arc.lastPoint - arc.firstPoint + n) % n;
      int offA = (run.gateA - arc.firstPoint + n) % n;
      if (offA <= span) {
        arc.gates.push_back(run.A);
        arc.gates.push_back(run.B);
      }
    }
    arcs.push_back(arc);
  }
  return arcs;
}

RegionAngles regionAngles(const IntrinsicMesh& mesh, int starVertex, const Gate& A, const Gate& B) {
  double cone = mesh.star(starVertex).coneAngle;
  RegionAngles out;
  out.right = wrapAngle(B.fanAngle - A.fanAngle, cone);
  out.left = cone - out.right;
  return out;
}

PathFragment shortestPathInRegion(const IntrinsicMesh& mesh, int starVertex, const Gate& A, const Gate& B,
                                  bool rightRegion) {
  StarContext ctx = starContext(mesh, starVertex);
  RegionAngles ra = regionAngles(mesh, starVertex, A, B);
  if (rightRegion) {
    return funnelInSector(mesh, ctx, A, B, ra.right);
  }
  PathFragment rev = funnelInSector(mesh, ctx, B, A, ra.left);
  std::reverse(rev.points.begin(), rev.points.end());
  std::reverse(rev.faces.begin(), rev.faces.end());
  return rev;
}

PathFragment straightenArc(const IntrinsicMesh& mesh, int starVertex, const Gate& A, const Gate& B,
                           bool throughVertex, double liftDelta) {
  const VertexStar& star = mesh.star(starVertex);
  double tol = geomTolerance();
  double cone = star.coneAngle;
  double thetaR = throughVertex ? wrapAngle(B.fanAngle - A.fanAngle, cone) : wrapAngle(liftDelta, cone);
  double thetaL = cone - thetaR;
  StarContext ctx = starContext(mesh, starVertex);

  if (star.convex) {
    if (throughVertex && thetaR <= kPi + tol && thetaL <= kPi + tol) {
      return vertexPath(starVertex, A, B);
    }
    if (thetaL > kPi + tol) {
      return funnelInSector(mesh, ctx, A, B, thetaR); // pull into the right region
    }
    if (thetaR > kPi + tol) {
      PathFragment rev = funnelInSector(mesh, ctx, B, A, thetaL); // left region
      std::reverse(rev.points.begin(), rev.points.end());
      std::reverse(rev.faces.begin(), rev.faces.end());
      return rev;
    }
    // both regions admissible: stay on the side the arc came from
    if (liftDelta >= 0) {
      return funnelInSector(mesh, ctx, A, B, std::min(std::max(liftDelta, thetaR), cone));
    }
    PathFragment rev = funnelInSector(mesh, ctx, B, A, std::min(-liftDelta, cone));
    std::reverse(rev.points.begin(), rev.points.end());
    std::reverse(rev.faces.begin(), rev.faces.end());
    return rev;
  }
  // concave star
  if (thetaR >= kPi - tol && thetaL >= kPi - tol) {
    return vertexPath(starVertex, A, B);
  }
  if (thetaR < kPi - tol) {
    return funnelInSector(mesh, ctx, A, B, thetaR);
  }
  PathFragment rev = funnelInSector(mesh, ctx, B, A, thetaL);
  std::reverse(rev.points.begin(), rev.points.end());
  std::reverse(rev.faces.begin(), rev.faces.end());
  return rev;
}

namespace {

struct StarPassResult {
  bool collapsed = false;
  SurfacePoint collapseAt;
  bool changed = false;
  PLCurve curve;
};

StarPassResult applyStar(const IntrinsicMesh& mesh, const CurveGeometry& g, int v) {
  StarPassResult out;
  StarContext ctx = starContext(mesh, v);
  StarDecomposition d = decomposeStar(mesh, g, ctx);
  if (!d.anyBoundary) {
    if (d.allInterior) {
      out.collapsed = true;
      out.collapseAt = g.point(0);
    }
    return out;
  }
  if (d.runs.empty()) return out;

  struct Planned {
    int gateA, gateB;
    PathFragment frag;
  };
  std::vector<Planned> planned;
  for (const auto& run : d.runs) {
    PathFragment frag = straightenArc(mesh, v, run.A, run.B, run.throughVertex, run.liftDelta);
    if (frag.length < run.length) {
      planned.push_back({run.gateA, run.gateB, std::move(frag)});
    }
  }
  if (planned.empty()) return out;

  int n = g.size();
  std::map<int, const Planned*> runStart;
  std::set<int> skipPoints; // interior points of replaced runs
  for (const auto& p : planned) {
    runStart[p.gateA] = &p;
    int span = (p.gateB - p.gateA + n) % n;
    if (span == 0) span = n;
    for (int off = 1; off < span; off++) skipPoints.insert(g.wrap(p.gateA + off));
  }

  PLCurve old = g.toCurve();
  PLCurve next;
  // anchor: a surviving point that is not strictly inside any replaced run
  int anchor = -1;
  for (int i = 0; i < n; i++) {
    if (!skipPoints.count(i)) {
      anchor = i;
      break;
    }
  }
  if (anchor < 0) throw std::runtime_error("applyStar: no surviving point to anchor the rebuild");

  int i = anchor;
  int guard = 0;
  do {
    if (++guard > 4 * n + 8) throw std::runtime_error("applyStar: rebuild walk runaway");
    auto it = runStart.find(i);
    if (it != runStart.end()) {
      const Planned& p = *it->second;
      // gate A plus the fragment body; gate B is appended on the next loop
      next.points.push_back(old.points[i]);
      next.segmentFace.push_back(p.frag.faces.empty() ? old.segmentFace[i] : p.frag.faces[0]);
      for (size_t q = 1; q + 1 < p.frag.points.size(); q++) {
        next.points.push_back(p.frag.points[q]);
        next.segmentFace.push_back(p.frag.faces[q]);
      }
      int span = (p.gateB - p.gateA + n) % n;
      if (span == 0) span = n;
      i = g.wrap(i + span);
    } else {
      next.points.push_back(old.points[i]);
      next.segmentFace.push_back(old.segmentFace[i]);
      i = g.wrap(i + 1);
    }
  } while (i != anchor);

  out.changed = true;
  out.curve = std::move(next);
  return out;
}

} // namespace

std::variant<PLCurve, CollapseMarker> phi(const IntrinsicMesh& mesh, const PLCurve& curve) {
  PLCurve current = CurveGeometry::make(mesh, curve).toCurve();
  for (int v = 0; v < mesh.numVertices(); v++) {
    CurveGeometry g = CurveGeometry::make(mesh, current);
    StarPassResult res = applyStar(mesh, g, v);
    if (res.collapsed) return CollapseMarker{res.collapseAt};
    if (res.changed) current = CurveGeometry::make(mesh, res.curve).toCurve();
  }
  return current;
}

FlowOutcome iterateFlow(const IntrinsicMesh& mesh, const PLCurve& start, double tolFlow, int maxIter,
                        double tolCheck) {
  FlowOutcome out;
  PLCurve c = CurveGeometry::make(mesh, start).toCurve();
  double len = curveLength(mesh, c);
  out.lengthTrace.push_back(len);
  for (int iter = 1; iter <= maxIter; iter++) {
    auto res = phi(mesh, c);
    if (std::holds_alternative<CollapseMarker>(res)) {
      out.status = FlowOutcome::Status::Collapsed;
      out.collapsePoint = std::get<CollapseMarker>(res).at;
      out.iterations = iter;
      return out;
    }
    c = std::get<PLCurve>(res);
    double newLen = curveLength(mesh, c);
    double decrease = len - newLen;
    out.lengthTrace.push_back(newLen);
    out.residual = decrease;
    out.iterations = iter;
    len = newLen;
    if (decrease < tolFlow) {
      NumericReport rep = checkCurveNumeric(mesh, c, tolCheck);
      if (rep.accepted) {
        out.status = FlowOutcome::Status::Converged;
        out.curve = c;
        out.report = rep;
        if (CurveGeometry::make(mesh, c).touchesVertex()) {
          try {
            CheckResult cr = checkWord(mesh, extractWord(mesh, c));
            if (std::holds_alternative<Certificate>(cr)) out.certificate = std::get<Certificate>(cr);
          } catch (const std::exception&) {
            // certification is best-effort here; the numeric report stands
          }
        }
        return out;
      }
    }
  }
  out.status = FlowOutcome::Status::MaxIterations;
  out.curve = c;
  out.report = checkCurveNumeric(mesh, c, tolCheck);
  return out;
}

} // namespace qgeo
