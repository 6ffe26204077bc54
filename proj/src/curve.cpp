#include "qgeo/curve.h"
#include "qgeo/direction.h"

#include <algorithm>
#include <set>

namespace qgeo {

namespace {

// Edge carrying the straight segment between two points, or -1. Two corners
// of a face are always joined by a side, and a vertex joined to a point on
// an incident edge runs along that edge.
int commonEdge(const IntrinsicMesh& mesh, const SurfacePoint& p, const SurfacePoint& q) {
  if (p.isEdge() && q.isEdge()) return p.id == q.id ? p.id : -1;
  if (p.isVertex() && q.isVertex()) return edgeBetween(mesh, p.id, q.id);
  const SurfacePoint& v = p.isVertex() ? p : q;
  const SurfacePoint& e = p.isVertex() ? q : p;
  if (!v.isVertex() || !e.isEdge()) return -1;
  const EdgeData& ed = mesh.edge(e.id);
  return (ed.vA == v.id || ed.vB == v.id) ? e.id : -1;
}

double edgeParamOf(const IntrinsicMesh& mesh, int e, const SurfacePoint& p) {
  if (p.isEdge()) return p.t;
  if (p.isVertex()) return mesh.edge(e).vA == p.id ? 0.0 : 1.0;
  throw std::runtime_error("edgeParamOf: not on edge");
}

} // namespace

CurveGeometry CurveGeometry::make(const IntrinsicMesh& mesh, const PLCurve& curve) {
  if (curve.points.empty()) throw std::runtime_error("CurveGeometry: empty curve");
  CurveGeometry g;
  std::vector<int> hints;
  size_t n = curve.points.size();
  for (size_t i = 0; i < n; i++) {
    SurfacePoint p = canonicalizePoint(mesh, curve.points[i]);
    int hint = i < curve.segmentFace.size() ? curve.segmentFace[i] : -1;
    if (!g.points_.empty() && pointsEqual(mesh, g.points_.back(), p)) {
      // merging drops the shorter of the two hinted segments
      if (!hints.empty() && hints.back() < 0) hints.back() = hint;
      continue;
    }
    g.points_.push_back(p);
    hints.push_back(hint);
  }
  while (g.points_.size() > 1 && pointsEqual(mesh, g.points_.back(), g.points_.front())) {
    g.points_.pop_back();
    hints.pop_back();
  }

  int m = static_cast<int>(g.points_.size());
  g.segments_.resize(m);
  for (int i = 0; i < m; i++) {
    const SurfacePoint& p = g.points_[i];
    const SurfacePoint& q = g.points_[(i + 1) % m];
    SegmentInfo& seg = g.segments_[i];
    if (m == 1) {
      seg.face = facesContaining(mesh, p)[0];
      seg.a = seg.b = chartPosition(mesh, seg.face, p);
      seg.length = 0;
      continue;
    }
    int e = commonEdge(mesh, p, q);
    if (e >= 0) {
      seg.onEdge = true;
      seg.edge = e;
      seg.tA = edgeParamOf(mesh, e, p);
      seg.tB = edgeParamOf(mesh, e, q);
      seg.face = mesh.edge(e).sideA.face;
      seg.a = chartPosition(mesh, seg.face, p);
      seg.b = chartPosition(mesh, seg.face, q);
      seg.length = std::abs(seg.tB - seg.tA) * mesh.edge(e).length;
    } else {
      std::vector<int> fa = facesContaining(mesh, p);
      std::vector<int> fb = facesContaining(mesh, q);
      std::vector<int> shared;
      std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(shared));
      if (shared.empty()) {
        throw std::runtime_error("CurveGeometry: consecutive points " + describe(p) + " and " + describe(q) +
                                 " share no face");
      }
      int hint = hints[i];
      int f = shared[0];
      if (hint >= 0 && std::find(shared.begin(), shared.end(), hint) != shared.end()) f = hint;
      seg.face = f;
      seg.a = chartPosition(mesh, f, p);
      seg.b = chartPosition(mesh, f, q);
      seg.length = distance(seg.a, seg.b);
    }
    g.totalLength_ += seg.length;
  }
  return g;
}

bool CurveGeometry::touchesVertex() const {
  return std::any_of(points_.begin(), points_.end(), [](const SurfacePoint& p) { return p.isVertex(); });
}

PLCurve CurveGeometry::toCurve() const {
  PLCurve c;
  c.points = points_;
  c.segmentFace.reserve(segments_.size());
  for (const auto& s : segments_) c.segmentFace.push_back(s.face);
  return c;
}

double curveLength(const IntrinsicMesh& mesh, const PLCurve& curve) {
  return CurveGeometry::make(mesh, curve).totalLength();
}

Direction segmentDirection(const IntrinsicMesh& mesh, const CurveGeometry& g, int seg, bool fromStart) {
  const SegmentInfo& s = g.segment(seg);
  Vec2 dir = fromStart ? normalize(s.b - s.a) : normalize(s.a - s.b);
  const SurfacePoint& anchor = fromStart ? g.point(seg) : g.point(seg + 1);
  if (anchor.isVertex()) {
    return Direction::atVertexAngle(anchor.id, vertexDirectionOf(mesh, anchor.id, s.face, dir));
  }
  return Direction::inFace(s.face, dir);
}

CrossingWord extractWord(const IntrinsicMesh& mesh, const PLCurve& curve) {
  CurveGeometry g = CurveGeometry::make(mesh, curve);
  CrossingWord word;
  int n = g.size();
  for (int i = 0; i < n; i++) {
    const SurfacePoint& p = g.point(i);
    const SegmentInfo& segPrev = g.segment(i - 1);
    const SegmentInfo& segNext = g.segment(i);
    if (p.isVertex()) {
      word.letters.push_back(Letter::vertex(p.id));
    } else if (p.isEdge()) {
      bool partOfFollow = (segPrev.onEdge && segPrev.edge == p.id) || (segNext.onEdge && segNext.edge == p.id);
      if (!partOfFollow) word.letters.push_back(Letter::cross(p.id));
    }
    if (segNext.onEdge && n > 1) {
      // one Follow letter per maximal same-edge run; vertex letters break runs
      bool continuation = segPrev.onEdge && segPrev.edge == segNext.edge && !p.isVertex();
      if (!continuation) word.letters.push_back(Letter::follow(segNext.edge));
    }
  }
  return word;
}

} // namespace qgeo
