#pragma once

#include "qgeo/direction.h"
#include "qgeo/surface_point.h"
#include "qgeo/word.h"

#include <optional>

namespace qgeo {

// Closed piecewise-linear curve: a cyclic list of surface points with
// straight segments between consecutive ones, each pair lying in a common
// closed face. segmentFace optionally pins the face carrying segment i
// (from point i to point i+1); -1 lets the geometry resolver pick the
// lowest-id shared face. The hint matters on meshes where two points share
// more than one face.
struct PLCurve {
  std::vector<SurfacePoint> points;
  std::vector<int> segmentFace;

  size_t size() const { return points.size(); }
};

struct SegmentInfo {
  bool onEdge = false;
  int edge = -1; // when onEdge
  int face = -1; // carrying face (a reference incident face when onEdge)
  double tA = 0, tB = 0; // canonical edge params when onEdge
  Vec2 a, b;             // chart endpoints in `face`
  double length = 0;
};

// Canonicalized view of a closed curve: snapped points, no zero-length
// segments, each segment resolved to the edge or face that carries it.
class CurveGeometry {
public:
  static CurveGeometry make(const IntrinsicMesh& mesh, const PLCurve& curve);

  int size() const { return static_cast<int>(points_.size()); }
  const SurfacePoint& point(int i) const { return points_[wrap(i)]; }
  const SegmentInfo& segment(int i) const { return segments_[wrap(i)]; } // point i -> point i+1
  double totalLength() const { return totalLength_; }
  bool touchesVertex() const;

  PLCurve toCurve() const;
  int wrap(int i) const {
    int n = size();
    return ((i % n) + n) % n;
  }

private:
  std::vector<SurfacePoint> points_;
  std::vector<SegmentInfo> segments_;
  double totalLength_ = 0;
};

double curveLength(const IntrinsicMesh& mesh, const PLCurve& curve);

// Combinatorial type of the curve: vertices met, edges crossed, edges
// followed, in cyclic order.
CrossingWord extractWord(const IntrinsicMesh& mesh, const PLCurve& curve);

// Direction of segment `seg` at its start point (fromStart) or at its end
// point looking back along the segment (!fromStart). At mesh vertices the
// result carries the cone coordinate.
Direction segmentDirection(const IntrinsicMesh& mesh, const CurveGeometry& g, int seg, bool fromStart);

} // namespace qgeo
