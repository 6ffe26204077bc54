#pragma once

#include "qgeo/curve.h"
#include "qgeo/direction.h"

#include <span>

namespace qgeo {

// Planar placement of one mesh face: the images of its three corners.
using Placement = std::array<Vec2, 3>;

// Unfold the neighbor across side s of face f, given f's placement. The
// shared side endpoints coincide and the neighbor opens on the far side.
Placement placeNeighborAcross(const IntrinsicMesh& mesh, int f, int s, const Placement& placed);

// Planar development of a face sequence crossing the given edges in order,
// with images of a start point in the first face and an end point in the
// last.
struct UnfoldedStrip {
  std::vector<int> faces;
  std::vector<Placement> placed;
  std::vector<int> crossedEdges; // crossedEdges[i] separates faces[i] and faces[i+1]
  SurfacePoint start, end;
  Vec2 startImage, endImage;
};

class NonAdjacentLetters : public std::runtime_error {
public:
  NonAdjacentLetters(int position, std::string msg) : std::runtime_error(std::move(msg)), position(position) {}
  int position;
};

// Builds the strip for start, e1..ek, end. firstFace forces the initial
// face; -1 picks the lowest-id valid one. Throws NonAdjacentLetters when
// consecutive letters share no face.
UnfoldedStrip unfoldStrip(const IntrinsicMesh& mesh, const SurfacePoint& start, std::span<const int> edges,
                          const SurfacePoint& end, int firstFace = -1);

// Realizability of the straight segment from startImage to endImage against
// the strip combinatorics: it must cross each strip edge in order, strictly
// inside the edge, with every intermediate triangle's corners on the sides
// prescribed by its entry and exit edges.
struct TraceReport {
  enum class Status { Accept, SideViolation, CrossingOutOfRange, OrderViolation, VertexGraze, DegenerateSegment };
  Status status = Status::Accept;
  int position = -1;               // offending edge index for rejections
  std::vector<double> sigmaParams; // crossing parameter along the segment, per edge
  std::vector<double> edgeParams;  // canonical parameter on the crossed edge
  double length = 0;

  bool accepted() const { return status == Status::Accept; }
};

const char* traceStatusName(TraceReport::Status s);

TraceReport traceSegment(const IntrinsicMesh& mesh, const UnfoldedStrip& strip);

// The traced segment as a curve fragment: start, one edge point per
// crossing, end, with face hints.
struct SegmentRealization {
  std::vector<SurfacePoint> points;
  std::vector<int> faces; // carrying face per sub-segment (points.size()-1 entries)
  double length = 0;
  Vec2 dirAtStart, dirAtEnd; // planar, in the first/last placed triangle (dirAtEnd points back along the segment)
};
SegmentRealization realizeSegment(const IntrinsicMesh& mesh, const UnfoldedStrip& strip, const TraceReport& report);

// Straight walk from a point. Terminates at maxLen or on hitting a vertex
// within tolerance. The result curve is an open chain (not closed).
struct RayResult {
  std::vector<SurfacePoint> points;
  std::vector<int> faces;
  CrossingWord word; // crossings met, plus the terminal vertex if hit
  bool hitVertex = false;
  int vertexId = -1;
  double length = 0;
};
RayResult traceRay(const IntrinsicMesh& mesh, const SurfacePoint& start, const Direction& dir, double maxLen);

// Maps a planar polyline drawn inside an unfolded strip back to the surface,
// inserting a point at every strip-edge crossing. Used to seed curves.
PLCurve polylineInStrip(const IntrinsicMesh& mesh, const UnfoldedStrip& strip, std::span<const Vec2> polyline,
                        bool closed);

} // namespace qgeo
