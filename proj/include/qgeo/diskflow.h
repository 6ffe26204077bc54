#pragma once

#include "qgeo/curve.h"
#include "qgeo/verify.h"

#include <optional>
#include <variant>

namespace qgeo {

// Per-star curve straightening. A pass over all stars never increases
// length, and the curves it fixes are exactly the ones checkCurveNumeric
// accepts (up to tolerance).

struct Gate {
  SurfacePoint point;
  int pointIndex = -1; // index in the canonical curve
  int face = -1;       // face context resolving the fan angle
  double fanAngle = 0;
  double radius = 0;
  bool openLeft = false, openRight = false;
};

struct Arc {
  int firstPoint = -1, lastPoint = -1; // cyclic point range in the closed star
  bool meetsInterior = false;
  bool interiorLoop = false; // the whole curve, strictly inside the star
  bool throughVertex = false;
  std::vector<Gate> gates;
};

// Connected stretches of the curve inside the closed star of a vertex, with
// their gates (boundary points giving one-sided access to the open star).
std::vector<Arc> decomposeArcs(const IntrinsicMesh& mesh, const CurveGeometry& g, int starVertex);

struct RegionAngles {
  double right = 0, left = 0; // apex angles of the two regions cut by the gate chords
};

// Angles at the star vertex of the two regions determined by gates A and B,
// labeled by the curve orientation (A entry, B exit). Independent of the
// path between the gates.
RegionAngles regionAngles(const IntrinsicMesh& mesh, int starVertex, const Gate& A, const Gate& B);

// Shortest path from A to B inside the region swept counterclockwise
// (rightRegion) or clockwise from A's ray. The region unfolds flat, so this
// is a funnel path in a simple polygon; output is a dense curve fragment.
struct PathFragment {
  std::vector<SurfacePoint> points;
  std::vector<int> faces;
  double length = 0;
};
PathFragment shortestPathInRegion(const IntrinsicMesh& mesh, int starVertex, const Gate& A, const Gate& B,
                                  bool rightRegion);

// One straightening step for the arc between consecutive gates A and B. The
// case split follows the convexity of the star, whether the stretch passes
// through the vertex, and the region angles; ties at pi resolve toward
// keeping the vertex.
PathFragment straightenArc(const IntrinsicMesh& mesh, int starVertex, const Gate& A, const Gate& B,
                           bool throughVertex, double liftDelta);

struct CollapseMarker {
  SurfacePoint at;
};

// One straightening pass over every star in ascending vertex order.
std::variant<PLCurve, CollapseMarker> phi(const IntrinsicMesh& mesh, const PLCurve& curve);

struct FlowOutcome {
  enum class Status { Converged, Collapsed, MaxIterations };
  Status status = Status::MaxIterations;
  PLCurve curve;
  SurfacePoint collapsePoint;
  NumericReport report;
  std::vector<double> lengthTrace; // length after each pass, starting with the input
  double residual = 0;             // last per-pass decrease
  std::optional<Certificate> certificate; // present when a vertex-anchored word certifies
  int iterations = 0;
};

// Iterate phi until the per-pass decrease drops below tolFlow and the curve
// verifies numerically at tolCheck, the curve collapses, or maxIter passes.
FlowOutcome iterateFlow(const IntrinsicMesh& mesh, const PLCurve& start, double tolFlow, int maxIter,
                        double tolCheck);

// Closed curves sweeping the sphere face by face in shelling order: each
// fiber is a prefix boundary with the active face partially swept by a chord
// parallel to its attachment. Every fiber is simple with length at most the
// edge sum; fibers bound nested disks in list order.
std::vector<PLCurve> sweepOutFibers(const IntrinsicMesh& mesh, std::span<const int> shelling, int samplesPerFace);

} // namespace qgeo
