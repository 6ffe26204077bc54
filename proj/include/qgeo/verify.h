#pragma once

#include "qgeo/curve.h"
#include "qgeo/geometry.h"

#include <variant>

namespace qgeo {

// Weak simplicity: the curve admits a perturbation into an embedded closed
// curve. Transverse self-crossings are fatal; coincident sub-segment bundles
// are resolved by searching lane orders, checking that the chord diagram
// around every meeting point stays non-crossing.
struct BundleWitness {
  SurfacePoint from, to;
  int locusEdge = -1, locusFace = -1; // where the coincident strands run
  std::vector<int> laneOrder;         // traversal indices, left-to-right across the strand direction
};

struct SimplicityResult {
  enum class Status { Simple, WeaklySimple, NotWeaklySimple, Inconclusive };
  Status status = Status::Simple;
  std::vector<BundleWitness> witness;
  std::string reason;

  bool ok() const { return status == Status::Simple || status == Status::WeaklySimple; }
};

SimplicityResult checkWeaklySimple(const IntrinsicMesh& mesh, const PLCurve& curve);

// Tolerance-mode verification of a closed curve: largest bend off vertices
// (radians) and worst violation of the vertex angle rules.
struct NumericReport {
  double maxStraightnessDefect = 0;
  double maxAngleViolation = 0;
  bool accepted = false;
  int worstPoint = -1;
};

NumericReport checkCurveNumeric(const IntrinsicMesh& mesh, const PLCurve& curve, double tol);

struct VertexAngles {
  int vertex = -1;
  double left = 0, right = 0;
};

struct Certificate {
  CrossingWord word;
  PLCurve realization;
  std::vector<VertexAngles> angles;
  double length = 0;
  SimplicityResult simplicity;
  bool degenerateDoubledSegment = false;
};

struct Rejection {
  enum class Reason {
    MalformedWord,
    NoVertexLetter,
    Unrealizable,
    AngleViolation,
    NotWeaklySimple,
    SimplicityInconclusive,
  };
  Reason reason = Reason::MalformedWord;
  int position = -1;
  std::string detail;
};

const char* rejectionReasonName(Rejection::Reason r);

using CheckResult = std::variant<Certificate, Rejection>;

// Accepts iff every inter-vertex subword traces to a straight realizable
// segment (or is a followed edge), the angle rule holds at every vertex
// letter, and the assembled realization is weakly simple. The realization of
// an accepted word is unique.
CheckResult checkWord(const IntrinsicMesh& mesh, const CrossingWord& word);

} // namespace qgeo
