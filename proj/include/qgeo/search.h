#pragma once

#include "qgeo/verify.h"

#include <span>

namespace qgeo {

// A straight segment between two vertices with no vertex in its interior:
// either a mesh edge traversed along its length, or a chord crossing the
// listed edges in order.
struct GeodesicSegment {
  int vStart = -1, vEnd = -1;
  std::vector<int> crossedEdges; // empty for a bare edge
  int followedEdge = -1;         // set exactly when crossedEdges is empty
  double length = 0;
  Direction exitDir;  // at vStart, along the segment
  Direction entryDir; // at vEnd, pointing back along the segment

  bool isBareEdge() const { return followedEdge >= 0; }
};

struct SearchConfig {
  double maxSegmentLength = 0;  // 0: derive from maxTotalLength
  double maxTotalLength = 0;    // 0: the mesh edge sum
  long long maxWordLength = 0;  // 0: the eta bound
  int maxSolutions = 0;         // 0: unlimited
  long long nodeBudget = 10000000;
  int threads = 1;
};

struct EnumerationResult {
  std::vector<GeodesicSegment> segments; // sorted by (length, vEnd, word)
  bool complete = true;
  long long nodesVisited = 0;
};

// All geodesic segments leaving vStart with length at most maxLen, found by
// depth-first propagation of the direction wedge that stays consistent with
// the unfolded strip. A branch dies when its wedge empties, its frontier
// leaves the radius, or a spiral exceeds the per-star crossing cap.
EnumerationResult enumerateSegments(const IntrinsicMesh& mesh, int vStart, double maxLen, long long nodeBudget);

// Enumeration over every start vertex; deterministic merge.
EnumerationResult enumerateAllSegments(const IntrinsicMesh& mesh, double maxLen, long long nodeBudget, int threads);

struct AssemblyResult {
  std::vector<Certificate> certificates; // deduplicated, sorted by (length, word)
  bool complete = true;
  long long chainsExplored = 0;
};

// Cyclic chains of segments whose junctions satisfy the vertex angle rules,
// filtered through checkWord and deduplicated up to rotation and reversal.
AssemblyResult assembleClosed(const IntrinsicMesh& mesh, std::span<const GeodesicSegment> segments,
                              const SearchConfig& config);

struct EtaReport {
  double edgeSum, minAltitude;
  int maxDegree;
  long long eta;
};
EtaReport computeEtaBound(const IntrinsicMesh& mesh);

class PushError : public std::runtime_error {
public:
  enum class Kind { Precondition, NoVertexHit };
  PushError(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind(kind) {}
  Kind kind;
};

// Translate a vertex-free closed geodesic across its unfolded band until the
// first vertex incidence. Length is preserved; the result passes the numeric
// check and contains at least one vertex point.
PLCurve pushToVertex(const IntrinsicMesh& mesh, const PLCurve& geodesic, double tol = 1e-7);

} // namespace qgeo
