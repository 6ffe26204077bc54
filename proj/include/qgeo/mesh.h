#pragma once

#include "qgeo/numerics.h"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qgeo {

// A triangulated polyhedral sphere given purely by per-face side lengths and
// side-to-side gluings. Side k of a face is the one opposite corner k, and is
// directed from corner (k+1)%3 to corner (k+2)%3 by the face orientation.
// Gluings are orientation-reversing, so the surface is oriented.
//
// Construction validates the full invariant set (triangle inequalities,
// matching glued lengths, sphere topology, orientability) and applies up to
// two barycentric subdivisions if the triangulation has loops or multiple
// edges. All derived quantities refer to the preprocessed mesh.

struct FaceData {
  std::array<int, 3> vertex;    // corner vertex ids
  std::array<double, 3> length; // side k opposite corner k
};

struct SideRef {
  int face = -1;
  int side = -1;
  bool operator==(const SideRef&) const = default;
  auto operator<=>(const SideRef&) const = default;
};

struct EdgeData {
  SideRef sideA, sideB; // the two glued incidences, sideA < sideB
  int vA = -1, vB = -1; // endpoint vertex ids; canonical direction vA -> vB, vA <= vB
  double length = 0;
};

struct VertexStar {
  std::vector<std::pair<int, int>> fan; // (face, corner) in ccw order, first = lowest face id
  std::vector<double> wedgeStart;       // cumulative cone coordinate of each fan wedge start
  double coneAngle = 0;                 // total angle around the vertex
  double curvature = 0;                 // 2*pi - coneAngle
  bool convex = true;                   // coneAngle <= 2*pi
  int degree = 0;                       // number of incident faces
};

enum class MeshErrorCode {
  InvalidFormat,
  TriangleInequalityViolation,
  DegenerateFace,
  GluingLengthMismatch,
  NonOrientable,
  NotASphere,
  PreprocessingFailed,
};

class MeshError : public std::runtime_error {
public:
  MeshError(MeshErrorCode code, std::string message) : std::runtime_error(std::move(message)), code_(code) {}
  MeshErrorCode code() const { return code_; }

private:
  MeshErrorCode code_;
};

const char* meshErrorCodeName(MeshErrorCode code);

struct GluePair {
  SideRef a, b;
};

class IntrinsicMesh {
public:
  // Validates, preprocesses (subdividing at most twice if the triangulation
  // has loops or multiple edges), and computes all derived data. Throws
  // MeshError on any violated invariant.
  static IntrinsicMesh build(std::vector<FaceData> faces, std::vector<GluePair> gluing);

  // Side lengths become Euclidean distances between the 3D corner positions.
  // Gluings are derived by matching sides on shared vertex pairs.
  static IntrinsicMesh fromExtrinsic(const std::vector<Vec3>& points, const std::vector<std::array<int, 3>>& faces);

  int numVertices() const { return static_cast<int>(stars_.size()); }
  int numEdges() const { return static_cast<int>(edges_.size()); }
  int numFaces() const { return static_cast<int>(faces_.size()); }

  const FaceData& face(int f) const { return faces_[f]; }
  const EdgeData& edge(int e) const { return edges_[e]; }
  const VertexStar& star(int v) const { return stars_[v]; }

  int sideEdge(int f, int s) const { return sideEdge_[f][s]; }
  SideRef twin(SideRef s) const;
  int otherFace(int e, int f) const;

  // Canonical planar layout of a face: corner 0 at the origin, corner 1 on
  // the positive x axis, corner 2 in the upper half plane.
  const std::array<Vec2, 3>& chart(int f) const { return charts_[f]; }
  const std::array<double, 3>& cornerAngles(int f) const { return cornerAngles_[f]; }
  double faceArea(int f) const { return areas_[f]; }

  int cornerOfVertex(int f, int v) const;  // -1 if v is not a corner of f
  int sideOfEdge(int f, int e) const;      // -1 if e is not a side of f
  // Fan index of face f around vertex v (-1 if not incident).
  int fanIndexOf(int v, int f) const;

  double edgeSum() const { return edgeSum_; }         // M
  double minAltitude() const { return minAltitude_; } // h
  int maxVertexDegree() const { return maxDegree_; }  // d
  long long etaBound() const { return etaBound_; }    // ceil((d+1)*M/h)
  double totalArea() const { return totalArea_; }
  double curvatureSum() const { return curvatureSum_; }
  int subdivisionsApplied() const { return subdivisionsApplied_; }

  bool hasExtrinsic() const { return extrinsic_.has_value(); }
  const std::vector<Vec3>& extrinsicPositions() const { return *extrinsic_; }

  // FNV-1a digest of the canonical serialized form, hex encoded.
  const std::string& contentHash() const { return contentHash_; }

private:
  IntrinsicMesh() = default;
  friend IntrinsicMesh finalizeMesh(std::vector<FaceData>, std::vector<GluePair>, int, std::optional<std::vector<Vec3>>);

  std::vector<FaceData> faces_;
  std::vector<GluePair> gluing_; // canonical order, for serialization
  std::vector<std::array<int, 3>> sideEdge_;
  std::vector<EdgeData> edges_;
  std::vector<VertexStar> stars_;
  std::vector<std::array<Vec2, 3>> charts_;
  std::vector<std::array<double, 3>> cornerAngles_;
  std::vector<double> areas_;
  double edgeSum_ = 0, minAltitude_ = 0, totalArea_ = 0, curvatureSum_ = 0;
  int maxDegree_ = 0;
  long long etaBound_ = 0;
  int subdivisionsApplied_ = 0;
  std::optional<std::vector<Vec3>> extrinsic_;
  std::string contentHash_;
};

// One barycentric subdivision of a valid mesh: 6x the faces, identical metric.
IntrinsicMesh barycentricSubdivide(const IntrinsicMesh& mesh);

// Face order whose every proper prefix union is a disk. Greedy with
// backtracking; failure on a valid sphere is an internal error.
std::vector<int> computeShelling(const IntrinsicMesh& mesh);

// The prefix-disk predicate used to certify shellings: the faces are
// edge-connected, have Euler characteristic 1, and their boundary is a single
// simple cycle.
bool prefixIsDisk(const IntrinsicMesh& mesh, std::span<const int> prefix);

// Ordered boundary walk of a face subset: (vertex, boundary edge) pairs, each
// edge directed so the subset lies to its left. Requires the subset to be a
// disk.
std::vector<std::pair<int, int>> diskBoundaryWalk(const IntrinsicMesh& mesh, std::span<const int> prefix);

struct GlobalQuantities {
  double edgeSum;
  double minAltitude;
  int maxDegree;
  long long eta;
};
GlobalQuantities globalQuantities(const IntrinsicMesh& mesh);

// Corner angles of a triangle with the given side lengths (side k opposite
// corner k), via the law of cosines.
std::array<double, 3> triangleAngles(const std::array<double, 3>& len);

} // namespace qgeo
