#include "support/test_meshes.h"
#include "support/convex_hull.h"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace qgeo::testing {

namespace {

// Pair up sides by their endpoint vertex pair; valid when every pair occurs
// exactly twice.
std::vector<GluePair> gluingFromVertexPairs(const std::vector<FaceData>& faces) {
  std::map<std::pair<int, int>, std::vector<SideRef>> bySidePair;
  for (size_t f = 0; f < faces.size(); f++) {
    for (int s = 0; s < 3; s++) {
      int a = faces[f].vertex[(s + 1) % 3], b = faces[f].vertex[(s + 2) % 3];
      bySidePair[{std::min(a, b), std::max(a, b)}].push_back({static_cast<int>(f), s});
    }
  }
  std::vector<GluePair> glue;
  for (const auto& [pair, sides] : bySidePair) {
    if (sides.size() != 2) throw std::runtime_error("gluingFromVertexPairs: ambiguous side pair");
    glue.push_back({sides[0], sides[1]});
  }
  return glue;
}

FaceData equilateral(int a, int b, int c) { return {{a, b, c}, {1, 1, 1}}; }

} // namespace

IntrinsicMesh tetrahedron() {
  std::vector<FaceData> faces = {
      equilateral(0, 1, 2), equilateral(0, 2, 3), equilateral(2, 1, 3), equilateral(1, 0, 3)};
  return IntrinsicMesh::build(faces, gluingFromVertexPairs(faces));
}

IntrinsicMesh doubledTriangle() {
  std::vector<FaceData> faces = {equilateral(0, 1, 2), equilateral(0, 2, 1)};
  return IntrinsicMesh::build(faces, gluingFromVertexPairs(faces));
}

IntrinsicMesh triangulatedCube() {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; i++) {
    pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
  }
  // diagonals through corners 0 and 7
  std::vector<std::array<int, 3>> faces = {
      {0, 2, 3}, {0, 3, 1}, // z = 0
      {4, 5, 7}, {4, 7, 6}, // z = 1
      {0, 1, 5}, {0, 5, 4}, // y = 0
      {2, 6, 7}, {2, 7, 3}, // y = 1
      {0, 4, 6}, {0, 6, 2}, // x = 0
      {1, 3, 7}, {1, 7, 5}, // x = 1
  };
  return IntrinsicMesh::fromExtrinsic(pts, faces);
}

IntrinsicMesh icosahedron() {
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> pts;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-1.0, 1.0}) {
      pts.push_back({0, s1 * 0.5, s2 * phi * 0.5});
      pts.push_back({s1 * 0.5, s2 * phi * 0.5, 0});
      pts.push_back({s2 * phi * 0.5, 0, s1 * 0.5});
    }
  }
  return IntrinsicMesh::fromExtrinsic(pts, convexHull(pts));
}

IntrinsicMesh pillow() {
  double r2 = std::sqrt(2.0);
  std::vector<FaceData> faces = {
      {{0, 1, 2}, {1, r2, 1}},
      {{0, 2, 3}, {1, 1, r2}},
      {{0, 2, 1}, {1, 1, r2}},
      {{0, 3, 2}, {1, r2, 1}},
  };
  std::vector<GluePair> glue = {
      {{0, 2}, {2, 1}}, // rim 0-1
      {{0, 0}, {2, 0}}, // rim 1-2
      {{1, 0}, {3, 0}}, // rim 2-3
      {{1, 1}, {3, 2}}, // rim 3-0
      {{0, 1}, {1, 2}}, // front diagonal
      {{2, 2}, {3, 1}}, // back diagonal
  };
  return IntrinsicMesh::build(faces, glue);
}

IntrinsicMesh concaveSpindle() {
  std::vector<FaceData> faces;
  auto ring = [](int i) { return 1 + (i % 8); };
  for (int i = 0; i < 8; i++) {
    faces.push_back({{0, ring(i), ring(i + 1)}, {1, 1, 1}});
  }
  for (int i = 0; i < 8; i++) {
    faces.push_back({{9, ring(i + 1), ring(i)}, {1, 1.5, 1.5}});
  }
  return IntrinsicMesh::build(faces, gluingFromVertexPairs(faces));
}

IntrinsicMesh randomConvexHull(unsigned seed, int nPoints) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Vec3> pts;
  int guard = 0;
  while (static_cast<int>(pts.size()) < nPoints) {
    if (++guard > 100000) throw std::runtime_error("randomConvexHull: rejection sampling stalled");
    Vec3 p{gauss(rng), gauss(rng), gauss(rng)};
    double n = norm(p);
    if (n < 1e-6) continue;
    p = p / n;
    bool ok = true;
    for (const auto& q : pts) {
      if (distance(p, q) < 0.45) ok = false;
    }
    if (!ok) continue;
    pts.push_back(p);
  }
  return IntrinsicMesh::fromExtrinsic(pts, convexHull(pts));
}

} // namespace qgeo::testing
