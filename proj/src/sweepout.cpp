#include "qgeo/diskflow.h"

#include <algorithm>
#include <set>

namespace qgeo {

namespace {

double canonicalParam(const IntrinsicMesh& mesh, int edge, int fromVertex, double fraction) {
  // fraction measured from fromVertex along the edge
  return mesh.edge(edge).vA == fromVertex ? fraction : 1 - fraction;
}

int edgeConnecting(const IntrinsicMesh& mesh, int f, int x, int y) {
  for (int s = 0; s < 3; s++) {
    int va = mesh.face(f).vertex[(s + 1) % 3], vb = mesh.face(f).vertex[(s + 2) % 3];
    if ((va == x && vb == y) || (va == y && vb == x)) return mesh.sideEdge(f, s);
  }
  throw std::runtime_error("edgeConnecting: vertices are not a side of the face");
}

// Triangle loop around corner `apexCorner` of face f at fraction s from the
// apex: apex -> point on one adjacent side -> point on the other -> apex.
PLCurve cornerLoop(const IntrinsicMesh& mesh, int f, int apexCorner, double s) {
  const FaceData& fd = mesh.face(f);
  int v = fd.vertex[apexCorner];
  int c1 = (apexCorner + 1) % 3, c2 = (apexCorner + 2) % 3;
  int eTo1 = mesh.sideEdge(f, c2); // side between apex and corner c1
  int eTo2 = mesh.sideEdge(f, c1); // side between apex and corner c2
  PLCurve curve;
  curve.points.push_back(SurfacePoint::vertex(v));
  curve.points.push_back(SurfacePoint::edge(eTo1, canonicalParam(mesh, eTo1, v, s)));
  curve.points.push_back(SurfacePoint::edge(eTo2, canonicalParam(mesh, eTo2, v, s)));
  curve.segmentFace = {f, f, f};
  return curve;
}

} // namespace

std::vector<PLCurve> sweepOutFibers(const IntrinsicMesh& mesh, std::span<const int> shelling, int samplesPerFace) {
  if (static_cast<int>(shelling.size()) != mesh.numFaces()) {
    throw std::runtime_error("sweepOutFibers: shelling order must cover every face");
  }
  if (samplesPerFace < 1) throw std::runtime_error("sweepOutFibers: need at least one sample per face");
  std::vector<PLCurve> fibers;
  fibers.reserve(shelling.size() * samplesPerFace);
  int nF = mesh.numFaces();

  std::vector<int> prefix;
  for (int idx = 0; idx < nF; idx++) {
    int f = shelling[idx];
    std::vector<std::pair<int, int>> walk;
    if (idx > 0 && idx < nF - 1) walk = diskBoundaryWalk(mesh, prefix);
    for (int jq = 0; jq < samplesPerFace; jq++) {
      double s = double(jq + 1) / double(samplesPerFace + 1);
      if (idx == 0) {
        fibers.push_back(cornerLoop(mesh, f, 0, s));
        continue;
      }
      if (idx == nF - 1) {
        fibers.push_back(cornerLoop(mesh, f, 0, 1 - s));
        continue;
      }
      int nW = static_cast<int>(walk.size());
      std::vector<int> sharedAt;
      for (int w = 0; w < nW; w++) {
        if (mesh.sideOfEdge(f, walk[w].second) >= 0) sharedAt.push_back(w);
      }
      PLCurve fiber;
      if (sharedAt.size() == 1) {
        // one attached side a->b: chords parallel to it, sweeping toward the
        // opposite corner c
        int w = sharedAt[0];
        int a = walk[w].first;
        int b = walk[(w + 1) % nW].first;
        int c = mesh.face(f).vertex[mesh.sideOfEdge(f, walk[w].second)];
        int eAC = edgeConnecting(mesh, f, a, c);
        int eBC = edgeConnecting(mesh, f, b, c);
        for (int q = 0; q < nW; q++) {
          fiber.points.push_back(SurfacePoint::vertex(walk[q].first));
          if (q == w) {
            fiber.points.push_back(SurfacePoint::edge(eAC, canonicalParam(mesh, eAC, a, s)));
            fiber.points.push_back(SurfacePoint::edge(eBC, canonicalParam(mesh, eBC, b, s)));
            fiber.segmentFace.insert(fiber.segmentFace.end(), {-1, f, -1});
          } else {
            fiber.segmentFace.push_back(-1);
          }
        }
      } else if (sharedAt.size() == 2) {
        // two attached sides u->w->v: chords cutting off the shared corner w
        int w1 = sharedAt[0], w2 = sharedAt[1];
        if ((w1 + 1) % nW != w2) std::swap(w1, w2);
        if ((w1 + 1) % nW != w2) {
          throw std::runtime_error("sweepOutFibers: attached sides are not consecutive on the boundary");
        }
        int e1 = walk[w1].second, e2 = walk[w2].second;
        int sharedCorner = walk[w2].first;
        for (int q = 0; q < nW; q++) {
          if (q == w2) continue; // the shared corner drops out
          fiber.points.push_back(SurfacePoint::vertex(walk[q].first));
          if (q == w1) {
            fiber.points.push_back(SurfacePoint::edge(e1, canonicalParam(mesh, e1, sharedCorner, s)));
            fiber.points.push_back(SurfacePoint::edge(e2, canonicalParam(mesh, e2, sharedCorner, s)));
            fiber.segmentFace.insert(fiber.segmentFace.end(), {-1, f, -1});
          } else {
            fiber.segmentFace.push_back(-1);
          }
        }
      } else {
        throw std::runtime_error("sweepOutFibers: face attaches to the region along " +
                                 std::to_string(sharedAt.size()) + " sides mid-shelling");
      }
      fibers.push_back(std::move(fiber));
    }
    prefix.push_back(f);
  }
  return fibers;
}

} // namespace qgeo
