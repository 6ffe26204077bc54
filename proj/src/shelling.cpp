#include "qgeo/mesh.h"

#include <algorithm>
#include <map>
#include <set>

namespace qgeo {

bool prefixIsDisk(const IntrinsicMesh& mesh, std::span<const int> prefix) {
  if (prefix.empty()) return false;
  std::set<int> inPrefix(prefix.begin(), prefix.end());
  if (inPrefix.size() != prefix.size()) return false;

  // Edge-connectivity of the face set.
  std::vector<int> stack{prefix[0]};
  std::set<int> reached{prefix[0]};
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; s++) {
      int g = mesh.otherFace(mesh.sideEdge(f, s), f);
      if (inPrefix.count(g) && !reached.count(g)) {
        reached.insert(g);
        stack.push_back(g);
      }
    }
  }
  if (reached.size() != inPrefix.size()) return false;

  // Euler characteristic of the closed subcomplex.
  std::set<int> verts, edges, boundaryEdges;
  std::map<int, int> edgeFaceCount;
  for (int f : prefix) {
    for (int k = 0; k < 3; k++) verts.insert(mesh.face(f).vertex[k]);
    for (int s = 0; s < 3; s++) {
      int e = mesh.sideEdge(f, s);
      edges.insert(e);
      edgeFaceCount[e]++;
    }
  }
  long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) + static_cast<long>(prefix.size());
  if (chi != 1) return false;

  for (const auto& [e, c] : edgeFaceCount) {
    if (c == 1) boundaryEdges.insert(e);
  }
  if (boundaryEdges.empty()) return false;

  // The boundary must be one simple cycle: every boundary vertex has exactly
  // two incident boundary edges and the cycle is connected.
  std::map<int, std::vector<int>> atVertex;
  for (int e : boundaryEdges) {
    atVertex[mesh.edge(e).vA].push_back(e);
    atVertex[mesh.edge(e).vB].push_back(e);
  }
  for (const auto& [v, inc] : atVertex) {
    if (inc.size() != 2) return false;
  }
  std::set<int> cycle;
  int start = *boundaryEdges.begin();
  int cur = start, from = mesh.edge(start).vA;
  do {
    cycle.insert(cur);
    int to = mesh.edge(cur).vA == from ? mesh.edge(cur).vB : mesh.edge(cur).vA;
    const auto& inc = atVertex[to];
    cur = inc[0] == cur ? inc[1] : inc[0];
    from = to;
  } while (cur != start && cycle.size() <= boundaryEdges.size());
  return cycle.size() == boundaryEdges.size();
}

namespace {

// Incremental admissibility: the candidate shares a contiguous run of 1 or 2
// sides with the region, and when sharing a single side its opposite vertex
// is not yet part of the region (no pinch).
bool canAttach(const IntrinsicMesh& mesh, int f, const std::vector<char>& inRegion,
               const std::vector<int>& vertexUse) {
  int shared = 0;
  int sharedMask = 0;
  for (int s = 0; s < 3; s++) {
    if (inRegion[mesh.otherFace(mesh.sideEdge(f, s), f)]) {
      shared++;
      sharedMask |= 1 << s;
    }
  }
  if (shared == 0 || shared == 3) return false;
  if (shared == 1) {
    int s = sharedMask == 1 ? 0 : (sharedMask == 2 ? 1 : 2);
    int opposite = mesh.face(f).vertex[s];
    if (vertexUse[opposite] > 0) return false;
  }
  return true;
}

} // namespace

std::vector<int> computeShelling(const IntrinsicMesh& mesh) {
  int nF = mesh.numFaces();
  std::vector<int> order;
  order.reserve(nF);
  std::vector<char> inRegion(nF, 0);
  std::vector<int> vertexUse(mesh.numVertices(), 0);

  auto push = [&](int f) {
    order.push_back(f);
    inRegion[f] = 1;
    for (int k = 0; k < 3; k++) vertexUse[mesh.face(f).vertex[k]]++;
  };
  auto pop = [&]() {
    int f = order.back();
    order.pop_back();
    inRegion[f] = 0;
    for (int k = 0; k < 3; k++) vertexUse[mesh.face(f).vertex[k]]--;
  };

  // DFS over face orders; candidate lists are id-sorted for determinism. The
  // incremental rule keeps every prefix a disk, so backtracking is rare.
  std::vector<std::pair<std::vector<int>, size_t>> frames;
  push(0);
  frames.push_back({{}, 0});
  while (static_cast<int>(order.size()) < nF) {
    auto& [cands, next] = frames.back();
    if (next == 0) {
      if (static_cast<int>(order.size()) == nF - 1) {
        // The last face always closes the sphere.
        for (int f = 0; f < nF; f++) {
          if (!inRegion[f]) cands.push_back(f);
        }
      } else {
        for (int f = 0; f < nF; f++) {
          if (!inRegion[f] && canAttach(mesh, f, inRegion, vertexUse)) cands.push_back(f);
        }
      }
    }
    if (next >= cands.size()) {
      frames.pop_back();
      if (frames.empty()) {
        throw std::runtime_error("internal error: no shelling order found on a validated sphere");
      }
      pop();
      continue;
    }
    push(cands[next++]);
    frames.push_back({{}, 0});
  }
  return order;
}

std::vector<std::pair<int, int>> diskBoundaryWalk(const IntrinsicMesh& mesh, std::span<const int> prefix) {
  std::set<int> inPrefix(prefix.begin(), prefix.end());
  // Boundary edges with the face of the prefix they bound; orient each edge
  // as that face's side so the region lies to its left.
  std::map<int, SideRef> boundarySide;
  for (int f : prefix) {
    for (int s = 0; s < 3; s++) {
      int e = mesh.sideEdge(f, s);
      SideRef other = mesh.twin({f, s});
      if (!inPrefix.count(other.face)) boundarySide[e] = {f, s};
    }
  }
  if (boundarySide.empty()) throw std::runtime_error("diskBoundaryWalk: no boundary");

  // Directed walk: side s of f runs from corner (s+1)%3 to corner (s+2)%3.
  std::map<int, std::pair<int, int>> nextByStartVertex; // start vertex -> (edge, endVertex)
  for (const auto& [e, sr] : boundarySide) {
    const auto& fd = mesh.face(sr.face);
    int va = fd.vertex[(sr.side + 1) % 3];
    int vb = fd.vertex[(sr.side + 2) % 3];
    nextByStartVertex[va] = {e, vb};
  }
  std::vector<std::pair<int, int>> walk;
  int startV = nextByStartVertex.begin()->first;
  int v = startV;
  do {
    auto it = nextByStartVertex.find(v);
    if (it == nextByStartVertex.end()) throw std::runtime_error("diskBoundaryWalk: broken boundary cycle");
    walk.push_back({v, it->second.first});
    v = it->second.second;
  } while (v != startV && walk.size() <= boundarySide.size());
  if (walk.size() != boundarySide.size()) throw std::runtime_error("diskBoundaryWalk: boundary is not a single cycle");
  return walk;
}

} // namespace qgeo
