#include "qgeo/search.h"
#include "qgeo/geometry.h"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace qgeo {

namespace {

int sideCornerA(int s) { return (s + 1) % 3; }
int sideCornerB(int s) { return (s + 2) % 3; }

double placementRotationOf(const IntrinsicMesh& mesh, int f, const Placement& placed) {
  const auto& chart = mesh.chart(f);
  return angleOf(placed[1] - placed[0]) - angleOf(chart[1] - chart[0]);
}

struct Wedge {
  Vec2 right, left; // ccw interval from right to left, width < pi
  bool empty = false;
};

Wedge intersectWedge(const Wedge& w, Vec2 right, Vec2 left) {
  Wedge out = w;
  if (cross(out.right, right) > 0) out.right = right;
  if (cross(left, out.left) > 0) out.left = left;
  if (cross(out.right, out.left) <= 1e-14) out.empty = true;
  return out;
}

bool insideWedge(const Wedge& w, Vec2 d) { return cross(w.right, d) > 1e-14 && cross(d, w.left) > 1e-14; }

// Distance from the origin to the part of segment [A,B] with direction
// inside the wedge; lower bound for pruning.
double wedgeClippedDistance(const Wedge& w, Vec2 A, Vec2 B) {
  auto clipRay = [&](Vec2 r) -> double {
    // solve t*r = A + u*(B-A)
    Vec2 AB = B - A;
    double den = cross(r, AB);
    if (std::abs(den) < 1e-300) return std::numeric_limits<double>::infinity();
    double t = cross(A, AB) / den;
    double u = cross(A, r) / den;
    if (u < 0 || u > 1 || t <= 0) return std::numeric_limits<double>::infinity();
    return t;
  };
  double best = std::numeric_limits<double>::infinity();
  // candidates: endpoints whose direction is in the wedge, the perpendicular
  // foot, and the wedge boundary rays
  for (Vec2 p : {A, B}) {
    if (insideWedge(w, p)) best = std::min(best, norm(p));
  }
  Vec2 AB = B - A;
  double t = -dot(A, AB) / norm2(AB);
  if (t > 0 && t < 1) {
    Vec2 foot = A + AB * t;
    if (insideWedge(w, foot)) best = std::min(best, norm(foot));
  }
  best = std::min(best, clipRay(w.right));
  best = std::min(best, clipRay(w.left));
  return best;
}

struct DfsState {
  int face;
  Placement placed;
  Wedge wedge;
  std::vector<int> crossed;
  int lastEdge = -1;
  // spiral caps: consecutive crossed edges sharing each endpoint vertex
  int runVertexA = -1, runVertexB = -1;
  int runCountA = 0, runCountB = 0;
};

} // namespace

EnumerationResult enumerateSegments(const IntrinsicMesh& mesh, int vStart, double maxLen, long long nodeBudget) {
  EnumerationResult result;
  double tol = geomTolerance();

  // bare edges
  const VertexStar& star = mesh.star(vStart);
  std::set<int> incidentEdges;
  for (const auto& [f, k] : star.fan) {
    incidentEdges.insert(mesh.sideEdge(f, (k + 1) % 3));
    incidentEdges.insert(mesh.sideEdge(f, (k + 2) % 3));
  }
  for (int e : incidentEdges) {
    if (mesh.edge(e).length > maxLen) continue;
    GeodesicSegment seg;
    seg.vStart = vStart;
    seg.vEnd = mesh.edge(e).vA == vStart ? mesh.edge(e).vB : mesh.edge(e).vA;
    seg.followedEdge = e;
    seg.length = mesh.edge(e).length;
    seg.exitDir = Direction::atVertexAngle(vStart, vertexDirectionAlongEdge(mesh, vStart, e));
    seg.entryDir = Direction::atVertexAngle(seg.vEnd, vertexDirectionAlongEdge(mesh, seg.vEnd, e));
    result.segments.push_back(seg);
  }

  // crossing segments: wedge-propagation DFS out of each fan wedge
  for (const auto& [f0, k0] : star.fan) {
    Vec2 origin = mesh.chart(f0)[k0];
    Vec2 toNext = normalize(mesh.chart(f0)[(k0 + 1) % 3] - origin);
    Vec2 toPrev = normalize(mesh.chart(f0)[(k0 + 2) % 3] - origin);
    // recenter the chart on the start vertex
    Placement base = mesh.chart(f0);
    for (auto& c : base) c = c - origin;

    std::vector<DfsState> stack;
    DfsState init;
    init.face = f0;
    init.placed = base;
    init.wedge = {toNext, toPrev, false};
    stack.push_back(init);

    while (!stack.empty()) {
      if (++result.nodesVisited > nodeBudget) {
        result.complete = false;
        return result;
      }
      DfsState st = std::move(stack.back());
      stack.pop_back();

      for (int s = 0; s < 3; s++) {
        int e = mesh.sideEdge(st.face, s);
        if (e == st.lastEdge) continue;
        Vec2 P = st.placed[sideCornerA(s)];
        Vec2 Q = st.placed[sideCornerB(s)];
        if (st.crossed.empty()) {
          // first crossing must be the side opposite the start corner
          int kc = mesh.cornerOfVertex(st.face, vStart);
          if (s != kc) continue;
        }
        double c = cross(P, Q);
        if (std::abs(c) <= tol * std::max(norm(P), norm(Q))) continue; // side radial to the origin
        Vec2 dirP = normalize(P), dirQ = normalize(Q);
        Vec2 right = dirP, left = dirQ;
        if (c < 0) std::swap(right, left);
        Wedge next = intersectWedge(st.wedge, right, left);
        if (next.empty) continue;

        // spiral cap per shared endpoint
        int va = mesh.face(st.face).vertex[sideCornerA(s)];
        int vb = mesh.face(st.face).vertex[sideCornerB(s)];
        DfsState child;
        child.runVertexA = va;
        child.runVertexB = vb;
        child.runCountA = 1 + ((st.runVertexA == va) ? st.runCountA : (st.runVertexB == va) ? st.runCountB : 0);
        child.runCountB = 1 + ((st.runVertexA == vb) ? st.runCountA : (st.runVertexB == vb) ? st.runCountB : 0);
        if (child.runCountA > mesh.star(va).degree || child.runCountB > mesh.star(vb).degree) continue;

        // frontier distance prune
        if (wedgeClippedDistance(next, P, Q) > maxLen) continue;

        child.face = mesh.otherFace(e, st.face);
        child.placed = placeNeighborAcross(mesh, st.face, s, st.placed);
        child.wedge = next;
        child.crossed = st.crossed;
        child.crossed.push_back(e);
        child.lastEdge = e;

        // the corner opposite the entry side in the new face is a candidate
        int s2 = mesh.sideOfEdge(child.face, e);
        Vec2 w = child.placed[s2];
        double dist = norm(w);
        if (dist <= maxLen && insideWedge(child.wedge, w)) {
          GeodesicSegment seg;
          seg.vStart = vStart;
          seg.vEnd = mesh.face(child.face).vertex[s2];
          seg.crossedEdges = child.crossed;
          seg.length = dist;
          Vec2 d = normalize(w);
          seg.exitDir = Direction::atVertexAngle(vStart, vertexDirectionOf(mesh, vStart, f0, d));
          double rot = placementRotationOf(mesh, child.face, child.placed);
          seg.entryDir = Direction::atVertexAngle(seg.vEnd, vertexDirectionOf(mesh, seg.vEnd, child.face,
                                                                              rotate(-d, -rot)));
          result.segments.push_back(seg);
        }
        stack.push_back(std::move(child));
      }
    }
  }

  std::sort(result.segments.begin(), result.segments.end(), [](const GeodesicSegment& a, const GeodesicSegment& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.vEnd != b.vEnd) return a.vEnd < b.vEnd;
    if (a.followedEdge != b.followedEdge) return a.followedEdge < b.followedEdge;
    return a.crossedEdges < b.crossedEdges;
  });
  return result;
}

EnumerationResult enumerateAllSegments(const IntrinsicMesh& mesh, double maxLen, long long nodeBudget, int threads) {
  int n = mesh.numVertices();
  std::vector<EnumerationResult> slots(n);
  long long perVertexBudget = std::max<long long>(1, nodeBudget / std::max(1, n));
  threads = std::max(1, threads);
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    while (true) {
      int v = cursor.fetch_add(1);
      if (v >= n) return;
      slots[v] = enumerateSegments(mesh, v, maxLen, perVertexBudget);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; t++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  EnumerationResult merged;
  for (int v = 0; v < n; v++) {
    merged.nodesVisited += slots[v].nodesVisited;
    merged.complete = merged.complete && slots[v].complete;
    merged.segments.insert(merged.segments.end(), slots[v].segments.begin(), slots[v].segments.end());
  }
  return merged;
}

namespace {

CrossingWord wordOfChain(const std::vector<const GeodesicSegment*>& chain) {
  CrossingWord w;
  for (const GeodesicSegment* seg : chain) {
    w.letters.push_back(Letter::vertex(seg->vStart));
    if (seg->isBareEdge()) {
      w.letters.push_back(Letter::follow(seg->followedEdge));
    } else {
      for (int e : seg->crossedEdges) w.letters.push_back(Letter::cross(e));
    }
  }
  return w;
}

bool junctionOk(const IntrinsicMesh& mesh, const GeodesicSegment& in, const GeodesicSegment& out) {
  double tol = geomTolerance();
  auto [left, right] = sideAnglesAtVertex(mesh, in.entryDir, out.exitDir);
  const VertexStar& star = mesh.star(in.vEnd);
  if (star.convex) return left <= kPi + tol && right <= kPi + tol;
  return left >= kPi - tol && right >= kPi - tol;
}

} // namespace

AssemblyResult assembleClosed(const IntrinsicMesh& mesh, std::span<const GeodesicSegment> segments,
                              const SearchConfig& config) {
  AssemblyResult result;
  double maxTotal = config.maxTotalLength > 0 ? config.maxTotalLength : mesh.edgeSum();
  long long maxWord = config.maxWordLength > 0 ? config.maxWordLength : mesh.etaBound();
  long long budget = config.nodeBudget > 0 ? config.nodeBudget : 10000000;

  std::vector<std::vector<const GeodesicSegment*>> bySource(mesh.numVertices());
  for (const auto& seg : segments) {
    if (seg.length <= maxTotal) bySource[seg.vStart].push_back(&seg);
  }

  std::set<std::vector<Letter>> seen;
  std::vector<const GeodesicSegment*> chain;
  std::function<void(int)> closeChain;

  std::function<void(int, double, long long)> extend = [&](int startVertex, double total, long long letters) {
    if (result.chainsExplored > budget) {
      result.complete = false;
      return;
    }
    if (config.maxSolutions > 0 && static_cast<int>(result.certificates.size()) >= config.maxSolutions) return;
    int at = chain.back()->vEnd;
    for (const GeodesicSegment* seg : bySource[at]) {
      result.chainsExplored++;
      double newTotal = total + seg->length;
      long long newLetters = letters + 1 + (seg->isBareEdge() ? 1 : static_cast<long long>(seg->crossedEdges.size()));
      if (newTotal > maxTotal + geomTolerance()) continue;
      if (newLetters > maxWord) continue;
      if (!junctionOk(mesh, *chain.back(), *seg)) continue;
      chain.push_back(seg);
      closeChain(startVertex);
      extend(startVertex, newTotal, newLetters);
      chain.pop_back();
      if (result.chainsExplored > budget) return;
    }
  };

  auto tryClose = [&](int startVertex) {
    const GeodesicSegment* last = chain.back();
    if (last->vEnd != startVertex || !junctionOk(mesh, *last, *chain.front())) return;
    CrossingWord w = wordOfChain(chain);
    CrossingWord canon = w.canonical();
    if (seen.count(canon.letters)) return;
    seen.insert(canon.letters);
    CheckResult cr = checkWord(mesh, w); // independent re-check of the candidate
    if (std::holds_alternative<Certificate>(cr)) {
      result.certificates.push_back(std::get<Certificate>(cr));
    }
  };
  closeChain = tryClose;

  for (int v = 0; v < mesh.numVertices(); v++) {
    for (const GeodesicSegment* seg : bySource[v]) {
      chain = {seg};
      tryClose(v);
      extend(v, seg->length, 1 + (seg->isBareEdge() ? 1 : static_cast<long long>(seg->crossedEdges.size())));
    }
  }

  std::sort(result.certificates.begin(), result.certificates.end(), [](const Certificate& a, const Certificate& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.word.canonical().letters < b.word.canonical().letters;
  });
  return result;
}

EtaReport computeEtaBound(const IntrinsicMesh& mesh) {
  return {mesh.edgeSum(), mesh.minAltitude(), mesh.maxVertexDegree(), mesh.etaBound()};
}

} // namespace qgeo
