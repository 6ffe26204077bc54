#include "qgeo/verify.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qgeo {

namespace {

constexpr long kAssignmentCap = 1 << 20;

struct SubSegment {
  int traversal;        // order along the curve
  SurfacePoint from, to;
  bool onEdge = false;
  int edge = -1;
  int face = -1; // carrying face (reference face when onEdge)
  Vec2 a, b;     // chart endpoints in `face`
  int nodeFrom = -1, nodeTo = -1;
  int bundle = -1;
};

struct NodeKeyLess {
  const IntrinsicMesh* mesh;
  bool operator()(const SurfacePoint& p, const SurfacePoint& q) const {
    if (p.type != q.type) return p.type < q.type;
    if (p.id != q.id) return p.id < q.id;
    if (p.isEdge()) return p.t < q.t;
    if (p.isFace()) {
      Vec2 a = chartPosition(*mesh, p.id, p), b = chartPosition(*mesh, q.id, q);
      if (a.x != b.x) return a.x < b.x;
      return a.y < b.y;
    }
    return false;
  }
};

// Clusters surface points within tolerance into node ids. Points of
// different chart types never merge; canonicalization already snapped
// near-boundary points.
struct NodeIndex {
  const IntrinsicMesh& mesh;
  std::vector<SurfacePoint> rep;

  explicit NodeIndex(const IntrinsicMesh& m) : mesh(m) {}

  int idOf(const SurfacePoint& p) {
    for (size_t i = 0; i < rep.size(); i++) {
      if (rep[i].type != p.type) continue;
      if (pointsEqual(mesh, rep[i], p)) return static_cast<int>(i);
    }
    rep.push_back(p);
    return static_cast<int>(rep.size()) - 1;
  }
};

struct PortRef {
  int bundle = -1;
  bool atBundleFrom = true; // which end of the bundle this node is
  int lane = 0;
};

struct Visit {
  int inBundle, outBundle;
  bool inAtFrom, outAtFrom;
  int inTraversal, outTraversal; // traversal ids to resolve lanes
};

struct Bundle {
  int nodeFrom, nodeTo;
  bool onEdge;
  int edge, face;
  SurfacePoint from, to;
  std::vector<int> traversals;   // subsegment traversal ids running through
  std::vector<bool> reversedFlag; // per traversal: runs to->from
  double angleAtFrom = 0, angleAtTo = 0; // port angles at the two nodes
};

// Angle of a direction seen from a node, in that node's circular frame:
// plain chart angle at interior points, the two-face unfolding at edge
// points, cone coordinates at vertices.
double portAngleAt(const IntrinsicMesh& mesh, const SurfacePoint& node, int segFace, Vec2 segDirInFace) {
  switch (node.type) {
  case SurfacePoint::Type::Face:
    return angleOf(segDirInFace);
  case SurfacePoint::Type::Vertex:
    return vertexDirectionOf(mesh, node.id, segFace, segDirInFace);
  case SurfacePoint::Type::Edge: {
    int base = mesh.edge(node.id).sideA.face;
    if (segFace == base) return angleOf(segDirInFace);
    int s = mesh.sideOfEdge(base, node.id);
    Placement neighbor = placeNeighborAcross(mesh, base, s, mesh.chart(base));
    const auto& chart2 = mesh.chart(segFace);
    double rot = angleOf(neighbor[1] - neighbor[0]) - angleOf(chart2[1] - chart2[0]);
    return angleOf(rotate(segDirInFace, rot));
  }
  }
  return 0;
}


// Splits segments of the curve at mutual crossings, touches and overlap
// boundaries so that any two resulting subsegments are disjoint, share only
// nodes, or coincide exactly.
std::vector<SubSegment> splitIntoSubsegments(const IntrinsicMesh& mesh, const CurveGeometry& g) {
  double tol = geomTolerance();
  int n = g.size();
  std::vector<std::vector<double>> cuts(n);

  auto addCut = [&](int seg, double t) {
    if (t > 1e-12 && t < 1 - 1e-12) cuts[seg].push_back(t);
  };

  for (int i = 0; i < n; i++) {
    const SegmentInfo& si = g.segment(i);
    if (si.length <= tol) continue;
    for (int j = i + 1; j < n; j++) {
      const SegmentInfo& sj = g.segment(j);
      if (sj.length <= tol) continue;
      if (si.onEdge && sj.onEdge && si.edge == sj.edge) {
        // 1D overlap on a common edge
        double loI = std::min(si.tA, si.tB), hiI = std::max(si.tA, si.tB);
        double loJ = std::min(sj.tA, sj.tB), hiJ = std::max(sj.tA, sj.tB);
        double len = mesh.edge(si.edge).length;
        if (loJ < hiI - tol / len && loI < hiJ - tol / len) {
          for (double t : {loJ, hiJ}) {
            if (t > loI + tol / len && t < hiI - tol / len) {
              addCut(i, (t - si.tA) / (si.tB - si.tA));
            }
          }
          for (double t : {loI, hiI}) {
            if (t > loJ + tol / len && t < hiJ - tol / len) {
              addCut(j, (t - sj.tA) / (sj.tB - sj.tA));
            }
          }
        }
        continue;
      }
      if (!si.onEdge && sj.onEdge) {
        // a face segment can touch an edge run only at its endpoints; cut the
        // edge run where those endpoints land strictly inside it
        for (const SurfacePoint* p : {&g.point(i), &g.point(i + 1)}) {
          if (p->isEdge() && p->id == sj.edge) {
            double len = mesh.edge(sj.edge).length;
            if (p->t > std::min(sj.tA, sj.tB) + tol / len && p->t < std::max(sj.tA, sj.tB) - tol / len) {
              addCut(j, (p->t - sj.tA) / (sj.tB - sj.tA));
            }
          }
        }
        continue;
      }
      if (si.onEdge && !sj.onEdge) {
        for (const SurfacePoint* p : {&g.point(j), &g.point(j + 1)}) {
          if (p->isEdge() && p->id == si.edge) {
            double len = mesh.edge(si.edge).length;
            if (p->t > std::min(si.tA, si.tB) + tol / len && p->t < std::max(si.tA, si.tB) - tol / len) {
              addCut(i, (p->t - si.tA) / (si.tB - si.tA));
            }
          }
        }
        continue;
      }
      if (si.onEdge || sj.onEdge) continue;
      if (si.face != sj.face) continue;

      Vec2 d1 = si.b - si.a, d2 = sj.b - sj.a;
      double den = cross(d1, d2);
      if (std::abs(den) <= tol * std::max(si.length, sj.length)) {
        // parallel: check collinear overlap
        double off = std::abs(cross(d1, sj.a - si.a)) / si.length;
        if (off > tol) continue;
        double u1 = dot(sj.a - si.a, d1) / norm2(d1);
        double u2 = dot(sj.b - si.a, d1) / norm2(d1);
        for (double u : {u1, u2}) {
          if (u * si.length > tol && (1 - u) * si.length > tol) addCut(i, u);
        }
        double w1 = dot(si.a - sj.a, d2) / norm2(d2);
        double w2 = dot(si.b - sj.a, d2) / norm2(d2);
        for (double w : {w1, w2}) {
          if (w * sj.length > tol && (1 - w) * sj.length > tol) addCut(j, w);
        }
        continue;
      }
      double t1 = cross(sj.a - si.a, d2) / den;
      double t2 = cross(sj.a - si.a, d1) / den;
      bool on1 = t1 * si.length > -tol && (1 - t1) * si.length > -tol;
      bool on2 = t2 * sj.length > -tol && (1 - t2) * sj.length > -tol;
      if (on1 && on2) {
        if (t1 * si.length > tol && (1 - t1) * si.length > tol) addCut(i, t1);
        if (t2 * sj.length > tol && (1 - t2) * sj.length > tol) addCut(j, t2);
      }
    }
  }

  std::vector<SubSegment> subs;
  int traversal = 0;
  for (int i = 0; i < n; i++) {
    const SegmentInfo& s = g.segment(i);
    if (s.length <= tol && n > 1) continue; // skip numerically empty pieces
    auto& c = cuts[i];
    std::sort(c.begin(), c.end());
    std::vector<double> params{0.0};
    for (double t : c) {
      if ((t - params.back()) * s.length > tol) params.push_back(t);
    }
    if ((1.0 - params.back()) * s.length <= tol) params.back() = 1.0;
    else params.push_back(1.0);

    SurfacePoint prevPt = g.point(i);
    for (size_t k = 0; k + 1 < params.size(); k++) {
      SubSegment sub;
      sub.traversal = traversal++;
      sub.onEdge = s.onEdge;
      sub.edge = s.edge;
      sub.face = s.face;
      sub.a = s.a + (s.b - s.a) * params[k];
      sub.b = s.a + (s.b - s.a) * params[k + 1];
      sub.from = prevPt;
      if (params[k + 1] == 1.0) {
        sub.to = g.point(i + 1);
      } else if (s.onEdge) {
        sub.to = canonicalizePoint(mesh, SurfacePoint::edge(s.edge, s.tA + (s.tB - s.tA) * params[k + 1]));
      } else {
        sub.to = pointFromChart(mesh, s.face, sub.b);
      }
      prevPt = sub.to;
      subs.push_back(sub);
    }
  }
  return subs;
}

bool chordsCross(int a1, int a2, int b1, int b2, int nPorts) {
  auto between = [&](int x, int lo, int hi) {
    // x strictly inside the ccw arc (lo, hi)
    int span = (hi - lo + nPorts) % nPorts;
    int off = (x - lo + nPorts) % nPorts;
    return off > 0 && off < span;
  };
  if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
  bool b1in = between(b1, a1, a2);
  bool b2in = between(b2, a1, a2);
  return b1in != b2in;
}

} // namespace

SimplicityResult checkWeaklySimple(const IntrinsicMesh& mesh, const PLCurve& curve) {
  SimplicityResult result;
  CurveGeometry g = CurveGeometry::make(mesh, curve);
  if (g.size() <= 1) {
    result.status = SimplicityResult::Status::Simple;
    return result;
  }
  std::vector<SubSegment> subs = splitIntoSubsegments(mesh, g);
  if (subs.empty()) {
    result.status = SimplicityResult::Status::Simple;
    return result;
  }

  NodeIndex nodes(mesh);
  for (auto& s : subs) {
    s.nodeFrom = nodes.idOf(s.from);
    s.nodeTo = nodes.idOf(s.to);
  }

  // group coincident subsegments into bundles
  std::map<std::tuple<bool, int, int, int>, int> bundleKey; // (onEdge, locus, nodeLo, nodeHi)
  std::vector<Bundle> bundles;
  for (auto& s : subs) {
    int lo = std::min(s.nodeFrom, s.nodeTo), hi = std::max(s.nodeFrom, s.nodeTo);
    auto key = std::make_tuple(s.onEdge, s.onEdge ? s.edge : s.face, lo, hi);
    auto it = bundleKey.find(key);
    if (it == bundleKey.end()) {
      Bundle b;
      b.nodeFrom = lo;
      b.nodeTo = hi;
      b.onEdge = s.onEdge;
      b.edge = s.edge;
      b.face = s.face;
      bool rev = s.nodeFrom != lo;
      b.from = rev ? s.to : s.from;
      b.to = rev ? s.from : s.to;
      Vec2 dir = rev ? normalize(s.a - s.b) : normalize(s.b - s.a);
      b.angleAtFrom = portAngleAt(mesh, b.from, s.face, dir);
      b.angleAtTo = portAngleAt(mesh, b.to, s.face, -dir);
      it = bundleKey.emplace(key, static_cast<int>(bundles.size())).first;
      bundles.push_back(b);
    }
    s.bundle = it->second;
    bundles[s.bundle].traversals.push_back(s.traversal);
    bundles[s.bundle].reversedFlag.push_back(s.nodeFrom != std::min(s.nodeFrom, s.nodeTo));
  }

  // visits: consecutive subsegments meet at the node between them
  int m = static_cast<int>(subs.size());
  std::vector<std::vector<Visit>> visitsAtNode(nodes.rep.size());
  for (int k = 0; k < m; k++) {
    const SubSegment& cur = subs[k];
    const SubSegment& nxt = subs[(k + 1) % m];
    if (cur.nodeTo != nxt.nodeFrom) {
      result.status = SimplicityResult::Status::NotWeaklySimple;
      result.reason = "internal: curve walk broken between subsegments";
      return result;
    }
    Visit v;
    v.inBundle = cur.bundle;
    v.inAtFrom = cur.nodeTo == bundles[cur.bundle].nodeFrom;
    v.outBundle = nxt.bundle;
    v.outAtFrom = nxt.nodeFrom == bundles[nxt.bundle].nodeFrom;
    v.inTraversal = cur.traversal;
    v.outTraversal = nxt.traversal;
    visitsAtNode[cur.nodeTo].push_back(v);
  }

  // early transverse-crossing rejection happens through the chord test below

  long combos = 1;
  std::vector<int> multi;
  for (size_t b = 0; b < bundles.size(); b++) {
    long f = 1;
    for (size_t k = 2; k <= bundles[b].traversals.size(); k++) f *= static_cast<long>(k);
    if (combos > kAssignmentCap / std::max(f, 1l)) {
      result.status = SimplicityResult::Status::Inconclusive;
      result.reason = "bundle assignment space exceeds cap";
      return result;
    }
    combos *= f;
    if (bundles[b].traversals.size() >= 2) multi.push_back(static_cast<int>(b));
  }

  // lane order per bundle: permutation of its traversals, laneOf[t] = lane
  std::vector<std::vector<int>> perm(bundles.size());
  for (size_t b = 0; b < bundles.size(); b++) {
    perm[b].resize(bundles[b].traversals.size());
    for (size_t k = 0; k < perm[b].size(); k++) perm[b][k] = static_cast<int>(k);
  }

  auto laneOf = [&](int bundle, int traversal) {
    const auto& ts = bundles[bundle].traversals;
    for (size_t k = 0; k < ts.size(); k++) {
      if (ts[k] == traversal) return perm[bundle][k];
    }
    return 0;
  };

  // port layout per node under the current assignment
  auto nodeOk = [&](int node) {
    // collect bundle-ends at this node sorted by angle
    struct End {
      int bundle;
      bool atFrom;
      double angle;
    };
    std::vector<End> ends;
    for (size_t b = 0; b < bundles.size(); b++) {
      if (bundles[b].nodeFrom == node) ends.push_back({static_cast<int>(b), true, bundles[b].angleAtFrom});
      if (bundles[b].nodeTo == node) ends.push_back({static_cast<int>(b), false, bundles[b].angleAtTo});
    }
    std::sort(ends.begin(), ends.end(), [](const End& x, const End& y) {
      if (x.angle != y.angle) return x.angle < y.angle;
      if (x.bundle != y.bundle) return x.bundle < y.bundle;
      return x.atFrom < y.atFrom;
    });
    // expand lanes into ports: ascending lanes counterclockwise at the
    // bundle's from-end, descending at its to-end
    std::map<std::tuple<int, bool, int>, int> portIndex;
    int nPorts = 0;
    for (const End& e : ends) {
      int k = static_cast<int>(bundles[e.bundle].traversals.size());
      for (int lane = 0; lane < k; lane++) {
        int orderedLane = e.atFrom ? lane : k - 1 - lane;
        portIndex[{e.bundle, e.atFrom, orderedLane}] = nPorts++;
      }
    }
    const auto& visits = visitsAtNode[node];
    std::vector<std::pair<int, int>> chords;
    for (const Visit& v : visits) {
      int pIn = portIndex.at({v.inBundle, v.inAtFrom, laneOf(v.inBundle, v.inTraversal)});
      int pOut = portIndex.at({v.outBundle, v.outAtFrom, laneOf(v.outBundle, v.outTraversal)});
      chords.push_back({pIn, pOut});
    }
    for (size_t i = 0; i < chords.size(); i++) {
      for (size_t j = i + 1; j < chords.size(); j++) {
        if (chordsCross(chords[i].first, chords[i].second, chords[j].first, chords[j].second, nPorts)) {
          return false;
        }
      }
    }
    return true;
  };

  auto allNodesOk = [&]() {
    for (size_t nd = 0; nd < nodes.rep.size(); nd++) {
      if (!nodeOk(static_cast<int>(nd))) return false;
    }
    return true;
  };

  // odometer over per-bundle permutations
  bool found = false;
  std::function<bool(size_t)> search = [&](size_t idx) -> bool {
    if (idx == multi.size()) return allNodesOk();
    int b = multi[idx];
    std::sort(perm[b].begin(), perm[b].end());
    do {
      if (search(idx + 1)) return true;
    } while (std::next_permutation(perm[b].begin(), perm[b].end()));
    return false;
  };
  found = search(0);

  if (!found) {
    result.status = SimplicityResult::Status::NotWeaklySimple;
    result.reason = "no desingularization assignment avoids a crossing";
    return result;
  }

  bool anyMeeting = !multi.empty();
  for (const auto& visits : visitsAtNode) {
    if (visits.size() > 1) anyMeeting = true;
  }
  result.status = anyMeeting ? SimplicityResult::Status::WeaklySimple : SimplicityResult::Status::Simple;
  for (int b : multi) {
    BundleWitness w;
    w.from = bundles[b].from;
    w.to = bundles[b].to;
    w.locusEdge = bundles[b].onEdge ? bundles[b].edge : -1;
    w.locusFace = bundles[b].onEdge ? -1 : bundles[b].face;
    // report traversals sorted by lane
    w.laneOrder.resize(bundles[b].traversals.size());
    for (size_t k = 0; k < bundles[b].traversals.size(); k++) {
      w.laneOrder[perm[b][k]] = bundles[b].traversals[k];
    }
    result.witness.push_back(w);
  }
  return result;
}

} // namespace qgeo
