#include "qgeo/mesh.h"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace qgeo {

namespace {

double tolState = -1.0;

} // namespace

double geomTolerance() {
  if (tolState < 0) {
    tolState = 1e-9;
    if (const char* env = std::getenv("QG_TOLERANCE")) {
      try {
        double v = std::stod(env);
        if (v > 0) tolState = v;
      } catch (...) {
        // ignore malformed values, keep default
      }
    }
  }
  return tolState;
}

void setGeomTolerance(double tol) { tolState = tol; }

const char* meshErrorCodeName(MeshErrorCode code) {
  switch (code) {
  case MeshErrorCode::InvalidFormat:
    return "InvalidFormat";
  case MeshErrorCode::TriangleInequalityViolation:
    return "TriangleInequalityViolation";
  case MeshErrorCode::DegenerateFace:
    return "DegenerateFace";
  case MeshErrorCode::GluingLengthMismatch:
    return "GluingLengthMismatch";
  case MeshErrorCode::NonOrientable:
    return "NonOrientable";
  case MeshErrorCode::NotASphere:
    return "NotASphere";
  case MeshErrorCode::PreprocessingFailed:
    return "PreprocessingFailed";
  }
  return "Unknown";
}

std::array<double, 3> triangleAngles(const std::array<double, 3>& len) {
  std::array<double, 3> ang;
  for (int k = 0; k < 3; k++) {
    double a = len[k], b = len[(k + 1) % 3], c = len[(k + 2) % 3];
    double cosA = (b * b + c * c - a * a) / (2 * b * c);
    cosA = std::clamp(cosA, -1.0, 1.0);
    ang[k] = std::acos(cosA);
  }
  return ang;
}

namespace {

int sideCornerA(int s) { return (s + 1) % 3; } // side s runs from this corner...
int sideCornerB(int s) { return (s + 2) % 3; } // ...to this one

struct RawMesh {
  std::vector<FaceData> faces;
  std::vector<GluePair> gluing;
};

void checkFaces(const RawMesh& raw) {
  for (size_t f = 0; f < raw.faces.size(); f++) {
    const auto& len = raw.faces[f].length;
    for (int k = 0; k < 3; k++) {
      if (!(len[k] > 0) || !std::isfinite(len[k])) {
        throw MeshError(MeshErrorCode::TriangleInequalityViolation,
                        "face " + std::to_string(f) + ": nonpositive side length");
      }
    }
    double scale = std::max({len[0], len[1], len[2]});
    for (int k = 0; k < 3; k++) {
      double slack = len[(k + 1) % 3] + len[(k + 2) % 3] - len[k];
      if (slack <= geomTolerance() * scale) {
        throw MeshError(MeshErrorCode::TriangleInequalityViolation,
                        "face " + std::to_string(f) + ": triangle inequality violated on side " + std::to_string(k));
      }
    }
    for (int k = 0; k < 3; k++) {
      if (raw.faces[f].vertex[k] < 0) {
        throw MeshError(MeshErrorCode::InvalidFormat, "face " + std::to_string(f) + ": negative vertex id");
      }
      if (raw.faces[f].vertex[k] == raw.faces[f].vertex[(k + 1) % 3]) {
        throw MeshError(MeshErrorCode::InvalidFormat,
                        "face " + std::to_string(f) + ": repeated corner vertex " +
                            std::to_string(raw.faces[f].vertex[k]));
      }
    }
  }
}

// Validates the gluing as a fixed-point-free involution covering every side,
// with matched lengths and reversed vertex order (orientability).
std::vector<std::array<SideRef, 3>> checkGluing(const RawMesh& raw) {
  int nF = static_cast<int>(raw.faces.size());
  std::vector<std::array<SideRef, 3>> twin(nF, {SideRef{}, SideRef{}, SideRef{}});
  auto inRange = [&](SideRef s) { return s.face >= 0 && s.face < nF && s.side >= 0 && s.side < 3; };
  for (const auto& g : raw.gluing) {
    if (!inRange(g.a) || !inRange(g.b)) {
      throw MeshError(MeshErrorCode::InvalidFormat, "gluing refers to a side out of range");
    }
    if (g.a == g.b) {
      throw MeshError(MeshErrorCode::NonOrientable, "side glued to itself");
    }
    for (SideRef s : {g.a, g.b}) {
      if (twin[s.face][s.side].face >= 0) {
        throw MeshError(MeshErrorCode::InvalidFormat, "side glued more than once (face " + std::to_string(s.face) +
                                                          ", side " + std::to_string(s.side) + ")");
      }
    }
    twin[g.a.face][g.a.side] = g.b;
    twin[g.b.face][g.b.side] = g.a;

    double la = raw.faces[g.a.face].length[g.a.side];
    double lb = raw.faces[g.b.face].length[g.b.side];
    double scale = std::max(la, lb);
    if (std::abs(la - lb) > geomTolerance() * std::max(1.0, scale)) {
      throw MeshError(MeshErrorCode::GluingLengthMismatch,
                      "glued sides have different lengths: (" + std::to_string(g.a.face) + "," +
                          std::to_string(g.a.side) + ") vs (" + std::to_string(g.b.face) + "," +
                          std::to_string(g.b.side) + ")");
    }
    // Orientation-reversing: the directed side a1->a2 must meet b2->b1.
    const auto& fa = raw.faces[g.a.face].vertex;
    const auto& fb = raw.faces[g.b.face].vertex;
    int a1 = fa[sideCornerA(g.a.side)], a2 = fa[sideCornerB(g.a.side)];
    int b1 = fb[sideCornerA(g.b.side)], b2 = fb[sideCornerB(g.b.side)];
    if (a1 != b2 || a2 != b1) {
      throw MeshError(MeshErrorCode::NonOrientable, "gluing of (" + std::to_string(g.a.face) + "," +
                                                        std::to_string(g.a.side) +
                                                        ") is not orientation-reversing on vertex ids");
    }
  }
  for (int f = 0; f < nF; f++) {
    for (int s = 0; s < 3; s++) {
      if (twin[f][s].face < 0) {
        throw MeshError(MeshErrorCode::NotASphere,
                        "unglued side (face " + std::to_string(f) + ", side " + std::to_string(s) + ")");
      }
    }
  }
  return twin;
}

struct Topology {
  int nVertices = 0;
  std::vector<std::array<int, 3>> sideEdge;
  std::vector<EdgeData> edges;
};

Topology buildEdges(const RawMesh& raw, const std::vector<std::array<SideRef, 3>>& twin) {
  Topology topo;
  int nF = static_cast<int>(raw.faces.size());
  topo.sideEdge.assign(nF, {-1, -1, -1});
  int nV = 0;
  for (const auto& f : raw.faces) nV = std::max(nV, 1 + *std::max_element(f.vertex.begin(), f.vertex.end()));
  topo.nVertices = nV;

  for (int f = 0; f < nF; f++) {
    for (int s = 0; s < 3; s++) {
      if (topo.sideEdge[f][s] >= 0) continue;
      SideRef a{f, s}, b = twin[f][s];
      if (b < a) std::swap(a, b);
      EdgeData e;
      e.sideA = a;
      e.sideB = b;
      int va = raw.faces[f].vertex[sideCornerA(s)];
      int vb = raw.faces[f].vertex[sideCornerB(s)];
      e.vA = std::min(va, vb);
      e.vB = std::max(va, vb);
      e.length = raw.faces[f].length[s];
      int id = static_cast<int>(topo.edges.size());
      topo.edges.push_back(e);
      topo.sideEdge[a.face][a.side] = id;
      topo.sideEdge[b.face][b.side] = id;
    }
  }
  return topo;
}

void checkSphereTopology(const RawMesh& raw, const std::vector<std::array<SideRef, 3>>& twin, const Topology& topo) {
  int nF = static_cast<int>(raw.faces.size());
  int nE = static_cast<int>(topo.edges.size());
  // Every vertex id must actually appear.
  std::vector<char> seen(topo.nVertices, 0);
  for (const auto& f : raw.faces)
    for (int v : f.vertex) seen[v] = 1;
  for (int v = 0; v < topo.nVertices; v++) {
    if (!seen[v]) throw MeshError(MeshErrorCode::InvalidFormat, "vertex id " + std::to_string(v) + " unused");
  }
  int chi = topo.nVertices - nE + nF;
  if (chi != 2) {
    throw MeshError(MeshErrorCode::NotASphere, "Euler characteristic " + std::to_string(chi) + ", expected 2");
  }
  // Face connectivity through the gluing graph.
  std::vector<char> reached(nF, 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int f = stack.back();
    stack.pop_back();
    for (int s = 0; s < 3; s++) {
      int g = twin[f][s].face;
      if (!reached[g]) {
        reached[g] = 1;
        count++;
        stack.push_back(g);
      }
    }
  }
  if (count != nF) {
    throw MeshError(MeshErrorCode::NotASphere, "gluing graph is disconnected");
  }
}

bool hasLoopsOrMultiEdges(const Topology& topo) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : topo.edges) {
    if (e.vA == e.vB) return true;
    if (!pairs.insert({e.vA, e.vB}).second) return true;
  }
  return false;
}

std::array<Vec2, 3> layoutFace(const std::array<double, 3>& len) {
  // corner0 at origin, corner1 along +x at distance len[2], corner2 above.
  double l0 = len[0], l1 = len[1], l2 = len[2];
  double x = (l1 * l1 + l2 * l2 - l0 * l0) / (2 * l2);
  double y2 = l1 * l1 - x * x;
  double y = y2 > 0 ? std::sqrt(y2) : 0;
  return {Vec2{0, 0}, Vec2{l2, 0}, Vec2{x, y}};
}

// One barycentric subdivision on raw data. New vertex ids: edge midpoints at
// nV + edgeId, face centroids at nV + nE + faceId.
RawMesh subdivideRaw(const RawMesh& raw, const std::vector<std::array<SideRef, 3>>& twin, const Topology& topo) {
  int nV = topo.nVertices;
  int nE = static_cast<int>(topo.edges.size());
  int nF = static_cast<int>(raw.faces.size());
  RawMesh out;
  out.faces.reserve(6 * nF);

  // Subface 2k within face f is (v_k, m_{(k+2)%3}, G); subface 2k+1 is
  // (m_{(k+2)%3}, v_{k+1}, G). The outer piece of each subface is its side 2.
  auto subIndex = [&](int f, int j) { return 6 * f + j; };

  for (int f = 0; f < nF; f++) {
    const auto& fd = raw.faces[f];
    auto chart = layoutFace(fd.length);
    Vec2 g = (chart[0] + chart[1] + chart[2]) / 3.0;
    std::array<Vec2, 3> mid; // mid[s] = midpoint of side s
    std::array<int, 3> midId;
    for (int s = 0; s < 3; s++) {
      mid[s] = (chart[sideCornerA(s)] + chart[sideCornerB(s)]) * 0.5;
      midId[s] = nV + topo.sideEdge[f][s];
    }
    int gId = nV + nE + f;
    for (int k = 0; k < 3; k++) {
      int ms = (k + 2) % 3; // midpoint of side (k+2)%3 touches corner k
      Vec2 pv = chart[k], pm = mid[ms];
      FaceData even;
      even.vertex = {fd.vertex[k], midId[ms], gId};
      even.length = {distance(pm, g), distance(g, pv), distance(pv, pm)};
      FaceData odd;
      int k1 = (k + 1) % 3;
      Vec2 pv1 = chart[k1];
      odd.vertex = {midId[ms], fd.vertex[k1], gId};
      odd.length = {distance(pv1, g), distance(g, pm), distance(pm, pv1)};
      out.faces.resize(std::max(out.faces.size(), size_t(subIndex(f, 2 * k + 1) + 1)));
      out.faces[subIndex(f, 2 * k)] = even;
      out.faces[subIndex(f, 2 * k + 1)] = odd;
    }
    // Interior gluings around the centroid: side 0 of subface j meets side 1
    // of subface j+1 (mod 6).
    for (int j = 0; j < 6; j++) {
      out.gluing.push_back({SideRef{subIndex(f, j), 0}, SideRef{subIndex(f, (j + 1) % 6), 1}});
    }
  }
  // Outer gluings: original side s of f splits at its midpoint into the
  // side-2 pieces of subfaces 2a and 2a+1, a = (s+1)%3. The twin's pieces
  // pair up crosswise.
  for (int f = 0; f < nF; f++) {
    for (int s = 0; s < 3; s++) {
      SideRef t = twin[f][s];
      if (SideRef{f, s} < t) {
        int a = sideCornerA(s);
        int a2 = sideCornerA(t.side);
        out.gluing.push_back({SideRef{subIndex(f, 2 * a), 2}, SideRef{subIndex(t.face, 2 * a2 + 1), 2}});
        out.gluing.push_back({SideRef{subIndex(f, 2 * a + 1), 2}, SideRef{subIndex(t.face, 2 * a2), 2}});
      }
    }
  }
  return out;
}

std::vector<Vec3> subdivideExtrinsic(const std::vector<Vec3>& pos, const Topology& topo, const RawMesh& rawBefore) {
  std::vector<Vec3> out = pos;
  out.reserve(pos.size() + topo.edges.size() + rawBefore.faces.size());
  for (const auto& e : topo.edges) out.push_back((pos[e.vA] + pos[e.vB]) * 0.5);
  for (const auto& f : rawBefore.faces) {
    out.push_back((pos[f.vertex[0]] + pos[f.vertex[1]] + pos[f.vertex[2]]) / 3.0);
  }
  return out;
}

std::vector<VertexStar> buildStars(const RawMesh& raw, const std::vector<std::array<SideRef, 3>>& twin,
                                   const Topology& topo, const std::vector<std::array<double, 3>>& cornerAngles) {
  int nF = static_cast<int>(raw.faces.size());
  std::vector<std::vector<std::pair<int, int>>> incident(topo.nVertices);
  for (int f = 0; f < nF; f++) {
    for (int k = 0; k < 3; k++) incident[raw.faces[f].vertex[k]].push_back({f, k});
  }
  std::vector<VertexStar> stars(topo.nVertices);
  for (int v = 0; v < topo.nVertices; v++) {
    auto& inc = incident[v];
    if (inc.empty()) throw MeshError(MeshErrorCode::InvalidFormat, "isolated vertex " + std::to_string(v));
    auto startIt = std::min_element(inc.begin(), inc.end());
    VertexStar star;
    std::pair<int, int> cur = *startIt;
    std::set<std::pair<int, int>> visited;
    double cum = 0;
    do {
      if (visited.count(cur)) {
        throw MeshError(MeshErrorCode::NotASphere, "fan around vertex " + std::to_string(v) + " does not close");
      }
      visited.insert(cur);
      star.fan.push_back(cur);
      star.wedgeStart.push_back(cum);
      cum += cornerAngles[cur.first][cur.second];
      // ccw: cross the side ending the wedge, side (k+1)%3, and land on the
      // corner (s'+1)%3 of the twin.
      SideRef next = twin[cur.first][(cur.second + 1) % 3];
      cur = {next.face, sideCornerA(next.side)};
      if (raw.faces[cur.first].vertex[cur.second] != v) {
        throw MeshError(MeshErrorCode::NonOrientable, "fan walk around vertex " + std::to_string(v) + " left the vertex");
      }
    } while (cur != *startIt);
    if (star.fan.size() != inc.size()) {
      throw MeshError(MeshErrorCode::NotASphere,
                      "vertex " + std::to_string(v) + " has a pinched star (multiple fan cycles)");
    }
    star.coneAngle = cum;
    star.curvature = kTwoPi - cum;
    star.convex = cum <= kTwoPi + geomTolerance();
    star.degree = static_cast<int>(star.fan.size());
    stars[v] = std::move(star);
  }
  return stars;
}

uint64_t fnv1a(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonicalDescription(const RawMesh& raw) {
  // Hash input: faces in order, gluing sorted. Doubles printed with max
  // round-trip precision.
  std::ostringstream os;
  os.precision(17);
  for (const auto& f : raw.faces) {
    os << "f " << f.vertex[0] << ' ' << f.vertex[1] << ' ' << f.vertex[2] << ' ' << f.length[0] << ' ' << f.length[1]
       << ' ' << f.length[2] << '\n';
  }
  auto glue = raw.gluing;
  for (auto& g : glue) {
    if (g.b < g.a) std::swap(g.a, g.b);
  }
  std::sort(glue.begin(), glue.end(), [](const GluePair& x, const GluePair& y) { return x.a < y.a; });
  for (const auto& g : glue) {
    os << "g " << g.a.face << ' ' << g.a.side << ' ' << g.b.face << ' ' << g.b.side << '\n';
  }
  return os.str();
}

} // namespace

IntrinsicMesh finalizeMesh(std::vector<FaceData> faces, std::vector<GluePair> gluing, int subdivisions,
                           std::optional<std::vector<Vec3>> extrinsic) {
  RawMesh raw{std::move(faces), std::move(gluing)};
  checkFaces(raw);
  auto twin = checkGluing(raw);
  auto topo = buildEdges(raw, twin);
  checkSphereTopology(raw, twin, topo);

  while (hasLoopsOrMultiEdges(topo)) {
    if (subdivisions >= 2) {
      throw MeshError(MeshErrorCode::PreprocessingFailed,
                      "loops or multiple edges remain after two barycentric subdivisions");
    }
    std::optional<std::vector<Vec3>> newExtrinsic;
    if (extrinsic) newExtrinsic = subdivideExtrinsic(*extrinsic, topo, raw);
    raw = subdivideRaw(raw, twin, topo);
    extrinsic = std::move(newExtrinsic);
    subdivisions++;
    checkFaces(raw);
    twin = checkGluing(raw);
    topo = buildEdges(raw, twin);
    checkSphereTopology(raw, twin, topo);
  }

  IntrinsicMesh mesh;
  mesh.faces_ = std::move(raw.faces);
  mesh.gluing_ = raw.gluing;
  mesh.sideEdge_ = topo.sideEdge;
  mesh.edges_ = topo.edges;
  mesh.subdivisionsApplied_ = subdivisions;
  mesh.extrinsic_ = std::move(extrinsic);

  int nF = mesh.numFaces();
  mesh.charts_.resize(nF);
  mesh.cornerAngles_.resize(nF);
  mesh.areas_.resize(nF);
  mesh.minAltitude_ = std::numeric_limits<double>::infinity();
  mesh.totalArea_ = 0;
  for (int f = 0; f < nF; f++) {
    mesh.charts_[f] = layoutFace(mesh.faces_[f].length);
    mesh.cornerAngles_[f] = triangleAngles(mesh.faces_[f].length);
    double area = 0.5 * std::abs(cross(mesh.charts_[f][1] - mesh.charts_[f][0], mesh.charts_[f][2] - mesh.charts_[f][0]));
    mesh.areas_[f] = area;
    mesh.totalArea_ += area;
    double maxLen = *std::max_element(mesh.faces_[f].length.begin(), mesh.faces_[f].length.end());
    mesh.minAltitude_ = std::min(mesh.minAltitude_, 2 * area / maxLen);
  }
  RawMesh finalRaw{mesh.faces_, mesh.gluing_};
  mesh.stars_ = buildStars(finalRaw, twin, topo, mesh.cornerAngles_);

  mesh.edgeSum_ = 0;
  for (const auto& e : mesh.edges_) mesh.edgeSum_ += e.length;
  mesh.maxDegree_ = 0;
  mesh.curvatureSum_ = 0;
  for (const auto& s : mesh.stars_) {
    mesh.maxDegree_ = std::max(mesh.maxDegree_, s.degree);
    mesh.curvatureSum_ += s.curvature;
  }
  if (std::abs(mesh.curvatureSum_ - 2 * kTwoPi) > mesh.numVertices() * std::max(geomTolerance(), 1e-12)) {
    throw MeshError(MeshErrorCode::NotASphere, "total curvature " + std::to_string(mesh.curvatureSum_) +
                                                   " deviates from 4*pi beyond tolerance");
  }
  mesh.etaBound_ = static_cast<long long>(std::ceil((mesh.maxDegree_ + 1) * mesh.edgeSum_ / mesh.minAltitude_));
  mesh.contentHash_ = [&] {
    std::ostringstream os;
    os << std::hex << fnv1a(canonicalDescription(finalRaw));
    return os.str();
  }();
  return mesh;
}

IntrinsicMesh IntrinsicMesh::build(std::vector<FaceData> faces, std::vector<GluePair> gluing) {
  return finalizeMesh(std::move(faces), std::move(gluing), 0, std::nullopt);
}

IntrinsicMesh IntrinsicMesh::fromExtrinsic(const std::vector<Vec3>& points,
                                           const std::vector<std::array<int, 3>>& faceIdx) {
  std::vector<FaceData> faces;
  faces.reserve(faceIdx.size());
  for (size_t f = 0; f < faceIdx.size(); f++) {
    const auto& fi = faceIdx[f];
    for (int k = 0; k < 3; k++) {
      if (fi[k] < 0 || fi[k] >= static_cast<int>(points.size())) {
        throw MeshError(MeshErrorCode::InvalidFormat, "face " + std::to_string(f) + " refers to a missing point");
      }
    }
    FaceData fd;
    fd.vertex = fi;
    for (int k = 0; k < 3; k++) {
      fd.length[k] = distance(points[fi[(k + 1) % 3]], points[fi[(k + 2) % 3]]);
    }
    // Collinearity check: area via cross product against the length scale.
    Vec3 u = points[fi[1]] - points[fi[0]];
    Vec3 v = points[fi[2]] - points[fi[0]];
    double scale = std::max({fd.length[0], fd.length[1], fd.length[2]});
    if (norm(cross(u, v)) <= geomTolerance() * scale * scale) {
      throw MeshError(MeshErrorCode::DegenerateFace, "face " + std::to_string(f) + " has collinear corners");
    }
    faces.push_back(fd);
  }
  // Match sides on unordered vertex pairs.
  std::map<std::pair<int, int>, std::vector<SideRef>> bySidePair;
  for (size_t f = 0; f < faces.size(); f++) {
    for (int s = 0; s < 3; s++) {
      int a = faces[f].vertex[sideCornerA(s)], b = faces[f].vertex[sideCornerB(s)];
      bySidePair[{std::min(a, b), std::max(a, b)}].push_back({static_cast<int>(f), s});
    }
  }
  std::vector<GluePair> gluing;
  for (const auto& [pair, sides] : bySidePair) {
    if (sides.size() != 2) {
      throw MeshError(MeshErrorCode::NotASphere, "edge {" + std::to_string(pair.first) + "," +
                                                     std::to_string(pair.second) + "} borders " +
                                                     std::to_string(sides.size()) + " faces, expected 2");
    }
    gluing.push_back({sides[0], sides[1]});
  }
  return finalizeMesh(std::move(faces), std::move(gluing), 0, points);
}

SideRef IntrinsicMesh::twin(SideRef s) const {
  const EdgeData& e = edges_[sideEdge_[s.face][s.side]];
  return e.sideA == s ? e.sideB : e.sideA;
}

int IntrinsicMesh::otherFace(int e, int f) const {
  const EdgeData& ed = edges_[e];
  return ed.sideA.face == f ? ed.sideB.face : ed.sideA.face;
}

int IntrinsicMesh::cornerOfVertex(int f, int v) const {
  for (int k = 0; k < 3; k++) {
    if (faces_[f].vertex[k] == v) return k;
  }
  return -1;
}

int IntrinsicMesh::sideOfEdge(int f, int e) const {
  for (int s = 0; s < 3; s++) {
    if (sideEdge_[f][s] == e) return s;
  }
  return -1;
}

int IntrinsicMesh::fanIndexOf(int v, int f) const {
  const auto& fan = stars_[v].fan;
  for (size_t j = 0; j < fan.size(); j++) {
    if (fan[j].first == f) return static_cast<int>(j);
  }
  return -1;
}

IntrinsicMesh barycentricSubdivide(const IntrinsicMesh& mesh) {
  std::vector<FaceData> faces(mesh.numFaces());
  std::vector<GluePair> gluing;
  for (int f = 0; f < mesh.numFaces(); f++) faces[f] = mesh.face(f);
  for (int e = 0; e < mesh.numEdges(); e++) gluing.push_back({mesh.edge(e).sideA, mesh.edge(e).sideB});
  RawMesh raw{faces, gluing};
  auto twin = checkGluing(raw);
  auto topo = buildEdges(raw, twin);
  std::optional<std::vector<Vec3>> extrinsic;
  if (mesh.hasExtrinsic()) extrinsic = subdivideExtrinsic(mesh.extrinsicPositions(), topo, raw);
  RawMesh sub = subdivideRaw(raw, twin, topo);
  return finalizeMesh(std::move(sub.faces), std::move(sub.gluing), mesh.subdivisionsApplied(), std::move(extrinsic));
}

GlobalQuantities globalQuantities(const IntrinsicMesh& mesh) {
  return {mesh.edgeSum(), mesh.minAltitude(), mesh.maxVertexDegree(), mesh.etaBound()};
}

} // namespace qgeo
