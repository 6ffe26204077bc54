#include "qgeo/verify.h"

#include <algorithm>
#include <set>

namespace qgeo {

namespace {

// Turn defect at a non-vertex curve point: deviation from pi of the angle
// between the incoming and outgoing branches, measured after unfolding the
// two carrying faces across the shared edge when they differ.
double straightnessDefect(const IntrinsicMesh& mesh, const CurveGeometry& g, int i) {
  const SegmentInfo& sIn = g.segment(i - 1);
  const SegmentInfo& sOut = g.segment(i);
  Vec2 forward = normalize(sIn.b - sIn.a); // direction of travel arriving at point i
  Vec2 outDir = normalize(sOut.b - sOut.a);
  if (sIn.face == sOut.face) {
    double turn = ccwAngle(forward, outDir);
    if (turn > kPi) turn -= kTwoPi;
    return std::abs(turn);
  }
  const SurfacePoint& p = g.point(i);
  if (!p.isEdge()) throw std::runtime_error("straightnessDefect: face change off an edge");
  int e = p.id;
  int sIdx = mesh.sideOfEdge(sIn.face, e);
  if (sIdx < 0) throw std::runtime_error("straightnessDefect: carrying faces do not share the crossing edge");
  Placement neighbor = placeNeighborAcross(mesh, sIn.face, sIdx, mesh.chart(sIn.face));
  const auto& chart2 = mesh.chart(sOut.face);
  double rot = angleOf(neighbor[1] - neighbor[0]) - angleOf(chart2[1] - chart2[0]);
  Vec2 outInBase = rotate(outDir, rot);
  double turn = ccwAngle(forward, outInBase);
  if (turn > kPi) turn -= kTwoPi;
  return std::abs(turn);
}

double angleRuleViolation(const IntrinsicMesh& mesh, double left, double right, int vertex) {
  const VertexStar& star = mesh.star(vertex);
  if (star.convex) {
    return std::max({0.0, left - kPi, right - kPi});
  }
  return std::max({0.0, kPi - left, kPi - right});
}

} // namespace

NumericReport checkCurveNumeric(const IntrinsicMesh& mesh, const PLCurve& curve, double tol) {
  NumericReport report;
  CurveGeometry g = CurveGeometry::make(mesh, curve);
  if (g.size() <= 1) {
    report.accepted = false;
    report.maxStraightnessDefect = kPi;
    return report;
  }
  for (int i = 0; i < g.size(); i++) {
    const SurfacePoint& p = g.point(i);
    if (p.isVertex()) {
      Direction in = segmentDirection(mesh, g, i - 1, false);
      Direction out = segmentDirection(mesh, g, i, true);
      auto [left, right] = sideAnglesAtVertex(mesh, in, out);
      double v = angleRuleViolation(mesh, left, right, p.id);
      if (v > report.maxAngleViolation) {
        report.maxAngleViolation = v;
        if (v > report.maxStraightnessDefect) report.worstPoint = i;
      }
    } else {
      double d = straightnessDefect(mesh, g, i);
      if (d > report.maxStraightnessDefect) {
        report.maxStraightnessDefect = d;
        if (d > report.maxAngleViolation) report.worstPoint = i;
      }
    }
  }
  report.accepted = report.maxStraightnessDefect <= tol && report.maxAngleViolation <= tol;
  return report;
}

const char* rejectionReasonName(Rejection::Reason r) {
  switch (r) {
  case Rejection::Reason::MalformedWord:
    return "MalformedWord";
  case Rejection::Reason::NoVertexLetter:
    return "NoVertexLetter";
  case Rejection::Reason::Unrealizable:
    return "Unrealizable";
  case Rejection::Reason::AngleViolation:
    return "AngleViolation";
  case Rejection::Reason::NotWeaklySimple:
    return "NotWeaklySimple";
  case Rejection::Reason::SimplicityInconclusive:
    return "SimplicityInconclusive";
  }
  return "Unknown";
}

namespace {

struct SubwordPiece {
  int vFrom, vTo;            // vertex letters bounding the piece
  int firstLetter;           // index of vFrom in the word
  std::vector<int> crossed;  // edge ids of Cross letters, possibly empty
  int followed = -1;         // edge id when the piece is a single Follow
};

struct RealizedPiece {
  SegmentRealization real;
  Direction exitDir, entryDir; // at vFrom / at vTo, entryDir points back along the piece
};

// Realize one inter-vertex piece. Crossing pieces may have several valid
// first faces on meshes where a vertex and an edge share two faces; each is
// tried in id order and the first acceptable trace wins.
std::variant<RealizedPiece, Rejection> realizePiece(const IntrinsicMesh& mesh, const SubwordPiece& piece) {
  if (piece.followed >= 0) {
    const EdgeData& e = mesh.edge(piece.followed);
    if (!((e.vA == piece.vFrom && e.vB == piece.vTo) || (e.vB == piece.vFrom && e.vA == piece.vTo))) {
      return Rejection{Rejection::Reason::Unrealizable, piece.firstLetter,
                       "followed edge does not join the adjacent vertex letters"};
    }
    RealizedPiece rp;
    rp.real.points = {SurfacePoint::vertex(piece.vFrom), SurfacePoint::vertex(piece.vTo)};
    rp.real.faces = {e.sideA.face};
    rp.real.length = e.length;
    rp.exitDir = Direction::atVertexAngle(piece.vFrom, vertexDirectionAlongEdge(mesh, piece.vFrom, piece.followed));
    rp.entryDir = Direction::atVertexAngle(piece.vTo, vertexDirectionAlongEdge(mesh, piece.vTo, piece.followed));
    return rp;
  }
  if (piece.crossed.empty()) {
    return Rejection{Rejection::Reason::Unrealizable, piece.firstLetter,
                     "consecutive vertex letters need a crossed or followed edge between them"};
  }
  std::string firstError = "no face joins the start vertex and the first crossed edge";
  std::vector<int> candidates;
  for (int f : facesContaining(mesh, SurfacePoint::vertex(piece.vFrom))) {
    if (mesh.sideOfEdge(f, piece.crossed[0]) >= 0) candidates.push_back(f);
  }
  for (int f0 : candidates) {
    UnfoldedStrip strip;
    try {
      strip = unfoldStrip(mesh, SurfacePoint::vertex(piece.vFrom), piece.crossed, SurfacePoint::vertex(piece.vTo), f0);
    } catch (const NonAdjacentLetters& e) {
      firstError = e.what();
      continue;
    }
    TraceReport rep = traceSegment(mesh, strip);
    if (!rep.accepted()) {
      firstError = std::string(traceStatusName(rep.status)) + " at crossing " + std::to_string(rep.position);
      continue;
    }
    RealizedPiece rp;
    rp.real = realizeSegment(mesh, strip, rep);
    rp.exitDir =
        Direction::atVertexAngle(piece.vFrom, vertexDirectionOf(mesh, piece.vFrom, strip.faces.front(), rp.real.dirAtStart));
    rp.entryDir =
        Direction::atVertexAngle(piece.vTo, vertexDirectionOf(mesh, piece.vTo, strip.faces.back(), rp.real.dirAtEnd));
    return rp;
  }
  return Rejection{Rejection::Reason::Unrealizable, piece.firstLetter, firstError};
}

} // namespace

CheckResult checkWord(const IntrinsicMesh& mesh, const CrossingWord& word) {
  if (word.empty()) {
    return Rejection{Rejection::Reason::MalformedWord, 0, "empty word"};
  }
  int n = static_cast<int>(word.size());
  for (int i = 0; i < n; i++) {
    const Letter& l = word.letters[i];
    if (l.kind == Letter::Kind::Vertex && (l.id < 0 || l.id >= mesh.numVertices())) {
      return Rejection{Rejection::Reason::MalformedWord, i, "vertex id out of range"};
    }
    if (l.kind != Letter::Kind::Vertex && (l.id < 0 || l.id >= mesh.numEdges())) {
      return Rejection{Rejection::Reason::MalformedWord, i, "edge id out of range"};
    }
  }
  if (word.countVertexLetters() == 0) {
    return Rejection{Rejection::Reason::NoVertexLetter, 0,
                     "only vertex-anchored words are certifiable; run the flow pipeline for vertex-free curves"};
  }

  // cut the cyclic word into inter-vertex pieces
  int first = -1;
  for (int i = 0; i < n; i++) {
    if (word.letters[i].kind == Letter::Kind::Vertex) {
      first = i;
      break;
    }
  }
  std::vector<SubwordPiece> pieces;
  int i = first;
  do {
    SubwordPiece piece;
    piece.vFrom = word.letters[i].id;
    piece.firstLetter = i;
    int j = (i + 1) % n;
    int followCount = 0;
    while (word.letters[j].kind != Letter::Kind::Vertex) {
      const Letter& l = word.letters[j];
      if (l.kind == Letter::Kind::Cross) {
        piece.crossed.push_back(l.id);
      } else {
        piece.followed = l.id;
        followCount++;
      }
      j = (j + 1) % n;
      if (j == (i + 1) % n) break; // safety, cannot happen with a vertex letter present
    }
    piece.vTo = word.letters[j].id;
    if (followCount > 0 && (followCount > 1 || !piece.crossed.empty())) {
      return Rejection{Rejection::Reason::Unrealizable, piece.firstLetter,
                       "a followed edge must sit alone between two vertex letters"};
    }
    pieces.push_back(piece);
    i = j;
  } while (i != first);

  // realize pieces and check junction angles
  std::vector<RealizedPiece> realized;
  for (const auto& piece : pieces) {
    auto r = realizePiece(mesh, piece);
    if (std::holds_alternative<Rejection>(r)) return std::get<Rejection>(r);
    realized.push_back(std::get<RealizedPiece>(r));
  }

  Certificate cert;
  cert.word = word;
  double tol = geomTolerance();
  int k = static_cast<int>(pieces.size());
  for (int p = 0; p < k; p++) {
    int prev = (p + k - 1) % k;
    int v = pieces[p].vFrom;
    auto [left, right] = sideAnglesAtVertex(mesh, realized[prev].entryDir, realized[p].exitDir);
    const VertexStar& star = mesh.star(v);
    bool ok = star.convex ? (left <= kPi + tol && right <= kPi + tol) : (left >= kPi - tol && right >= kPi - tol);
    if (!ok) {
      double bad = star.convex ? std::max(left, right) : std::min(left, right);
      return Rejection{Rejection::Reason::AngleViolation, pieces[p].firstLetter,
                       "vertex " + std::to_string(v) + ": side angle " + std::to_string(bad) + " violates the " +
                           (star.convex ? "convex" : "concave") + " rule"};
    }
    cert.angles.push_back({v, left, right});
  }

  // assemble the closed realization
  for (int p = 0; p < k; p++) {
    const auto& pts = realized[p].real.points;
    const auto& fcs = realized[p].real.faces;
    for (size_t q = 0; q + 1 < pts.size(); q++) {
      cert.realization.points.push_back(pts[q]);
      cert.realization.segmentFace.push_back(fcs[q]);
    }
    cert.length += realized[p].real.length;
  }

  cert.simplicity = checkWeaklySimple(mesh, cert.realization);
  if (cert.simplicity.status == SimplicityResult::Status::Inconclusive) {
    return Rejection{Rejection::Reason::SimplicityInconclusive, 0, cert.simplicity.reason};
  }
  if (!cert.simplicity.ok()) {
    return Rejection{Rejection::Reason::NotWeaklySimple, 0, cert.simplicity.reason};
  }

  // degenerate doubled segment: two pieces whose realizations coincide
  if (k == 2 && pieces[0].vFrom == pieces[1].vTo && pieces[0].vTo == pieces[1].vFrom) {
    const auto& a = realized[0].real.points;
    const auto& b = realized[1].real.points;
    if (a.size() == b.size()) {
      bool same = true;
      size_t sz = a.size();
      for (size_t q = 0; q < sz; q++) {
        if (!pointsEqual(mesh, a[q], b[sz - 1 - q])) same = false;
      }
      cert.degenerateDoubledSegment = same;
    }
  }
  return cert;
}

} // namespace qgeo
