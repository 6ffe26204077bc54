#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgeo/verify.h"
#include "support/test_meshes.h"

#include <cmath>

using namespace qgeo;
using namespace qgeo::testing;

namespace {

// The straight band around the cube's four lateral faces at height z,
// as a closed curve built by tracing.
PLCurve cubeBandCurve(const IntrinsicMesh& m, double z) {
  int f = -1;
  for (int i = 0; i < m.numFaces(); i++) {
    auto vs = m.face(i).vertex;
    if (vs[0] == 0 && vs[1] == 1 && vs[2] == 5) f = i;
  }
  REQUIRE(f >= 0);
  // barycentric over corners (0,0,0),(1,0,0),(1,0,1) for the 3D point
  // ((1+z)/2, 0, z): b2 = z, b1 = (1-z)/2, b0 = (1-z)/2
  SurfacePoint start = SurfacePoint::face(f, (1 - z) / 2, (1 - z) / 2, z);
  Vec2 dir = normalize(m.chart(f)[1] - m.chart(f)[0]);
  RayResult ray = traceRay(m, start, Direction::inFace(f, dir), 4.0);
  REQUIRE(ray.length == doctest::Approx(4.0));
  REQUIRE(pointsEqual(m, ray.points.front(), ray.points.back()));
  PLCurve curve;
  curve.points.assign(ray.points.begin(), ray.points.end() - 1);
  curve.segmentFace = ray.faces;
  return curve;
}

CrossingWord doubledEdgeWord(const IntrinsicMesh& m, int va, int vb) {
  int e = edgeBetween(m, va, vb);
  REQUIRE(e >= 0);
  return CrossingWord{{Letter::vertex(va), Letter::follow(e), Letter::vertex(vb), Letter::follow(e)}};
}

} // namespace

TEST_CASE("golden: tetrahedron doubled edge") {
  IntrinsicMesh m = tetrahedron();
  CheckResult r = checkWord(m, doubledEdgeWord(m, 0, 1));
  REQUIRE(std::holds_alternative<Certificate>(r));
  const Certificate& c = std::get<Certificate>(r);
  CHECK(c.length == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.degenerateDoubledSegment);
  CHECK(c.simplicity.status == SimplicityResult::Status::WeaklySimple);
  REQUIRE(c.simplicity.witness.size() == 1);
  CHECK(c.simplicity.witness[0].laneOrder.size() == 2);
  REQUIRE(c.angles.size() == 2);
  for (const auto& a : c.angles) {
    CHECK(std::min(a.left, a.right) == doctest::Approx(0.0));
    CHECK(std::max(a.left, a.right) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(a.left + a.right == doctest::Approx(m.star(a.vertex).coneAngle).epsilon(1e-12));
  }
}

TEST_CASE("golden: doubled-triangle doubled median") {
  IntrinsicMesh m = doubledTriangle();
  int e01 = edgeBetween(m, 0, 1);
  CrossingWord w{{Letter::vertex(2), Letter::cross(e01)}};
  CheckResult r = checkWord(m, w);
  REQUIRE(std::holds_alternative<Certificate>(r));
  const Certificate& c = std::get<Certificate>(r);
  CHECK(c.length == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  REQUIRE(c.angles.size() == 1);
  CHECK(c.angles[0].left == doctest::Approx(kPi / 3).epsilon(1e-9));
  CHECK(c.angles[0].right == doctest::Approx(kPi / 3).epsilon(1e-9));
  CHECK(c.simplicity.status == SimplicityResult::Status::Simple);
  CHECK_FALSE(c.degenerateDoubledSegment);
  // the median crosses the base at its midpoint
  bool sawMidpoint = false;
  for (const auto& p : c.realization.points) {
    if (p.isEdge() && p.id == e01) {
      CHECK(p.t == doctest::Approx(0.5).epsilon(1e-9));
      sawMidpoint = true;
    }
  }
  CHECK(sawMidpoint);
}

TEST_CASE("perturbed goldens reject with a localized reason") {
  IntrinsicMesh tet = tetrahedron();
  // swap the second follow for a different edge: unrealizable at that piece
  int e01 = edgeBetween(tet, 0, 1);
  int e23 = edgeBetween(tet, 2, 3);
  CrossingWord bad{{Letter::vertex(0), Letter::follow(e01), Letter::vertex(1), Letter::follow(e23)}};
  CheckResult r = checkWord(tet, bad);
  REQUIRE(std::holds_alternative<Rejection>(r));
  CHECK(std::get<Rejection>(r).reason == Rejection::Reason::Unrealizable);
  CHECK(std::get<Rejection>(r).position == 2);

  // doubled median with the vertex letter moved to a wrong vertex: the
  // straight trace between copies of vertex 0 cannot cross the far edge
  IntrinsicMesh dbl = doubledTriangle();
  CrossingWord badMedian{{Letter::vertex(0), Letter::cross(edgeBetween(dbl, 0, 1))}};
  CheckResult r2 = checkWord(dbl, badMedian);
  REQUIRE(std::holds_alternative<Rejection>(r2));
  CHECK(std::get<Rejection>(r2).reason == Rejection::Reason::Unrealizable);

  // no vertex letter at all
  CrossingWord noV{{Letter::cross(e01), Letter::cross(e23)}};
  CheckResult r3 = checkWord(tet, noV);
  REQUIRE(std::holds_alternative<Rejection>(r3));
  CHECK(std::get<Rejection>(r3).reason == Rejection::Reason::NoVertexLetter);
}

TEST_CASE("angle rule rejects a reflex junction on the cube") {
  IntrinsicMesh cube = triangulatedCube();
  // two edges at corner 0 whose angle split exceeds pi on one side:
  // follow edge 0-1 then edge 0-2 back; at corner 0 the in/out rays are the
  // x and y cube edges with cone angle 3pi/2: sides (pi/2, pi) pass, but at
  // corners 1 and 2 the doubled follows give (0, 3pi/2), violating the rule.
  int e01 = edgeBetween(cube, 0, 1);
  int e02 = edgeBetween(cube, 0, 2);
  REQUIRE(e01 >= 0);
  REQUIRE(e02 >= 0);
  CrossingWord w{{Letter::vertex(1), Letter::follow(e01), Letter::vertex(0), Letter::follow(e02),
                  Letter::vertex(2), Letter::follow(e02), Letter::vertex(0), Letter::follow(e01)}};
  CheckResult r = checkWord(cube, w);
  REQUIRE(std::holds_alternative<Rejection>(r));
  CHECK(std::get<Rejection>(r).reason == Rejection::Reason::AngleViolation);
}

TEST_CASE("weak simplicity: embedded band loop is simple") {
  IntrinsicMesh m = triangulatedCube();
  PLCurve band = cubeBandCurve(m, 0.5);
  SimplicityResult s = checkWeaklySimple(m, band);
  CHECK(s.status == SimplicityResult::Status::Simple);
  CHECK(s.witness.empty());
}

TEST_CASE("weak simplicity: figure eight rejects") {
  IntrinsicMesh m = tetrahedron();
  PLCurve bowtie;
  for (Vec2 p : {Vec2{0.35, 0.15}, Vec2{0.6, 0.4}, Vec2{0.65, 0.15}, Vec2{0.4, 0.4}}) {
    bowtie.points.push_back(pointFromChart(m, 0, p));
  }
  SimplicityResult s = checkWeaklySimple(m, bowtie);
  CHECK(s.status == SimplicityResult::Status::NotWeaklySimple);
}

TEST_CASE("weak simplicity: doubled edge resolved by opposite sides") {
  IntrinsicMesh m = tetrahedron();
  PLCurve doubled;
  doubled.points = {SurfacePoint::vertex(0), SurfacePoint::vertex(1)};
  SimplicityResult s = checkWeaklySimple(m, doubled);
  CHECK(s.status == SimplicityResult::Status::WeaklySimple);
  REQUIRE(s.witness.size() == 1);
  CHECK(s.witness[0].laneOrder.size() == 2);
}

TEST_CASE("numeric check: exact band geodesic accepts, displaced waypoint rejects") {
  IntrinsicMesh m = triangulatedCube();
  PLCurve band = cubeBandCurve(m, 0.5);
  NumericReport clean = checkCurveNumeric(m, band, 1e-7);
  CHECK(clean.accepted);
  CHECK(clean.maxStraightnessDefect < 1e-9);
  CHECK(clean.maxAngleViolation == 0.0);

  PLCurve bent = band;
  for (auto& p : bent.points) {
    if (p.isEdge()) {
      p.t += 0.01;
      break;
    }
  }
  NumericReport report = checkCurveNumeric(m, bent, 1e-4);
  CHECK_FALSE(report.accepted);
  CHECK(report.maxStraightnessDefect > 5e-3);
  CHECK(report.maxStraightnessDefect < 0.1);

  // adding a collinear midpoint does not change the verdict
  PLCurve densified = band;
  CurveGeometry g = CurveGeometry::make(m, band);
  const SegmentInfo& s0 = g.segment(0);
  if (!s0.onEdge) {
    SurfacePoint mid = pointFromChart(m, s0.face, (s0.a + s0.b) * 0.5);
    densified.points.insert(densified.points.begin() + 1, mid);
    densified.segmentFace.insert(densified.segmentFace.begin() + 1, s0.face);
  }
  NumericReport again = checkCurveNumeric(m, densified, 1e-7);
  CHECK(again.accepted == clean.accepted);
  CHECK(again.maxStraightnessDefect == doctest::Approx(clean.maxStraightnessDefect).epsilon(1e-9));
}

TEST_CASE("accepted words are rotation and reversal invariant") {
  IntrinsicMesh m = doubledTriangle();
  CrossingWord w{{Letter::vertex(2), Letter::cross(edgeBetween(m, 0, 1))}};
  CheckResult base = checkWord(m, w);
  REQUIRE(std::holds_alternative<Certificate>(base));
  double len = std::get<Certificate>(base).length;
  for (const CrossingWord& variant : {w.rotated(1), w.reversed(), w.rotated(1).reversed()}) {
    CheckResult r = checkWord(m, variant);
    REQUIRE(std::holds_alternative<Certificate>(r));
    CHECK(std::get<Certificate>(r).length == doctest::Approx(len).epsilon(1e-12));
  }
}

TEST_CASE("certificates are deterministic") {
  IntrinsicMesh m = tetrahedron();
  CheckResult a = checkWord(m, doubledEdgeWord(m, 2, 3));
  CheckResult b = checkWord(m, doubledEdgeWord(m, 2, 3));
  REQUIRE(std::holds_alternative<Certificate>(a));
  REQUIRE(std::holds_alternative<Certificate>(b));
  const Certificate& ca = std::get<Certificate>(a);
  const Certificate& cb = std::get<Certificate>(b);
  CHECK(ca.length == cb.length); // bit-exact
  REQUIRE(ca.realization.points.size() == cb.realization.points.size());
  for (size_t i = 0; i < ca.realization.points.size(); i++) {
    CHECK(ca.realization.points[i].t == cb.realization.points[i].t);
  }
}

TEST_CASE("scale equivariance of certificates") {
  double lambda = 2.5;
  std::vector<FaceData> faces = {{{0, 1, 2}, {lambda, lambda, lambda}}, {{0, 2, 1}, {lambda, lambda, lambda}}};
  std::vector<GluePair> glue = {{{0, 2}, {1, 1}}, {{0, 0}, {1, 0}}, {{0, 1}, {1, 2}}};
  IntrinsicMesh scaled = IntrinsicMesh::build(faces, glue);
  IntrinsicMesh unit = doubledTriangle();
  CrossingWord w{{Letter::vertex(2), Letter::cross(edgeBetween(unit, 0, 1))}};
  CrossingWord ws{{Letter::vertex(2), Letter::cross(edgeBetween(scaled, 0, 1))}};
  CheckResult ru = checkWord(unit, w);
  CheckResult rs = checkWord(scaled, ws);
  REQUIRE(std::holds_alternative<Certificate>(ru));
  REQUIRE(std::holds_alternative<Certificate>(rs));
  CHECK(std::get<Certificate>(rs).length ==
        doctest::Approx(lambda * std::get<Certificate>(ru).length).epsilon(1e-12));
  CHECK(std::get<Certificate>(rs).angles[0].left ==
        doctest::Approx(std::get<Certificate>(ru).angles[0].left).epsilon(1e-12));
}

TEST_CASE("every certificate angle pair sums to the cone angle") {
  IntrinsicMesh m = tetrahedron();
  for (int va = 0; va < 4; va++) {
    for (int vb = va + 1; vb < 4; vb++) {
      CheckResult r = checkWord(m, doubledEdgeWord(m, va, vb));
      REQUIRE(std::holds_alternative<Certificate>(r));
      for (const auto& a : std::get<Certificate>(r).angles) {
        CHECK(a.left + a.right == doctest::Approx(m.star(a.vertex).coneAngle).epsilon(1e-12));
      }
    }
  }
}
