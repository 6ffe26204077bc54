#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgeo/export.h"
#include "qgeo/mesh_io.h"
#include "qgeo/pipeline.h"
#include "support/test_meshes.h"

#include <cmath>

using namespace qgeo;
using namespace qgeo::testing;

namespace {

Certificate doubledEdgeCertificate(const IntrinsicMesh& m) {
  int e01 = edgeBetween(m, 0, 1);
  CrossingWord w{{Letter::vertex(0), Letter::follow(e01), Letter::vertex(1), Letter::follow(e01)}};
  CheckResult r = checkWord(m, w);
  REQUIRE(std::holds_alternative<Certificate>(r));
  return std::get<Certificate>(r);
}

} // namespace

TEST_CASE("certificate JSON round trip re-verifies") {
  IntrinsicMesh m = tetrahedron();
  Certificate cert = doubledEdgeCertificate(m);
  RunManifest manifest{"verify", m.contentHash(), "test"};
  std::string json = certificateToJson(m, cert, manifest);
  LoadedCertificate loaded = certificateFromJson(m, json);
  CHECK(loaded.meshHash == m.contentHash());
  CHECK(loaded.certificate.word == cert.word);
  CHECK(loaded.certificate.length == cert.length); // bit-exact through the shortest round-trip form
  CheckResult again = checkWord(m, loaded.certificate.word);
  CHECK(std::holds_alternative<Certificate>(again));
}

TEST_CASE("certificate JSON bytes are reproducible") {
  IntrinsicMesh m = tetrahedron();
  RunManifest manifest{"verify", m.contentHash(), "test"};
  std::string a = certificateToJson(m, doubledEdgeCertificate(m), manifest);
  std::string b = certificateToJson(m, doubledEdgeCertificate(m), manifest);
  CHECK(a == b);
}

TEST_CASE("curve JSON round trip") {
  IntrinsicMesh m = doubledTriangle();
  PLCurve curve;
  curve.points = {SurfacePoint::vertex(2), SurfacePoint::edge(edgeBetween(m, 0, 1), 0.5)};
  curve.segmentFace = {0, 1};
  PLCurve back = curveFromJson(curveToJson(curve));
  REQUIRE(back.points.size() == 2);
  CHECK(back.points[1].t == curve.points[1].t);
  CHECK(back.segmentFace == curve.segmentFace);
  CHECK(curveLength(m, back) == curveLength(m, curve));
}

TEST_CASE("svg export is deterministic and draws the strips") {
  IntrinsicMesh m = doubledTriangle();
  int e01 = edgeBetween(m, 0, 1);
  CrossingWord w{{Letter::vertex(2), Letter::cross(e01)}};
  CheckResult r = checkWord(m, w);
  REQUIRE(std::holds_alternative<Certificate>(r));
  const Certificate& cert = std::get<Certificate>(r);
  std::string svg = certificateToSvg(m, cert);
  CHECK(svg == certificateToSvg(m, cert));
  CHECK(svg.find("<polygon") != std::string::npos); // unfolded faces
  CHECK(svg.find("<line") != std::string::npos);    // the traced chord
}

TEST_CASE("obj polyline lifts through barycentric coordinates") {
  IntrinsicMesh cube = triangulatedCube();
  FindConfig config;
  FindResult r = findQuasigeodesic(cube, config);
  REQUIRE(r.certificate);
  std::string obj = certificateToObjPolyline(cube, *r.certificate);
  CHECK(obj.find("v ") != std::string::npos);
  CHECK(obj.find("l ") != std::string::npos);
  // every emitted 3D vertex lies on the unit cube surface
  std::istringstream in(obj);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) != 0) continue;
    double x, y, z;
    std::sscanf(line.c_str(), "v %lf %lf %lf", &x, &y, &z);
    bool onFace = false;
    for (double c : {x, y, z}) {
      if (std::abs(c) < 1e-9 || std::abs(c - 1) < 1e-9) onFace = true;
    }
    CHECK(onFace);
  }

  // intrinsic meshes cannot lift
  IntrinsicMesh tet = tetrahedron();
  Certificate cert = doubledEdgeCertificate(tet);
  CHECK_THROWS(certificateToObjPolyline(tet, cert));
}

TEST_CASE("find pipeline goldens") {
  FindConfig config;
  FindResult tet = findQuasigeodesic(tetrahedron(), config);
  REQUIRE(tet.certificate);
  CHECK(tet.certificate->length == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(tet.certificate->degenerateDoubledSegment);

  FindResult cube = findQuasigeodesic(triangulatedCube(), config);
  REQUIRE(cube.certificate);
  CHECK(cube.certificate->length == doctest::Approx(4.0).epsilon(1e-6));

  FindResult dbl = findQuasigeodesic(doubledTriangle(), config);
  REQUIRE(dbl.certificate);
  bool medianOrEdge = std::abs(dbl.certificate->length - std::sqrt(3.0)) < 1e-9 ||
                      std::abs(dbl.certificate->length - 2.0) < 1e-9;
  CHECK(medianOrEdge);
}

TEST_CASE("extrinsic regular tetrahedron matches the intrinsic build") {
  std::vector<Vec3> pts = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  double scale = 1.0 / (2.0 * std::sqrt(2.0)); // edge length 2*sqrt(2) down to 1
  for (auto& p : pts) p = p * scale;
  IntrinsicMesh ext = IntrinsicMesh::fromExtrinsic(pts, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {2, 1, 3}});
  IntrinsicMesh in = tetrahedron();
  CHECK(ext.numVertices() == in.numVertices());
  CHECK(ext.numEdges() == in.numEdges());
  CHECK(ext.edgeSum() == doctest::Approx(in.edgeSum()).epsilon(1e-12));
  CHECK(ext.minAltitude() == doctest::Approx(in.minAltitude()).epsilon(1e-12));
  CHECK(ext.etaBound() == in.etaBound());
  for (int v = 0; v < 4; v++) {
    CHECK(ext.star(v).coneAngle == doctest::Approx(kPi).epsilon(1e-12));
  }
}
