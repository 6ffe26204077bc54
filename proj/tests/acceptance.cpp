// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line. Exits nonzero if any criterion fails.

#include "qgeo/export.h"
#include "qgeo/mesh_io.h"
#include "qgeo/pipeline.h"
#include "support/band.h"
#include "support/oracle.h"
#include "support/test_meshes.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using namespace qgeo;
using namespace qgeo::testing;

namespace {

int failures = 0;

struct Criterion {
  int number;
  std::string name;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  Criterion(int n, std::string nm) : number(n), name(std::move(nm)) {}

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }

  ~Criterion() {
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok) {
      std::printf("PASS criterion %d: %s (%.2f s)\n", number, name.c_str(), sec);
    } else {
      std::printf("FAIL criterion %d: %s -- %s (%.2f s)\n", number, name.c_str(), detail.c_str(), sec);
      failures++;
    }
    std::fflush(stdout);
  }
};

std::string runCli(const std::string& args, int* exitCode) {
  std::string cmd = std::string(QGEO_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    *exitCode = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  *exitCode = pclose(pipe);
  return out;
}

double jsonNumber(const std::string& doc, const std::string& key) {
  size_t at = doc.find("\"" + key + "\":");
  if (at == std::string::npos) return std::numeric_limits<double>::quiet_NaN();
  return std::stod(doc.substr(at + key.size() + 3));
}

std::filesystem::path dataDir;

void writeMeshFiles() {
  dataDir = std::filesystem::temp_directory_path() / "qgeo_acceptance";
  std::filesystem::create_directories(dataDir);
  writeFile((dataDir / "tetrahedron.json").string(), serializeIntrinsic(tetrahedron()));
  writeFile((dataDir / "cube.json").string(), serializeIntrinsic(triangulatedCube()));
  writeFile((dataDir / "doubled_triangle.json").string(), serializeIntrinsic(doubledTriangle()));
}

// Seeded weakly simple test curves: sweep-out fibers, optionally jiggled
// along their edges when the jiggle preserves weak simplicity.
std::vector<PLCurve> randomWeaklySimpleCurves(const IntrinsicMesh& mesh, unsigned seed, int count) {
  std::vector<PLCurve> fibers = sweepOutFibers(mesh, computeShelling(mesh), 5);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.15, 0.15);
  std::vector<PLCurve> out;
  while (static_cast<int>(out.size()) < count) {
    const PLCurve& base = fibers[rng() % fibers.size()];
    PLCurve jiggled = base;
    for (auto& p : jiggled.points) {
      if (p.isEdge()) {
        p.t = std::clamp(p.t + uni(rng), 0.05, 0.95);
      }
    }
    if (checkWeaklySimple(mesh, jiggled).ok()) {
      out.push_back(jiggled);
    } else {
      out.push_back(base);
    }
  }
  return out;
}

void criterion1() {
  Criterion c(1, "total curvature 4*pi across the mesh zoo");
  std::vector<IntrinsicMesh> meshes = {tetrahedron(), triangulatedCube(), icosahedron(), doubledTriangle()};
  for (unsigned seed = 1; seed <= 20; seed++) {
    meshes.push_back(randomConvexHull(seed, 6 + static_cast<int>(seed % 7)));
  }
  for (const auto& m : meshes) {
    c.require(std::abs(m.curvatureSum() - 4 * kPi) <= 1e-8,
              "curvature sum off by " + std::to_string(m.curvatureSum() - 4 * kPi));
  }
}

void criterion2() {
  Criterion c(2, "analyze reports eta 28 / 203");
  int code = 0;
  std::string tet = runCli("analyze " + (dataDir / "tetrahedron.json").string(), &code);
  c.require(code == 0, "analyze tetrahedron exit code");
  c.require(tet.find("eta: 28\n") != std::string::npos, "tetrahedron eta != 28");
  std::string cube = runCli("analyze " + (dataDir / "cube.json").string(), &code);
  c.require(code == 0, "analyze cube exit code");
  c.require(cube.find("eta: 203\n") != std::string::npos, "cube eta != 203");
}

void criterion3() {
  Criterion c(3, "verify goldens accept exactly and perturbations localize");
  IntrinsicMesh tet = tetrahedron();
  int e01 = edgeBetween(tet, 0, 1);
  CrossingWord doubled{{Letter::vertex(0), Letter::follow(e01), Letter::vertex(1), Letter::follow(e01)}};
  CheckResult r1 = checkWord(tet, doubled);
  c.require(std::holds_alternative<Certificate>(r1), "doubled edge rejected");
  if (std::holds_alternative<Certificate>(r1)) {
    const Certificate& cert = std::get<Certificate>(r1);
    c.require(std::abs(cert.length - 2.0) <= 1e-9, "doubled edge length");
    c.require(cert.degenerateDoubledSegment, "doubled edge degenerate flag");
  }

  IntrinsicMesh dbl = doubledTriangle();
  CrossingWord median{{Letter::vertex(2), Letter::cross(edgeBetween(dbl, 0, 1))}};
  CheckResult r2 = checkWord(dbl, median);
  c.require(std::holds_alternative<Certificate>(r2), "doubled median rejected");
  if (std::holds_alternative<Certificate>(r2)) {
    const Certificate& cert = std::get<Certificate>(r2);
    c.require(std::abs(cert.length - std::sqrt(3.0)) <= 1e-9, "median length");
    c.require(cert.angles.size() == 1 && std::abs(cert.angles[0].left - kPi / 3) <= 1e-9 &&
                  std::abs(cert.angles[0].right - kPi / 3) <= 1e-9,
              "median apex angles");
  }

  // perturbations reject with a located reason
  CrossingWord bad1{{Letter::vertex(0), Letter::follow(e01), Letter::vertex(1), Letter::follow(edgeBetween(tet, 2, 3))}};
  CheckResult p1 = checkWord(tet, bad1);
  c.require(std::holds_alternative<Rejection>(p1) && std::get<Rejection>(p1).position >= 0,
            "perturbed doubled edge not localized");
  CrossingWord bad2{{Letter::vertex(0), Letter::cross(edgeBetween(dbl, 0, 1))}};
  CheckResult p2 = checkWord(dbl, bad2);
  c.require(std::holds_alternative<Rejection>(p2) && std::get<Rejection>(p2).position >= 0,
            "perturbed median not localized");
}

void criterion4() {
  Criterion c(4, "segment enumeration matches the dense oracle; assembly finds all six doubled edges");
  IntrinsicMesh tet = tetrahedron();
  for (int v = 0; v < 4; v++) {
    EnumerationResult er = enumerateSegments(tet, v, 2.01, 100000000);
    c.require(er.complete, "enumeration hit its budget");
    std::map<SegmentKey, double> mine;
    for (const auto& s : er.segments) mine[{s.vEnd, s.followedEdge, s.crossedEdges}] = s.length;
    auto oracle = denseDirectionOracle(tet, v, 2.01, 100000);
    c.require(mine.size() == oracle.size(), "segment set sizes differ at vertex " + std::to_string(v));
    for (const auto& [key, len] : oracle) {
      auto it = mine.find(key);
      c.require(it != mine.end(), "oracle segment missing");
      if (it != mine.end()) c.require(std::abs(it->second - len) <= 1e-6, "segment length mismatch");
    }
  }
  EnumerationResult all = enumerateAllSegments(tet, 2.01, 100000000, 1);
  SearchConfig sc;
  sc.maxTotalLength = 2.01;
  sc.maxWordLength = 16;
  AssemblyResult ar = assembleClosed(tet, all.segments, sc);
  c.require(ar.certificates.size() == 6, "expected 6 doubled-edge certificates, got " +
                                             std::to_string(ar.certificates.size()));
  for (const auto& cert : ar.certificates) {
    c.require(std::abs(cert.length - 2.0) <= 1e-9 && cert.degenerateDoubledSegment, "assembled certificate shape");
  }
}

void criterion5() {
  Criterion c(5, "cube end-to-end find returns length 4 within 120 s");
  auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  std::string out = runCli("find " + (dataDir / "cube.json").string(), &code);
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(code == 0, "find exit code " + std::to_string(code));
  c.require(sec < 120, "find exceeded 120 s");
  double len = jsonNumber(out, "length");
  c.require(std::abs(len - 4.0) <= 1e-6, "certificate length " + std::to_string(len));
  // independent re-verification of the emitted word
  IntrinsicMesh cube = triangulatedCube();
  size_t at = out.find("\"wordText\": \"");
  c.require(at != std::string::npos, "no word in output");
  if (at != std::string::npos) {
    std::string word = out.substr(at + 13, out.find('"', at + 13) - at - 13);
    CheckResult r = checkWord(cube, parseWord(cube, word));
    c.require(std::holds_alternative<Certificate>(r), "emitted word does not re-verify");
    if (std::holds_alternative<Certificate>(r)) {
      c.require(std::abs(std::get<Certificate>(r).length - 4.0) <= 1e-6, "re-verified length");
    }
  }
}

void criterion6() {
  Criterion c(6, "flow converges from the 4.8 zigzag to the length-4 band");
  IntrinsicMesh cube = triangulatedCube();
  CubeBand band = makeCubeBand(cube, 0.5);
  PLCurve zig = bandZigzag(cube, band, 0.165831);
  double startLen = curveLength(cube, zig);
  c.require(std::abs(startLen - 4.8) <= 1e-3, "zigzag length " + std::to_string(startLen));
  FlowOutcome out = iterateFlow(cube, zig, 1e-7, 200, 1e-4);
  c.require(out.status == FlowOutcome::Status::Converged, "flow did not converge in 200 iterations");
  c.require(out.report.accepted, "converged curve fails the numeric check at 1e-4");
  c.require(std::abs(out.lengthTrace.back() - 4.0) <= 1e-4,
            "final length " + std::to_string(out.lengthTrace.back()));
  int violations = 0;
  for (size_t i = 1; i < out.lengthTrace.size(); i++) {
    if (out.lengthTrace[i] > out.lengthTrace[i - 1] + 1e-12) violations++;
  }
  c.require(violations == 0, std::to_string(violations) + " monotonicity violations");
}

void criterion7() {
  Criterion c(7, "one flow pass never lengthens; near-fixed curves verify numerically");
  std::vector<IntrinsicMesh> meshes = {tetrahedron(), triangulatedCube(), doubledTriangle(), icosahedron(),
                                       concaveSpindle()};
  int tested = 0;
  for (size_t mi = 0; mi < meshes.size(); mi++) {
    auto curves = randomWeaklySimpleCurves(meshes[mi], 9000 + static_cast<unsigned>(mi), 20);
    for (const auto& curve : curves) {
      tested++;
      double before = curveLength(meshes[mi], curve);
      auto res = phi(meshes[mi], curve);
      if (std::holds_alternative<CollapseMarker>(res)) continue; // collapse only shortens
      double after = curveLength(meshes[mi], std::get<PLCurve>(res));
      c.require(after <= before + 1e-9, "flow pass lengthened a curve by " + std::to_string(after - before));
      if (std::abs(after - before) <= 1e-9) {
        NumericReport rep = checkCurveNumeric(meshes[mi], curve, 1e-7);
        c.require(rep.accepted, "fixed point fails the numeric check (defect " +
                                    std::to_string(std::max(rep.maxStraightnessDefect, rep.maxAngleViolation)) + ")");
      }
    }
  }
  c.require(tested == 100, "expected 100 curves, tested " + std::to_string(tested));
}

void criterion8() {
  Criterion c(8, "sweep-out fibers stay within the edge sum and end near points");
  for (const IntrinsicMesh& m : {tetrahedron(), triangulatedCube(), icosahedron(), doubledTriangle(),
                                 concaveSpindle()}) {
    auto order = computeShelling(m);
    auto fibers = sweepOutFibers(m, order, 6);
    for (const auto& fib : fibers) {
      c.require(curveLength(m, fib) <= m.edgeSum() + 1e-9, "fiber exceeds the edge sum");
    }
    auto fine = sweepOutFibers(m, order, 60);
    c.require(curveLength(m, fine.front()) < m.minAltitude() / 10, "first fiber is not a near-point");
    c.require(curveLength(m, fine.back()) < m.minAltitude() / 10, "last fiber is not a near-point");
  }
}

std::vector<IntrinsicMesh> hullSuite() {
  std::vector<IntrinsicMesh> hulls;
  for (unsigned seed = 101; seed <= 110; seed++) {
    hulls.push_back(randomConvexHull(seed, 6 + static_cast<int>(seed % 5)));
  }
  return hulls;
}

std::string hullCertificates(const std::vector<IntrinsicMesh>& hulls, int threads, Criterion& c, bool check) {
  std::ostringstream all;
  for (size_t i = 0; i < hulls.size(); i++) {
    FindConfig config;
    config.threads = threads;
    FindResult r = findQuasigeodesic(hulls[i], config);
    if (check) {
      c.require(r.certificate.has_value(), "no certificate on hull " + std::to_string(i));
      if (r.certificate) {
        c.require(r.certificate->length <= hulls[i].edgeSum() + 1e-9, "certificate longer than the edge sum");
        c.require(r.certificate->simplicity.ok(), "certificate not weakly simple");
        CheckResult re = checkWord(hulls[i], r.certificate->word);
        c.require(std::holds_alternative<Certificate>(re), "hull certificate does not re-verify");
      }
    }
    if (r.certificate) {
      RunManifest manifest{"find", hulls[i].contentHash(), "acceptance"};
      all << certificateToJson(hulls[i], *r.certificate, manifest);
    }
  }
  return all.str();
}

void criterion9() {
  Criterion c(9, "existence pipeline certifies 10 random convex hulls within 10 min");
  auto t0 = std::chrono::steady_clock::now();
  auto hulls = hullSuite();
  hullCertificates(hulls, 1, c, true);
  double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(sec < 600, "pipeline exceeded 10 minutes");
}

void criterion10() {
  Criterion c(10, "outputs are byte-identical across runs and 1/4/8 threads");
  // CLI find on the cube: two runs per thread count
  std::string reference;
  for (int threads : {1, 4, 8}) {
    for (int run = 0; run < 2; run++) {
      int code = 0;
      std::string out =
          runCli("--threads " + std::to_string(threads) + " find " + (dataDir / "cube.json").string(), &code);
      c.require(code == 0, "find exit code");
      if (reference.empty()) reference = out;
      c.require(out == reference, "cube find output differs (threads " + std::to_string(threads) + ")");
    }
  }
  // verify golden: two CLI runs
  std::string v1, v2;
  int code = 0;
  v1 = runCli("verify " + (dataDir / "tetrahedron.json").string() + " --word \"V0 F0-1 V1 F0-1\"", &code);
  v2 = runCli("verify " + (dataDir / "tetrahedron.json").string() + " --word \"V0 F0-1 V1 F0-1\"", &code);
  c.require(!v1.empty() && v1 == v2, "verify output differs between runs");

  // search on the tetrahedron across thread counts
  std::string searchRef;
  for (int threads : {1, 4, 8}) {
    IntrinsicMesh tet = tetrahedron();
    EnumerationResult segs = enumerateAllSegments(tet, 2.01, 100000000, threads);
    SearchConfig sc;
    sc.maxTotalLength = 2.01;
    sc.maxWordLength = 16;
    sc.threads = threads;
    AssemblyResult ar = assembleClosed(tet, segs.segments, sc);
    RunManifest manifest{"search", tet.contentHash(), "acceptance"};
    std::string out = certificatesToJson(tet, ar.certificates, manifest);
    if (searchRef.empty()) searchRef = out;
    c.require(out == searchRef, "search output differs at " + std::to_string(threads) + " threads");
  }

  // flow outcome: re-run
  {
    IntrinsicMesh cube = triangulatedCube();
    CubeBand band = makeCubeBand(cube, 0.5);
    PLCurve zig = bandZigzag(cube, band, 0.165831);
    RunManifest manifest{"flow", cube.contentHash(), "acceptance"};
    std::string a = flowOutcomeToJson(cube, iterateFlow(cube, zig, 1e-7, 200, 1e-4), manifest, true);
    std::string b = flowOutcomeToJson(cube, iterateFlow(cube, zig, 1e-7, 200, 1e-4), manifest, true);
    c.require(a == b, "flow outcome differs between runs");
  }

  // hull pipeline across thread counts
  auto hulls = hullSuite();
  std::string h1 = hullCertificates(hulls, 1, c, false);
  std::string h4 = hullCertificates(hulls, 4, c, false);
  std::string h8 = hullCertificates(hulls, 8, c, false);
  c.require(!h1.empty() && h1 == h4 && h1 == h8, "hull certificates differ across thread counts");
}

} // namespace

int main() {
  writeMeshFiles();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
