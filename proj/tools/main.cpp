// Command-line interface: validate and analyze meshes, verify crossing
// words, run the bounded search and the shortening flow, find certified
// curves end to end, and export certificates.

#include <CLI11.hpp>

#include "qgeo/export.h"
#include "qgeo/mesh_io.h"
#include "qgeo/pipeline.h"

#include <chrono>
#include <iomanip>
#include <iostream>

using namespace qgeo;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitNoResult = 2; // budget exhausted or nothing certifiable
constexpr int kExitInternal = 3;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  ~Timer() {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cerr << "wall time: " << ms.count() << " ms\n";
  }
};

void printQuantities(const IntrinsicMesh& mesh) {
  std::cout << "vertices: " << mesh.numVertices() << "\n"
            << "edges: " << mesh.numEdges() << "\n"
            << "faces: " << mesh.numFaces() << "\n"
            << "subdivisionsApplied: " << mesh.subdivisionsApplied() << "\n"
            << "edgeSum: " << std::setprecision(17) << mesh.edgeSum() << "\n"
            << "minAltitude: " << mesh.minAltitude() << "\n"
            << "maxDegree: " << mesh.maxVertexDegree() << "\n"
            << "eta: " << mesh.etaBound() << "\n"
            << "curvatureSum: " << mesh.curvatureSum() << "\n"
            << "meshHash: " << mesh.contentHash() << "\n";
}

int cmdValidate(const std::string& path, bool fullTable) {
  IntrinsicMesh mesh = loadMeshFile(path);
  printQuantities(mesh);
  if (fullTable) {
    std::cout << "vertexTable:\n";
    for (int v = 0; v < mesh.numVertices(); v++) {
      const VertexStar& s = mesh.star(v);
      std::cout << "  v" << v << " degree=" << s.degree << " coneAngle=" << std::setprecision(17) << s.coneAngle
                << " curvature=" << s.curvature << (s.convex ? " convex" : " concave") << "\n";
    }
  }
  std::cout << "valid: true\n";
  return kExitOk;
}

void writeOrPrint(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    writeFile(out, content);
  }
}

int runVerify(const std::string& path, const std::string& wordText, const std::string& out) {
  IntrinsicMesh mesh = loadMeshFile(path);
  CrossingWord word;
  try {
    word = parseWord(mesh, wordText);
  } catch (const std::exception& e) {
    std::cerr << "bad word: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  CheckResult r = checkWord(mesh, word);
  if (std::holds_alternative<Rejection>(r)) {
    const Rejection& rej = std::get<Rejection>(r);
    std::cout << "rejected: " << rejectionReasonName(rej.reason) << " at letter " << rej.position << ": " << rej.detail
              << "\n";
    return rej.reason == Rejection::Reason::MalformedWord ? kExitInvalidInput : kExitNoResult;
  }
  const Certificate& cert = std::get<Certificate>(r);
  RunManifest manifest{"verify", mesh.contentHash(), "word=" + formatWord(mesh, word)};
  writeOrPrint(out, certificateToJson(mesh, cert, manifest));
  return kExitOk;
}

int runSearch(const IntrinsicMesh& mesh, SearchConfig config, bool emitAll, const std::string& out,
              const std::string& configEcho) {
  double maxLen = config.maxTotalLength > 0 ? config.maxTotalLength : mesh.edgeSum();
  config.maxTotalLength = maxLen;
  if (!emitAll && config.maxSolutions == 0) config.maxSolutions = 1;
  EnumerationResult segs = enumerateAllSegments(mesh, maxLen, config.nodeBudget, config.threads);
  AssemblyResult r = assembleClosed(mesh, segs.segments, config);
  RunManifest manifest{"search", mesh.contentHash(), configEcho};
  writeOrPrint(out, certificatesToJson(mesh, r.certificates, manifest));
  if (!segs.complete || !r.complete) {
    std::cerr << "warning: budget exhausted, results may be incomplete\n";
  }
  return r.certificates.empty() ? kExitNoResult : kExitOk;
}

int runFlow(const IntrinsicMesh& mesh, const std::string& init, const std::string& wordText,
            const std::string& curveFile, int samples, double tol, int maxIter, const std::string& traceCsv,
            const std::string& out) {
  std::vector<PLCurve> starts;
  if (init == "sweepout") {
    starts = sweepOutFibers(mesh, computeShelling(mesh), samples);
    // longest fibers first: most likely to settle on a quasigeodesic
    std::stable_sort(starts.begin(), starts.end(), [&](const PLCurve& a, const PLCurve& b) {
      return curveLength(mesh, a) > curveLength(mesh, b);
    });
  } else if (init == "word") {
    CrossingWord word = parseWord(mesh, wordText);
    CheckResult r = checkWord(mesh, word);
    if (std::holds_alternative<Rejection>(r)) {
      std::cerr << "word does not realize a curve: " << std::get<Rejection>(r).detail << "\n";
      return kExitInvalidInput;
    }
    starts = {std::get<Certificate>(r).realization};
  } else if (init == "file") {
    starts = {curveFromJson(readFile(curveFile))};
  } else {
    std::cerr << "unknown --init mode: " << init << "\n";
    return kExitInvalidInput;
  }

  RunManifest manifest{"flow", mesh.contentHash(),
                       "init=" + init + " samples=" + std::to_string(samples) + " tol=" + std::to_string(tol) +
                           " maxIter=" + std::to_string(maxIter)};
  for (const PLCurve& start : starts) {
    FlowOutcome outcome = iterateFlow(mesh, start, tol, maxIter, 1e-6);
    if (outcome.status == FlowOutcome::Status::Collapsed && starts.size() > 1) continue;
    if (!traceCsv.empty()) {
      std::ostringstream csv;
      csv << "iteration,length\n";
      for (size_t i = 0; i < outcome.lengthTrace.size(); i++) {
        csv << i << "," << std::setprecision(17) << outcome.lengthTrace[i] << "\n";
      }
      writeFile(traceCsv, csv.str());
    }
    writeOrPrint(out, flowOutcomeToJson(mesh, outcome, manifest, true));
    return outcome.status == FlowOutcome::Status::Converged ? kExitOk : kExitNoResult;
  }
  std::cerr << "all fibers collapsed\n";
  return kExitNoResult;
}

int runFind(const IntrinsicMesh& mesh, const FindConfig& config, const std::string& out, bool svg,
            const std::string& configEcho) {
  FindResult r = findQuasigeodesic(mesh, config);
  if (!r.certificate) {
    std::cerr << "no certificate within budget (searchComplete=" << (r.searchComplete ? "true" : "false") << ")\n";
    return kExitNoResult;
  }
  RunManifest manifest{"find", mesh.contentHash(), configEcho + " route=" + routeName(r.route)};
  std::string json = certificateToJson(mesh, *r.certificate, manifest);
  if (out.empty()) {
    std::cout << json;
    if (svg) std::cout << certificateToSvg(mesh, *r.certificate);
  } else {
    writeFile(out + ".json", json);
    writeFile(out + ".svg", certificateToSvg(mesh, *r.certificate));
  }
  std::cerr << "route: " << routeName(r.route) << ", fibers flowed: " << r.fibersFlowed << "\n";
  return kExitOk;
}

int runExport(const std::string& meshPath, const std::string& certPath, const std::string& format,
              const std::string& out) {
  IntrinsicMesh mesh = loadMeshFile(meshPath);
  LoadedCertificate loaded = certificateFromJson(mesh, readFile(certPath));
  if (loaded.meshHash != mesh.contentHash()) {
    std::cerr << "HashMismatch: certificate was computed from mesh " << loaded.meshHash << ", this mesh is "
              << mesh.contentHash() << "\n";
    return kExitInvalidInput;
  }
  // re-verify the embedded word rather than trusting the stored realization
  CheckResult r = checkWord(mesh, loaded.certificate.word);
  if (std::holds_alternative<Rejection>(r)) {
    std::cerr << "certificate does not re-verify: " << std::get<Rejection>(r).detail << "\n";
    return kExitInvalidInput;
  }
  const Certificate& cert = std::get<Certificate>(r);
  RunManifest manifest{"export", mesh.contentHash(), "format=" + format};
  if (format == "svg") {
    writeOrPrint(out, certificateToSvg(mesh, cert));
  } else if (format == "obj-polyline") {
    writeOrPrint(out, certificateToObjPolyline(mesh, cert));
  } else if (format == "json") {
    writeOrPrint(out, certificateToJson(mesh, cert, manifest));
  } else {
    std::cerr << "unknown format: " << format << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"closed quasigeodesics on intrinsic polyhedral spheres"};
  app.require_subcommand(1);

  double tolerance = 0;
  int threads = 1;
  app.add_option("--tolerance", tolerance, "geometric tolerance (default 1e-9, or QG_TOLERANCE)");
  app.add_option("--threads", threads, "worker threads for search and flow seeding");

  std::string meshPath, out, wordText, curveFile, format, certPath, init = "sweepout", traceCsv;
  bool emitAll = false, svg = false;
  int samples = 4, maxIter = 10000;
  double tolFlow = 1e-7, maxLength = 0;
  long long maxWord = 0, budget = 10000000;
  int maxSolutions = 0;

  auto* vcmd = app.add_subcommand("validate", "check mesh invariants and report derived quantities");
  vcmd->add_option("mesh", meshPath)->required();

  auto* acmd = app.add_subcommand("analyze", "full report with the per-vertex curvature table");
  acmd->add_option("mesh", meshPath)->required();

  auto* wcmd = app.add_subcommand("verify", "certify a cyclic crossing word");
  wcmd->add_option("mesh", meshPath)->required();
  wcmd->add_option("--word", wordText, "letters like 'V0 F0-1 V1 F0-1' or 'V2 C0-1'")->required();
  wcmd->add_option("--out", out, "write the certificate JSON here");

  auto* scmd = app.add_subcommand("search", "bounded enumeration of closed quasigeodesic words");
  scmd->add_option("mesh", meshPath)->required();
  scmd->add_option("--max-length", maxLength, "total length bound (default: edge sum)");
  scmd->add_option("--max-word", maxWord, "word length cap (default: the eta bound)");
  scmd->add_option("--max-solutions", maxSolutions, "stop after this many certificates");
  scmd->add_option("--budget", budget, "node budget");
  scmd->add_flag("--emit-all", emitAll, "emit every certificate found (default: first)");
  scmd->add_option("--out", out);

  auto* fcmd = app.add_subcommand("flow", "run the shortening flow");
  fcmd->add_option("mesh", meshPath)->required();
  fcmd->add_option("--init", init, "sweepout | word | file");
  fcmd->add_option("--word", wordText);
  fcmd->add_option("--curve-file", curveFile);
  fcmd->add_option("--samples", samples, "fibers per face for --init sweepout");
  fcmd->add_option("--tol", tolFlow, "per-pass length decrease threshold");
  fcmd->add_option("--max-iter", maxIter);
  fcmd->add_option("--trace", traceCsv, "write per-iteration lengths as CSV");
  fcmd->add_option("--out", out);

  auto* gcmd = app.add_subcommand("find", "flow the sweep-out, then search; emit the first certificate");
  gcmd->add_option("mesh", meshPath)->required();
  gcmd->add_option("--max-length", maxLength, "certificate length bound (default: edge sum)");
  gcmd->add_option("--samples", samples, "fibers per face");
  gcmd->add_option("--max-iter", maxIter);
  gcmd->add_option("--budget", budget);
  gcmd->add_option("--out", out, "output stem: writes <stem>.json and <stem>.svg");
  gcmd->add_flag("--svg", svg, "print the strip drawing when no --out is given");

  auto* ecmd = app.add_subcommand("export", "re-verify a certificate and export it");
  ecmd->add_option("--mesh", meshPath)->required();
  ecmd->add_option("--cert", certPath)->required();
  ecmd->add_option("--format", format, "svg | obj-polyline | json")->required();
  ecmd->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);
  if (tolerance > 0) setGeomTolerance(tolerance);

  Timer timer;
  try {
    if (app.got_subcommand(vcmd)) return cmdValidate(meshPath, false);
    if (app.got_subcommand(acmd)) return cmdValidate(meshPath, true);
    if (app.got_subcommand(wcmd)) return runVerify(meshPath, wordText, out);
    if (app.got_subcommand(scmd)) {
      IntrinsicMesh mesh = loadMeshFile(meshPath);
      SearchConfig config;
      config.maxTotalLength = maxLength;
      config.maxWordLength = maxWord;
      config.maxSolutions = maxSolutions;
      config.nodeBudget = budget;
      config.threads = threads;
      std::string echo = "maxLength=" + std::to_string(maxLength) + " maxWord=" + std::to_string(maxWord) +
                         " budget=" + std::to_string(budget);
      return runSearch(mesh, config, emitAll, out, echo);
    }
    if (app.got_subcommand(fcmd)) {
      IntrinsicMesh mesh = loadMeshFile(meshPath);
      return runFlow(mesh, init, wordText, curveFile, samples, tolFlow, maxIter, traceCsv, out);
    }
    if (app.got_subcommand(gcmd)) {
      IntrinsicMesh mesh = loadMeshFile(meshPath);
      FindConfig config;
      config.samplesPerFace = samples;
      config.maxIterations = maxIter;
      config.maxTotalLength = maxLength;
      config.nodeBudget = budget;
      config.threads = threads;
      std::string echo = "samples=" + std::to_string(samples) + " maxIter=" + std::to_string(maxIter) +
                         " budget=" + std::to_string(budget);
      return runFind(mesh, config, out, svg, echo);
    }
    if (app.got_subcommand(ecmd)) return runExport(meshPath, certPath, format, out);
  } catch (const MeshError& e) {
    std::cerr << "invalid mesh: " << meshErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
