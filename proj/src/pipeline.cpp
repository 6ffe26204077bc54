#include "qgeo/pipeline.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qgeo {

const char* routeName(FindResult::Route r) {
  switch (r) {
  case FindResult::Route::Flow:
    return "flow";
  case FindResult::Route::FlowPushed:
    return "flow+push";
  case FindResult::Route::Search:
    return "search";
  case FindResult::Route::None:
    return "none";
  }
  return "?";
}

namespace {

std::optional<Certificate> certifyFlowedCurve(const IntrinsicMesh& mesh, const FlowOutcome& outcome, double maxTotal,
                                              bool& pushed) {
  pushed = false;
  if (outcome.certificate && outcome.certificate->length <= maxTotal + geomTolerance()) {
    return outcome.certificate;
  }
  // vertex-free limit: translate across its band onto a vertex, then certify
  if (!CurveGeometry::make(mesh, outcome.curve).touchesVertex()) {
    try {
      PLCurve onVertex = pushToVertex(mesh, outcome.curve, 1e-5);
      CheckResult cr = checkWord(mesh, extractWord(mesh, onVertex));
      if (std::holds_alternative<Certificate>(cr)) {
        const Certificate& cert = std::get<Certificate>(cr);
        if (cert.length <= maxTotal + geomTolerance()) {
          pushed = true;
          return cert;
        }
      }
    } catch (const std::exception&) {
      // fall through to other fibers
    }
  }
  return std::nullopt;
}

} // namespace

FindResult findQuasigeodesic(const IntrinsicMesh& mesh, const FindConfig& config) {
  FindResult result;
  double maxTotal = config.maxTotalLength > 0 ? config.maxTotalLength : mesh.edgeSum();

  auto consider = [&](Certificate cert, FindResult::Route route) {
    if (cert.length > maxTotal + geomTolerance()) return;
    bool better = !result.certificate || cert.length < result.certificate->length - geomTolerance() ||
                  (std::abs(cert.length - result.certificate->length) <= geomTolerance() &&
                   cert.word.canonical().letters < result.certificate->word.canonical().letters);
    if (better) {
      result.certificate = std::move(cert);
      result.route = route;
    }
  };

  // degenerate doubled edges: both endpoints with cone angle at most pi
  for (int e = 0; e < mesh.numEdges(); e++) {
    const EdgeData& ed = mesh.edge(e);
    double tol = geomTolerance();
    if (mesh.star(ed.vA).coneAngle > kPi + tol || mesh.star(ed.vB).coneAngle > kPi + tol) continue;
    CrossingWord w{{Letter::vertex(ed.vA), Letter::follow(e), Letter::vertex(ed.vB), Letter::follow(e)}};
    CheckResult cr = checkWord(mesh, w);
    if (std::holds_alternative<Certificate>(cr)) consider(std::get<Certificate>(cr), FindResult::Route::Flow);
  }

  // fast path: flow every sweep-out fiber and keep the shortest certificate
  std::vector<int> shelling = computeShelling(mesh);
  std::vector<PLCurve> fibers = sweepOutFibers(mesh, shelling, config.samplesPerFace);
  int threads = std::max(1, config.threads);
  std::vector<FlowOutcome> outcomes(fibers.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      size_t i = cursor.fetch_add(1);
      if (i >= fibers.size()) return;
      outcomes[i] = iterateFlow(mesh, fibers[i], config.tolFlow, config.maxIterations, config.tolCheck);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; t++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t i = 0; i < outcomes.size(); i++) {
    result.fibersFlowed++;
    if (outcomes[i].status != FlowOutcome::Status::Converged) continue;
    result.fibersConverged++;
    bool pushed = false;
    auto cert = certifyFlowedCurve(mesh, outcomes[i], maxTotal, pushed);
    if (cert) consider(std::move(*cert), pushed ? FindResult::Route::FlowPushed : FindResult::Route::Flow);
  }
  if (result.certificate) return result;

  // complete path: bounded search with staged deepening of the length cap
  double h = mesh.minAltitude();
  std::vector<double> stages;
  for (double bound = 4 * h; bound < maxTotal; bound *= 2) stages.push_back(bound);
  stages.push_back(maxTotal);
  for (double bound : stages) {
    EnumerationResult segs = enumerateAllSegments(mesh, bound, config.nodeBudget, config.threads);
    result.searchNodes += segs.nodesVisited;
    SearchConfig sc;
    sc.maxTotalLength = bound;
    sc.maxWordLength = config.maxWordLength > 0 ? config.maxWordLength : mesh.etaBound();
    sc.maxSolutions = 1;
    sc.nodeBudget = config.nodeBudget;
    sc.threads = config.threads;
    AssemblyResult ar = assembleClosed(mesh, segs.segments, sc);
    if (!ar.certificates.empty()) {
      result.certificate = ar.certificates.front();
      result.route = FindResult::Route::Search;
      result.searchComplete = segs.complete && ar.complete;
      return result;
    }
    if (!segs.complete || !ar.complete) {
      result.searchComplete = false;
      break; // deeper stages would exceed the budget as well
    }
  }
  result.route = FindResult::Route::None;
  return result;
}

} // namespace qgeo
