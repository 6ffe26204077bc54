#pragma once

#include "qgeo/diskflow.h"
#include "qgeo/search.h"

namespace qgeo {

// The end-to-end finder: flow sweep-out fibers to quasigeodesics (pushing
// vertex-free limits onto a vertex), and fall back to the bounded segment
// search with staged length caps when no fiber certifies.
struct FindConfig {
  int samplesPerFace = 4;
  double tolFlow = 1e-7;
  int maxIterations = 2000;
  double tolCheck = 1e-6;
  double maxTotalLength = 0; // 0: the mesh edge sum
  long long maxWordLength = 0;
  long long nodeBudget = 10000000;
  int threads = 1;
};

struct FindResult {
  enum class Route { Flow, FlowPushed, Search, None };
  Route route = Route::None;
  std::optional<Certificate> certificate;
  int fibersFlowed = 0;
  int fibersConverged = 0;
  long long searchNodes = 0;
  bool searchComplete = true;
};

FindResult findQuasigeodesic(const IntrinsicMesh& mesh, const FindConfig& config);

const char* routeName(FindResult::Route r);

} // namespace qgeo
