#pragma once

#include "qgeo/geometry.h"

#include <compare>
#include <map>
#include <vector>

namespace qgeo::testing {

struct SegmentKey {
  int vEnd;
  int followedEdge;
  std::vector<int> crossed;
  auto operator<=>(const SegmentKey&) const = default;
};

// Independent reference for segment enumeration: launch a dense fan of
// directions from the vertex, read off the crossing-word prefixes the rays
// realize, and certify every candidate combinatorics with an exact straight
// trace. Complete whenever every admissible direction wedge is wider than
// the sampling step.
std::map<SegmentKey, double> denseDirectionOracle(const IntrinsicMesh& mesh, int vStart, double maxLen,
                                                  int directions);

} // namespace qgeo::testing
