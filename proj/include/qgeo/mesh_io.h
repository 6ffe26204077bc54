#pragma once

#include "qgeo/mesh.h"

#include <string>

namespace qgeo {

// Canonical intrinsic mesh document:
//   {"faces":[{"v":[a,b,c],"len":[l0,l1,l2]},...],
//    "glue":[[[f,s],[f2,s2]],...]}
// Side s is opposite corner s.
IntrinsicMesh loadIntrinsic(const std::string& jsonText);
std::string serializeIntrinsic(const IntrinsicMesh& mesh);

// Wavefront OBJ: `v x y z` vertices and triangular `f i j k` faces only.
IntrinsicMesh loadObj(const std::string& objText);

// Dispatch on extension: .obj -> loadObj, anything else -> loadIntrinsic.
IntrinsicMesh loadMeshFile(const std::string& path);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

} // namespace qgeo
