#include "qgeo/mesh_io.h"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qgeo {

using nlohmann::ordered_json;

IntrinsicMesh loadIntrinsic(const std::string& jsonText) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(jsonText);
  } catch (const std::exception& e) {
    throw MeshError(MeshErrorCode::InvalidFormat, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("faces") || !doc.contains("glue")) {
    throw MeshError(MeshErrorCode::InvalidFormat, "document must have 'faces' and 'glue' arrays");
  }
  std::vector<FaceData> faces;
  for (const auto& jf : doc["faces"]) {
    if (!jf.contains("v") || !jf.contains("len") || jf["v"].size() != 3 || jf["len"].size() != 3) {
      throw MeshError(MeshErrorCode::InvalidFormat, "each face needs 3 vertex ids and 3 side lengths");
    }
    FaceData fd;
    for (int k = 0; k < 3; k++) {
      fd.vertex[k] = jf["v"][k].get<int>();
      fd.length[k] = jf["len"][k].get<double>();
    }
    faces.push_back(fd);
  }
  std::vector<GluePair> gluing;
  for (const auto& jg : doc["glue"]) {
    if (jg.size() != 2 || jg[0].size() != 2 || jg[1].size() != 2) {
      throw MeshError(MeshErrorCode::InvalidFormat, "each glue entry is [[f,s],[f2,s2]]");
    }
    gluing.push_back({SideRef{jg[0][0].get<int>(), jg[0][1].get<int>()}, SideRef{jg[1][0].get<int>(), jg[1][1].get<int>()}});
  }
  return IntrinsicMesh::build(std::move(faces), std::move(gluing));
}

std::string serializeIntrinsic(const IntrinsicMesh& mesh) {
  ordered_json doc;
  doc["faces"] = ordered_json::array();
  for (int f = 0; f < mesh.numFaces(); f++) {
    const auto& fd = mesh.face(f);
    ordered_json jf;
    jf["v"] = {fd.vertex[0], fd.vertex[1], fd.vertex[2]};
    jf["len"] = {fd.length[0], fd.length[1], fd.length[2]};
    doc["faces"].push_back(jf);
  }
  doc["glue"] = ordered_json::array();
  for (int e = 0; e < mesh.numEdges(); e++) {
    const auto& ed = mesh.edge(e);
    doc["glue"].push_back({{ed.sideA.face, ed.sideA.side}, {ed.sideB.face, ed.sideB.side}});
  }
  return doc.dump();
}

IntrinsicMesh loadObj(const std::string& objText) {
  std::vector<Vec3> points;
  std::vector<std::array<int, 3>> faces;
  std::istringstream in(objText);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    lineNo++;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z)) {
        throw MeshError(MeshErrorCode::InvalidFormat, "OBJ line " + std::to_string(lineNo) + ": bad vertex");
      }
      points.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        // accept i, i/..., i//... forms; indices are 1-based
        size_t slash = tok.find('/');
        idx.push_back(std::stoi(tok.substr(0, slash)) - 1);
      }
      if (idx.size() != 3) {
        throw MeshError(MeshErrorCode::InvalidFormat,
                        "OBJ line " + std::to_string(lineNo) + ": only triangular faces are supported");
      }
      faces.push_back({idx[0], idx[1], idx[2]});
    }
  }
  if (points.empty() || faces.empty()) {
    throw MeshError(MeshErrorCode::InvalidFormat, "OBJ contains no triangulated geometry");
  }
  return IntrinsicMesh::fromExtrinsic(points, faces);
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

IntrinsicMesh loadMeshFile(const std::string& path) {
  std::string text = readFile(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".obj") return loadObj(text);
  return loadIntrinsic(text);
}

} // namespace qgeo
