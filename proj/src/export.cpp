#include "qgeo/export.h"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace qgeo {

using nlohmann::ordered_json;

std::string toolVersion() { return "qgeo 0.1.0"; }

namespace {

ordered_json pointToJson(const SurfacePoint& p) {
  ordered_json j;
  switch (p.type) {
  case SurfacePoint::Type::Vertex:
    j["type"] = "vertex";
    j["id"] = p.id;
    break;
  case SurfacePoint::Type::Edge:
    j["type"] = "edge";
    j["id"] = p.id;
    j["t"] = p.t;
    break;
  case SurfacePoint::Type::Face:
    j["type"] = "face";
    j["id"] = p.id;
    j["bary"] = {p.bary[0], p.bary[1], p.bary[2]};
    break;
  }
  return j;
}

SurfacePoint pointFromJson(const ordered_json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "vertex") return SurfacePoint::vertex(j.at("id").get<int>());
  if (type == "edge") return SurfacePoint::edge(j.at("id").get<int>(), j.at("t").get<double>());
  if (type == "face") {
    const auto& b = j.at("bary");
    return SurfacePoint::face(j.at("id").get<int>(), b[0].get<double>(), b[1].get<double>(), b[2].get<double>());
  }
  throw std::runtime_error("unknown surface point type: " + type);
}

ordered_json wordToJson(const IntrinsicMesh& mesh, const CrossingWord& word) {
  ordered_json arr = ordered_json::array();
  for (const Letter& l : word.letters) {
    ordered_json j;
    switch (l.kind) {
    case Letter::Kind::Vertex:
      j["kind"] = "vertex";
      j["id"] = l.id;
      break;
    case Letter::Kind::Cross:
      j["kind"] = "cross";
      j["id"] = l.id;
      j["ends"] = {mesh.edge(l.id).vA, mesh.edge(l.id).vB};
      break;
    case Letter::Kind::Follow:
      j["kind"] = "follow";
      j["id"] = l.id;
      j["ends"] = {mesh.edge(l.id).vA, mesh.edge(l.id).vB};
      break;
    }
    arr.push_back(j);
  }
  return arr;
}

CrossingWord wordFromJson(const ordered_json& arr) {
  CrossingWord w;
  for (const auto& j : arr) {
    std::string kind = j.at("kind").get<std::string>();
    int id = j.at("id").get<int>();
    if (kind == "vertex") w.letters.push_back(Letter::vertex(id));
    else if (kind == "cross") w.letters.push_back(Letter::cross(id));
    else if (kind == "follow") w.letters.push_back(Letter::follow(id));
    else throw std::runtime_error("unknown letter kind: " + kind);
  }
  return w;
}

ordered_json manifestToJson(const RunManifest& m) {
  ordered_json j;
  j["command"] = m.command;
  j["tool"] = toolVersion();
  j["meshHash"] = m.meshHash;
  j["config"] = m.configEcho;
  return j;
}

ordered_json certificateBody(const IntrinsicMesh& mesh, const Certificate& cert) {
  ordered_json j;
  j["word"] = wordToJson(mesh, cert.word);
  j["wordText"] = formatWord(mesh, cert.word);
  j["length"] = cert.length;
  ordered_json flags;
  flags["simple"] = cert.simplicity.status == SimplicityResult::Status::Simple;
  flags["weaklySimple"] = cert.simplicity.ok();
  flags["degenerateDoubledSegment"] = cert.degenerateDoubledSegment;
  j["flags"] = flags;
  ordered_json angles = ordered_json::array();
  for (const auto& a : cert.angles) {
    ordered_json ja;
    ja["vertex"] = a.vertex;
    ja["left"] = a.left;
    ja["right"] = a.right;
    angles.push_back(ja);
  }
  j["vertexAngles"] = angles;
  ordered_json pts = ordered_json::array();
  for (const auto& p : cert.realization.points) pts.push_back(pointToJson(p));
  j["realization"] = pts;
  j["realizationFaces"] = cert.realization.segmentFace;
  ordered_json witness = ordered_json::array();
  for (const auto& w : cert.simplicity.witness) {
    ordered_json jw;
    jw["from"] = pointToJson(w.from);
    jw["to"] = pointToJson(w.to);
    jw["locusEdge"] = w.locusEdge;
    jw["locusFace"] = w.locusFace;
    jw["laneOrder"] = w.laneOrder;
    witness.push_back(jw);
  }
  j["witness"] = witness;
  return j;
}

} // namespace

std::string certificateToJson(const IntrinsicMesh& mesh, const Certificate& cert, const RunManifest& manifest) {
  ordered_json doc;
  doc["schemaVersion"] = 1;
  doc["manifest"] = manifestToJson(manifest);
  doc["certificate"] = certificateBody(mesh, cert);
  return doc.dump(2) + "\n";
}

std::string certificatesToJson(const IntrinsicMesh& mesh, const std::vector<Certificate>& certs,
                               const RunManifest& manifest) {
  ordered_json doc;
  doc["schemaVersion"] = 1;
  doc["manifest"] = manifestToJson(manifest);
  doc["certificates"] = ordered_json::array();
  for (const auto& c : certs) doc["certificates"].push_back(certificateBody(mesh, c));
  return doc.dump(2) + "\n";
}

std::string flowOutcomeToJson(const IntrinsicMesh& mesh, const FlowOutcome& outcome, const RunManifest& manifest,
                              bool includeTrace) {
  ordered_json doc;
  doc["schemaVersion"] = 1;
  doc["manifest"] = manifestToJson(manifest);
  ordered_json j;
  switch (outcome.status) {
  case FlowOutcome::Status::Converged:
    j["status"] = "converged";
    break;
  case FlowOutcome::Status::Collapsed:
    j["status"] = "collapsed";
    break;
  case FlowOutcome::Status::MaxIterations:
    j["status"] = "maxIterations";
    break;
  }
  j["iterations"] = outcome.iterations;
  j["residual"] = outcome.residual;
  if (outcome.status == FlowOutcome::Status::Collapsed) {
    j["collapsePoint"] = pointToJson(outcome.collapsePoint);
  } else {
    j["finalLength"] = outcome.lengthTrace.empty() ? 0.0 : outcome.lengthTrace.back();
    ordered_json rep;
    rep["maxStraightnessDefect"] = outcome.report.maxStraightnessDefect;
    rep["maxAngleViolation"] = outcome.report.maxAngleViolation;
    rep["accepted"] = outcome.report.accepted;
    j["numericReport"] = rep;
    ordered_json pts = ordered_json::array();
    for (const auto& p : outcome.curve.points) pts.push_back(pointToJson(p));
    j["curve"] = pts;
    j["curveFaces"] = outcome.curve.segmentFace;
    if (outcome.certificate) j["certificate"] = certificateBody(mesh, *outcome.certificate);
  }
  if (includeTrace) j["lengthTrace"] = outcome.lengthTrace;
  doc["flow"] = j;
  return doc.dump(2) + "\n";
}

LoadedCertificate certificateFromJson(const IntrinsicMesh& mesh, const std::string& jsonText) {
  ordered_json doc = ordered_json::parse(jsonText);
  if (!doc.contains("schemaVersion") || doc["schemaVersion"].get<int>() != 1) {
    throw std::runtime_error("unsupported certificate schema");
  }
  LoadedCertificate out;
  out.meshHash = doc.at("manifest").at("meshHash").get<std::string>();
  const auto& body = doc.at("certificate");
  out.certificate.word = wordFromJson(body.at("word"));
  out.certificate.length = body.at("length").get<double>();
  for (const auto& jp : body.at("realization")) out.certificate.realization.points.push_back(pointFromJson(jp));
  for (const auto& jf : body.at("realizationFaces")) out.certificate.realization.segmentFace.push_back(jf.get<int>());
  for (const auto& ja : body.at("vertexAngles")) {
    out.certificate.angles.push_back(
        {ja.at("vertex").get<int>(), ja.at("left").get<double>(), ja.at("right").get<double>()});
  }
  out.certificate.degenerateDoubledSegment = body.at("flags").at("degenerateDoubledSegment").get<bool>();
  out.certificate.simplicity.status = body.at("flags").at("simple").get<bool>()
                                          ? SimplicityResult::Status::Simple
                                          : SimplicityResult::Status::WeaklySimple;
  (void)mesh;
  return out;
}

std::string curveToJson(const PLCurve& curve) {
  ordered_json doc;
  doc["schemaVersion"] = 1;
  ordered_json pts = ordered_json::array();
  for (const auto& p : curve.points) pts.push_back(pointToJson(p));
  doc["points"] = pts;
  doc["segmentFaces"] = curve.segmentFace;
  return doc.dump(2) + "\n";
}

PLCurve curveFromJson(const std::string& jsonText) {
  ordered_json doc = ordered_json::parse(jsonText);
  PLCurve curve;
  for (const auto& jp : doc.at("points")) curve.points.push_back(pointFromJson(jp));
  if (doc.contains("segmentFaces")) {
    for (const auto& jf : doc.at("segmentFaces")) curve.segmentFace.push_back(jf.get<int>());
  }
  return curve;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

} // namespace

std::string certificateToSvg(const IntrinsicMesh& mesh, const Certificate& cert) {
  // rebuild the strips of the crossing pieces
  struct StripDrawing {
    UnfoldedStrip strip;
  };
  std::vector<StripDrawing> strips;
  std::vector<std::string> followNotes;

  int n = static_cast<int>(cert.word.size());
  int first = -1;
  for (int i = 0; i < n; i++) {
    if (cert.word.letters[i].kind == Letter::Kind::Vertex) {
      first = i;
      break;
    }
  }
  if (first >= 0) {
    int i = first;
    do {
      int vFrom = cert.word.letters[i].id;
      std::vector<int> crossed;
      int followed = -1;
      int j = (i + 1) % n;
      while (cert.word.letters[j].kind != Letter::Kind::Vertex) {
        if (cert.word.letters[j].kind == Letter::Kind::Cross) crossed.push_back(cert.word.letters[j].id);
        else followed = cert.word.letters[j].id;
        j = (j + 1) % n;
      }
      int vTo = cert.word.letters[j].id;
      if (followed >= 0) {
        followNotes.push_back("follow edge " + std::to_string(mesh.edge(followed).vA) + "-" +
                              std::to_string(mesh.edge(followed).vB));
      } else if (!crossed.empty()) {
        strips.push_back({unfoldStrip(mesh, SurfacePoint::vertex(vFrom), crossed, SurfacePoint::vertex(vTo))});
      }
      i = j;
    } while (i != first);
  }

  // layout: strips stacked with padding, scaled into a fixed-width canvas
  double minX = 0, minY = 0, maxX = 1, maxY = 1;
  bool any = false;
  std::vector<std::array<double, 2>> offsets;
  double yCursor = 0;
  std::ostringstream body;
  for (const auto& sd : strips) {
    double sMinX = 1e300, sMinY = 1e300, sMaxX = -1e300, sMaxY = -1e300;
    for (const auto& pl : sd.strip.placed) {
      for (const auto& c : pl) {
        sMinX = std::min(sMinX, c.x);
        sMinY = std::min(sMinY, c.y);
        sMaxX = std::max(sMaxX, c.x);
        sMaxY = std::max(sMaxY, c.y);
      }
    }
    double offX = -sMinX, offY = yCursor - sMinY;
    offsets.push_back({offX, offY});
    if (!any) {
      minX = 0;
      minY = 0;
      maxX = sMaxX - sMinX;
      maxY = yCursor + (sMaxY - sMinY);
      any = true;
    } else {
      maxX = std::max(maxX, sMaxX - sMinX);
      maxY = yCursor + (sMaxY - sMinY);
    }
    yCursor += (sMaxY - sMinY) + 0.25;
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt(minX - 0.1) << " " << fmt(minY - 0.1) << " "
      << fmt(maxX - minX + 0.2) << " " << fmt(maxY - minY + 0.2) << "\">\n";
  for (size_t k = 0; k < strips.size(); k++) {
    const UnfoldedStrip& strip = strips[k].strip;
    double ox = offsets[k][0], oy = offsets[k][1];
    for (const auto& pl : strip.placed) {
      svg << "  <polygon points=\"";
      for (int c = 0; c < 3; c++) {
        svg << fmt(pl[c].x + ox) << "," << fmt(pl[c].y + oy);
        if (c < 2) svg << " ";
      }
      svg << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.01\"/>\n";
    }
    svg << "  <line x1=\"" << fmt(strip.startImage.x + ox) << "\" y1=\"" << fmt(strip.startImage.y + oy) << "\" x2=\""
        << fmt(strip.endImage.x + ox) << "\" y2=\"" << fmt(strip.endImage.y + oy)
        << "\" stroke=\"#d03030\" stroke-width=\"0.02\"/>\n";
  }
  double noteY = maxY + 0.1;
  for (const auto& note : followNotes) {
    svg << "  <text x=\"0\" y=\"" << fmt(noteY) << "\" font-size=\"0.1\">" << note << "</text>\n";
    noteY += 0.12;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string certificateToObjPolyline(const IntrinsicMesh& mesh, const Certificate& cert) {
  if (!mesh.hasExtrinsic()) {
    throw std::runtime_error("obj-polyline export needs a mesh with 3D coordinates");
  }
  const auto& pos = mesh.extrinsicPositions();
  auto lift = [&](const SurfacePoint& p) -> Vec3 {
    switch (p.type) {
    case SurfacePoint::Type::Vertex:
      return pos[p.id];
    case SurfacePoint::Type::Edge: {
      const EdgeData& e = mesh.edge(p.id);
      return pos[e.vA] * (1 - p.t) + pos[e.vB] * p.t;
    }
    case SurfacePoint::Type::Face: {
      const FaceData& f = mesh.face(p.id);
      return pos[f.vertex[0]] * p.bary[0] + pos[f.vertex[1]] * p.bary[1] + pos[f.vertex[2]] * p.bary[2];
    }
    }
    throw std::runtime_error("bad point");
  };
  std::ostringstream obj;
  obj << "# closed curve as a 3D polyline\n";
  char buf[128];
  for (const auto& p : cert.realization.points) {
    Vec3 q = lift(p);
    std::snprintf(buf, sizeof(buf), "v %.12f %.12f %.12f\n", q.x, q.y, q.z);
    obj << buf;
  }
  obj << "l";
  for (size_t i = 1; i <= cert.realization.points.size(); i++) obj << " " << i;
  obj << " 1\n";
  return obj.str();
}

} // namespace qgeo
