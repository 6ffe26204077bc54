#pragma once

#include "qgeo/pipeline.h"
#include "qgeo/verify.h"

#include <string>

namespace qgeo {

// All emitted documents carry a schema version and the manifest of the run
// that produced them, including the content hash of the mesh.
struct RunManifest {
  std::string command;
  std::string meshHash;
  std::string configEcho; // compact echo of the effective options
};

std::string toolVersion();

std::string certificateToJson(const IntrinsicMesh& mesh, const Certificate& cert, const RunManifest& manifest);
std::string certificatesToJson(const IntrinsicMesh& mesh, const std::vector<Certificate>& certs,
                               const RunManifest& manifest);
std::string flowOutcomeToJson(const IntrinsicMesh& mesh, const FlowOutcome& outcome, const RunManifest& manifest,
                              bool includeTrace);

// Reads a certificate document back; validates the schema and returns the
// embedded mesh hash.
struct LoadedCertificate {
  Certificate certificate;
  std::string meshHash;
};
LoadedCertificate certificateFromJson(const IntrinsicMesh& mesh, const std::string& jsonText);

std::string curveToJson(const PLCurve& curve);
PLCurve curveFromJson(const std::string& jsonText);

// One SVG per certificate: the unfolded strip of every crossing piece with
// its straight chord, stacked top to bottom; followed edges are listed as
// labels. Deterministic bytes for fixed inputs.
std::string certificateToSvg(const IntrinsicMesh& mesh, const Certificate& cert);

// Polyline in the original 3D coordinates (extrinsic meshes only).
std::string certificateToObjPolyline(const IntrinsicMesh& mesh, const Certificate& cert);

} // namespace qgeo
