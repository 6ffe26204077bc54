#pragma once

#include "qgeo/mesh.h"

#include <compare>
#include <string>
#include <vector>

namespace qgeo {

// Cyclic combinatorial type of a closed curve: the vertices and edges it
// meets in order, with edges either crossed transversally or followed along
// their length.
struct Letter {
  enum class Kind { Vertex = 0, Cross = 1, Follow = 2 };
  Kind kind = Kind::Vertex;
  int id = -1;

  static Letter vertex(int v) { return {Kind::Vertex, v}; }
  static Letter cross(int e) { return {Kind::Cross, e}; }
  static Letter follow(int e) { return {Kind::Follow, e}; }

  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;
};

struct CrossingWord {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  size_t size() const { return letters.size(); }
  int countVertexLetters() const;

  CrossingWord rotated(size_t by) const;
  CrossingWord reversed() const;
  // Lexicographically least rotation of the word or its reversal.
  CrossingWord canonical() const;

  bool operator==(const CrossingWord&) const = default;
};

// Text form, e.g. "V0 F0-1 V1 F0-1" or "V3 C1-2": V<id>, C<a>-<b>, F<a>-<b>
// with edges named by endpoint vertices (unique after preprocessing). Raw
// edge ids are accepted as C#<id> / F#<id>.
std::string formatWord(const IntrinsicMesh& mesh, const CrossingWord& word);
CrossingWord parseWord(const IntrinsicMesh& mesh, const std::string& text);

// Edge lookup by endpoints; -1 if absent.
int edgeBetween(const IntrinsicMesh& mesh, int va, int vb);

} // namespace qgeo
