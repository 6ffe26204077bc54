#include "qgeo/word.h"

#include <algorithm>
#include <sstream>

namespace qgeo {

int CrossingWord::countVertexLetters() const {
  return static_cast<int>(std::count_if(letters.begin(), letters.end(),
                                        [](const Letter& l) { return l.kind == Letter::Kind::Vertex; }));
}

CrossingWord CrossingWord::rotated(size_t by) const {
  CrossingWord out;
  size_t n = letters.size();
  out.letters.reserve(n);
  for (size_t i = 0; i < n; i++) out.letters.push_back(letters[(i + by) % n]);
  return out;
}

CrossingWord CrossingWord::reversed() const {
  CrossingWord out = *this;
  std::reverse(out.letters.begin(), out.letters.end());
  return out;
}

CrossingWord CrossingWord::canonical() const {
  if (letters.empty()) return *this;
  CrossingWord best = *this;
  for (const CrossingWord& base : {*this, reversed()}) {
    for (size_t r = 0; r < base.letters.size(); r++) {
      CrossingWord cand = base.rotated(r);
      if (cand.letters < best.letters) best = cand;
    }
  }
  return best;
}

int edgeBetween(const IntrinsicMesh& mesh, int va, int vb) {
  int a = std::min(va, vb), b = std::max(va, vb);
  for (int e = 0; e < mesh.numEdges(); e++) {
    if (mesh.edge(e).vA == a && mesh.edge(e).vB == b) return e;
  }
  return -1;
}

std::string formatWord(const IntrinsicMesh& mesh, const CrossingWord& word) {
  std::ostringstream os;
  bool first = true;
  for (const Letter& l : word.letters) {
    if (!first) os << ' ';
    first = false;
    switch (l.kind) {
    case Letter::Kind::Vertex:
      os << 'V' << l.id;
      break;
    case Letter::Kind::Cross:
      os << 'C' << mesh.edge(l.id).vA << '-' << mesh.edge(l.id).vB;
      break;
    case Letter::Kind::Follow:
      os << 'F' << mesh.edge(l.id).vA << '-' << mesh.edge(l.id).vB;
      break;
    }
  }
  return os.str();
}

CrossingWord parseWord(const IntrinsicMesh& mesh, const std::string& text) {
  CrossingWord word;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    // strip separators so comma-separated words also parse
    while (!tok.empty() && (tok.back() == ',' || tok.back() == ';')) tok.pop_back();
    if (tok.empty()) continue;
    char kind = tok[0];
    std::string rest = tok.substr(1);
    auto parseEdge = [&](const std::string& body) {
      if (!body.empty() && body[0] == '#') return std::stoi(body.substr(1));
      size_t dash = body.find('-');
      if (dash == std::string::npos) throw std::runtime_error("bad edge token: " + tok);
      int va = std::stoi(body.substr(0, dash));
      int vb = std::stoi(body.substr(dash + 1));
      int e = edgeBetween(mesh, va, vb);
      if (e < 0) throw std::runtime_error("no edge between vertices " + std::to_string(va) + " and " + std::to_string(vb));
      return e;
    };
    switch (kind) {
    case 'V':
    case 'v':
      word.letters.push_back(Letter::vertex(std::stoi(rest)));
      break;
    case 'C':
    case 'c':
      word.letters.push_back(Letter::cross(parseEdge(rest)));
      break;
    case 'F':
    case 'f':
      word.letters.push_back(Letter::follow(parseEdge(rest)));
      break;
    default:
      throw std::runtime_error("bad word token: " + tok);
    }
  }
  return word;
}

} // namespace qgeo
