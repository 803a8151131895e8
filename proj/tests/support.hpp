#pragma once

#include <string>
#include <vector>

#include "qp/graph.hpp"
#include "qp/morphism.hpp"

namespace qp::test {

// "v:w" style edge lists keep the fixtures short: {"e", "v", "w"}.
inline GraphPtr graph(std::vector<VertexId> vs, std::vector<EdgeSpec> es = {}, std::vector<OmegaTail> tails = {}) {
  return make_graph(Graph(vs, es, tails));
}

inline GraphPtr single_edge() { return graph({"v", "w"}, {{"e", "v", "w"}}); }
inline GraphPtr loop() { return graph({"u"}, {{"l", "u", "u"}}); }

inline GraphHom hom(GraphPtr dom, GraphPtr cod, std::map<VertexId, VertexId> f0, std::map<EdgeId, EdgeId> f1 = {}) {
  return GraphHom(std::move(dom), std::move(cod), std::move(f0), std::move(f1));
}

inline std::vector<std::string> strings(const std::vector<Path>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

}  // namespace qp::test
