#include "qp/graph.hpp"

#include <algorithm>
#include <functional>

namespace qp {

namespace {

const std::vector<EdgeId> kNoEdges;

}  // namespace

Graph::Graph(const std::vector<VertexId>& vertices, const std::vector<EdgeSpec>& edges,
             const std::vector<OmegaTail>& omega_tails) {
  for (const auto& v : vertices) {
    if (!vertices_.insert(v).second) issues_.push_back("duplicate vertex id '" + v + "'");
  }
  for (const auto& e : edges) {
    if (!edges_.emplace(e.id, EdgeEnds{e.src, e.tgt}).second) {
      issues_.push_back("duplicate edge id '" + e.id + "'");
    }
  }
  for (const auto& t : omega_tails) tails_.insert(t);
  index();
}

Graph::Graph(VertexSet vertices, std::map<EdgeId, EdgeEnds> edges, std::set<OmegaTail> omega_tails)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), tails_(std::move(omega_tails)) {
  index();
}

void Graph::index() {
  for (const auto& [id, ends] : edges_) {
    out_[ends.src].push_back(id);
    in_[ends.tgt].push_back(id);
  }
}

const VertexId& Graph::src(const EdgeId& e) const { return edges_.at(e).src; }
const VertexId& Graph::tgt(const EdgeId& e) const { return edges_.at(e).tgt; }

const std::vector<EdgeId>& Graph::out_edges(const VertexId& v) const {
  auto it = out_.find(v);
  return it == out_.end() ? kNoEdges : it->second;
}

const std::vector<EdgeId>& Graph::in_edges(const VertexId& v) const {
  auto it = in_.find(v);
  return it == in_.end() ? kNoEdges : it->second;
}

bool Graph::emits_tail(const VertexId& v) const {
  auto it = tails_.lower_bound(OmegaTail{v, VertexId{}});
  return it != tails_.end() && it->first == v;
}

bool Graph::receives_tail(const VertexId& v) const {
  return std::any_of(tails_.begin(), tails_.end(), [&](const OmegaTail& t) { return t.second == v; });
}

bool Graph::is_regular(const VertexId& v) const { return !out_edges(v).empty() && !emits_tail(v); }

ValidationReport validate_graph(const Graph& g) {
  ValidationReport report;
  report.violations = g.construction_issues();
  for (const auto& v : g.vertices()) {
    if (v.empty()) report.violations.push_back("empty vertex id");
  }
  for (const auto& [id, ends] : g.edges()) {
    if (id.empty()) report.violations.push_back("empty edge id");
    if (!g.has_vertex(ends.src)) {
      report.violations.push_back("dangling source: edge '" + id + "' starts at unknown vertex '" + ends.src + "'");
    }
    if (!g.has_vertex(ends.tgt)) {
      report.violations.push_back("dangling target: edge '" + id + "' ends at unknown vertex '" + ends.tgt + "'");
    }
  }
  for (const auto& [v, w] : g.omega_tails()) {
    if (!g.has_vertex(v) || !g.has_vertex(w)) {
      report.violations.push_back("dangling omega-tail (" + v + ", " + w + ")");
    }
  }
  return report;
}

VertexClassification classify_vertices(const Graph& g) {
  VertexClassification c;
  for (const auto& v : g.vertices()) {
    const bool tail_out = g.emits_tail(v);
    if (g.out_edges(v).empty() && !tail_out) c.sinks.insert(v);
    if (g.in_edges(v).empty() && !g.receives_tail(v)) c.sources.insert(v);
    if (tail_out) c.infinite_emitters.insert(v);
    if (g.is_regular(v)) c.regular.insert(v);
  }
  return c;
}

Path Path::at(VertexId v) {
  Path p;
  p.vertex_ = std::move(v);
  return p;
}

Path Path::of(std::vector<EdgeId> edges) {
  if (edges.empty()) throw std::invalid_argument("Path::of: edge sequence must be nonempty");
  Path p;
  p.edges_ = std::move(edges);
  return p;
}

std::string Path::to_string() const {
  if (is_vertex()) return vertex_;
  std::string out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out += '.';
    out += edges_[i];
  }
  return out;
}

std::strong_ordering Path::operator<=>(const Path& other) const {
  if (auto c = edges_.size() <=> other.edges_.size(); c != 0) return c;
  if (edges_.empty()) return vertex_ <=> other.vertex_;
  return edges_ <=> other.edges_;
}

bool is_path_of(const Graph& g, const Path& p) {
  if (p.is_vertex()) return g.has_vertex(p.vertex());
  for (std::size_t i = 0; i < p.length(); ++i) {
    if (!g.has_edge(p.edges()[i])) return false;
    if (i > 0 && g.tgt(p.edges()[i - 1]) != g.src(p.edges()[i])) return false;
  }
  return true;
}

VertexId path_source(const Graph& g, const Path& p) {
  return p.is_vertex() ? p.vertex() : g.src(p.edges().front());
}

VertexId path_target(const Graph& g, const Path& p) {
  return p.is_vertex() ? p.vertex() : g.tgt(p.edges().back());
}

std::optional<Path> concat(const Graph& g, const Path& p, const Path& q) {
  if (path_target(g, p) != path_source(g, q)) return std::nullopt;
  if (p.is_vertex()) return q;
  if (q.is_vertex()) return p;
  std::vector<EdgeId> es = p.edges();
  es.insert(es.end(), q.edges().begin(), q.edges().end());
  return Path::of(std::move(es));
}

ExtendedGraph extended_graph(const Graph& g) {
  if (g.has_tails()) {
    throw PreconditionError("tail_free", "extended_graph: graphs with omega-tails have no finite extended graph");
  }
  ExtendedGraph out;
  auto edges = g.edges();
  for (const auto& [id, ends] : g.edges()) {
    EdgeId ghost = id + kGhostSuffix;
    if (g.has_edge(ghost)) {
      throw std::invalid_argument("extended_graph: ghost id '" + ghost + "' collides with an existing edge");
    }
    edges.emplace(ghost, EdgeEnds{ends.tgt, ends.src});
    out.ghost_of.emplace(ghost, id);
    out.ghost.emplace(id, ghost);
  }
  out.graph = Graph(g.vertices(), std::move(edges));
  return out;
}

std::vector<Path> paths_of_length(const Graph& g, std::size_t length) {
  std::vector<Path> out;
  if (length == 0) {
    for (const auto& v : g.vertices()) out.push_back(Path::at(v));
    return out;
  }
  std::vector<EdgeId> stack;
  std::function<void(const VertexId&)> extend = [&](const VertexId& from) {
    if (stack.size() == length) {
      out.push_back(Path::of(stack));
      return;
    }
    for (const auto& e : g.out_edges(from)) {
      stack.push_back(e);
      extend(g.tgt(e));
      stack.pop_back();
    }
  };
  for (const auto& [id, ends] : g.edges()) {
    stack.assign(1, id);
    extend(ends.tgt);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Path> paths_up_to(const Graph& g, std::size_t max_length) {
  if (g.has_tails()) throw PreconditionError("tail_free", "paths_up_to: graph has omega-tails");
  std::vector<Path> out;
  for (std::size_t n = 0; n <= max_length; ++n) {
    auto layer = paths_of_length(g, n);
    if (n > 0 && layer.empty()) break;
    out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
  }
  return out;
}

std::optional<std::size_t> longest_path_length(const Graph& g) {
  // Longest path ending at each vertex via DFS with colouring; a back edge means a cycle.
  std::map<VertexId, int> colour;
  std::map<VertexId, std::size_t> longest_from;
  bool cyclic = false;
  std::function<std::size_t(const VertexId&)> visit = [&](const VertexId& v) -> std::size_t {
    auto& c = colour[v];
    if (c == 2) return longest_from[v];
    if (c == 1) {
      cyclic = true;
      return 0;
    }
    c = 1;
    std::size_t best = 0;
    for (const auto& e : g.out_edges(v)) best = std::max(best, 1 + visit(g.tgt(e)));
    colour[v] = 2;
    longest_from[v] = best;
    return best;
  };
  std::size_t best = 0;
  for (const auto& v : g.vertices()) best = std::max(best, visit(v));
  if (cyclic) return std::nullopt;
  return best;
}

bool is_acyclic(const Graph& g) { return longest_path_length(g).has_value(); }

namespace {

void check_overlap(const Graph& f, const Graph& g) {
  for (const auto& [id, ends] : f.edges()) {
    auto it = g.edges().find(id);
    if (it != g.edges().end() && it->second != ends) {
      throw IncompatibleOverlap("incompatible overlap: edge '" + id + "' has different endpoints in the two graphs");
    }
  }
}

}  // namespace

Graph union_graph(const Graph& f, const Graph& g) {
  check_overlap(f, g);
  VertexSet vs = f.vertices();
  vs.insert(g.vertices().begin(), g.vertices().end());
  auto es = f.edges();
  es.insert(g.edges().begin(), g.edges().end());
  auto ts = f.omega_tails();
  ts.insert(g.omega_tails().begin(), g.omega_tails().end());
  return Graph(std::move(vs), std::move(es), std::move(ts));
}

Graph intersection_graph(const Graph& f, const Graph& g) {
  check_overlap(f, g);
  VertexSet vs;
  std::set_intersection(f.vertices().begin(), f.vertices().end(), g.vertices().begin(), g.vertices().end(),
                        std::inserter(vs, vs.end()));
  std::map<EdgeId, EdgeEnds> es;
  for (const auto& [id, ends] : f.edges()) {
    if (g.has_edge(id)) es.emplace(id, ends);
  }
  std::set<OmegaTail> ts;
  std::set_intersection(f.omega_tails().begin(), f.omega_tails().end(), g.omega_tails().begin(),
                        g.omega_tails().end(), std::inserter(ts, ts.end()));
  return Graph(std::move(vs), std::move(es), std::move(ts));
}

bool is_subgraph(const Graph& sub, const Graph& super) {
  if (!std::includes(super.vertices().begin(), super.vertices().end(), sub.vertices().begin(),
                     sub.vertices().end())) {
    return false;
  }
  for (const auto& [id, ends] : sub.edges()) {
    auto it = super.edges().find(id);
    if (it == super.edges().end() || it->second != ends) return false;
  }
  return std::includes(super.omega_tails().begin(), super.omega_tails().end(), sub.omega_tails().begin(),
                       sub.omega_tails().end());
}

Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  VertexSet vs;
  for (const auto& v : keep) {
    if (g.has_vertex(v)) vs.insert(v);
  }
  std::map<EdgeId, EdgeEnds> es;
  for (const auto& [id, ends] : g.edges()) {
    if (vs.count(ends.src) && vs.count(ends.tgt)) es.emplace(id, ends);
  }
  std::set<OmegaTail> ts;
  for (const auto& t : g.omega_tails()) {
    if (vs.count(t.first) && vs.count(t.second)) ts.insert(t);
  }
  return Graph(std::move(vs), std::move(es), std::move(ts));
}

}  // namespace qp
