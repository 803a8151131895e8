#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qp {

using VertexId = std::string;
using EdgeId = std::string;
using VertexSet = std::set<VertexId>;
using EdgeSet = std::set<EdgeId>;

/// An omega-tail (v, w) stands for countably many anonymous parallel edges v -> w.
using OmegaTail = std::pair<VertexId, VertexId>;

struct EdgeEnds {
  VertexId src;
  VertexId tgt;
  auto operator<=>(const EdgeEnds&) const = default;
};

struct EdgeSpec {
  EdgeId id;
  VertexId src;
  VertexId tgt;
};

/// Thrown when two graphs disagree on the endpoints of a shared edge id.
class IncompatibleOverlap : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an operation gets an argument outside its domain
/// (e.g. a tailed graph handed to an algebra construction).
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string flag, const std::string& what)
      : std::invalid_argument(what), flag_(std::move(flag)) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

/// Finite directed graph (quiver) with optional omega-tails.
///
/// Construction never throws on malformed data; dangling endpoints and
/// duplicate ids are recorded and surfaced by validate_graph. Every other
/// operation assumes a valid graph.
class Graph {
 public:
  Graph() = default;
  Graph(const std::vector<VertexId>& vertices, const std::vector<EdgeSpec>& edges,
        const std::vector<OmegaTail>& omega_tails = {});
  Graph(VertexSet vertices, std::map<EdgeId, EdgeEnds> edges, std::set<OmegaTail> omega_tails = {});

  const VertexSet& vertices() const noexcept { return vertices_; }
  const std::map<EdgeId, EdgeEnds>& edges() const noexcept { return edges_; }
  const std::set<OmegaTail>& omega_tails() const noexcept { return tails_; }
  const std::vector<std::string>& construction_issues() const noexcept { return issues_; }

  bool has_vertex(const VertexId& v) const { return vertices_.count(v) != 0; }
  bool has_edge(const EdgeId& e) const { return edges_.count(e) != 0; }
  bool has_tails() const noexcept { return !tails_.empty(); }
  bool empty() const noexcept { return vertices_.empty() && edges_.empty(); }

  const VertexId& src(const EdgeId& e) const;
  const VertexId& tgt(const EdgeId& e) const;

  /// Edges leaving / entering v, sorted by id. Empty for unknown v.
  const std::vector<EdgeId>& out_edges(const VertexId& v) const;
  const std::vector<EdgeId>& in_edges(const VertexId& v) const;
  bool emits_tail(const VertexId& v) const;
  bool receives_tail(const VertexId& v) const;

  /// Regular: emits at least one edge and finitely many (no omega-tail).
  bool is_regular(const VertexId& v) const;

  bool operator==(const Graph& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_ && tails_ == other.tails_;
  }

 private:
  void index();

  VertexSet vertices_;
  std::map<EdgeId, EdgeEnds> edges_;
  std::set<OmegaTail> tails_;
  std::vector<std::string> issues_;
  std::map<VertexId, std::vector<EdgeId>> out_;
  std::map<VertexId, std::vector<EdgeId>> in_;
};

using GraphPtr = std::shared_ptr<const Graph>;

template <typename... Args>
GraphPtr make_graph(Args&&... args) {
  return std::make_shared<const Graph>(std::forward<Args>(args)...);
}

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_graph(const Graph& g);

struct VertexClassification {
  VertexSet sinks;
  VertexSet sources;
  VertexSet regular;
  VertexSet infinite_emitters;
};

VertexClassification classify_vertices(const Graph& g);

/// A finite path: a vertex (length 0) or a nonempty composable edge sequence.
class Path {
 public:
  static Path at(VertexId v);
  static Path of(std::vector<EdgeId> edges);

  bool is_vertex() const noexcept { return edges_.empty(); }
  std::size_t length() const noexcept { return edges_.size(); }
  /// Only meaningful for vertex paths.
  const VertexId& vertex() const noexcept { return vertex_; }
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }

  /// "v" for a vertex path, "e1.e2" otherwise.
  std::string to_string() const;

  bool operator==(const Path&) const = default;
  /// Ordered by length, then lexicographically by edge ids (vertex id at length 0).
  std::strong_ordering operator<=>(const Path& other) const;

 private:
  VertexId vertex_;
  std::vector<EdgeId> edges_;
};

bool is_path_of(const Graph& g, const Path& p);
VertexId path_source(const Graph& g, const Path& p);
VertexId path_target(const Graph& g, const Path& p);
/// Concatenation pq, or nullopt when t(p) != s(q).
std::optional<Path> concat(const Graph& g, const Path& p, const Path& q);

/// Suffix used to name ghost edges in the extended graph.
inline constexpr const char* kGhostSuffix = "*";

struct ExtendedGraph {
  Graph graph;
  /// ghost id -> real edge id
  std::map<EdgeId, EdgeId> ghost_of;
  /// real edge id -> ghost id
  std::map<EdgeId, EdgeId> ghost;
};

ExtendedGraph extended_graph(const Graph& g);

/// All paths of length <= max_length, sorted by Path ordering.
std::vector<Path> paths_up_to(const Graph& g, std::size_t max_length);
/// All paths of exactly the given length, sorted.
std::vector<Path> paths_of_length(const Graph& g, std::size_t length);

bool is_acyclic(const Graph& g);
/// Length of the longest path; nullopt when the graph has a cycle.
std::optional<std::size_t> longest_path_length(const Graph& g);

Graph union_graph(const Graph& f, const Graph& g);
Graph intersection_graph(const Graph& f, const Graph& g);
/// Subgraph relation under the shared-id convention.
bool is_subgraph(const Graph& sub, const Graph& super);

/// Induced subgraph on a vertex subset: keeps edges and tails with both ends inside.
Graph induced_subgraph(const Graph& g, const VertexSet& keep);

}  // namespace qp
