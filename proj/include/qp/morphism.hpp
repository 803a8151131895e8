#pragma once

#include <map>
#include <string>
#include <vector>

#include "qp/graph.hpp"

namespace qp {

/// Graph homomorphism (f0, f1): domain -> codomain.
///
/// The maps are stored as given; validate_hom reports missing entries and
/// broken commuting squares. Graphs with omega-tails only take part in
/// inclusions (f0, f1 identities on ids, domain tails among codomain tails).
class GraphHom {
 public:
  GraphHom(GraphPtr domain, GraphPtr codomain, std::map<VertexId, VertexId> f0, std::map<EdgeId, EdgeId> f1);

  static GraphHom identity(GraphPtr g);
  /// Inclusion of a subgraph under the shared-id convention.
  static GraphHom inclusion(GraphPtr sub, GraphPtr super);

  const Graph& domain() const noexcept { return *domain_; }
  const Graph& codomain() const noexcept { return *codomain_; }
  const GraphPtr& domain_ptr() const noexcept { return domain_; }
  const GraphPtr& codomain_ptr() const noexcept { return codomain_; }
  const std::map<VertexId, VertexId>& f0() const noexcept { return f0_; }
  const std::map<EdgeId, EdgeId>& f1() const noexcept { return f1_; }

  const VertexId& vertex(const VertexId& v) const { return f0_.at(v); }
  const EdgeId& edge(const EdgeId& e) const { return f1_.at(e); }

  /// Fibres of f0 / f1, sorted.
  std::vector<VertexId> vertex_preimage(const VertexId& w) const;
  std::vector<EdgeId> edge_preimage(const EdgeId& x) const;

  VertexSet vertex_image() const;
  EdgeSet edge_image() const;

  bool is_inclusion() const;
  bool injective_on_vertices() const;
  bool injective_on_edges() const;
  bool injective() const { return injective_on_vertices() && injective_on_edges(); }

  bool operator==(const GraphHom& other) const;

 private:
  GraphPtr domain_;
  GraphPtr codomain_;
  std::map<VertexId, VertexId> f0_;
  std::map<EdgeId, EdgeId> f1_;
  std::map<VertexId, std::vector<VertexId>> f0_inv_;
  std::map<EdgeId, std::vector<EdgeId>> f1_inv_;
};

ValidationReport validate_hom(const GraphHom& h);

enum class Category { OG, POG, TBPOG, CRTBPOG };

std::string to_string(Category c);

struct HomClassification {
  bool injective = false;
  bool surjective = false;
  bool proper = false;
  bool target_bijective = false;
  bool regular = false;
  Category category = Category::OG;
  /// One line per failed condition naming the offending vertex or edge.
  std::vector<std::string> witnesses;
};

HomClassification classify_hom(const GraphHom& h);

/// g o f. Throws std::invalid_argument when codomain(f) != domain(g).
GraphHom compose(const GraphHom& g, const GraphHom& f);

/// Image of a domain path; throws std::invalid_argument if p is not a path of the domain.
Path induced_path_map(const GraphHom& h, const Path& p);

/// All domain paths mapping onto p (same length), sorted.
std::vector<Path> path_preimage(const GraphHom& h, const Path& p);

struct HereditaryReport {
  bool hereditary = true;
  VertexSet prodigal;
};

/// Throws std::invalid_argument when H is not a subset of the vertices.
HereditaryReport is_hereditary(const Graph& g, const VertexSet& h);

/// Regular vertices outside H all of whose edges end in H.
VertexSet desaturating_vertices(const Graph& g, const VertexSet& h);
bool is_saturated(const Graph& g, const VertexSet& h);
VertexSet saturation(const Graph& g, const VertexSet& h);

/// Edges of s^{-1}(v) ending outside H (omega-tails not included).
EdgeSet edges_leaving_into_complement(const Graph& g, const VertexId& v, const VertexSet& h);
/// Infinite emitters outside H with finitely many, but at least one, edges into the complement.
VertexSet breaking_vertices(const Graph& g, const VertexSet& h);
bool is_unbroken(const Graph& g, const VertexSet& h);

struct AdmissibilityReport {
  bool complement_saturated = false;  // (A1)
  bool edges_into_image = false;      // (A2)
  bool admissible = false;
  bool strongly = false;
  std::vector<std::string> witnesses;
};

/// Throws PreconditionError("injective") for non-injective input.
AdmissibilityReport is_admissible(const GraphHom& h);

/// Cross-check: admissible exactly when the classification is CRTBPOG.
bool admissible_equiv_crtbpog(const GraphHom& h);

}  // namespace qp
