#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>

#include "qp/graph.hpp"
#include "qp/morphism.hpp"

/// Seeded random instances for the property tests. Every generator is a pure
/// function of the Rng state; ids are prefixed so independently generated
/// graphs never share ids by accident.
namespace qp::gen {

using Rng = std::mt19937_64;

/// Mixes a run seed, a stream name and a case index into one case seed.
std::uint64_t case_seed(std::uint64_t seed, const std::string& stream, std::uint64_t index);

struct Shape {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 6;
  std::size_t max_edges = 8;
  bool acyclic = false;
  std::string prefix;  // vertex ids prefix+"v"i, edge ids prefix+"e"i
};

Graph random_graph(Rng& rng, const Shape& shape);

/// Random graph with omega-tails on some vertices.
Graph random_tailed_graph(Rng& rng, const Shape& shape, std::size_t max_tails);

/// Random subgraph: a random vertex subset and a random subset of the edges
/// (and tails) among it.
Graph random_subgraph(Rng& rng, const Graph& g);

/// Forward closure of a vertex set.
VertexSet hereditary_closure(const Graph& g, VertexSet h);

/// A random hom dom -> cod found by randomized search; nullopt if none found.
std::optional<GraphHom> random_hom(Rng& rng, const GraphPtr& dom, const GraphPtr& cod);

/// A target-bijective hom E -> base built fibre by fibre. Vertices over a
/// random hereditary set get empty fibres; other fibres have 1..max_fiber
/// vertices. When `regular` is set, the cover is resampled until sinks map to
/// sinks (nullopt if that keeps failing).
std::optional<GraphHom> random_tb_cover(Rng& rng, const GraphPtr& base, std::size_t max_fiber, bool regular,
                                        const std::string& prefix, bool allow_empty_fibers = true);

/// Admissible inclusion G -> E: E adds fresh vertices reached only from
/// regular vertices of G (so the inclusion is CRTBPOG).
GraphHom random_admissible_extension(Rng& rng, const GraphPtr& g, const std::string& prefix,
                                     std::size_t max_new_vertices = 3, std::size_t max_new_edges = 4);

/// Inclusion of a random subgraph that is admissible: the complement is a
/// saturated hereditary set and the subgraph is induced on the rest.
std::optional<GraphHom> random_admissible_inclusion(Rng& rng, const GraphPtr& f);

/// Span E <-f- G -g-> F with f, g injective on vertices. G is random, E and
/// F extend copies of it. Acyclic if requested.
std::pair<GraphHom, GraphHom> random_injective_span(Rng& rng, bool acyclic);

/// Span gluing a vertex with an E-only in-edge to a vertex with an F-only
/// out-edge, so the one-colour condition fails; vertex-injective.
std::pair<GraphHom, GraphHom> one_color_violation(Rng& rng);

/// Span in the admissible category: f an admissible inclusion (so P1 holds),
/// g a regular target-bijective cover.
std::optional<std::pair<GraphHom, GraphHom>> admissible_span(Rng& rng, std::size_t max_base_vertices = 4);

/// Pair (F, G) of tailed graphs sharing ids, F ∩ G a strongly admissible subgraph of both.
std::optional<std::pair<GraphPtr, GraphPtr>> strongly_admissible_pair(Rng& rng);

}  // namespace qp::gen
