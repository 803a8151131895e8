#include "qp/generators.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <vector>

namespace qp::gen {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
  return xs[pick(rng, 0, xs.size() - 1)];
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Mutable graph under construction; `order` fixes a topological order for acyclic growth.
struct Builder {
  std::vector<VertexId> order;
  std::map<EdgeId, EdgeEnds> edges;
  std::set<OmegaTail> tails;

  std::size_t position(const VertexId& v) const {
    return static_cast<std::size_t>(std::find(order.begin(), order.end(), v) - order.begin());
  }

  void add_edges(Rng& rng, std::size_t count, const std::vector<VertexId>& sources,
                 const std::vector<VertexId>& targets, bool acyclic, const std::string& prefix, std::size_t& counter) {
    if (sources.empty() || targets.empty()) return;
    for (std::size_t i = 0; i < count; ++i) {
      VertexId s = choose(rng, sources);
      VertexId t = choose(rng, targets);
      if (acyclic) {
        if (s == t) continue;
        if (position(s) > position(t)) std::swap(s, t);
        if (std::find(sources.begin(), sources.end(), s) == sources.end() ||
            std::find(targets.begin(), targets.end(), t) == targets.end()) {
          continue;
        }
      }
      edges.emplace(prefix + "e" + std::to_string(counter++), EdgeEnds{s, t});
    }
  }

  Graph build() const { return Graph(VertexSet(order.begin(), order.end()), edges, tails); }
};

Builder builder_of(const Graph& g) {
  Builder b;
  b.order.assign(g.vertices().begin(), g.vertices().end());
  b.edges = g.edges();
  b.tails = g.omega_tails();
  return b;
}

/// Extends a copy of g by fresh vertices and edges; the old graph stays a subgraph.
Graph extend(Rng& rng, const Graph& g, const std::vector<VertexId>& topo, bool acyclic, const std::string& prefix) {
  Builder b = builder_of(g);
  b.order = topo;
  const std::size_t fresh = pick(rng, 0, 2);
  for (std::size_t i = 0; i < fresh; ++i) b.order.push_back(prefix + "v" + std::to_string(i));
  std::size_t counter = 0;
  b.add_edges(rng, pick(rng, 0, 3), b.order, b.order, acyclic, prefix, counter);
  return b.build();
}

std::vector<VertexId> vertex_order(const Graph& g) {
  // Ids are "<prefix>v<i>"; order by the numeric suffix so generation order is recovered.
  std::vector<VertexId> out(g.vertices().begin(), g.vertices().end());
  std::sort(out.begin(), out.end(), [](const VertexId& a, const VertexId& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, const std::string& stream, std::uint64_t index) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return splitmix(splitmix(seed ^ h) + index);
}

Graph random_graph(Rng& rng, const Shape& shape) {
  Builder b;
  const std::size_t n = pick(rng, shape.min_vertices, shape.max_vertices);
  for (std::size_t i = 0; i < n; ++i) b.order.push_back(shape.prefix + "v" + std::to_string(i));
  std::size_t counter = 0;
  b.add_edges(rng, pick(rng, 0, shape.max_edges), b.order, b.order, shape.acyclic, shape.prefix, counter);
  return b.build();
}

Graph random_tailed_graph(Rng& rng, const Shape& shape, std::size_t max_tails) {
  Builder b = builder_of(random_graph(rng, shape));
  if (!b.order.empty()) {
    const std::size_t k = pick(rng, 0, max_tails);
    for (std::size_t i = 0; i < k; ++i) b.tails.emplace(choose(rng, b.order), choose(rng, b.order));
  }
  return b.build();
}

Graph random_subgraph(Rng& rng, const Graph& g) {
  VertexSet vs;
  for (const auto& v : g.vertices()) {
    if (coin(rng, 0.6)) vs.insert(v);
  }
  std::map<EdgeId, EdgeEnds> es;
  for (const auto& [id, ends] : g.edges()) {
    if (vs.count(ends.src) && vs.count(ends.tgt) && coin(rng, 0.7)) es.emplace(id, ends);
  }
  std::set<OmegaTail> ts;
  for (const auto& t : g.omega_tails()) {
    if (vs.count(t.first) && vs.count(t.second) && coin(rng, 0.7)) ts.insert(t);
  }
  return Graph(std::move(vs), std::move(es), std::move(ts));
}

VertexSet hereditary_closure(const Graph& g, VertexSet h) {
  std::deque<VertexId> todo(h.begin(), h.end());
  while (!todo.empty()) {
    const VertexId v = todo.front();
    todo.pop_front();
    auto visit = [&](const VertexId& w) {
      if (h.insert(w).second) todo.push_back(w);
    };
    for (const auto& e : g.out_edges(v)) visit(g.tgt(e));
    for (const auto& t : g.omega_tails()) {
      if (t.first == v) visit(t.second);
    }
  }
  return h;
}

std::optional<GraphHom> random_hom(Rng& rng, const GraphPtr& dom, const GraphPtr& cod) {
  if (cod->vertices().empty()) {
    if (dom->vertices().empty()) return GraphHom(dom, cod, {}, {});
    return std::nullopt;
  }
  const std::vector<VertexId> targets(cod->vertices().begin(), cod->vertices().end());
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::map<VertexId, VertexId> f0;
    for (const auto& v : dom->vertices()) f0.emplace(v, choose(rng, targets));
    std::map<EdgeId, EdgeId> f1;
    bool ok = true;
    for (const auto& [e, ends] : dom->edges()) {
      std::vector<EdgeId> candidates;
      for (const auto& x : cod->out_edges(f0.at(ends.src))) {
        if (cod->tgt(x) == f0.at(ends.tgt)) candidates.push_back(x);
      }
      if (candidates.empty()) {
        ok = false;
        break;
      }
      f1.emplace(e, choose(rng, candidates));
    }
    if (ok) return GraphHom(dom, cod, std::move(f0), std::move(f1));
  }
  return std::nullopt;
}

std::optional<GraphHom> random_tb_cover(Rng& rng, const GraphPtr& base, std::size_t max_fiber, bool regular,
                                        const std::string& prefix, bool allow_empty_fibers) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    VertexSet seeds;
    if (allow_empty_fibers) {
      for (const auto& v : base->vertices()) {
        if (coin(rng, 0.2)) seeds.insert(v);
      }
    }
    const VertexSet empty = hereditary_closure(*base, seeds);
    std::map<VertexId, std::vector<VertexId>> fibre;
    std::map<VertexId, VertexId> f0;
    std::size_t vcount = 0;
    for (const auto& w : base->vertices()) {
      if (empty.count(w)) continue;
      const std::size_t k = pick(rng, 1, std::max<std::size_t>(1, max_fiber));
      for (std::size_t i = 0; i < k; ++i) {
        VertexId id = prefix + "v" + std::to_string(vcount++);
        fibre[w].push_back(id);
        f0.emplace(id, w);
      }
    }
    std::map<EdgeId, EdgeEnds> edges;
    std::map<EdgeId, EdgeId> f1;
    std::size_t ecount = 0;
    for (const auto& [x, ends] : base->edges()) {
      if (empty.count(ends.tgt)) continue;
      for (const auto& j : fibre.at(ends.tgt)) {
        EdgeId id = prefix + "e" + std::to_string(ecount++);
        edges.emplace(id, EdgeEnds{choose(rng, fibre.at(ends.src)), j});
        f1.emplace(id, x);
      }
    }
    VertexSet vs;
    for (const auto& [v, w] : f0) vs.insert(v);
    auto cover = make_graph(std::move(vs), std::move(edges));
    GraphHom h(cover, base, std::move(f0), std::move(f1));
    if (regular && !classify_hom(h).regular) continue;
    return h;
  }
  return std::nullopt;
}

GraphHom random_admissible_extension(Rng& rng, const GraphPtr& g, const std::string& prefix,
                                     std::size_t max_new_vertices, std::size_t max_new_edges) {
  Builder b = builder_of(*g);
  std::vector<VertexId> fresh;
  const std::size_t n = pick(rng, 0, max_new_vertices);
  for (std::size_t i = 0; i < n; ++i) fresh.push_back(prefix + "v" + std::to_string(i));
  std::vector<VertexId> sources = fresh;
  for (const auto& v : g->vertices()) {
    if (g->is_regular(v)) sources.push_back(v);
  }
  b.order.insert(b.order.end(), fresh.begin(), fresh.end());
  std::size_t counter = 0;
  b.add_edges(rng, pick(rng, 0, max_new_edges), sources, fresh, false, prefix, counter);
  return GraphHom::inclusion(g, make_graph(b.build()));
}

std::optional<GraphHom> random_admissible_inclusion(Rng& rng, const GraphPtr& f) {
  VertexSet seeds;
  for (const auto& v : f->vertices()) {
    if (coin(rng, 0.3)) seeds.insert(v);
  }
  const VertexSet complement = saturation(*f, hereditary_closure(*f, seeds));
  VertexSet keep;
  for (const auto& v : f->vertices()) {
    if (!complement.count(v)) keep.insert(v);
  }
  return GraphHom::inclusion(make_graph(induced_subgraph(*f, keep)), f);
}

std::pair<GraphHom, GraphHom> random_injective_span(Rng& rng, bool acyclic) {
  Shape s{0, 3, 3, acyclic, "g"};
  const Graph g = random_graph(rng, s);
  const auto topo = vertex_order(g);
  auto gp = make_graph(g);
  auto ep = make_graph(extend(rng, g, topo, acyclic, "a"));

  // F extends a renamed copy of G.
  std::map<VertexId, VertexId> f0;
  std::vector<VertexId> topo_f;
  for (const auto& v : topo) {
    f0.emplace(v, "b" + v);
    topo_f.push_back("b" + v);
  }
  std::map<EdgeId, EdgeId> f1;
  std::map<EdgeId, EdgeEnds> edges;
  for (const auto& [e, ends] : g.edges()) {
    f1.emplace(e, "b" + e);
    edges.emplace("b" + e, EdgeEnds{f0.at(ends.src), f0.at(ends.tgt)});
  }
  const Graph copy(VertexSet(topo_f.begin(), topo_f.end()), edges);
  auto fp = make_graph(extend(rng, copy, topo_f, acyclic, "c"));
  return {GraphHom::inclusion(gp, ep), GraphHom(gp, fp, std::move(f0), std::move(f1))};
}

std::pair<GraphHom, GraphHom> one_color_violation(Rng& rng) {
  auto [f, g] = random_injective_span(rng, false);
  Builder be = builder_of(f.codomain());
  Builder bf = builder_of(g.codomain());
  VertexId p;
  if (f.domain().vertices().empty()) {
    // Nothing to glue yet: add a shared vertex.
    p = "gx";
    Builder bg = builder_of(f.domain());
    bg.order.push_back(p);
    auto gp = make_graph(bg.build());
    be.order.push_back(p);
    bf.order.push_back("b" + p);
    auto f0 = f.f0();
    auto g0 = g.f0();
    f0.emplace(p, p);
    g0.emplace(p, "b" + p);
    f = GraphHom(gp, make_graph(be.build()), f0, f.f1());
    g = GraphHom(gp, make_graph(bf.build()), g0, g.f1());
    be = builder_of(f.codomain());
    bf = builder_of(g.codomain());
  } else {
    const std::vector<VertexId> gs(f.domain().vertices().begin(), f.domain().vertices().end());
    p = choose(rng, gs);
  }
  be.order.push_back("ain");
  be.edges.emplace("ain_e", EdgeEnds{"ain", f.vertex(p)});
  bf.order.push_back("bout");
  bf.edges.emplace("bout_e", EdgeEnds{g.vertex(p), "bout"});
  auto ep = make_graph(be.build());
  auto fp = make_graph(bf.build());
  return {GraphHom(f.domain_ptr(), ep, f.f0(), f.f1()), GraphHom(g.domain_ptr(), fp, g.f0(), g.f1())};
}

std::optional<std::pair<GraphHom, GraphHom>> admissible_span(Rng& rng, std::size_t max_base_vertices) {
  auto base = make_graph(random_graph(rng, Shape{1, max_base_vertices, max_base_vertices + 1, false, "b"}));
  auto g = random_tb_cover(rng, base, 2, true, "g");
  if (!g) return std::nullopt;
  auto f = random_admissible_extension(rng, g->domain_ptr(), "a");
  return std::make_pair(std::move(f), std::move(*g));
}

std::optional<std::pair<GraphPtr, GraphPtr>> strongly_admissible_pair(Rng& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Graph cap = random_tailed_graph(rng, Shape{0, 3, 3, false, "i"}, 2);
    auto grow = [&](const std::string& prefix) {
      Builder b = builder_of(cap);
      std::vector<VertexId> fresh;
      const std::size_t n = pick(rng, 0, 3);
      for (std::size_t i = 0; i < n; ++i) fresh.push_back(prefix + "v" + std::to_string(i));
      b.order.insert(b.order.end(), fresh.begin(), fresh.end());
      std::size_t counter = 0;
      b.add_edges(rng, pick(rng, 0, 4), b.order, fresh, false, prefix, counter);
      if (!fresh.empty()) {
        const std::size_t k = pick(rng, 0, 2);
        for (std::size_t i = 0; i < k; ++i) b.tails.emplace(choose(rng, b.order), choose(rng, fresh));
      }
      return make_graph(b.build());
    };
    auto f = grow("f");
    auto g = grow("h");
    auto capp = make_graph(cap);
    if (is_admissible(GraphHom::inclusion(capp, f)).strongly && is_admissible(GraphHom::inclusion(capp, g)).strongly) {
      return std::make_pair(f, g);
    }
  }
  return std::nullopt;
}

}  // namespace qp::gen
