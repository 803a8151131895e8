#include "qp/morphism.hpp"

#include <algorithm>
#include <functional>

namespace qp {

GraphHom::GraphHom(GraphPtr domain, GraphPtr codomain, std::map<VertexId, VertexId> f0,
                   std::map<EdgeId, EdgeId> f1)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), f0_(std::move(f0)), f1_(std::move(f1)) {
  if (!domain_ || !codomain_) throw std::invalid_argument("GraphHom: null graph");
  for (const auto& [v, w] : f0_) f0_inv_[w].push_back(v);
  for (const auto& [e, x] : f1_) f1_inv_[x].push_back(e);
}

GraphHom GraphHom::identity(GraphPtr g) { return inclusion(g, g); }

GraphHom GraphHom::inclusion(GraphPtr sub, GraphPtr super) {
  std::map<VertexId, VertexId> f0;
  std::map<EdgeId, EdgeId> f1;
  for (const auto& v : sub->vertices()) f0.emplace(v, v);
  for (const auto& [e, ends] : sub->edges()) f1.emplace(e, e);
  return GraphHom(std::move(sub), std::move(super), std::move(f0), std::move(f1));
}

std::vector<VertexId> GraphHom::vertex_preimage(const VertexId& w) const {
  auto it = f0_inv_.find(w);
  return it == f0_inv_.end() ? std::vector<VertexId>{} : it->second;
}

std::vector<EdgeId> GraphHom::edge_preimage(const EdgeId& x) const {
  auto it = f1_inv_.find(x);
  return it == f1_inv_.end() ? std::vector<EdgeId>{} : it->second;
}

VertexSet GraphHom::vertex_image() const {
  VertexSet out;
  for (const auto& [v, w] : f0_) out.insert(w);
  return out;
}

EdgeSet GraphHom::edge_image() const {
  EdgeSet out;
  for (const auto& [e, x] : f1_) out.insert(x);
  return out;
}

bool GraphHom::is_inclusion() const {
  return std::all_of(f0_.begin(), f0_.end(), [](const auto& kv) { return kv.first == kv.second; }) &&
         std::all_of(f1_.begin(), f1_.end(), [](const auto& kv) { return kv.first == kv.second; });
}

bool GraphHom::injective_on_vertices() const {
  return std::all_of(f0_inv_.begin(), f0_inv_.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

bool GraphHom::injective_on_edges() const {
  return std::all_of(f1_inv_.begin(), f1_inv_.end(), [](const auto& kv) { return kv.second.size() == 1; });
}

bool GraphHom::operator==(const GraphHom& other) const {
  return *domain_ == *other.domain_ && *codomain_ == *other.codomain_ && f0_ == other.f0_ && f1_ == other.f1_;
}

namespace {

/// A codomain tail is covered when some domain tail maps onto it.
bool tail_covered(const GraphHom& h, const OmegaTail& tail) {
  for (const auto& [a, b] : h.domain().omega_tails()) {
    auto ia = h.f0().find(a);
    auto ib = h.f0().find(b);
    if (ia != h.f0().end() && ib != h.f0().end() && ia->second == tail.first && ib->second == tail.second) {
      return true;
    }
  }
  return false;
}

}  // namespace

ValidationReport validate_hom(const GraphHom& h) {
  ValidationReport report;
  const Graph& dom = h.domain();
  const Graph& cod = h.codomain();
  for (const auto& v : dom.vertices()) {
    auto it = h.f0().find(v);
    if (it == h.f0().end()) {
      report.violations.push_back("f0 undefined on vertex '" + v + "'");
    } else if (!cod.has_vertex(it->second)) {
      report.violations.push_back("f0 sends '" + v + "' to unknown vertex '" + it->second + "'");
    }
  }
  for (const auto& [v, w] : h.f0()) {
    if (!dom.has_vertex(v)) report.violations.push_back("f0 mentions unknown domain vertex '" + v + "'");
  }
  for (const auto& [e, x] : h.f1()) {
    if (!dom.has_edge(e)) report.violations.push_back("f1 mentions unknown domain edge '" + e + "'");
  }
  for (const auto& [e, ends] : dom.edges()) {
    auto it = h.f1().find(e);
    if (it == h.f1().end()) {
      report.violations.push_back("f1 undefined on edge '" + e + "'");
      continue;
    }
    const EdgeId& x = it->second;
    if (!cod.has_edge(x)) {
      report.violations.push_back("f1 sends '" + e + "' to unknown edge '" + x + "'");
      continue;
    }
    auto fs = h.f0().find(ends.src);
    auto ft = h.f0().find(ends.tgt);
    if (fs != h.f0().end() && fs->second != cod.src(x)) {
      report.violations.push_back("source square fails on edge '" + e + "': f0(s(" + e + ")) = '" + fs->second +
                                  "' but s(f1(" + e + ")) = '" + cod.src(x) + "'");
    }
    if (ft != h.f0().end() && ft->second != cod.tgt(x)) {
      report.violations.push_back("target square fails on edge '" + e + "': f0(t(" + e + ")) = '" + ft->second +
                                  "' but t(f1(" + e + ")) = '" + cod.tgt(x) + "'");
    }
  }
  if (dom.has_tails() || cod.has_tails()) {
    if (!h.is_inclusion()) {
      report.violations.push_back("homomorphisms between graphs with omega-tails must be inclusions");
    }
    for (const auto& t : dom.omega_tails()) {
      if (!cod.omega_tails().count(t)) {
        report.violations.push_back("omega-tail (" + t.first + ", " + t.second + ") missing from the codomain");
      }
    }
  }
  return report;
}

std::string to_string(Category c) {
  switch (c) {
    case Category::OG: return "OG";
    case Category::POG: return "POG";
    case Category::TBPOG: return "TBPOG";
    case Category::CRTBPOG: return "CRTBPOG";
  }
  return "?";
}

HomClassification classify_hom(const GraphHom& h) {
  HomClassification c;
  const Graph& dom = h.domain();
  const Graph& cod = h.codomain();

  c.injective = h.injective();
  c.surjective = h.vertex_image().size() == cod.vertices().size() && h.edge_image().size() == cod.edges().size();
  // Every map between finite sets is finite-to-one.
  c.proper = true;

  c.target_bijective = true;
  for (const auto& [x, ends] : cod.edges()) {
    const auto edges = h.edge_preimage(x);
    const auto fibre = h.vertex_preimage(ends.tgt);
    VertexSet hit;
    for (const auto& e : edges) hit.insert(dom.tgt(e));
    const bool bijective = hit.size() == edges.size() && hit.size() == fibre.size();
    if (!bijective) {
      c.target_bijective = false;
      c.witnesses.push_back("target bijectivity fails at edge '" + x + "': " + std::to_string(edges.size()) +
                            " edge preimage(s), " + std::to_string(fibre.size()) + " vertex preimage(s) of '" +
                            ends.tgt + "'");
    }
  }
  for (const auto& tail : cod.omega_tails()) {
    if (!tail_covered(h, tail) && !h.vertex_preimage(tail.second).empty()) {
      c.target_bijective = false;
      c.witnesses.push_back("target bijectivity fails at omega-tail (" + tail.first + ", " + tail.second +
                            "): no preimage tail but '" + tail.second + "' is in the image");
    }
  }

  c.regular = true;
  for (const auto& v : dom.vertices()) {
    auto it = h.f0().find(v);
    if (it == h.f0().end()) continue;
    if (!dom.is_regular(v) && cod.is_regular(it->second)) {
      c.regular = false;
      c.witnesses.push_back("regularity fails: non-regular '" + v + "' maps to regular '" + it->second + "'");
    }
  }

  if (c.proper && c.target_bijective && c.regular) {
    c.category = Category::CRTBPOG;
  } else if (c.proper && c.target_bijective) {
    c.category = Category::TBPOG;
  } else if (c.proper) {
    c.category = Category::POG;
  }
  return c;
}

GraphHom compose(const GraphHom& g, const GraphHom& f) {
  if (!(f.codomain() == g.domain())) throw std::invalid_argument("compose: codomain(f) != domain(g)");
  std::map<VertexId, VertexId> f0;
  std::map<EdgeId, EdgeId> f1;
  for (const auto& [v, w] : f.f0()) f0.emplace(v, g.vertex(w));
  for (const auto& [e, x] : f.f1()) f1.emplace(e, g.edge(x));
  return GraphHom(f.domain_ptr(), g.codomain_ptr(), std::move(f0), std::move(f1));
}

Path induced_path_map(const GraphHom& h, const Path& p) {
  if (!is_path_of(h.domain(), p)) {
    throw std::invalid_argument("induced_path_map: '" + p.to_string() + "' is not a path of the domain");
  }
  if (p.is_vertex()) return Path::at(h.vertex(p.vertex()));
  std::vector<EdgeId> image;
  image.reserve(p.length());
  for (const auto& e : p.edges()) image.push_back(h.edge(e));
  return Path::of(std::move(image));
}

std::vector<Path> path_preimage(const GraphHom& h, const Path& p) {
  std::vector<Path> out;
  if (p.is_vertex()) {
    for (const auto& v : h.vertex_preimage(p.vertex())) out.push_back(Path::at(v));
    return out;
  }
  const Graph& dom = h.domain();
  std::vector<EdgeId> stack;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == p.length()) {
      out.push_back(Path::of(stack));
      return;
    }
    for (const auto& e : h.edge_preimage(p.edges()[i])) {
      if (!stack.empty() && dom.tgt(stack.back()) != dom.src(e)) continue;
      stack.push_back(e);
      extend(i + 1);
      stack.pop_back();
    }
  };
  extend(0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void require_subset(const Graph& g, const VertexSet& h, const char* op) {
  for (const auto& v : h) {
    if (!g.has_vertex(v)) throw std::invalid_argument(std::string(op) + ": '" + v + "' is not a vertex");
  }
}

}  // namespace

HereditaryReport is_hereditary(const Graph& g, const VertexSet& h) {
  require_subset(g, h, "is_hereditary");
  HereditaryReport r;
  for (const auto& v : h) {
    bool leaks = false;
    for (const auto& e : g.out_edges(v)) leaks = leaks || !h.count(g.tgt(e));
    for (const auto& [a, b] : g.omega_tails()) leaks = leaks || (a == v && !h.count(b));
    if (leaks) r.prodigal.insert(v);
  }
  r.hereditary = r.prodigal.empty();
  return r;
}

VertexSet desaturating_vertices(const Graph& g, const VertexSet& h) {
  VertexSet out;
  for (const auto& v : g.vertices()) {
    if (h.count(v) || !g.is_regular(v)) continue;
    const auto& es = g.out_edges(v);
    if (std::all_of(es.begin(), es.end(), [&](const EdgeId& e) { return h.count(g.tgt(e)) != 0; })) {
      out.insert(v);
    }
  }
  return out;
}

bool is_saturated(const Graph& g, const VertexSet& h) { return desaturating_vertices(g, h).empty(); }

VertexSet saturation(const Graph& g, const VertexSet& h) {
  require_subset(g, h, "saturation");
  VertexSet closure = h;
  for (;;) {
    auto extra = desaturating_vertices(g, closure);
    if (extra.empty()) return closure;
    closure.insert(extra.begin(), extra.end());
  }
}

EdgeSet edges_leaving_into_complement(const Graph& g, const VertexId& v, const VertexSet& h) {
  EdgeSet out;
  for (const auto& e : g.out_edges(v)) {
    if (!h.count(g.tgt(e))) out.insert(e);
  }
  return out;
}

VertexSet breaking_vertices(const Graph& g, const VertexSet& h) {
  VertexSet out;
  for (const auto& v : g.vertices()) {
    if (h.count(v) || !g.emits_tail(v)) continue;
    bool tail_into_complement = false;
    for (const auto& [a, b] : g.omega_tails()) tail_into_complement = tail_into_complement || (a == v && !h.count(b));
    if (tail_into_complement) continue;
    if (!edges_leaving_into_complement(g, v, h).empty()) out.insert(v);
  }
  return out;
}

bool is_unbroken(const Graph& g, const VertexSet& h) { return breaking_vertices(g, h).empty(); }

AdmissibilityReport is_admissible(const GraphHom& h) {
  if (!h.injective()) throw PreconditionError("injective", "is_admissible: homomorphism is not injective");
  AdmissibilityReport r;
  const Graph& cod = h.codomain();
  const VertexSet image = h.vertex_image();
  const EdgeSet edge_image = h.edge_image();
  VertexSet complement;
  std::set_difference(cod.vertices().begin(), cod.vertices().end(), image.begin(), image.end(),
                      std::inserter(complement, complement.end()));

  const auto desat = desaturating_vertices(cod, complement);
  r.complement_saturated = desat.empty();
  for (const auto& v : desat) r.witnesses.push_back("(A1) '" + v + "' desaturates the complement of the image");

  r.edges_into_image = true;
  for (const auto& [x, ends] : cod.edges()) {
    if (image.count(ends.tgt) && !edge_image.count(x)) {
      r.edges_into_image = false;
      r.witnesses.push_back("(A2) edge '" + x + "' ends in the image but is not an image edge");
    }
  }
  for (const auto& tail : cod.omega_tails()) {
    if (image.count(tail.second) && !tail_covered(h, tail)) {
      r.edges_into_image = false;
      r.witnesses.push_back("(A2) omega-tail (" + tail.first + ", " + tail.second +
                            ") ends in the image but is not an image tail");
    }
  }
  r.admissible = r.complement_saturated && r.edges_into_image;
  const auto breaking = breaking_vertices(cod, complement);
  for (const auto& v : breaking) r.witnesses.push_back("'" + v + "' is a breaking vertex for the complement");
  r.strongly = r.admissible && breaking.empty();
  return r;
}

bool admissible_equiv_crtbpog(const GraphHom& h) {
  return is_admissible(h).admissible == (classify_hom(h).category == Category::CRTBPOG);
}

}  // namespace qp
