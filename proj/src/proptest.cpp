#include "qp/proptest.hpp"

#include <algorithm>
#include <sstream>

#include "qp/io.hpp"
#include "qp/leavitt.hpp"
#include "qp/path_algebra.hpp"
#include "qp/pushout.hpp"

namespace qp::prop {

namespace {

using gen::Rng;

template <typename T>
const T& choose(Rng& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::optional<Diagram> delete_from(const Diagram& d, std::size_t gi, const VertexSet& vertices, const EdgeSet& edges) {
  const Graph& g = *d.graphs[gi];
  VertexSet vs;
  for (const auto& v : g.vertices()) {
    if (!vertices.count(v)) vs.insert(v);
  }
  std::map<EdgeId, EdgeEnds> es;
  EdgeSet removed = edges;
  for (const auto& [id, ends] : g.edges()) {
    if (edges.count(id) || !vs.count(ends.src) || !vs.count(ends.tgt)) {
      removed.insert(id);
    } else {
      es.emplace(id, ends);
    }
  }
  std::set<OmegaTail> ts;
  for (const auto& t : g.omega_tails()) {
    if (vs.count(t.first) && vs.count(t.second)) ts.insert(t);
  }
  Diagram out = d;
  out.graphs[gi] = make_graph(std::move(vs), std::move(es), std::move(ts));
  for (auto& a : out.arrows) {
    if (a.cod == gi) {
      for (const auto& [v, w] : a.f0) {
        if (vertices.count(w)) return std::nullopt;
      }
      for (const auto& [e, x] : a.f1) {
        if (removed.count(x)) return std::nullopt;
      }
    }
    if (a.dom == gi) {
      for (const auto& v : vertices) a.f0.erase(v);
      for (const auto& e : removed) a.f1.erase(e);
    }
  }
  return out;
}

// Suites -------------------------------------------------------------------

bool legs_share_domain(const Diagram& d) {
  return d.arrows.size() == 2 && d.arrows[0].dom == d.arrows[1].dom;
}

bool composable(const Diagram& d) { return d.arrows.size() == 2 && d.arrows[0].cod == d.arrows[1].dom; }

std::optional<Diagram> tb_chain(Rng& rng, bool regular, std::size_t max_vertices) {
  auto base = make_graph(gen::random_graph(rng, gen::Shape{1, 3, 4, false, "k"}));
  auto g = gen::random_tb_cover(rng, base, 2, regular, "f");
  if (!g) return std::nullopt;
  auto f = gen::random_tb_cover(rng, g->domain_ptr(), 2, regular, "e");
  if (!f || f->domain().vertices().size() > max_vertices) return std::nullopt;
  return Diagram::of({*f, *g});
}

std::optional<Diagram> random_chain(Rng& rng) {
  auto c = make_graph(gen::random_graph(rng, gen::Shape{1, 3, 5, false, "c"}));
  auto b = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "b"}));
  auto a = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "a"}));
  auto g = gen::random_hom(rng, b, c);
  if (!g) return std::nullopt;
  auto f = gen::random_hom(rng, a, b);
  if (!f) return std::nullopt;
  return Diagram::of({*f, *g});
}

std::optional<std::string> composition_property(const Diagram& d, Rng&) {
  const GraphHom f = d.hom(0), g = d.hom(1);
  const auto cf = classify_hom(f), cg = classify_hom(g), cgf = classify_hom(compose(g, f));
  if (!cgf.proper) return "composite is not proper";
  if (!cgf.target_bijective) return "composite is not target-bijective: " + cgf.witnesses.front();
  if (cf.regular && cg.regular && !cgf.regular) return "composite of regular homs is not regular";
  return std::nullopt;
}

std::optional<std::string> admissible_equiv_property(const Diagram& d, Rng&) {
  const GraphHom h = d.hom(0);
  const bool admissible = is_admissible(h).admissible;
  const bool crt = classify_hom(h).category == Category::CRTBPOG;
  if (admissible != crt) {
    return std::string("admissible=") + (admissible ? "true" : "false") + " but CRTBPOG=" + (crt ? "true" : "false");
  }
  return std::nullopt;
}

bool captocup_hypothesis(const Diagram& d) {
  if (d.graphs.size() != 2) return false;
  try {
    const auto u = admissible_union(d.graphs[0], d.graphs[1]);
    return u.cap_f.strongly && u.cap_g.strongly;
  } catch (const std::exception&) {
    return false;
  }
}

std::optional<std::string> captocup_property(const Diagram& d, Rng&) {
  const auto u = admissible_union(d.graphs[0], d.graphs[1]);
  if (!u.cup_f.strongly) return "F is not strongly admissible in the union";
  if (!u.cup_g.strongly) return "G is not strongly admissible in the union";
  return std::nullopt;
}

bool regular_tb(const GraphHom& h) {
  const auto c = classify_hom(h);
  return c.target_bijective && c.regular;
}

bool admpush_hypothesis(const Diagram& d) {
  if (!legs_share_domain(d) || !d.valid()) return false;
  const GraphHom f = d.hom(0), g = d.hom(1);
  return (f.injective() || g.injective()) && regular_tb(f) && regular_tb(g);
}

std::optional<std::string> admpush_property(const Diagram& d, Rng&) {
  const auto p = graph_pushout(d.hom(0), d.hom(1));
  for (const auto& [name, iota] : {std::pair<const char*, const GraphHom*>{"iota_E", &p.iota_e}, {"iota_F", &p.iota_f}}) {
    const auto c = classify_hom(*iota);
    if (!c.target_bijective) return std::string(name) + " is not target-bijective: " + c.witnesses.front();
    if (!c.regular) return std::string(name) + " is not regular: " + c.witnesses.front();
  }
  return std::nullopt;
}

bool vertex_injective_span(const Diagram& d) {
  if (!legs_share_domain(d) || !d.valid()) return false;
  return d.hom(0).injective_on_vertices() && d.hom(1).injective_on_vertices();
}

std::optional<std::string> h_bijective_property(const Diagram& d, Rng&) {
  const GraphHom f = d.hom(0), g = d.hom(1);
  const auto flags = check_theorem_preconditions(f, g);
  const auto cmp = path_pushout_compare(f, g, 4);
  if (cmp.bijective != flags.one_color) {
    return std::string("one_color=") + (flags.one_color ? "true" : "false") +
           " but h bijective up to 4 is " + (cmp.bijective ? "true" : "false");
  }
  return std::nullopt;
}

std::optional<std::string> pa_hom_property(const Diagram& d, Rng& rng) {
  using E = PathElement<Rational>;
  const GraphHom f = d.hom(0), g = d.hom(1);
  const GraphHom gf = compose(g, f);
  for (const GraphHom* h : {&f, &g}) {
    if (!(pa_pullback(*h, pa_unit<Rational>(h->codomain_ptr())) == pa_unit<Rational>(h->domain_ptr()))) {
      return "pullback is not unital";
    }
  }
  const auto short_paths = paths_up_to(g.codomain(), 2);
  const auto long_paths = paths_up_to(g.codomain(), 4);
  const auto& c = g.codomain_ptr();
  for (int probe = 0; probe < 8; ++probe) {
    const Path& p = choose(rng, short_paths);
    const Path& q = choose(rng, short_paths);
    const E a = E::basis(c, p), b = E::basis(c, q);
    if (!(pa_pullback(g, pa_mul(a, b)) == pa_mul(pa_pullback(g, a), pa_pullback(g, b)))) {
      return "g* not multiplicative on (" + p.to_string() + ", " + q.to_string() + ")";
    }
    const Path& r = choose(rng, long_paths);
    const E x = E::basis(c, r);
    if (!(pa_pullback(gf, x) == pa_pullback(f, pa_pullback(g, x)))) {
      return "(g o f)* != f* o g* on " + r.to_string();
    }
  }
  return std::nullopt;
}

bool crtbpog_chain(const Diagram& d) {
  if (!composable(d) || !d.valid()) return false;
  return classify_hom(d.hom(0)).category == Category::CRTBPOG && classify_hom(d.hom(1)).category == Category::CRTBPOG;
}

std::optional<std::string> lk_hom_property(const Diagram& d, Rng& rng) {
  using L = LElement<Rational>;
  const GraphHom f = d.hom(0), g = d.hom(1);
  const LeavittPullback<Rational> pf(f), pg(g), pgf(compose(g, f));
  for (const auto* pb : {&pf, &pg, &pgf}) {
    if (!pb->descent().ok()) return pb->descent().failures.front();
    if (!((*pb)(L::unit(pb->hom().codomain_ptr())) == L::unit(pb->hom().domain_ptr()))) return "pullback is not unital";
  }
  const auto basis = normal_basis(g.codomain(), 3);
  const auto& c = g.codomain_ptr();
  for (int probe = 0; probe < 8; ++probe) {
    L a(c), b(c);
    a.add(choose(rng, basis), Rational(1));
    b.add(choose(rng, basis), Rational(1));
    if (!(pg(l_mul(a, b)) == l_mul(pg(a), pg(b)))) {
      return "g* not multiplicative on (" + a.to_string() + ", " + b.to_string() + ")";
    }
    if (!(pgf(a) == pf(pg(a)))) return "(g o f)* != f* o g* on " + a.to_string();
  }
  return std::nullopt;
}

bool single_crtbpog(const Diagram& d) {
  if (d.arrows.size() != 1 || !d.valid()) return false;
  const GraphHom h = d.hom(0);
  return !h.domain().has_tails() && !h.codomain().has_tails() && classify_hom(h).category == Category::CRTBPOG;
}

std::optional<std::string> kerver_property(const Diagram& d, Rng&) {
  using L = LElement<Rational>;
  const LeavittPullback<Rational> pb(d.hom(0));
  if (!pb.descent().ok()) return pb.descent().failures.front();
  const auto mismatches = kernel_vertex_mismatches(pb);
  if (!mismatches.empty()) return mismatches.front();
  const auto k = ker_generators<Rational>(d.hom(0));
  for (const auto& v : k.vertex_gens) {
    if (!pb(L::vertex(pb.hom().codomain_ptr(), v)).is_zero()) return "generator [" + v + "] is not in the kernel";
  }
  return std::nullopt;
}

bool admissible_category_span(const Diagram& d) {
  if (!legs_share_domain(d) || !d.valid()) return false;
  const GraphHom f = d.hom(0), g = d.hom(1);
  return f.injective() && classify_hom(f).category == Category::CRTBPOG &&
         classify_hom(g).category == Category::CRTBPOG;
}

std::optional<std::string> breakarrow_property(const Diagram& d, Rng&) {
  const GraphHom f = d.hom(0), g = d.hom(1);
  const auto r = check_break_arrow(f, graph_pushout(f, g));
  if (!r.holds()) return r.failures.front();
  return std::nullopt;
}

std::optional<Diagram> span_of(std::optional<std::pair<GraphHom, GraphHom>> s, bool swap) {
  if (!s) return std::nullopt;
  if (swap) return Diagram::of({s->second, s->first});
  return Diagram::of({s->first, s->second});
}

std::vector<Suite> make_suites() {
  std::vector<Suite> out;
  out.push_back(Suite{
      "composition", "composites of target-bijective (regular) homs stay target-bijective, proper (regular)",
      [](Rng& rng) { return tb_chain(rng, coin(rng), 6); },
      [](const Diagram& d) {
        if (!composable(d) || !d.valid()) return false;
        return classify_hom(d.hom(0)).target_bijective && classify_hom(d.hom(1)).target_bijective;
      },
      composition_property});
  out.push_back(Suite{
      "admissible-equiv", "an injective hom is admissible exactly when it is CRTBPOG",
      [](Rng& rng) -> std::optional<Diagram> {
        auto f = make_graph(gen::random_graph(rng, gen::Shape{1, 6, 8, false, ""}));
        if (coin(rng)) return Diagram::of({*gen::random_admissible_inclusion(rng, f)});
        return Diagram::of({GraphHom::inclusion(make_graph(gen::random_subgraph(rng, *f)), f)});
      },
      [](const Diagram& d) { return d.arrows.size() == 1 && d.valid() && d.hom(0).injective(); },
      admissible_equiv_property});
  out.push_back(Suite{"captocup",
                      "if F ∩ G is strongly admissible in F and G, then F and G are strongly admissible in F ∪ G",
                      [](Rng& rng) -> std::optional<Diagram> {
                        auto p = gen::strongly_admissible_pair(rng);
                        if (!p) return std::nullopt;
                        return Diagram::of_graphs({p->first, p->second});
                      },
                      captocup_hypothesis, captocup_property});
  out.push_back(Suite{"admpush",
                      "one-injective pushouts of regular target-bijective legs have regular target-bijective injections",
                      [](Rng& rng) { return span_of(gen::admissible_span(rng), coin(rng)); }, admpush_hypothesis,
                      admpush_property});
  out.push_back(Suite{"h-bijective",
                      "for vertex-injective spans, h is bijective up to length 4 exactly when one-colour holds",
                      [](Rng& rng) -> std::optional<Diagram> {
                        auto s = coin(rng, 0.2) ? gen::one_color_violation(rng) : gen::random_injective_span(rng, false);
                        return Diagram::of({s.first, s.second});
                      },
                      vertex_injective_span, h_bijective_property});
  out.push_back(Suite{"pa-hom", "path-algebra pullback is unital, multiplicative and contravariant",
                      [](Rng& rng) { return coin(rng) ? tb_chain(rng, false, 8) : random_chain(rng); },
                      [](const Diagram& d) { return composable(d) && d.valid(); }, pa_hom_property});
  out.push_back(Suite{"lk-hom", "Leavitt pullback is unital, multiplicative and contravariant on CRTBPOG homs",
                      [](Rng& rng) { return tb_chain(rng, true, 6); }, crtbpog_chain, lk_hom_property});
  out.push_back(Suite{"kerver", "pullback kills [v] exactly for v outside the vertex image; descent identities hold",
                      [](Rng& rng) -> std::optional<Diagram> {
                        if (coin(rng)) {
                          auto base = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 5, false, "k"}));
                          auto h = gen::random_tb_cover(rng, base, 2, true, "e");
                          if (!h) return std::nullopt;
                          return Diagram::of({*h});
                        }
                        auto f = make_graph(gen::random_graph(rng, gen::Shape{1, 6, 8, false, ""}));
                        return Diagram::of({*gen::random_admissible_inclusion(rng, f)});
                      },
                      single_crtbpog, kerver_property});
  out.push_back(Suite{"breakarrow", "edges into the complement correspond across admissible pushouts",
                      [](Rng& rng) { return span_of(gen::admissible_span(rng), false); }, admissible_category_span,
                      breakarrow_property});
  return out;
}

std::optional<std::string> run_property(const Suite& s, const Diagram& d, std::uint64_t seed) {
  Rng rng(seed);
  try {
    return s.property(d, rng);
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
}

}  // namespace

Diagram Diagram::of(const std::vector<GraphHom>& homs) {
  Diagram d;
  auto slot = [&](const GraphPtr& g) {
    for (std::size_t i = 0; i < d.graphs.size(); ++i) {
      if (d.graphs[i] == g) return i;
    }
    d.graphs.push_back(g);
    return d.graphs.size() - 1;
  };
  for (const auto& h : homs) {
    Arrow a;
    a.dom = slot(h.domain_ptr());
    a.cod = slot(h.codomain_ptr());
    a.f0 = h.f0();
    a.f1 = h.f1();
    d.arrows.push_back(std::move(a));
  }
  return d;
}

Diagram Diagram::of_graphs(const std::vector<GraphPtr>& graphs) {
  Diagram d;
  d.graphs = graphs;
  return d;
}

GraphHom Diagram::hom(std::size_t i) const {
  const Arrow& a = arrows.at(i);
  return GraphHom(graphs.at(a.dom), graphs.at(a.cod), a.f0, a.f1);
}

bool Diagram::valid() const {
  for (const auto& g : graphs) {
    if (!validate_graph(*g).ok()) return false;
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (!validate_hom(hom(i)).ok()) return false;
  }
  return true;
}

std::size_t Diagram::size() const {
  std::size_t n = 0;
  for (const auto& g : graphs) n += g->vertices().size() + g->edges().size() + g->omega_tails().size();
  return n;
}

nlohmann::json Diagram::to_json() const {
  nlohmann::json gs = nlohmann::json::array();
  for (const auto& g : graphs) gs.push_back(io::to_json(*g));
  nlohmann::json as = nlohmann::json::array();
  for (const auto& a : arrows) {
    as.push_back(nlohmann::json{{"domain", a.dom}, {"codomain", a.cod}, {"f0", a.f0}, {"f1", a.f1}});
  }
  return nlohmann::json{{"graphs", gs}, {"homs", as}};
}

Diagram minimize(Diagram d, const std::function<bool(const Diagram&)>& keep) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t gi = 0; gi < d.graphs.size() && !progress; ++gi) {
      const GraphPtr g = d.graphs[gi];
      for (const auto& v : g->vertices()) {
        auto c = delete_from(d, gi, {v}, {});
        if (c && c->valid() && keep(*c)) {
          d = std::move(*c);
          progress = true;
          break;
        }
      }
      if (progress) break;
      for (const auto& [e, ends] : g->edges()) {
        auto c = delete_from(d, gi, {}, {e});
        if (c && c->valid() && keep(*c)) {
          d = std::move(*c);
          progress = true;
          break;
        }
      }
      if (progress) break;
      for (const auto& t : g->omega_tails()) {
        Diagram c = d;
        auto ts = g->omega_tails();
        ts.erase(t);
        c.graphs[gi] = make_graph(g->vertices(), g->edges(), ts);
        if (c.valid() && keep(c)) {
          d = std::move(c);
          progress = true;
          break;
        }
      }
    }
  }
  return d;
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = make_suites();
  return all;
}

const Suite* find_suite(const std::string& name) {
  for (const auto& s : suites()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases) {
  const Suite* s = find_suite(name);
  if (!s) {
    std::string known;
    for (const auto& x : suites()) known += (known.empty() ? "" : ", ") + x.name;
    throw std::invalid_argument("unknown suite '" + name + "' (known: " + known + ")");
  }
  SuiteReport r;
  r.suite = name;
  r.seed = seed;
  r.cases = cases;
  for (std::size_t i = 0; i < cases; ++i) {
    const std::uint64_t cs = gen::case_seed(seed, name, i);
    Rng rng(cs);
    std::optional<Diagram> d;
    for (int attempt = 0; attempt < 200 && !d; ++attempt) {
      auto c = s->generate(rng);
      if (c && s->hypothesis(*c)) d = std::move(c);
    }
    if (!d) {
      ++r.skipped;
      continue;
    }
    const std::uint64_t probe_seed = gen::case_seed(cs, "probe", 0);
    auto failure = run_property(*s, *d, probe_seed);
    if (!failure) {
      ++r.passed;
      continue;
    }
    Failure f;
    f.index = i;
    f.seed = cs;
    f.message = *failure;
    f.original = *d;
    f.minimized = minimize(*d, [&](const Diagram& c) {
      return s->hypothesis(c) && run_property(*s, c, probe_seed).has_value();
    });
    r.failures.push_back(std::move(f));
  }
  return r;
}

std::string format_report(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << " seed " << r.seed << ": " << r.passed << "/" << r.cases << " passed";
  if (r.skipped) out << ", " << r.skipped << " skipped (no instance met the hypothesis)";
  out << "\n";
  for (const auto& f : r.failures) {
    out << "  case " << f.index << " (seed " << f.seed << "): " << f.message << "\n";
    out << "    minimized: " << f.minimized.to_json().dump() << "\n";
  }
  return out.str();
}

}  // namespace qp::prop
