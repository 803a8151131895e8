#include "qp/pushout.hpp"

#include <algorithm>
#include <numeric>

namespace qp {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

void require_same_domain(const GraphHom& f, const GraphHom& g) {
  if (!(f.domain() == g.domain())) throw PreconditionError("shared_domain", "pushout legs have different domains");
}

void require_tail_free(const GraphHom& h, const char* op) {
  if (h.domain().has_tails() || h.codomain().has_tails()) {
    throw PreconditionError("tail_free", std::string(op) + ": graphs with omega-tails are not supported");
  }
}

}  // namespace

SetPushout set_pushout(const std::set<std::string>& x, const std::set<std::string>& y,
                       const std::set<std::string>& z, const std::map<std::string, std::string>& f,
                       const std::map<std::string, std::string>& g, const std::string& x_tag,
                       const std::string& y_tag) {
  SetPushout p{x, y, z, f, g, {}, {}, {}, {}, {}};
  // X elements occupy [0, |X|), Y elements [|X|, |X|+|Y|), both in sorted order.
  std::vector<Tagged> elems;
  std::map<std::string, std::size_t> xi, yi;
  for (const auto& a : x) {
    xi.emplace(a, elems.size());
    elems.push_back({0, a});
  }
  for (const auto& b : y) {
    yi.emplace(b, elems.size());
    elems.push_back({1, b});
  }
  UnionFind uf(elems.size());
  for (const auto& c : z) {
    auto fx = f.find(c);
    auto gy = g.find(c);
    if (fx == f.end() || gy == g.end() || !xi.count(fx->second) || !yi.count(gy->second)) {
      throw std::invalid_argument("set_pushout: leg undefined or out of range at '" + c + "'");
    }
    uf.unite(xi.at(fx->second), yi.at(gy->second));
  }
  // Elements are visited in representative order, so the first member seen
  // in each class is its representative and classes come out sorted.
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t root = uf.find(i);
    auto [it, fresh] = root_to_class.emplace(root, p.members.size());
    if (fresh) {
      p.members.emplace_back();
      p.names.push_back((elems[i].side == 0 ? x_tag : y_tag) + ":" + elems[i].id);
    }
    p.members[it->second].push_back(elems[i]);
    (elems[i].side == 0 ? p.x_class : p.y_class).emplace(elems[i].id, it->second);
  }
  for (std::size_t c = 0; c < p.names.size(); ++c) p.index.emplace(p.names[c], c);
  return p;
}

PushoutGraph graph_pushout(const GraphHom& f, const GraphHom& g) {
  require_same_domain(f, g);
  require_tail_free(f, "graph_pushout");
  require_tail_free(g, "graph_pushout");
  const Graph& e = f.codomain();
  const Graph& fg = g.codomain();
  const Graph& dom = f.domain();

  auto keys = [](const auto& m) {
    std::set<std::string> out;
    for (const auto& kv : m) out.insert(kv.first);
    return out;
  };

  SetPushout vp = set_pushout(e.vertices(), fg.vertices(), dom.vertices(), f.f0(), g.f0(), "E", "F");
  SetPushout ep = set_pushout(keys(e.edges()), keys(fg.edges()), keys(dom.edges()), f.f1(), g.f1(), "E", "F");

  std::map<EdgeId, EdgeEnds> edges;
  for (std::size_t c = 0; c < ep.size(); ++c) {
    std::optional<EdgeEnds> ends;
    for (const auto& m : ep.members[c]) {
      const Graph& side = m.side == 0 ? e : fg;
      const auto& vc = m.side == 0 ? vp.x_class : vp.y_class;
      EdgeEnds here{vp.names[vc.at(side.src(m.id))], vp.names[vc.at(side.tgt(m.id))]};
      if (ends && *ends != here) {
        throw std::logic_error("graph_pushout: source/target not well defined on class " + ep.names[c]);
      }
      ends = here;
    }
    edges.emplace(ep.names[c], *ends);
  }
  auto graph = make_graph(VertexSet(vp.names.begin(), vp.names.end()), std::move(edges));

  std::map<VertexId, VertexId> ie0, if0;
  std::map<EdgeId, EdgeId> ie1, if1;
  for (const auto& v : e.vertices()) ie0.emplace(v, vp.inj_x(v));
  for (const auto& v : fg.vertices()) if0.emplace(v, vp.inj_y(v));
  for (const auto& [id, ends] : e.edges()) ie1.emplace(id, ep.inj_x(id));
  for (const auto& [id, ends] : fg.edges()) if1.emplace(id, ep.inj_y(id));
  GraphHom iota_e(f.codomain_ptr(), graph, std::move(ie0), std::move(ie1));
  GraphHom iota_f(g.codomain_ptr(), graph, std::move(if0), std::move(if1));
  return PushoutGraph{graph, std::move(iota_e), std::move(iota_f), std::move(vp), std::move(ep)};
}

std::map<std::string, std::string> universal_map(const SetPushout& p, const std::map<std::string, std::string>& jx,
                                                 const std::map<std::string, std::string>& jy) {
  for (const auto& c : p.z) {
    const auto& a = jx.at(p.f.at(c));
    const auto& b = jy.at(p.g.at(c));
    if (a != b) {
      throw IncompatibleCone(c, "universal_map: cone does not commute at '" + c + "' (" + a + " != " + b + ")");
    }
  }
  std::map<std::string, std::string> h;
  for (std::size_t c = 0; c < p.size(); ++c) {
    std::optional<std::string> value;
    for (const auto& m : p.members[c]) {
      const std::string& here = m.side == 0 ? jx.at(m.id) : jy.at(m.id);
      if (value && *value != here) throw std::logic_error("universal_map: cone not constant on " + p.names[c]);
      value = here;
    }
    h.emplace(p.names[c], *value);
  }
  return h;
}

GraphHom universal_map(const PushoutGraph& p, const GraphHom& f, const GraphHom& g, const GraphHom& je,
                       const GraphHom& jf) {
  if (!(je.codomain() == jf.codomain())) throw std::invalid_argument("universal_map: cone legs have different targets");
  auto lhs = compose(je, f);
  auto rhs = compose(jf, g);
  for (const auto& [v, w] : lhs.f0()) {
    if (rhs.f0().at(v) != w) throw IncompatibleCone(v, "universal_map: cone does not commute at vertex '" + v + "'");
  }
  for (const auto& [e, x] : lhs.f1()) {
    if (rhs.f1().at(e) != x) throw IncompatibleCone(e, "universal_map: cone does not commute at edge '" + e + "'");
  }
  auto h0 = universal_map(p.vertices, je.f0(), jf.f0());
  auto h1 = universal_map(p.edges, je.f1(), jf.f1());
  return GraphHom(p.graph, je.codomain_ptr(), std::move(h0), std::move(h1));
}

TheoremFlags check_theorem_preconditions(const GraphHom& f, const GraphHom& g) {
  return check_theorem_preconditions(f, g, graph_pushout(f, g));
}

TheoremFlags check_theorem_preconditions(const GraphHom& f, const GraphHom& g, const PushoutGraph& p) {
  TheoremFlags flags;
  flags.vertex_injectivity = f.injective_on_vertices() && g.injective_on_vertices();
  if (!f.injective_on_vertices()) flags.witnesses.push_back("vertex_injectivity: f0 is not injective");
  if (!g.injective_on_vertices()) flags.witnesses.push_back("vertex_injectivity: g0 is not injective");

  const EdgeSet from_e = p.iota_e.edge_image();
  const EdgeSet from_f = p.iota_f.edge_image();
  flags.one_color = true;
  for (const auto& [x, xe] : p.graph->edges()) {
    for (const auto& y : p.graph->out_edges(xe.tgt)) {
      const bool both_e = from_e.count(x) && from_e.count(y);
      const bool both_f = from_f.count(x) && from_f.count(y);
      if (!both_e && !both_f) {
        flags.one_color = false;
        flags.witnesses.push_back("one_color: composable '" + x + "' then '" + y + "' do not lift to one side");
      }
    }
  }

  flags.one_sided_injectivity = f.injective_on_edges() || g.injective_on_edges();
  if (!flags.one_sided_injectivity) flags.witnesses.push_back("one_sided_injectivity: neither f1 nor g1 is injective");

  flags.p1 = f.injective();
  if (!flags.p1) flags.witnesses.push_back("P1: f is not injective");

  // (P2): g0 injective on f0^{-1}(B_{E0 \ f0(G0)}) with image inside B_{F0 \ g0(G0)}.
  auto complement_of_image = [](const GraphHom& h) {
    VertexSet out;
    const auto img = h.vertex_image();
    for (const auto& v : h.codomain().vertices()) {
      if (!img.count(v)) out.insert(v);
    }
    return out;
  };
  const auto b_e = breaking_vertices(f.codomain(), complement_of_image(f));
  const auto b_f = breaking_vertices(g.codomain(), complement_of_image(g));
  flags.p2 = true;
  std::map<VertexId, VertexId> seen;
  for (const auto& [v, w] : f.f0()) {
    if (!b_e.count(w)) continue;
    const auto& gv = g.vertex(v);
    if (!b_f.count(gv)) {
      flags.p2 = false;
      flags.witnesses.push_back("P2: g0('" + v + "') is not a breaking vertex in F");
    }
    auto [it, fresh] = seen.emplace(gv, v);
    if (!fresh) {
      flags.p2 = false;
      flags.witnesses.push_back("P2: g0 identifies '" + it->second + "' and '" + v + "'");
    }
  }
  return flags;
}

PathPushoutComparison path_pushout_compare(const GraphHom& f, const GraphHom& g, std::size_t max_length) {
  require_same_domain(f, g);
  require_tail_free(f, "path_pushout_compare");
  require_tail_free(g, "path_pushout_compare");
  PathPushoutComparison out;
  out.max_length = max_length;
  const PushoutGraph p = graph_pushout(f, g);

  // Vertex ids and edge ids live in separate namespaces, so keys carry the length.
  auto key = [](const Path& q) { return std::to_string(q.length()) + "|" + q.to_string(); };
  std::map<std::string, Path> e_paths, f_paths;
  std::set<std::string> xs, ys, zs;
  std::map<std::string, std::string> fz, gz;
  for (const auto& q : paths_up_to(f.codomain(), max_length)) {
    xs.insert(key(q));
    e_paths.emplace(key(q), q);
  }
  for (const auto& q : paths_up_to(g.codomain(), max_length)) {
    ys.insert(key(q));
    f_paths.emplace(key(q), q);
  }
  for (const auto& q : paths_up_to(f.domain(), max_length)) {
    zs.insert(key(q));
    fz.emplace(key(q), key(induced_path_map(f, q)));
    gz.emplace(key(q), key(induced_path_map(g, q)));
  }
  const SetPushout sp = set_pushout(xs, ys, zs, fz, gz, "E", "F");
  out.classes = sp.size();

  out.well_defined = true;
  for (std::size_t c = 0; c < sp.size(); ++c) {
    std::optional<Path> image;
    for (const auto& m : sp.members[c]) {
      Path here = m.side == 0 ? induced_path_map(p.iota_e, e_paths.at(m.id))
                              : induced_path_map(p.iota_f, f_paths.at(m.id));
      if (image && *image != here) {
        out.well_defined = false;
        out.witnesses.push_back("h not well defined on class " + sp.names[c]);
      }
      image = here;
    }
    out.h.emplace(sp.names[c], *image);
  }

  const auto targets = paths_up_to(*p.graph, max_length);
  out.target_paths = targets.size();
  std::map<Path, std::vector<std::string>> hits;
  for (const auto& [cls, path] : out.h) hits[path].push_back(cls);
  out.injective = true;
  for (const auto& [path, classes] : hits) {
    if (classes.size() > 1) {
      out.injective = false;
      out.witnesses.push_back("h identifies " + std::to_string(classes.size()) + " classes onto path '" +
                              path.to_string() + "'");
    }
  }
  out.surjective = true;
  for (const auto& q : targets) {
    if (!hits.count(q)) {
      out.surjective = false;
      out.witnesses.push_back("pushout path '" + q.to_string() + "' has no preimage class");
    }
  }
  out.bijective = out.well_defined && out.injective && out.surjective;
  return out;
}

MapPullbackReport check_map_pullback(const SetPushout& p, std::size_t k) {
  MapPullbackReport r;
  if (k == 0) throw std::invalid_argument("check_map_pullback: K must be nonempty");
  const std::vector<std::string> xs(p.x.begin(), p.x.end());
  const std::vector<std::string> ys(p.y.begin(), p.y.end());

  auto count_maps = [k](std::size_t n) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= k;
    return total;
  };
  auto decode = [k](std::size_t code, std::size_t n) {
    std::vector<std::size_t> digits(n);
    for (std::size_t i = 0; i < n; ++i) {
      digits[i] = code % k;
      code /= k;
    }
    return digits;
  };

  // Fibre product: pairs (a, b) with a o f = b o g.
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> pairs;
  const std::size_t nx = count_maps(xs.size());
  const std::size_t ny = count_maps(ys.size());
  std::map<std::string, std::size_t> xpos, ypos;
  for (std::size_t i = 0; i < xs.size(); ++i) xpos[xs[i]] = i;
  for (std::size_t i = 0; i < ys.size(); ++i) ypos[ys[i]] = i;
  for (std::size_t a = 0; a < nx; ++a) {
    const auto av = decode(a, xs.size());
    for (std::size_t b = 0; b < ny; ++b) {
      const auto bv = decode(b, ys.size());
      bool ok = true;
      for (const auto& c : p.z) ok = ok && av[xpos.at(p.f.at(c))] == bv[ypos.at(p.g.at(c))];
      if (ok) pairs.emplace(av, bv);
    }
  }
  r.pairs = pairs.size();

  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> images;
  r.maps = count_maps(p.size());
  for (std::size_t code = 0; code < r.maps; ++code) {
    const auto hv = decode(code, p.size());
    std::vector<std::size_t> av(xs.size()), bv(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) av[i] = hv[p.x_class.at(xs[i])];
    for (std::size_t i = 0; i < ys.size(); ++i) bv[i] = hv[p.y_class.at(ys[i])];
    images.emplace(std::move(av), std::move(bv));
  }
  r.bijective = images.size() == r.maps && images == pairs;
  return r;
}

BreakArrowReport check_break_arrow(const GraphHom& f, const PushoutGraph& p) {
  BreakArrowReport r;
  const Graph& e = f.codomain();
  const Graph& pg = *p.graph;
  const VertexSet f_image = f.vertex_image();
  const VertexSet from_f = p.iota_f.vertex_image();
  for (const auto& pv : pg.vertices()) {
    const auto fibre = p.iota_e.vertex_preimage(pv);
    if (fibre.size() != 1) continue;
    const VertexId& w = fibre.front();
    ++r.pairs_checked;
    EdgeSet lhs;
    for (const auto& x : e.out_edges(w)) {
      if (!f_image.count(e.tgt(x))) lhs.insert(x);
    }
    EdgeSet rhs;
    for (const auto& a : pg.out_edges(pv)) {
      if (from_f.count(pg.tgt(a))) continue;
      for (const auto& x : p.iota_e.edge_preimage(a)) rhs.insert(x);
    }
    if (lhs != rhs) r.failures.push_back("edge sets differ at w = '" + w + "', p = '" + pv + "'");
  }
  return r;
}

AdmissibleUnion admissible_union(const GraphPtr& f, const GraphPtr& g) {
  auto cap = make_graph(intersection_graph(*f, *g));
  auto cup = make_graph(union_graph(*f, *g));
  auto cap_f = GraphHom::inclusion(cap, f);
  auto cap_g = GraphHom::inclusion(cap, g);
  auto f_cup = GraphHom::inclusion(f, cup);
  auto g_cup = GraphHom::inclusion(g, cup);
  auto a = is_admissible(cap_f);
  auto b = is_admissible(cap_g);
  auto c = is_admissible(f_cup);
  auto d = is_admissible(g_cup);
  return AdmissibleUnion{cap,   cup,   std::move(cap_f), std::move(cap_g), std::move(f_cup), std::move(g_cup),
                         std::move(a), std::move(b), std::move(c), std::move(d)};
}

}  // namespace qp
