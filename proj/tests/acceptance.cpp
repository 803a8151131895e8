// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qp/generators.hpp"
#include "qp/leavitt.hpp"
#include "qp/path_algebra.hpp"
#include "qp/proptest.hpp"
#include "qp/pushout.hpp"

using namespace qp;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double time_limit;  // seconds; 0 = none
  std::function<Outcome()> run;
};

std::string ratio(std::size_t ok, std::size_t total) { return std::to_string(ok) + "/" + std::to_string(total); }

Outcome suite_outcome(const std::string& name, std::size_t cases) {
  const auto r = prop::run_suite(name, kSeed, cases);
  std::string detail = ratio(r.passed, cases) + " passed";
  if (r.skipped) detail += ", " + std::to_string(r.skipped) + " skipped";
  if (!r.failures.empty()) detail += "; first failure: " + r.failures.front().message;
  return {r.ok() && r.skipped == 0 && r.passed == cases, detail};
}

// (A2) for an arbitrary hom: every edge ending in f0(G0) is in f1(G1).
bool edges_into_image(const GraphHom& h) {
  const auto vi = h.vertex_image();
  const auto ei = h.edge_image();
  for (const auto& [x, ends] : h.codomain().edges()) {
    if (vi.count(ends.tgt) && !ei.count(x)) return false;
  }
  return true;
}

Outcome hereditary_from_a2() {
  std::size_t ok = 0, n = 0;
  for (std::uint64_t i = 0; n < 500; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "a2", i));
    auto e = make_graph(gen::random_graph(rng, gen::Shape{1, 6, 8, false, "e"}));
    std::optional<GraphHom> h;
    if (i % 2 == 0) {
      // Close a random subgraph under incoming edges so (A2) holds by construction.
      Graph s = gen::random_subgraph(rng, *e);
      VertexSet vs = s.vertices();
      std::map<EdgeId, EdgeEnds> es = s.edges();
      for (bool grew = true; grew;) {
        grew = false;
        for (const auto& [x, ends] : e->edges()) {
          if (vs.count(ends.tgt) && !es.count(x)) {
            es.emplace(x, ends);
            vs.insert(ends.src);
            grew = true;
          }
        }
      }
      h = GraphHom::inclusion(make_graph(vs, es), e);
    } else {
      auto g = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 5, false, "g"}));
      h = gen::random_hom(rng, g, e);
    }
    if (!h || !edges_into_image(*h)) continue;
    ++n;
    VertexSet complement;
    const auto image = h->vertex_image();
    for (const auto& v : e->vertices()) {
      if (!image.count(v)) complement.insert(v);
    }
    ok += is_hereditary(*e, complement).hereditary;
  }
  return {ok == n, ratio(ok, n) + " complements hereditary"};
}

Outcome h_bijectivity() {
  std::size_t pos_ok = 0, pos = 0;
  for (std::uint64_t i = 0; pos < 200; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "hbij", i));
    auto [f, g] = gen::random_injective_span(rng, false);
    const auto flags = check_theorem_preconditions(f, g);
    if (!flags.vertex_injectivity || !flags.one_color) continue;
    ++pos;
    pos_ok += path_pushout_compare(f, g, 4).bijective;
  }
  std::size_t neg_ok = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "hviol", i));
    auto [f, g] = gen::one_color_violation(rng);
    bool fails = false;
    for (std::size_t n = 0; n <= 4 && !fails; ++n) fails = !path_pushout_compare(f, g, n).bijective;
    neg_ok += fails;
  }
  return {pos_ok == pos && neg_ok == 50,
          "one-colour instances bijective " + ratio(pos_ok, pos) + ", violations non-bijective " + ratio(neg_ok, 50)};
}

Outcome universal_property() {
  std::size_t ok = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "ump", i));
    auto gg = make_graph(gen::random_graph(rng, gen::Shape{1, 2, 2, false, "g"}));
    auto e = make_graph(gen::random_graph(rng, gen::Shape{1, 3, 3, false, "e"}));
    auto f = make_graph(gen::random_graph(rng, gen::Shape{1, 3, 3, false, "f"}));
    auto he = gen::random_hom(rng, gg, e);
    auto hf = gen::random_hom(rng, gg, f);
    if (!he || !hf) {
      he = GraphHom(make_graph(), e, {}, {});
      hf = GraphHom(make_graph(), f, {}, {});
    }
    const auto p = graph_pushout(*he, *hf);
    const SetPushout& sp = p.vertices;
    bool good = true;
    // Maps P0 -> Q correspond one-to-one with compatible cones; checked by counting both sides.
    for (std::size_t q = 1; q <= 4 && good; ++q) {
      std::size_t maps = 1, cones_total = 1;
      for (std::size_t k = 0; k < sp.size(); ++k) maps *= q;
      for (std::size_t k = 0; k < sp.x.size() + sp.y.size(); ++k) cones_total *= q;
      std::set<std::map<std::string, std::string>> seen;
      for (std::size_t code = 0; code < maps && good; ++code) {
        std::map<std::string, std::string> h;
        std::size_t c = code;
        for (const auto& name : sp.names) h[name] = std::to_string(c % q), c /= q;
        std::map<std::string, std::string> jx, jy;
        for (const auto& a : sp.x) jx[a] = h[sp.inj_x(a)];
        for (const auto& b : sp.y) jy[b] = h[sp.inj_y(b)];
        good = universal_map(sp, jx, jy) == h;
        seen.insert(h);
      }
      std::size_t compatible = 0;
      for (std::size_t code = 0; code < cones_total && good; ++code) {
        std::map<std::string, std::string> jx, jy;
        std::size_t c = code;
        for (const auto& a : sp.x) jx[a] = std::to_string(c % q), c /= q;
        for (const auto& b : sp.y) jy[b] = std::to_string(c % q), c /= q;
        bool commutes = true;
        for (const auto& z : sp.z) commutes = commutes && jx[sp.f.at(z)] == jy[sp.g.at(z)];
        if (!commutes) continue;
        ++compatible;
        const auto h = universal_map(sp, jx, jy);
        for (const auto& a : sp.x) good = good && h.at(sp.inj_x(a)) == jx[a];
        for (const auto& b : sp.y) good = good && h.at(sp.inj_y(b)) == jy[b];
      }
      good = good && compatible == maps && seen.size() == maps;
    }
    good = good && universal_map(p, *he, *hf, p.iota_e, p.iota_f) == GraphHom::identity(p.graph);
    ok += good;
  }
  return {ok == 100, ratio(ok, 100) + " pushouts"};
}

Outcome path_functor() {
  using E = PathElement<Rational>;
  std::size_t probes = 0, ok = 0;
  for (std::uint64_t i = 0; probes < 500; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "pa", i));
    auto c = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "c"}));
    auto b = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "b"}));
    auto a = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "a"}));
    auto g = gen::random_hom(rng, b, c);
    auto f = gen::random_hom(rng, a, b);
    if (!g || !f) continue;
    const auto gf = compose(*g, *f);
    const auto paths = paths_up_to(*c, 4);
    for (int t = 0; t < 10 && probes < 500; ++t) {
      const auto x = E::basis(c, paths[rng() % paths.size()]);
      const auto y = E::basis(c, paths[rng() % paths.size()]);
      ++probes;
      ok += pa_pullback(*g, x * y) == pa_pullback(*g, x) * pa_pullback(*g, y) &&
            pa_pullback(*g, pa_unit<Rational>(c)) == pa_unit<Rational>(b) &&
            pa_pullback(gf, x) == pa_pullback(*f, pa_pullback(*g, x));
    }
  }
  return {ok == probes, ratio(ok, probes) + " probes"};
}

Outcome leavitt_arithmetic() {
  using L = LElement<Rational>;
  std::size_t identities = 0, bad = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "ck", i));
    auto g = make_graph(gen::random_graph(rng, gen::Shape{1, 6, 8, false, ""}));
    for (const auto& [x, xe] : g->edges()) {
      for (const auto& [y, ye] : g->edges()) {
        ++identities;
        bad += !(L::ghost(g, x) * L::edge(g, y) == (x == y ? L::vertex(g, xe.tgt) : L(g)));
      }
    }
    for (const auto& v : g->vertices()) {
      if (!g->is_regular(v)) continue;
      L sum(g);
      for (const auto& e : g->out_edges(v)) sum += L::edge(g, e) * L::ghost(g, e);
      ++identities;
      bad += !(L::vertex(g, v) == sum);
    }
  }
  std::size_t triples = 0, assoc_ok = 0;
  for (std::uint64_t i = 0; triples < 500; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "assoc", i));
    auto g = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, ""}));
    const auto basis = normal_basis(*g, 3);
    for (int t = 0; t < 25 && triples < 500; ++t) {
      L x(g), y(g), z(g);
      x.add(basis[rng() % basis.size()], Rational(1));
      y.add(basis[rng() % basis.size()], Rational(1));
      z.add(basis[rng() % basis.size()], Rational(1));
      ++triples;
      assoc_ok += (x * y) * z == x * (y * z);
    }
  }
  return {bad == 0 && assoc_ok == triples, std::to_string(identities - bad) + "/" + std::to_string(identities) +
                                               " CK identities, " + ratio(assoc_ok, triples) + " associative triples"};
}

// dim L(E) for acyclic E as a sum of matrix algebras over the sinks.
std::size_t matrix_sum_dimension(const Graph& g) {
  std::size_t dim = 0;
  const auto paths = paths_up_to(g, g.vertices().size());
  for (const auto& w : classify_vertices(g).sinks) {
    std::size_t n = 0;
    for (const auto& p : paths) n += path_target(g, p) == w;
    dim += n * n;
  }
  return dim;
}

Outcome dimension_oracle() {
  const Graph edge(std::vector<VertexId>{"v", "w"}, {{"e", "v", "w"}});
  const auto single = normal_basis(edge, 2).size();
  bool ok = single == 4 && leavitt_dimension_oracle<Rational>(edge) == 4 && matrix_sum_dimension(edge) == 4;
  std::size_t agree = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "dim", i));
    const Graph g = gen::random_graph(rng, gen::Shape{1, 6, 8, true, ""});
    const auto n = normal_basis(g, 2 * *longest_path_length(g)).size();
    agree += n == leavitt_dimension_oracle<Rational>(g) && n == matrix_sum_dimension(g);
  }
  return {ok && agree == 20, "single edge dim " + std::to_string(single) + ", random acyclic " + ratio(agree, 20)};
}

Outcome leavitt_pullback_theorem() {
  std::size_t ok = 0, n = 0, pairs = 0, excluded = 0;
  std::string first;
  for (std::uint64_t i = 0; n < 50; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "lv", i));
    auto s = gen::admissible_span(rng);
    if (!s) continue;
    ++n;
    const auto r = verify_leavitt_pullback<Rational>(s->first, s->second, 4);
    const bool good = r.preconditions.p1 && r.preconditions.p2 && r.kernel_intersection && r.surjectivity &&
                      r.kernel_correspondence && r.break_arrow.holds() && r.rank_consistent && r.passed;
    ok += good;
    pairs += r.break_arrow.pairs_checked;
    excluded += r.excluded;
    if (!good && first.empty() && !r.witnesses.empty()) first = r.witnesses.front();
  }
  std::string detail = ratio(ok, n) + " instances, " + std::to_string(pairs) + " break-arrow pairs, " +
                       std::to_string(excluded) + " excluded monomials";
  if (!first.empty()) detail += "; " + first;
  return {ok == n, detail};
}

Outcome path_pullback_exact() {
  std::size_t ok = 0, n = 0;
  std::string first;
  for (std::uint64_t i = 0; n < 50; ++i) {
    gen::Rng rng(gen::case_seed(kSeed, "pp", i));
    auto [f, g] = gen::random_injective_span(rng, true);
    const auto flags = check_theorem_preconditions(f, g);
    if (!flags.vertex_injectivity || !flags.one_color || !flags.one_sided_injectivity) continue;
    ++n;
    const auto p = graph_pushout(f, g);
    const std::size_t top = *longest_path_length(*p.graph);
    const auto r = verify_path_pullback<Rational>(f, g, top);
    // Fibre product dimension from the nullspace of [f* | -g*], degree by degree.
    std::size_t fibre = 0;
    for (std::size_t d = 0; d <= top; ++d) {
      const auto pe = paths_of_length(f.codomain(), d);
      const auto pf = paths_of_length(g.codomain(), d);
      const auto pg = paths_of_length(f.domain(), d);
      if (pg.empty()) {
        fibre += pe.size() + pf.size();
        continue;
      }
      Matrix<Rational> m(static_cast<Eigen::Index>(pg.size()), static_cast<Eigen::Index>(pe.size() + pf.size()));
      m << pullback_matrix<Rational>(f, pg, pe), Matrix<Rational>(-pullback_matrix<Rational>(g, pg, pf));
      fibre += static_cast<std::size_t>(nullspace<Rational>(m).cols());
    }
    const std::size_t dim_p = paths_up_to(*p.graph, top).size();
    const bool good = r.exact && r.passed && fibre == dim_p;
    ok += good;
    if (!good && first.empty()) {
      first = "instance " + std::to_string(i) + ": dim k(P) = " + std::to_string(dim_p) + ", fibre product " +
              std::to_string(fibre);
    }
  }
  std::string detail = ratio(ok, n) + " EXACT instances";
  if (!first.empty()) detail += "; " + first;
  return {ok == n, detail};
}

Outcome admpush_probe() {
  const auto r = prop::run_suite("admpush", kSeed, 500);
  std::string detail = ratio(r.passed, 500) + " passed, " + std::to_string(r.skipped) + " skipped, " +
                       std::to_string(r.failures.size()) + " findings";
  for (const auto& f : r.failures) {
    detail += "\n    finding case " + std::to_string(f.index) + ": " + f.message + "\n    minimized: " +
              f.minimized.to_json().dump();
  }
  // Findings are reported, not treated as a gate failure.
  return {r.passed + r.skipped + r.failures.size() == 500, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "category closure", 10, [] { return suite_outcome("composition", 500); }},
      {2, "admissible iff CRTBPOG", 10, [] { return suite_outcome("admissible-equiv", 500); }},
      {3, "hereditary complement from (A2)", 0, hereditary_from_a2},
      {4, "captocup with omega-tails", 0, [] { return suite_outcome("captocup", 200); }},
      {5, "h-bijectivity under one-colour", 0, h_bijectivity},
      {6, "pushout universal property", 60, universal_property},
      {7, "path-algebra functor", 0, path_functor},
      {8, "Leavitt arithmetic", 60, leavitt_arithmetic},
      {9, "Leavitt dimension oracle", 0, dimension_oracle},
      {10, "kerver and descent identities", 0, [] { return suite_outcome("kerver", 200); }},
      {11, "Leavitt pullback theorem", 300, leavitt_pullback_theorem},
      {12, "path pullback EXACT on acyclic instances", 0, path_pullback_exact},
      {13, "admpush probe", 0, admpush_probe},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit == 0 || secs < c.time_limit;
    const bool pass = o.pass && in_time;
    failed += !pass;
    char timing[64];
    if (c.time_limit > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.time_limit);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::printf("[%s] %2d %s: %s (%s)\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(), o.detail.c_str(), timing);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
