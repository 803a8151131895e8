#include <doctest.h>

#include "qp/generators.hpp"
#include "qp/pushout.hpp"
#include "support.hpp"

using namespace qp;
using qp::test::graph;
using qp::test::hom;

namespace {

using StrMap = std::map<std::string, std::string>;

// Equivalence closure by repeated relaxation over a boolean relation matrix.
std::set<std::set<std::string>> classes_by_closure(const std::set<std::string>& x, const std::set<std::string>& y,
                                                   const StrMap& f, const StrMap& g) {
  std::vector<std::string> all;
  for (const auto& a : x) all.push_back("X:" + a);
  for (const auto& b : y) all.push_back("Y:" + b);
  const std::size_t n = all.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  auto at = [&](const std::string& s) { return std::find(all.begin(), all.end(), s) - all.begin(); };
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (const auto& [z, a] : f) {
    const auto i = at("X:" + a), j = at("Y:" + g.at(z));
    rel[i][j] = rel[j][i] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (rel[i][k] && rel[k][j]) rel[i][j] = true;
  std::set<std::set<std::string>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::string> c;
    for (std::size_t j = 0; j < n; ++j)
      if (rel[i][j]) c.insert(all[j]);
    out.insert(c);
  }
  return out;
}

std::set<std::set<std::string>> classes_of(const SetPushout& p) {
  std::set<std::set<std::string>> out;
  for (const auto& ms : p.members) {
    std::set<std::string> c;
    for (const auto& m : ms) c.insert((m.side == 0 ? "X:" : "Y:") + m.id);
    out.insert(c);
  }
  return out;
}

std::set<std::string> ids(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

}  // namespace

TEST_CASE("set_pushout") {
  auto p = set_pushout(ids({"a", "b"}), ids({"c"}), {}, {}, {});
  CHECK(p.size() == 3);

  p = set_pushout(ids({"a", "b"}), ids({"a", "b"}), ids({"a", "b"}), {{"a", "a"}, {"b", "b"}},
                  {{"a", "a"}, {"b", "b"}});
  CHECK(p.size() == 2);
  CHECK(p.inj_x("a") == p.inj_y("a"));
  CHECK(p.names[0] == "X:a");

  p = set_pushout(ids({"a", "b"}), ids({"c"}), ids({"z1", "z2"}), {{"z1", "a"}, {"z2", "b"}},
                  {{"z1", "c"}, {"z2", "c"}});
  REQUIRE(p.size() == 1);
  CHECK(p.members[0].size() == 3);
}

TEST_CASE("set_pushout matches transitive closure on random data") {
  gen::Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    std::set<std::string> x, y, z;
    StrMap f, g;
    const auto nx = 1 + rng() % 4, ny = 1 + rng() % 4, nz = rng() % 4;
    for (std::size_t k = 0; k < nx; ++k) x.insert("x" + std::to_string(k));
    for (std::size_t k = 0; k < ny; ++k) y.insert("y" + std::to_string(k));
    for (std::size_t k = 0; k < nz; ++k) {
      const std::string zk = "z" + std::to_string(k);
      z.insert(zk);
      f[zk] = "x" + std::to_string(rng() % nx);
      g[zk] = "y" + std::to_string(rng() % ny);
    }
    CHECK(classes_of(set_pushout(x, y, z, f, g)) == classes_by_closure(x, y, f, g));
  }
}

TEST_CASE("graph_pushout") {
  auto g = test::single_edge();
  auto p = graph_pushout(GraphHom::identity(g), GraphHom::identity(g));
  CHECK(p.graph->vertices().size() == 2);
  CHECK(classify_hom(p.iota_e).category == Category::CRTBPOG);

  auto e = test::single_edge();
  auto f = graph({"v'", "w'"}, {{"e'", "v'", "w'"}});
  auto empty = graph({});
  p = graph_pushout(hom(empty, e, {}), hom(empty, f, {}));
  CHECK(p.graph->vertices().size() == 4);
  CHECK(p.graph->edges().size() == 2);

  // Glue w = v': a path graph with three vertices and two edges.
  auto pt = graph({"w"});
  p = graph_pushout(hom(pt, e, {{"w", "w"}}), hom(pt, f, {{"w", "v'"}}));
  CHECK(p.graph->vertices().size() == 3);
  CHECK(p.graph->edges().size() == 2);
  CHECK(longest_path_length(*p.graph) == 2u);
  CHECK(p.iota_e.vertex("w") == p.iota_f.vertex("v'"));

  auto loop_dom = graph({"u"});
  CHECK_THROWS_AS(graph_pushout(hom(loop_dom, e, {{"u", "v"}}), hom(pt, f, {{"w", "v'"}})), PreconditionError);
}

TEST_CASE("universal_map is unique among all maps into small targets") {
  for (int i = 0; i < 30; ++i) {
    gen::Rng rng(gen::case_seed(2, "ump", i));
    std::set<std::string> x, y, z;
    StrMap f, g;
    for (int k = 0; k < 3; ++k) x.insert("x" + std::to_string(k));
    for (int k = 0; k < 2; ++k) y.insert("y" + std::to_string(k));
    for (int k = 0; k < 2; ++k) {
      z.insert("z" + std::to_string(k));
      f["z" + std::to_string(k)] = "x" + std::to_string(rng() % 3);
      g["z" + std::to_string(k)] = "y" + std::to_string(rng() % 2);
    }
    const auto p = set_pushout(x, y, z, f, g);
    const std::size_t q = 3;
    // Every compatible cone (jx, jy) into {0,1,2} has exactly one factorization.
    std::size_t cones = 0;
    for (std::size_t code = 0; code < 3 * 3 * 3 * 3 * 3; ++code) {
      StrMap jx, jy;
      std::size_t c = code;
      for (const auto& a : x) jx[a] = std::to_string(c % q), c /= q;
      for (const auto& b : y) jy[b] = std::to_string(c % q), c /= q;
      bool compatible = true;
      for (const auto& zz : z) compatible = compatible && jx[f[zz]] == jy[g[zz]];
      if (!compatible) {
        CHECK_THROWS_AS(universal_map(p, jx, jy), IncompatibleCone);
        continue;
      }
      ++cones;
      const auto h = universal_map(p, jx, jy);
      std::size_t factorizations = 0;
      std::size_t total = 1;
      for (std::size_t k = 0; k < p.size(); ++k) total *= q;
      for (std::size_t hc = 0; hc < total; ++hc) {
        StrMap cand;
        std::size_t c2 = hc;
        for (const auto& name : p.names) cand[name] = std::to_string(c2 % q), c2 /= q;
        bool ok = true;
        for (const auto& a : x) ok = ok && cand[p.inj_x(a)] == jx[a];
        for (const auto& b : y) ok = ok && cand[p.inj_y(b)] == jy[b];
        if (ok) {
          ++factorizations;
          CHECK(cand == h);
        }
      }
      CHECK(factorizations == 1);
    }
    CHECK(cones > 0);
  }
}

TEST_CASE("Map(-, K) turns the pushout into a pullback") {
  auto p = set_pushout(ids({"a", "b"}), ids({"c", "d"}), ids({"z"}), {{"z", "a"}}, {{"z", "c"}});
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto r = check_map_pullback(p, k);
    CHECK(r.bijective);
    CHECK(r.maps == r.pairs);
  }
}

TEST_CASE("theorem preconditions") {
  auto empty = graph({});
  auto flags = check_theorem_preconditions(hom(empty, test::loop(), {}), hom(empty, test::single_edge(), {}));
  CHECK(flags.vertex_injectivity);
  CHECK(flags.one_color);
  CHECK(flags.one_sided_injectivity);
  CHECK(flags.p1);
  CHECK(flags.p2);

  auto base = graph({"b"});
  auto l1 = graph({"u"}, {{"l1", "u", "u"}});
  auto l2 = graph({"u"}, {{"l2", "u", "u"}});
  flags = check_theorem_preconditions(hom(base, l1, {{"b", "u"}}), hom(base, l2, {{"b", "u"}}));
  CHECK_FALSE(flags.one_color);
  CHECK(flags.p2);
}

TEST_CASE("path_pushout_compare") {
  auto g = test::loop();
  auto id = GraphHom::identity(g);
  CHECK(path_pushout_compare(id, id, 4).bijective);

  auto base = graph({"b"});
  auto l1 = graph({"u"}, {{"l1", "u", "u"}});
  auto l2 = graph({"u"}, {{"l2", "u", "u"}});
  const auto r = path_pushout_compare(hom(base, l1, {{"b", "u"}}), hom(base, l2, {{"b", "u"}}), 2);
  CHECK(r.injective);
  CHECK_FALSE(r.surjective);
  CHECK_FALSE(r.witnesses.empty());
}

TEST_CASE("one-colour does not give surjectivity when a shared edge bridges both sides") {
  // G = (x -e-> y), E adds y -> z, F adds w -> x. Every composable pair of
  // pushout edges lifts to one side, yet w -> x -> y -> z lifts to neither.
  auto g = graph({"x", "y"}, {{"e", "x", "y"}});
  auto e = graph({"x", "y", "z"}, {{"e", "x", "y"}, {"a", "y", "z"}});
  auto f = graph({"w", "x", "y"}, {{"b", "w", "x"}, {"e", "x", "y"}});
  auto fe = GraphHom::inclusion(g, e);
  auto ff = GraphHom::inclusion(g, f);
  const auto flags = check_theorem_preconditions(fe, ff);
  CHECK(flags.vertex_injectivity);
  CHECK(flags.one_color);
  const auto r = path_pushout_compare(fe, ff, 4);
  CHECK(r.injective);
  CHECK_FALSE(r.surjective);
  CHECK(path_pushout_compare(fe, ff, 2).bijective);
}

TEST_CASE("check_break_arrow on an admissible span") {
  for (int i = 0; i < 20; ++i) {
    gen::Rng rng(gen::case_seed(4, "break", i));
    auto s = gen::admissible_span(rng);
    if (!s) continue;
    const auto p = graph_pushout(s->first, s->second);
    CHECK(check_break_arrow(s->first, p).holds());
  }
}

TEST_CASE("admissible_union") {
  auto f = graph({"a", "b"}, {{"e", "a", "b"}});
  auto g = graph({"b", "c"}, {{"d", "c", "b"}});
  const auto u = admissible_union(f, g);
  CHECK(u.graph->vertices().size() == 3);
  CHECK(*u.intersection == *graph({"b"}));
  CHECK(u.cap_f.admissible == false);

  auto clash = graph({"a", "b"}, {{"e", "b", "a"}});
  CHECK_THROWS_AS(admissible_union(f, clash), IncompatibleOverlap);
}
