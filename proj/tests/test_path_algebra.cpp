#include <doctest.h>

#include "qp/generators.hpp"
#include "qp/path_algebra.hpp"
#include "support.hpp"

using namespace qp;
using qp::test::graph;
using qp::test::hom;
using E = PathElement<Rational>;

namespace {

// dim { (a, b) : f*(a) = g*(b) } in one degree, from the nullspace of [f* | -g*].
std::size_t fibre_dim(const GraphHom& f, const GraphHom& g, std::size_t d) {
  const auto pe = paths_of_length(f.codomain(), d);
  const auto pf = paths_of_length(g.codomain(), d);
  const auto pg = paths_of_length(f.domain(), d);
  const auto fs = pullback_matrix<Rational>(f, pg, pe);
  const auto gs = pullback_matrix<Rational>(g, pg, pf);
  if (pg.empty()) return pe.size() + pf.size();
  Matrix<Rational> m(fs.rows(), fs.cols() + gs.cols());
  m << fs, Matrix<Rational>(-gs);
  return static_cast<std::size_t>(nullspace<Rational>(m).cols());
}

}  // namespace

TEST_CASE("pa_mul") {
  auto g = graph({"a", "b", "c"}, {{"e", "a", "b"}, {"f", "b", "c"}});
  auto e = E::basis(g, Path::of({"e"}));
  auto f = E::basis(g, Path::of({"f"}));
  CHECK((e * f) == E::basis(g, Path::of({"e", "f"})));
  CHECK((f * e).is_zero());
  CHECK((E::basis(g, Path::at("a")) * e) == e);
  CHECK((e * E::basis(g, Path::at("a"))).is_zero());
  CHECK((pa_unit<Rational>(g) * (e + f)) == e + f);

  auto l = test::loop();
  auto x = E::basis(l, Path::of({"l"}));
  auto u = E::basis(l, Path::at("u"));
  CHECK((x * x) == E::basis(l, Path::of({"l", "l"})));
  CHECK(((x * x) * u) == (x * (x * u)));
}

TEST_CASE("pa_unit and to_string") {
  auto g = graph({"v"});
  CHECK(pa_unit<Rational>(g) == E::basis(g, Path::at("v")));
  auto s = test::single_edge();
  auto x = Rational(3, 2) * E::basis(s, Path::of({"e"})) - E::basis(s, Path::at("v"));
  CHECK(x.to_string() == "-chi[v] + 3/2*chi[e]");
  CHECK(E(s).to_string() == "0");
  CHECK_THROWS_AS(E(graph({"a"}, {}, {{"a", "a"}})), PreconditionError);
}

TEST_CASE("pa_pullback") {
  auto s = test::single_edge();
  auto x = E::basis(s, Path::of({"e"}));
  CHECK(pa_pullback(GraphHom::identity(s), x) == x);

  auto h = hom(graph({"a", "b"}), graph({"c"}), {{"a", "c"}, {"b", "c"}});
  CHECK(pa_pullback(h, E::basis(h.codomain_ptr(), Path::at("c"))) ==
        E::basis(h.domain_ptr(), Path::at("a")) + E::basis(h.domain_ptr(), Path::at("b")));

  auto inc = GraphHom::inclusion(graph({"w"}), s);
  CHECK(pa_pullback(inc, x).is_zero());
  CHECK(pa_pullback(inc, E::basis(s, Path::at("v"))).is_zero());
}

TEST_CASE("verify_path_pullback on a disjoint union is exact") {
  auto empty = graph({});
  auto f = hom(empty, test::single_edge(), {});
  auto g = hom(empty, graph({"p", "q", "r"}, {{"x", "p", "q"}, {"y", "q", "r"}}), {});
  const auto r = verify_path_pullback<Rational>(f, g, 3);
  CHECK(r.exact);
  CHECK(r.passed);
  std::size_t total = 0;
  for (const auto& d : r.degrees) total += d.dim_pushout;
  CHECK(total == 3 + 6);
}

TEST_CASE("gluing a sink to a source breaks one-colour and is refused") {
  auto e = test::single_edge();
  auto f = graph({"v'", "w'"}, {{"e'", "v'", "w'"}});
  auto pt = graph({"w"});
  auto fe = hom(pt, e, {{"w", "w"}});
  auto ff = hom(pt, f, {{"w", "v'"}});
  CHECK_THROWS_WITH_AS(verify_path_pullback<Rational>(fe, ff, 2), doctest::Contains("one-colour"), PreconditionError);

  // Without the guard the comparison shows why: the pushout has the path e.e', which has no preimage.
  const auto r = compare_path_pullback<Rational>(fe, ff, 2);
  std::size_t pushout = 0, fibre = 0;
  for (const auto& d : r.degrees) pushout += d.dim_pushout, fibre += d.fiber_dim;
  CHECK(pushout == 6);
  CHECK(fibre == 5);
  CHECK_FALSE(r.passed);
}

TEST_CASE("one-colour instance whose pushout has a path lifting to neither side") {
  // G = (x -e-> y), E adds y -a-> z, F adds w -b-> x. The checker accepts the
  // span, yet b.e.a spans degree 3 of k(P) while the fibre product is zero there.
  auto g = graph({"x", "y"}, {{"e", "x", "y"}});
  auto e = graph({"x", "y", "z"}, {{"e", "x", "y"}, {"a", "y", "z"}});
  auto f = graph({"w", "x", "y"}, {{"b", "w", "x"}, {"e", "x", "y"}});
  const auto r = verify_path_pullback<Rational>(GraphHom::inclusion(g, e), GraphHom::inclusion(g, f), 3);
  CHECK(r.exact);
  REQUIRE(r.degrees.size() == 4);
  CHECK(r.degrees[2].injective);
  CHECK(r.degrees[3].dim_pushout == 1);
  CHECK(r.degrees[3].fiber_dim == 0);
  CHECK_FALSE(r.degrees[3].injective);
  CHECK_FALSE(r.passed);
}

TEST_CASE("vertex collapse is refused") {
  auto two = graph({"a", "b"});
  auto one = graph({"c"});
  auto f = hom(two, one, {{"a", "c"}, {"b", "c"}});
  try {
    verify_path_pullback<Rational>(f, GraphHom::identity(two), 1);
    FAIL("expected a refusal");
  } catch (const PreconditionError& e) {
    CHECK(e.flag() == "vertex_injectivity");
  }
}

TEST_CASE("loops: graded components match up to the truncation") {
  auto base = graph({"b"}, {{"l", "b", "b"}});
  auto e = graph({"b", "c"}, {{"l", "b", "b"}, {"x", "b", "c"}});
  auto f = graph({"b", "d"}, {{"l", "b", "b"}, {"y", "b", "d"}});
  const auto r = verify_path_pullback<Rational>(GraphHom::inclusion(base, e), GraphHom::inclusion(base, f), 4);
  CHECK_FALSE(r.exact);
  CHECK(r.passed);
}

TEST_CASE("fibre dimension agrees with an independent nullspace computation") {
  for (int i = 0; i < 40; ++i) {
    gen::Rng rng(gen::case_seed(21, "fibre", i));
    auto [f, g] = gen::random_injective_span(rng, true);
    const auto r = compare_path_pullback<Rational>(f, g, 3);
    for (const auto& d : r.degrees) {
      CAPTURE(i);
      CAPTURE(d.degree);
      CHECK(d.fiber_dim == fibre_dim(f, g, d.degree));
      CHECK(d.commutes);
    }
  }
}

TEST_CASE("pullback is a unital algebra map, contravariant, over Q and F_p") {
  for (int i = 0; i < 40; ++i) {
    gen::Rng rng(gen::case_seed(8, "contra", i));
    auto c = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "c"}));
    auto b = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "b"}));
    auto a = make_graph(gen::random_graph(rng, gen::Shape{1, 4, 6, false, "a"}));
    auto g = gen::random_hom(rng, b, c);
    auto f = gen::random_hom(rng, a, b);
    if (!g || !f) continue;
    const auto gf = compose(*g, *f);
    CHECK(pa_pullback(*g, pa_unit<Rational>(c)) == pa_unit<Rational>(b));
    const auto ps = paths_up_to(*c, 2);
    for (const auto& p : ps) {
      for (const auto& q : ps) {
        const auto x = E::basis(c, p), y = E::basis(c, q);
        CHECK(pa_pullback(*g, x * y) == pa_pullback(*g, x) * pa_pullback(*g, y));
      }
      CHECK(pa_pullback(gf, E::basis(c, p)) == pa_pullback(*f, pa_pullback(*g, E::basis(c, p))));
    }
    FpModulus::Scope scope(5);
    for (const auto& p : ps) {
      const auto x = PathElement<Fp>::basis(c, p, Fp(3));
      CHECK(pa_pullback(*g, x * x) == pa_pullback(*g, x) * pa_pullback(*g, x));
    }
  }
}
