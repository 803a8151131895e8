#include <doctest.h>

#include "qp/proptest.hpp"
#include "support.hpp"

using namespace qp;
using qp::test::graph;

TEST_CASE("Diagram shares graph slots and rebuilds homs") {
  auto g = test::single_edge();
  auto id = GraphHom::identity(g);
  const auto d = prop::Diagram::of({id, id});
  CHECK(d.graphs.size() == 1);
  CHECK(d.arrows.size() == 2);
  CHECK(d.hom(1) == id);
  CHECK(d.valid());
  CHECK(d.to_json()["homs"].size() == 2);
}

TEST_CASE("minimize deletes down to a smallest witness") {
  auto g = graph({"a", "b", "c", "d"}, {{"x", "a", "b"}, {"y", "b", "c"}, {"l", "d", "d"}});
  const auto d = prop::Diagram::of_graphs({g});
  // Keep while some loop survives.
  auto has_loop = [](const prop::Diagram& dd) {
    for (const auto& [e, ends] : dd.graphs[0]->edges()) {
      if (ends.src == ends.tgt) return true;
    }
    return false;
  };
  const auto m = prop::minimize(d, has_loop);
  CHECK(m.graphs[0]->vertices() == VertexSet{"d"});
  CHECK(m.graphs[0]->edges().size() == 1);
}

TEST_CASE("suites are registered") {
  for (const char* name : {"composition", "admissible-equiv", "captocup", "admpush", "h-bijective", "pa-hom", "lk-hom",
                           "kerver", "breakarrow"}) {
    CHECK(prop::find_suite(name) != nullptr);
  }
  CHECK(prop::find_suite("nope") == nullptr);
  CHECK_THROWS_AS(prop::run_suite("nope", 0, 1), std::invalid_argument);
}

TEST_CASE("run_suite is deterministic and passes on the sound suites") {
  for (const char* name : {"composition", "admissible-equiv", "captocup", "pa-hom", "lk-hom", "kerver", "breakarrow"}) {
    CAPTURE(name);
    const auto a = prop::run_suite(name, 7, 30);
    const auto b = prop::run_suite(name, 7, 30);
    CHECK(a.ok());
    CHECK(a.passed + a.skipped == 30);
    CHECK(prop::format_report(a) == prop::format_report(b));
  }
  CHECK(prop::run_suite("admpush", 1, 0).ok());
}
