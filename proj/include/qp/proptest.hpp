#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qp/generators.hpp"
#include "qp/graph.hpp"
#include "qp/morphism.hpp"

namespace qp::prop {

/// Graphs plus homs between them, referring to graphs by index. This is the
/// unit that gets generated, checked and shrunk.
struct Diagram {
  struct Arrow {
    std::size_t dom = 0;
    std::size_t cod = 0;
    std::map<VertexId, VertexId> f0;
    std::map<EdgeId, EdgeId> f1;
  };
  std::vector<GraphPtr> graphs;
  std::vector<Arrow> arrows;

  /// Shares graph slots between homs whose graphs are the same object.
  static Diagram of(const std::vector<GraphHom>& homs);
  static Diagram of_graphs(const std::vector<GraphPtr>& graphs);

  GraphHom hom(std::size_t i) const;
  /// All homs valid.
  bool valid() const;
  std::size_t size() const;
  nlohmann::json to_json() const;
};

/// Greedy shrinking: delete single vertices (with incident edges) or edges
/// while `keep` still holds, until no deletion survives.
Diagram minimize(Diagram d, const std::function<bool(const Diagram&)>& keep);

struct Suite {
  std::string name;
  std::string description;
  std::function<std::optional<Diagram>(gen::Rng&)> generate;
  std::function<bool(const Diagram&)> hypothesis;
  /// Failure message, or nullopt when the property holds. Gets a fresh Rng
  /// seeded from the case, so probes repeat exactly while shrinking.
  std::function<std::optional<std::string>(const Diagram&, gen::Rng&)> property;
};

const std::vector<Suite>& suites();
const Suite* find_suite(const std::string& name);

struct Failure {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string message;
  Diagram original;
  Diagram minimized;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  /// Cases where no instance satisfying the hypothesis was generated.
  std::size_t skipped = 0;
  std::vector<Failure> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases);

std::string format_report(const SuiteReport& r);

}  // namespace qp::prop
