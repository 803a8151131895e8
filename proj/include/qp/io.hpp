#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qp/graph.hpp"
#include "qp/leavitt.hpp"
#include "qp/morphism.hpp"
#include "qp/path_algebra.hpp"
#include "qp/pushout.hpp"
#include "qp/scalar.hpp"

namespace qp::io {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "qp 0.1.0";

/// Malformed input text. line/column are 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input describing an invalid graph or hom.
class InvalidInput : public std::runtime_error {
 public:
  InvalidInput(const std::string& what, std::vector<std::string> violations)
      : std::runtime_error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

std::string read_file(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& source);

Json to_json(const Graph& g);
Json to_json(const GraphHom& h);
/// Graph, class membership lists and both injections.
Json to_json(const PushoutGraph& p);

Graph graph_from_json(const Json& j, const std::string& source);
/// Throws InvalidInput when the graph fails validate_graph.
GraphPtr checked_graph(const Json& j, const std::string& source);

GraphPtr load_graph(const std::filesystem::path& path);
/// "domain"/"codomain" are inline graph objects or paths relative to the hom file.
/// Throws InvalidInput when validate_hom fails.
GraphHom load_hom(const std::filesystem::path& path);
GraphHom hom_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& source);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest(const std::string& bytes);

/// One term of an element literal: coefficient num/den times chi[word].
struct LiteralTerm {
  BigInt num;
  BigInt den;
  std::string word;
};

/// Parses "3/2*chi[e1.e2] - chi[v] + chi[e*]". Throws ParseError with the column.
std::vector<LiteralTerm> parse_literal(const std::string& text);

template <typename Scalar>
PathElement<Scalar> path_element(const GraphPtr& g, const std::vector<LiteralTerm>& terms) {
  PathElement<Scalar> out(g);
  for (const auto& t : terms) {
    const auto word = parse_word(*g, t.word);
    std::vector<EdgeId> edges;
    for (const auto& l : word) {
      if (l.kind == Letter::Kind::Ghost) throw std::invalid_argument("ghost edge in path algebra literal '" + t.word + "'");
      if (l.kind == Letter::Kind::Edge) edges.push_back(l.id);
    }
    if (!edges.empty() && edges.size() != word.size()) {
      throw std::invalid_argument("'" + t.word + "' mixes vertices and edges");
    }
    const Path p = edges.empty() ? Path::at(word.front().id) : Path::of(edges);
    out += PathElement<Scalar>::basis(g, p, ScalarTraits<Scalar>::make(t.num, t.den));
  }
  return out;
}

template <typename Scalar>
LElement<Scalar> leavitt_element(const GraphPtr& g, const std::vector<LiteralTerm>& terms) {
  LElement<Scalar> out(g);
  for (const auto& t : terms) out += normal_form<Scalar>(g, parse_word(*g, t.word), ScalarTraits<Scalar>::make(t.num, t.den));
  return out;
}

/// Verdicts and witnesses for one run, serialized deterministically.
class Certificate {
 public:
  Certificate(std::string command, std::vector<std::string> args);

  void add_input(const std::string& name, const std::string& bytes);
  void set(const std::string& key, Json value);
  void add_check(const std::string& name, bool pass, const std::vector<std::string>& witnesses = {},
                 Json details = Json::object());

  bool passed() const;
  const Json& json() const noexcept { return root_; }
  std::string str() const { return dump(root_); }

 private:
  Json root_;
};

}  // namespace qp::io
