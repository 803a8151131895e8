#include "qp/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qp::io {

namespace {

std::string location(const std::string& source, std::size_t line, std::size_t column) {
  std::string out = source;
  if (line > 0) out += ":" + std::to_string(line) + ":" + std::to_string(column);
  return out;
}

[[noreturn]] void schema_error(const std::string& source, const std::string& what) {
  throw ParseError(source, 0, 0, what);
}

const std::string& expect_string(const Json& j, const std::string& source, const std::string& where) {
  if (!j.is_string()) schema_error(source, where + ": expected a string");
  return j.get_ref<const std::string&>();
}

const Json& member(const Json& j, const char* key, const std::string& source, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(source, where + ": missing \"" + key + "\"");
  return *it;
}

std::map<std::string, std::string> string_map(const Json& j, const std::string& source, const std::string& where) {
  if (!j.is_object()) schema_error(source, where + ": expected an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out.emplace(k, expect_string(v, source, where + "." + k));
  return out;
}

Json hom_maps(const GraphHom& h) {
  return Json{{"f0", h.f0()}, {"f1", h.f1()}};
}

Json classes(const SetPushout& s) {
  Json out = Json::object();
  for (std::size_t i = 0; i < s.size(); ++i) {
    Json members = Json::array();
    for (const auto& m : s.members[i]) members.push_back(Json::array({m.side == 0 ? "E" : "F", m.id}));
    out[s.names[i]] = members;
  }
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(location(source, line, column) + ": " + what), line_(line), column_(column) {}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix.
    if (auto pos = what.find(": "); pos != std::string::npos) what = what.substr(pos + 2);
    throw ParseError(source, line, column, what);
  }
}

Json to_json(const Graph& g) {
  Json vertices = Json::array();
  for (const auto& v : g.vertices()) vertices.push_back(v);
  Json edges = Json::array();
  for (const auto& [id, ends] : g.edges()) edges.push_back(Json{{"id", id}, {"src", ends.src}, {"tgt", ends.tgt}});
  Json tails = Json::array();
  for (const auto& [v, w] : g.omega_tails()) tails.push_back(Json::array({v, w}));
  return Json{{"vertices", vertices}, {"edges", edges}, {"omega_tails", tails}};
}

Json to_json(const GraphHom& h) {
  Json out = hom_maps(h);
  out["domain"] = to_json(h.domain());
  out["codomain"] = to_json(h.codomain());
  return out;
}

Json to_json(const PushoutGraph& p) {
  return Json{{"graph", to_json(*p.graph)},
              {"vertex_classes", classes(p.vertices)},
              {"edge_classes", classes(p.edges)},
              {"iota_E", hom_maps(p.iota_e)},
              {"iota_F", hom_maps(p.iota_f)}};
}

Graph graph_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) schema_error(source, "graph: expected an object");
  std::vector<VertexId> vertices;
  const Json& vs = member(j, "vertices", source, "graph");
  if (!vs.is_array()) schema_error(source, "graph.vertices: expected an array");
  for (const auto& v : vs) vertices.push_back(expect_string(v, source, "graph.vertices[]"));
  std::vector<EdgeSpec> edges;
  if (auto it = j.find("edges"); it != j.end()) {
    if (!it->is_array()) schema_error(source, "graph.edges: expected an array");
    for (const auto& e : *it) {
      if (!e.is_object()) schema_error(source, "graph.edges[]: expected an object");
      edges.push_back(EdgeSpec{expect_string(member(e, "id", source, "edge"), source, "edge.id"),
                               expect_string(member(e, "src", source, "edge"), source, "edge.src"),
                               expect_string(member(e, "tgt", source, "edge"), source, "edge.tgt")});
    }
  }
  std::vector<OmegaTail> tails;
  if (auto it = j.find("omega_tails"); it != j.end()) {
    if (!it->is_array()) schema_error(source, "graph.omega_tails: expected an array");
    for (const auto& t : *it) {
      if (!t.is_array() || t.size() != 2) schema_error(source, "graph.omega_tails[]: expected [v, w]");
      tails.emplace_back(expect_string(t[0], source, "omega_tail"), expect_string(t[1], source, "omega_tail"));
    }
  }
  return Graph(vertices, edges, tails);
}

GraphPtr checked_graph(const Json& j, const std::string& source) {
  auto g = make_graph(graph_from_json(j, source));
  const auto report = validate_graph(*g);
  if (!report.ok()) throw InvalidInput(source + ": invalid graph", report.violations);
  return g;
}

GraphPtr load_graph(const std::filesystem::path& path) {
  return checked_graph(parse_json(read_file(path), path.string()), path.string());
}

GraphHom hom_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& source) {
  if (!j.is_object()) schema_error(source, "hom: expected an object");
  auto side = [&](const char* key) {
    const Json& g = member(j, key, source, "hom");
    if (g.is_string()) return load_graph(base_dir / g.get<std::string>());
    return checked_graph(g, source + ":" + key);
  };
  GraphPtr dom = side("domain");
  GraphPtr cod = side("codomain");
  auto f0 = string_map(member(j, "f0", source, "hom"), source, "hom.f0");
  std::map<EdgeId, EdgeId> f1;
  if (auto it = j.find("f1"); it != j.end()) f1 = string_map(*it, source, "hom.f1");
  GraphHom h(dom, cod, std::move(f0), std::move(f1));
  const auto report = validate_hom(h);
  if (!report.ok()) throw InvalidInput(source + ": invalid homomorphism", report.violations);
  return h;
}

GraphHom load_hom(const std::filesystem::path& path) {
  return hom_from_json(parse_json(read_file(path), path.string()), path.parent_path(), path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<LiteralTerm> parse_literal(const std::string& text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& what) -> void { throw ParseError("literal", 1, i + 1, what); };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto integer = [&]() {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail("expected a number");
    return BigInt(text.substr(start, i - start));
  };

  std::vector<LiteralTerm> out;
  skip();
  if (i < text.size() && text[i] == '0' && text.find_first_not_of(" \t\n", i + 1) == std::string::npos) return out;
  bool first = true;
  while (true) {
    skip();
    if (i == text.size()) {
      if (first) fail("empty expression");
      break;
    }
    BigInt sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    LiteralTerm term{sign, 1, {}};
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      term.num *= integer();
      skip();
      if (i < text.size() && text[i] == '/') {
        ++i;
        skip();
        term.den = integer();
        if (term.den == 0) fail("zero denominator");
        skip();
      }
      if (i == text.size() || text[i] != '*') fail("expected '*' after coefficient");
      ++i;
      skip();
    }
    if (text.compare(i, 4, "chi[") != 0) fail("expected 'chi['");
    i += 4;
    const std::size_t close = text.find(']', i);
    if (close == std::string::npos) fail("unterminated 'chi['");
    term.word = text.substr(i, close - i);
    if (term.word.empty()) fail("empty path");
    i = close + 1;
    out.push_back(std::move(term));
  }
  return out;
}

Certificate::Certificate(std::string command, std::vector<std::string> args) {
  root_["command"] = std::move(command);
  root_["args"] = std::move(args);
  root_["inputs"] = Json::object();
  root_["checks"] = Json::array();
  root_["version"] = kVersion;
}

void Certificate::add_input(const std::string& name, const std::string& bytes) { root_["inputs"][name] = digest(bytes); }

void Certificate::set(const std::string& key, Json value) { root_[key] = std::move(value); }

void Certificate::add_check(const std::string& name, bool pass, const std::vector<std::string>& witnesses,
                            Json details) {
  root_["checks"].push_back(
      Json{{"name", name}, {"verdict", pass ? "pass" : "fail"}, {"witnesses", witnesses}, {"details", details}});
}

bool Certificate::passed() const {
  for (const auto& c : root_["checks"]) {
    if (c["verdict"] != "pass") return false;
  }
  return true;
}

}  // namespace qp::io
