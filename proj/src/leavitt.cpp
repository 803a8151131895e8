#include "qp/leavitt.hpp"

#include <algorithm>
#include <sstream>

namespace qp {

namespace {

Path append(const Path& p, const std::vector<EdgeId>& tail) {
  if (tail.empty()) return p;
  std::vector<EdgeId> es = p.edges();
  es.insert(es.end(), tail.begin(), tail.end());
  return Path::of(std::move(es));
}

Path drop_last(const Graph& g, const Path& p) {
  if (p.length() == 1) return Path::at(g.src(p.edges().front()));
  return Path::of(std::vector<EdgeId>(p.edges().begin(), p.edges().end() - 1));
}

bool is_prefix(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

std::string LMonomial::to_string() const {
  if (alpha.is_vertex() && beta.is_vertex()) return alpha.vertex();
  std::string out;
  for (const auto& e : alpha.edges()) out += (out.empty() ? "" : ".") + e;
  for (auto it = beta.edges().rbegin(); it != beta.edges().rend(); ++it) {
    out += (out.empty() ? "" : ".") + *it + kGhostSuffix;
  }
  return out;
}

std::optional<EdgeId> special_edge(const Graph& g, const VertexId& v) {
  if (!g.is_regular(v)) return std::nullopt;
  return g.out_edges(v).front();
}

bool is_normal(const Graph& g, const LMonomial& m) {
  if (m.alpha.is_vertex() || m.beta.is_vertex()) return true;
  const EdgeId& a = m.alpha.edges().back();
  if (a != m.beta.edges().back()) return true;
  return special_edge(g, g.src(a)) != a;
}

std::optional<LMonomial> cancel_product(const Graph& g, const LMonomial& a, const LMonomial& b) {
  if (path_source(g, a.beta) != path_source(g, b.alpha)) return std::nullopt;
  const auto& bs = a.beta.edges();
  const auto& gs = b.alpha.edges();
  if (is_prefix(bs, gs)) {
    std::vector<EdgeId> rest(gs.begin() + static_cast<std::ptrdiff_t>(bs.size()), gs.end());
    return LMonomial{append(a.alpha, rest), b.beta};
  }
  if (is_prefix(gs, bs)) {
    std::vector<EdgeId> rest(bs.begin() + static_cast<std::ptrdiff_t>(gs.size()), bs.end());
    return LMonomial{a.alpha, append(b.beta, rest)};
  }
  return std::nullopt;
}

std::vector<std::pair<LMonomial, int>> reduce_monomial(const Graph& g, const LMonomial& m) {
  std::vector<std::pair<LMonomial, int>> out;
  LMonomial cur = m;
  int sign = 1;
  while (!is_normal(g, cur)) {
    const EdgeId special = cur.alpha.edges().back();
    const VertexId v = g.src(special);
    LMonomial shorter{drop_last(g, cur.alpha), drop_last(g, cur.beta)};
    for (const auto& e : g.out_edges(v)) {
      if (e == special) continue;
      out.emplace_back(LMonomial{append(shorter.alpha, {e}), append(shorter.beta, {e})}, -sign);
    }
    cur = shorter;
  }
  out.emplace_back(cur, sign);
  return out;
}

std::vector<LMonomial> reduced_monomials(const Graph& g, std::size_t max_total) {
  std::map<VertexId, std::vector<Path>> by_target;
  for (const auto& p : paths_up_to(g, max_total)) by_target[path_target(g, p)].push_back(p);
  std::vector<LMonomial> out;
  for (const auto& [v, paths] : by_target) {
    for (const auto& a : paths) {
      for (const auto& b : paths) {
        if (a.length() + b.length() <= max_total) out.push_back(LMonomial{a, b});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LMonomial> normal_basis(const Graph& g, std::size_t max_total) {
  auto all = reduced_monomials(g, max_total);
  std::vector<LMonomial> out;
  std::copy_if(all.begin(), all.end(), std::back_inserter(out), [&](const LMonomial& m) { return is_normal(g, m); });
  return out;
}

std::pair<VertexId, VertexId> letter_ends(const Graph& g, const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::Vertex:
      if (!g.has_vertex(l.id)) throw std::invalid_argument("unknown vertex '" + l.id + "'");
      return {l.id, l.id};
    case Letter::Kind::Edge:
    case Letter::Kind::Ghost: {
      if (!g.has_edge(l.id)) throw std::invalid_argument("unknown edge '" + l.id + "'");
      const auto& ends = g.edges().at(l.id);
      if (l.kind == Letter::Kind::Edge) return {ends.src, ends.tgt};
      return {ends.tgt, ends.src};
    }
  }
  throw std::logic_error("unreachable");
}

void check_word(const Graph& g, const std::vector<Letter>& word) {
  if (word.empty()) throw std::invalid_argument("empty word");
  VertexId at = letter_ends(g, word.front()).second;
  for (std::size_t i = 1; i < word.size(); ++i) {
    const auto [s, t] = letter_ends(g, word[i]);
    if (s != at) {
      throw std::invalid_argument("word is not a path: letter " + std::to_string(i + 1) + " starts at '" + s +
                                  "', previous ends at '" + at + "'");
    }
    at = t;
  }
}

std::vector<Letter> parse_word(const Graph& g, const std::string& text) {
  std::vector<Letter> word;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, '.')) {
    if (tok.empty()) throw std::invalid_argument("empty letter in '" + text + "'");
    Letter l;
    if (tok.size() > 1 && tok.back() == '*') {
      l.kind = Letter::Kind::Ghost;
      l.id = tok.substr(0, tok.size() - 1);
    } else if (g.has_vertex(tok)) {
      l.kind = Letter::Kind::Vertex;
      l.id = tok;
    } else {
      l.kind = Letter::Kind::Edge;
      l.id = tok;
    }
    word.push_back(std::move(l));
  }
  if (word.empty()) throw std::invalid_argument("empty word");
  check_word(g, word);
  return word;
}

KernelPresentation graded_ideal_generators(const Graph& g, const VertexSet& h) {
  if (!is_hereditary(g, h).hereditary) throw PreconditionError("hereditary", "vertex set is not hereditary");
  if (!is_saturated(g, h)) throw PreconditionError("saturated", "vertex set is not saturated");
  KernelPresentation k;
  k.vertex_gens = h;
  for (const auto& w : breaking_vertices(g, h)) k.breaking_gens.emplace_back(w, edges_leaving_into_complement(g, w, h));
  return k;
}

}  // namespace qp
