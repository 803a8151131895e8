#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qp/graph.hpp"
#include "qp/linalg.hpp"
#include "qp/morphism.hpp"
#include "qp/pushout.hpp"
#include "qp/scalar.hpp"

namespace qp {

/// The monomial alpha beta* of L(E); t(alpha) = t(beta). A vertex v is (v, v).
struct LMonomial {
  Path alpha;
  Path beta;

  int degree() const { return static_cast<int>(alpha.length()) - static_cast<int>(beta.length()); }
  std::size_t total_length() const { return alpha.length() + beta.length(); }
  /// Written as a path of the extended graph: "a1.a2.b2*.b1*", or the vertex.
  std::string to_string() const;

  bool operator==(const LMonomial&) const = default;
  std::strong_ordering operator<=>(const LMonomial& o) const {
    if (auto c = total_length() <=> o.total_length(); c != 0) return c;
    if (auto c = alpha <=> o.alpha; c != 0) return c;
    return beta <=> o.beta;
  }
};

/// Least out-edge of a regular vertex; nullopt for sinks.
std::optional<EdgeId> special_edge(const Graph& g, const VertexId& v);

bool is_normal(const Graph& g, const LMonomial& m);

/// (alpha beta*)(gamma delta*) after CK1 cancellation, before CK2 reduction.
std::optional<LMonomial> cancel_product(const Graph& g, const LMonomial& a, const LMonomial& b);

/// CK2 elimination of a reduced monomial: signed NORMAL monomials summing to it.
std::vector<std::pair<LMonomial, int>> reduce_monomial(const Graph& g, const LMonomial& m);

/// All alpha beta* with t(alpha) = t(beta) and |alpha| + |beta| <= max_total, sorted.
std::vector<LMonomial> reduced_monomials(const Graph& g, std::size_t max_total);
/// The NORMAL ones among reduced_monomials.
std::vector<LMonomial> normal_basis(const Graph& g, std::size_t max_total);

/// A letter of a word in the extended graph.
struct Letter {
  enum class Kind { Vertex, Edge, Ghost } kind = Kind::Vertex;
  std::string id;
};

/// Endpoints of a letter in the extended graph; throws std::invalid_argument for unknown ids.
std::pair<VertexId, VertexId> letter_ends(const Graph& g, const Letter& l);

/// Throws std::invalid_argument unless the word is a nonempty path of the extended graph.
void check_word(const Graph& g, const std::vector<Letter>& word);

/// Parses "e1.e2*.v"-style words; a token names a vertex when it is a vertex id
/// without a trailing '*', else an edge (ghost if starred).
std::vector<Letter> parse_word(const Graph& g, const std::string& text);

/// Element of L_k(E): finite combination of NORMAL monomials.
template <typename Scalar>
class LElement {
 public:
  using Terms = std::map<LMonomial, Scalar>;

  explicit LElement(GraphPtr graph) : graph_(std::move(graph)) {
    if (!graph_) throw std::invalid_argument("LElement: null graph");
    if (graph_->has_tails()) throw PreconditionError("tail_free", "Leavitt path algebra of a graph with omega-tails");
  }

  static LElement vertex(GraphPtr g, const VertexId& v) {
    if (!g->has_vertex(v)) throw std::invalid_argument("unknown vertex '" + v + "'");
    LElement out(std::move(g));
    out.add(LMonomial{Path::at(v), Path::at(v)}, Scalar(1));
    return out;
  }
  static LElement edge(GraphPtr g, const EdgeId& e) {
    LElement out(std::move(g));
    const auto& ends = out.graph_->edges().at(e);
    out.add(LMonomial{Path::of({e}), Path::at(ends.tgt)}, Scalar(1));
    return out;
  }
  static LElement ghost(GraphPtr g, const EdgeId& e) {
    LElement out(std::move(g));
    const auto& ends = out.graph_->edges().at(e);
    out.add(LMonomial{Path::at(ends.tgt), Path::of({e})}, Scalar(1));
    return out;
  }
  static LElement unit(GraphPtr g) {
    LElement out(std::move(g));
    for (const auto& v : out.graph_->vertices()) out.add(LMonomial{Path::at(v), Path::at(v)}, Scalar(1));
    return out;
  }

  const GraphPtr& graph() const noexcept { return graph_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(const LMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  /// Adds c * alpha beta*, reducing to NORMAL form.
  void add(const LMonomial& m, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c)) return;
    if (path_target(*graph_, m.alpha) != path_target(*graph_, m.beta)) {
      throw std::invalid_argument("monomial " + m.to_string() + ": t(alpha) != t(beta)");
    }
    for (const auto& [n, sign] : reduce_monomial(*graph_, m)) add_normal(n, sign > 0 ? c : Scalar(-c));
  }

  LElement& operator+=(const LElement& o) {
    require_same_graph(o);
    for (const auto& [m, c] : o.terms_) add_normal(m, c);
    return *this;
  }
  LElement& operator-=(const LElement& o) {
    require_same_graph(o);
    for (const auto& [m, c] : o.terms_) add_normal(m, -c);
    return *this;
  }
  friend LElement operator+(LElement a, const LElement& b) { return a += b; }
  friend LElement operator-(LElement a, const LElement& b) { return a -= b; }
  friend LElement operator*(const Scalar& s, const LElement& a) {
    LElement out(a.graph_);
    for (const auto& [m, c] : a.terms_) out.add_normal(m, s * c);
    return out;
  }
  friend bool operator==(const LElement& a, const LElement& b) {
    return *a.graph_ == *b.graph_ && a.terms_ == b.terms_;
  }

  void require_same_graph(const LElement& o) const {
    if (graph_ != o.graph_ && !(*graph_ == *o.graph_)) {
      throw std::invalid_argument("Leavitt elements over different graphs");
    }
  }

  /// Homogeneous of the given degree (zero is homogeneous of every degree).
  bool homogeneous(int degree) const {
    for (const auto& [m, c] : terms_) {
      if (m.degree() != degree) return false;
    }
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string coeff = ScalarTraits<Scalar>::to_string(c);
      bool negative = !coeff.empty() && coeff.front() == '-';
      if (negative) coeff.erase(0, 1);
      out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      if (coeff != "1") out += coeff + "*";
      out += "chi[" + m.to_string() + "]";
      first = false;
    }
    return out;
  }

 private:
  void add_normal(const LMonomial& m, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (ScalarTraits<Scalar>::is_zero(it->second)) terms_.erase(it);
  }

  GraphPtr graph_;
  Terms terms_;
};

template <typename Scalar>
LElement<Scalar> l_mul(const LElement<Scalar>& a, const LElement<Scalar>& b) {
  a.require_same_graph(b);
  LElement<Scalar> out(a.graph());
  const Graph& g = *a.graph();
  for (const auto& [m, c] : a.terms()) {
    for (const auto& [n, d] : b.terms()) {
      if (auto p = cancel_product(g, m, n)) out.add(*p, c * d);
    }
  }
  return out;
}

template <typename Scalar>
LElement<Scalar> operator*(const LElement<Scalar>& a, const LElement<Scalar>& b) {
  return l_mul(a, b);
}

/// Product of the letters of a path in the extended graph, times coeff.
template <typename Scalar>
LElement<Scalar> normal_form(GraphPtr g, const std::vector<Letter>& word, const Scalar& coeff = Scalar(1)) {
  check_word(*g, word);
  auto generator = [&](const Letter& l) {
    switch (l.kind) {
      case Letter::Kind::Vertex: return LElement<Scalar>::vertex(g, l.id);
      case Letter::Kind::Edge: return LElement<Scalar>::edge(g, l.id);
      case Letter::Kind::Ghost: return LElement<Scalar>::ghost(g, l.id);
    }
    throw std::logic_error("unreachable");
  };
  LElement<Scalar> out = generator(word.front());
  for (std::size_t i = 1; i < word.size(); ++i) out = l_mul(out, generator(word[i]));
  return coeff * out;
}

/// v - sum_{s(e) = v} e e*, computed without CK2 reduction (zero in L(E) for regular v).
template <typename Scalar>
std::vector<std::pair<LMonomial, Scalar>> ck2_relation(const Graph& g, const Path& alpha, const Path& beta) {
  std::vector<std::pair<LMonomial, Scalar>> rel;
  rel.emplace_back(LMonomial{alpha, beta}, Scalar(1));
  const VertexId v = path_target(g, alpha);
  for (const auto& e : g.out_edges(v)) {
    auto a = concat(g, alpha, Path::of({e}));
    auto b = concat(g, beta, Path::of({e}));
    rel.emplace_back(LMonomial{*a, *b}, Scalar(-1));
  }
  return rel;
}

/// dim L(E) for an acyclic graph, computed without the CK2 rewriting: the
/// CK1-reduced monomials span, and the CK2 ideal is spanned by
/// alpha (v - sum e e*) beta* over regular v = t(alpha) = t(beta).
template <typename Scalar>
std::size_t leavitt_dimension_oracle(const Graph& g) {
  auto longest = longest_path_length(g);
  if (!longest) throw PreconditionError("acyclic", "dimension oracle needs an acyclic graph");
  const auto monomials = reduced_monomials(g, 2 * *longest);
  std::map<LMonomial, Eigen::Index> index;
  for (const auto& m : monomials) index.emplace(m, static_cast<Eigen::Index>(index.size()));
  std::vector<std::vector<std::pair<LMonomial, Scalar>>> relations;
  for (const auto& m : monomials) {
    const VertexId v = path_target(g, m.alpha);
    if (g.is_regular(v)) relations.push_back(ck2_relation<Scalar>(g, m.alpha, m.beta));
  }
  auto mat = zeros<Scalar>(static_cast<Eigen::Index>(relations.size()), static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t r = 0; r < relations.size(); ++r) {
    for (const auto& [m, c] : relations[r]) mat(static_cast<Eigen::Index>(r), index.at(m)) += c;
  }
  return monomials.size() - static_cast<std::size_t>(rank<Scalar>(mat));
}

struct DescentReport {
  std::size_t edge_pairs = 0;
  std::size_t regular_vertices = 0;
  std::vector<std::string> failures;
  bool ok() const noexcept { return failures.empty(); }
};

/// The algebra map L(F) -> L(E) induced by a CRTBPOG hom E -> F.
///
/// The descent identities (CK1 on every edge pair, CK2 at every regular
/// vertex of F, both after pulling back) are checked at construction;
/// applying a map whose descent failed throws std::logic_error.
template <typename Scalar>
class LeavittPullback {
 public:
  explicit LeavittPullback(GraphHom h) : h_(std::move(h)) {
    if (h_.domain().has_tails() || h_.codomain().has_tails()) {
      throw PreconditionError("tail_free", "Leavitt pullback needs tail-free graphs");
    }
    const auto cls = classify_hom(h_);
    if (cls.category != Category::CRTBPOG) {
      throw PreconditionError("CRTBPOG", "hom is " + to_string(cls.category) + ", not CRTBPOG");
    }
    verify_descent();
  }

  const GraphHom& hom() const noexcept { return h_; }
  const DescentReport& descent() const noexcept { return descent_; }

  LElement<Scalar> operator()(const LElement<Scalar>& a) const {
    if (!descent_.ok()) throw std::logic_error("descent failed: " + descent_.failures.front());
    return apply_raw(a);
  }

 private:
  LElement<Scalar> pull_monomial(const LMonomial& m, const Scalar& c) const {
    LElement<Scalar> out(h_.domain_ptr());
    const Graph& e = h_.domain();
    const auto alphas = path_preimage(h_, m.alpha);
    const auto betas = path_preimage(h_, m.beta);
    for (const auto& a : alphas) {
      const VertexId ta = path_target(e, a);
      for (const auto& b : betas) {
        if (path_target(e, b) == ta) out.add(LMonomial{a, b}, c);
      }
    }
    return out;
  }

  LElement<Scalar> apply_raw(const LElement<Scalar>& a) const {
    if (!(*a.graph() == h_.codomain())) throw std::invalid_argument("l_pullback: element is not over the codomain");
    LElement<Scalar> out(h_.domain_ptr());
    for (const auto& [m, c] : a.terms()) out += pull_monomial(m, c);
    return out;
  }

  void verify_descent() {
    const GraphPtr& f = h_.codomain_ptr();
    using L = LElement<Scalar>;
    std::map<EdgeId, L> edge_img, ghost_img;
    for (const auto& [x, ends] : f->edges()) {
      edge_img.emplace(x, apply_raw(L::edge(f, x)));
      ghost_img.emplace(x, apply_raw(L::ghost(f, x)));
    }
    for (const auto& [x, xe] : f->edges()) {
      const L target = apply_raw(L::vertex(f, xe.tgt));
      for (const auto& [y, ye] : f->edges()) {
        ++descent_.edge_pairs;
        const L lhs = l_mul(ghost_img.at(x), edge_img.at(y));
        const L rhs = x == y ? target : L(h_.domain_ptr());
        if (!(lhs == rhs)) descent_.failures.push_back("CK1 descent fails on (" + x + "*, " + y + ")");
      }
    }
    for (const auto& w : f->vertices()) {
      if (!f->is_regular(w)) continue;
      ++descent_.regular_vertices;
      L sum(h_.domain_ptr());
      for (const auto& x : f->out_edges(w)) sum += l_mul(edge_img.at(x), ghost_img.at(x));
      if (!(apply_raw(L::vertex(f, w)) == sum)) {
        descent_.failures.push_back("CK2 descent fails at regular vertex '" + w + "'");
      }
    }
  }

  GraphHom h_;
  DescentReport descent_;
};

template <typename Scalar>
LElement<Scalar> l_pullback(const GraphHom& h, const LElement<Scalar>& a) {
  return LeavittPullback<Scalar>(h)(a);
}

/// Generators of a graded ideal: [v] for v in H, and
/// [w] - sum e e* over edges from w into the complement, for w in B_H.
struct KernelPresentation {
  VertexSet vertex_gens;
  std::vector<std::pair<VertexId, EdgeSet>> breaking_gens;
  bool operator==(const KernelPresentation&) const = default;
};

/// Throws PreconditionError ("hereditary" / "saturated") unless H qualifies.
/// Tailed graphs are accepted: the presentation is purely combinatorial.
KernelPresentation graded_ideal_generators(const Graph& g, const VertexSet& h);

/// Vertices v of the codomain where "pullback of [v] is zero" disagrees with
/// "v lies outside the vertex image".
template <typename Scalar>
std::vector<std::string> kernel_vertex_mismatches(const LeavittPullback<Scalar>& pb) {
  std::vector<std::string> out;
  const auto image = pb.hom().vertex_image();
  for (const auto& v : pb.hom().codomain().vertices()) {
    const bool killed = pb(LElement<Scalar>::vertex(pb.hom().codomain_ptr(), v)).is_zero();
    const bool outside = image.count(v) == 0;
    if (killed != outside) {
      out.push_back("vertex '" + v + "': pullback " + (killed ? "is" : "is not") + " zero but vertex is " +
                    (outside ? "outside" : "inside") + " the image");
    }
  }
  return out;
}

/// Generators of ker f* for a CRTBPOG hom f: G -> E, with the vertex criterion
/// checked on every vertex of E (std::logic_error if it fails).
template <typename Scalar = Rational>
KernelPresentation ker_generators(const GraphHom& h) {
  LeavittPullback<Scalar> pb(h);
  VertexSet outside;
  const auto image = h.vertex_image();
  for (const auto& v : h.codomain().vertices()) {
    if (!image.count(v)) outside.insert(v);
  }
  KernelPresentation k = graded_ideal_generators(h.codomain(), outside);
  const auto mismatches = kernel_vertex_mismatches(pb);
  if (!mismatches.empty()) throw std::logic_error("kernel check: " + mismatches.front());
  return k;
}

struct LeavittWindow {
  int degree = 0;
  std::size_t dim_pushout = 0;
  std::size_t dim_e = 0;
  std::size_t dim_f = 0;
  std::size_t image_dim = 0;
  std::size_t fiber_dim = 0;
  bool commutes = false;
  bool injective = false;
  bool consistent = false;
};

struct LeavittPullbackReport {
  TheoremFlags preconditions;
  std::size_t max_window = 0;
  bool iotas_admissible = false;
  bool kernel_intersection = false;
  std::size_t surjectivity_generators = 0;
  bool surjectivity = false;
  std::size_t kernel_generators = 0;
  bool kernel_correspondence = false;
  BreakArrowReport break_arrow;
  std::vector<LeavittWindow> windows;
  /// Pulled-back window monomials whose normal form left the window.
  std::size_t excluded = 0;
  bool rank_consistent = false;
  std::vector<std::string> witnesses;
  bool passed = false;
};

namespace detail {

inline std::vector<LMonomial> window_of(const std::vector<LMonomial>& basis, int degree) {
  std::vector<LMonomial> out;
  for (const auto& m : basis) {
    if (m.degree() == degree) out.push_back(m);
  }
  return out;
}

/// Image of each column under pb, as a matrix over row monomials collected on the fly.
template <typename Scalar>
Matrix<Scalar> image_matrix(const LeavittPullback<Scalar>& pb, const std::vector<LMonomial>& cols,
                            std::map<LMonomial, Eigen::Index>& rows, std::size_t max_total,
                            std::size_t& excluded) {
  std::vector<std::vector<std::pair<LMonomial, Scalar>>> images;
  for (const auto& m : cols) {
    LElement<Scalar> x(pb.hom().codomain_ptr());
    x.add(m, Scalar(1));
    const auto y = pb(x);
    std::vector<std::pair<LMonomial, Scalar>> terms(y.terms().begin(), y.terms().end());
    for (const auto& [n, c] : terms) {
      if (n.total_length() > max_total) ++excluded;
      rows.emplace(n, static_cast<Eigen::Index>(rows.size()));
    }
    images.push_back(std::move(terms));
  }
  auto mat = zeros<Scalar>(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < images.size(); ++j) {
    for (const auto& [n, c] : images[j]) mat(rows.at(n), static_cast<Eigen::Index>(j)) = c;
  }
  return mat;
}

template <typename Scalar>
Matrix<Scalar> pad_rows(const Matrix<Scalar>& m, Eigen::Index rows) {
  auto out = zeros<Scalar>(rows, m.cols());
  out.topRows(m.rows()) = m;
  return out;
}

}  // namespace detail

/// Checks L(E ⊔_G F) = L(E) x_L(G) L(F) for f: G -> E, g: G -> F.
///
/// Refuses (PreconditionError naming the flag) unless all graphs are
/// tail-free, both legs are CRTBPOG, and P1, P2 hold. The symbolic checks
/// are: (1) P0 is covered by the two vertex images; (2) every generator of
/// L(G) and of L(F) is the pullback of a generator along f and iota_F;
/// (3) each vertex generator v of ker f* lifts to [iota_E(v)] in ker iota_F*
/// with iota_E*([iota_E(v)]) = [v]. Then a rank cross-check on the spans of
/// NORMAL monomials with |alpha| + |beta| <= max_window, one degree at a time.
template <typename Scalar>
LeavittPullbackReport verify_leavitt_pullback(const GraphHom& f, const GraphHom& g, std::size_t max_window) {
  using L = LElement<Scalar>;
  for (const GraphHom* h : {&f, &g}) {
    if (h->domain().has_tails() || h->codomain().has_tails()) {
      throw PreconditionError("tail_free", "Leavitt pullback theorem needs tail-free graphs");
    }
  }
  if (!(f.domain() == g.domain())) throw PreconditionError("shared_domain", "legs must share their domain");
  if (classify_hom(f).category != Category::CRTBPOG) throw PreconditionError("CRTBPOG", "f is not CRTBPOG");
  if (classify_hom(g).category != Category::CRTBPOG) throw PreconditionError("CRTBPOG", "g is not CRTBPOG");

  LeavittPullbackReport r;
  r.max_window = max_window;
  const PushoutGraph p = graph_pushout(f, g);
  r.preconditions = check_theorem_preconditions(f, g, p);
  if (!r.preconditions.p1) throw PreconditionError("P1", "f is not injective");
  if (!r.preconditions.p2) throw PreconditionError("P2", "breaking-vertex condition fails");

  const auto ce = classify_hom(p.iota_e);
  const auto cf = classify_hom(p.iota_f);
  r.iotas_admissible = ce.category == Category::CRTBPOG && cf.category == Category::CRTBPOG;
  if (!r.iotas_admissible) {
    if (ce.category != Category::CRTBPOG) r.witnesses.push_back("iota_E is " + to_string(ce.category));
    if (cf.category != Category::CRTBPOG) r.witnesses.push_back("iota_F is " + to_string(cf.category));
    return r;
  }
  const LeavittPullback<Scalar> pf(f), pg(g), pie(p.iota_e), pif(p.iota_f);
  for (const auto* pb : {&pf, &pg, &pie, &pif}) {
    for (const auto& w : pb->descent().failures) r.witnesses.push_back(w);
  }
  if (!r.witnesses.empty()) return r;

  // (1)
  r.kernel_intersection = true;
  const auto img_e = p.iota_e.vertex_image();
  const auto img_f = p.iota_f.vertex_image();
  for (const auto& v : p.graph->vertices()) {
    if (!img_e.count(v) && !img_f.count(v)) {
      r.kernel_intersection = false;
      r.witnesses.push_back("(1) vertex '" + v + "' of the pushout is in neither image");
    }
  }

  // (2)
  r.surjectivity = true;
  auto lift = [&](const LeavittPullback<Scalar>& pb, const std::string& name) {
    const GraphHom& h = pb.hom();
    const GraphPtr& dom = h.domain_ptr();
    const GraphPtr& cod = h.codomain_ptr();
    auto check = [&](const L& want, const L& from, const std::string& what) {
      ++r.surjectivity_generators;
      if (!(pb(from) == want)) {
        r.surjectivity = false;
        r.witnesses.push_back("(2) " + name + "* does not lift " + what);
      }
    };
    for (const auto& v : h.domain().vertices()) check(L::vertex(dom, v), L::vertex(cod, h.vertex(v)), v);
    for (const auto& [e, ends] : h.domain().edges()) {
      check(L::edge(dom, e), L::edge(cod, h.edge(e)), e);
      check(L::ghost(dom, e), L::ghost(cod, h.edge(e)), e + kGhostSuffix);
    }
  };
  lift(pf, "f");
  lift(pif, "iota_F");

  // (3)
  r.kernel_correspondence = true;
  const auto kernel = ker_generators<Scalar>(f);
  for (const auto& v : kernel.vertex_gens) {
    ++r.kernel_generators;
    const auto& q = p.iota_e.vertex(v);
    const L lifted = L::vertex(p.graph, q);
    if (!pif(lifted).is_zero()) {
      r.kernel_correspondence = false;
      r.witnesses.push_back("(3) [" + q + "] is not in ker iota_F*");
    }
    if (!(pie(lifted) == L::vertex(f.codomain_ptr(), v))) {
      r.kernel_correspondence = false;
      r.witnesses.push_back("(3) iota_E*([" + q + "]) != [" + v + "]");
    }
  }
  r.kernel_generators += kernel.breaking_gens.size();
  r.break_arrow = check_break_arrow(f, p);
  if (!r.break_arrow.holds()) {
    r.kernel_correspondence = false;
    for (const auto& w : r.break_arrow.failures) r.witnesses.push_back("(3) " + w);
  }

  // Rank cross-check. All four pullbacks respect corners: a monomial alpha beta*
  // of P with (s(alpha), s(beta)) = (u, v) only meets monomials of E, F, G whose
  // sources map to (u, v), so each degree splits into independent blocks.
  r.rank_consistent = true;
  using Corner = std::pair<VertexId, VertexId>;
  auto corner = [](const Graph& gr, const LMonomial& m, const GraphHom* into) {
    Corner c{path_source(gr, m.alpha), path_source(gr, m.beta)};
    if (into) c = {into->vertex(c.first), into->vertex(c.second)};
    return c;
  };
  const auto bp = normal_basis(*p.graph, max_window);
  const auto be = normal_basis(f.codomain(), max_window);
  const auto bf = normal_basis(g.codomain(), max_window);
  const int n = static_cast<int>(max_window);
  for (int d = -n; d <= n; ++d) {
    LeavittWindow w;
    w.degree = d;
    std::map<Corner, std::array<std::vector<LMonomial>, 3>> blocks;
    for (const auto& m : detail::window_of(bp, d)) blocks[corner(*p.graph, m, nullptr)][0].push_back(m);
    for (const auto& m : detail::window_of(be, d)) blocks[corner(f.codomain(), m, &p.iota_e)][1].push_back(m);
    for (const auto& m : detail::window_of(bf, d)) blocks[corner(g.codomain(), m, &p.iota_f)][2].push_back(m);

    w.commutes = true;
    for (const auto& [c, block] : blocks) {
      const auto& [wp, we, wf] = block;
      w.dim_pushout += wp.size();
      w.dim_e += we.size();
      w.dim_f += wf.size();

      std::map<LMonomial, Eigen::Index> rows_e, rows_f, rows_g;
      const auto iota_e = detail::image_matrix(pie, wp, rows_e, max_window, r.excluded);
      const auto iota_f = detail::image_matrix(pif, wp, rows_f, max_window, r.excluded);
      Matrix<Scalar> stacked(iota_e.rows() + iota_f.rows(), static_cast<Eigen::Index>(wp.size()));
      if (stacked.rows() > 0 && stacked.cols() > 0) stacked << iota_e, iota_f;
      w.image_dim += static_cast<std::size_t>(rank<Scalar>(stacked));

      auto f_star = detail::image_matrix(pf, we, rows_g, max_window, r.excluded);
      auto g_star = detail::image_matrix(pg, wf, rows_g, max_window, r.excluded);
      const auto total_rows = static_cast<Eigen::Index>(rows_g.size());
      f_star = detail::pad_rows<Scalar>(f_star, total_rows);
      g_star = detail::pad_rows<Scalar>(g_star, total_rows);
      Matrix<Scalar> constraint(total_rows, f_star.cols() + g_star.cols());
      if (constraint.rows() > 0 && constraint.cols() > 0) constraint << f_star, Matrix<Scalar>(-g_star);
      w.fiber_dim += we.size() + wf.size() - static_cast<std::size_t>(rank<Scalar>(constraint));

      // Every iota_E* / iota_F* image pair must satisfy f*(a) = g*(b).
      for (const auto& m : wp) {
        if (!w.commutes) break;
        L x(p.graph);
        x.add(m, Scalar(1));
        if (!(pf(pie(x)) == pg(pif(x)))) {
          w.commutes = false;
          r.witnesses.push_back("square does not commute on " + m.to_string());
        }
      }
    }
    w.injective = w.image_dim == w.dim_pushout;
    w.consistent = w.commutes && w.injective && w.fiber_dim == w.image_dim;
    if (!w.consistent) {
      r.rank_consistent = false;
      r.witnesses.push_back("degree " + std::to_string(d) + ": image dim " + std::to_string(w.image_dim) +
                            " of " + std::to_string(w.dim_pushout) + ", fibre dim " + std::to_string(w.fiber_dim));
    }
    r.windows.push_back(w);
  }

  r.passed = r.kernel_intersection && r.surjectivity && r.kernel_correspondence && r.rank_consistent;
  return r;
}

}  // namespace qp
