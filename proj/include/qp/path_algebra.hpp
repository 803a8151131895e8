#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qp/graph.hpp"
#include "qp/linalg.hpp"
#include "qp/morphism.hpp"
#include "qp/pushout.hpp"
#include "qp/scalar.hpp"

namespace qp {

/// Element of the path algebra kE: a finite combination of basis paths chi_p.
template <typename Scalar>
class PathElement {
 public:
  using Terms = std::map<Path, Scalar>;

  explicit PathElement(GraphPtr graph) : graph_(std::move(graph)) {
    if (!graph_) throw std::invalid_argument("PathElement: null graph");
    if (graph_->has_tails()) throw PreconditionError("tail_free", "path algebra of a graph with omega-tails");
  }

  static PathElement basis(GraphPtr graph, const Path& p, const Scalar& coeff = Scalar(1)) {
    PathElement out(std::move(graph));
    if (!is_path_of(*out.graph_, p)) throw std::invalid_argument("'" + p.to_string() + "' is not a path");
    out.add(p, coeff);
    return out;
  }

  const GraphPtr& graph() const noexcept { return graph_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coefficient(const Path& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add(const Path& p, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c)) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (fresh) return;
    it->second += c;
    if (ScalarTraits<Scalar>::is_zero(it->second)) terms_.erase(it);
  }

  PathElement& operator+=(const PathElement& o) {
    require_same_graph(o);
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  PathElement& operator-=(const PathElement& o) {
    require_same_graph(o);
    for (const auto& [p, c] : o.terms_) add(p, -c);
    return *this;
  }
  friend PathElement operator+(PathElement a, const PathElement& b) { return a += b; }
  friend PathElement operator-(PathElement a, const PathElement& b) { return a -= b; }
  friend PathElement operator*(const Scalar& s, const PathElement& a) {
    PathElement out(a.graph_);
    for (const auto& [p, c] : a.terms_) out.add(p, s * c);
    return out;
  }
  friend bool operator==(const PathElement& a, const PathElement& b) {
    return *a.graph_ == *b.graph_ && a.terms_ == b.terms_;
  }

  void require_same_graph(const PathElement& o) const {
    if (graph_ != o.graph_ && !(*graph_ == *o.graph_)) {
      throw std::invalid_argument("path algebra elements over different graphs");
    }
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : terms_) {
      std::string coeff = ScalarTraits<Scalar>::to_string(c);
      bool negative = !coeff.empty() && coeff.front() == '-';
      if (negative) coeff.erase(0, 1);
      out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      if (coeff != "1") out += coeff + "*";
      out += "chi[" + p.to_string() + "]";
      first = false;
    }
    return out;
  }

 private:
  GraphPtr graph_;
  Terms terms_;
};

/// chi_p chi_q = chi_pq when t(p) = s(q), else 0; extended bilinearly.
template <typename Scalar>
PathElement<Scalar> pa_mul(const PathElement<Scalar>& a, const PathElement<Scalar>& b) {
  a.require_same_graph(b);
  PathElement<Scalar> out(a.graph());
  const Graph& g = *a.graph();
  for (const auto& [p, c] : a.terms()) {
    for (const auto& [q, d] : b.terms()) {
      if (auto pq = concat(g, p, q)) out.add(*pq, c * d);
    }
  }
  return out;
}

template <typename Scalar>
PathElement<Scalar> operator*(const PathElement<Scalar>& a, const PathElement<Scalar>& b) {
  return pa_mul(a, b);
}

/// Sum of all vertex idempotents.
template <typename Scalar>
PathElement<Scalar> pa_unit(GraphPtr g) {
  PathElement<Scalar> out(g);
  for (const auto& v : g->vertices()) out.add(Path::at(v), Scalar(1));
  return out;
}

/// f*: kF -> kE, chi_p -> sum of chi_q over the preimages q of p.
template <typename Scalar>
PathElement<Scalar> pa_pullback(const GraphHom& h, const PathElement<Scalar>& a) {
  if (!(*a.graph() == h.codomain())) throw std::invalid_argument("pa_pullback: element is not over the codomain");
  PathElement<Scalar> out(h.domain_ptr());
  for (const auto& [p, c] : a.terms()) {
    for (const auto& q : path_preimage(h, p)) out.add(q, c);
  }
  return out;
}

/// Matrix of f* restricted to paths of one length: column j holds f*(chi_{cols[j]})
/// in the basis rows.
template <typename Scalar>
Matrix<Scalar> pullback_matrix(const GraphHom& h, const std::vector<Path>& rows, const std::vector<Path>& cols) {
  std::map<Path, Eigen::Index> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(rows[i], static_cast<Eigen::Index>(i));
  auto m = zeros<Scalar>(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    auto image = pa_pullback(h, PathElement<Scalar>::basis(h.codomain_ptr(), cols[j]));
    for (const auto& [q, c] : image.terms()) m(row_index.at(q), static_cast<Eigen::Index>(j)) = c;
  }
  return m;
}

struct GradedComparison {
  std::size_t degree = 0;
  std::size_t dim_pushout = 0;
  std::size_t dim_e = 0;
  std::size_t dim_f = 0;
  std::size_t dim_g = 0;
  bool commutes = false;
  bool injective = false;
  std::size_t fiber_dim = 0;  // dim { (a, b) : f*(a) = g*(b) }
  bool surjective = false;    // image of k(E ⊔_G F) fills the fibre product
};

struct PathPullbackReport {
  TheoremFlags preconditions;
  std::size_t max_degree = 0;
  /// Acyclic pushout and max_degree >= its longest path: the graded check covers the whole algebra.
  bool exact = false;
  std::vector<GradedComparison> degrees;
  bool passed = false;
};

/// Graded comparison of k(E ⊔_G F) with kE x_kG kF without checking the
/// theorem's hypotheses; used to probe what fails when they do not hold.
template <typename Scalar>
PathPullbackReport compare_path_pullback(const GraphHom& f, const GraphHom& g, std::size_t max_degree) {
  PathPullbackReport report;
  report.max_degree = max_degree;
  const PushoutGraph p = graph_pushout(f, g);
  report.preconditions = check_theorem_preconditions(f, g, p);
  auto longest = longest_path_length(*p.graph);
  report.exact = longest && *longest <= max_degree;
  report.passed = true;
  for (std::size_t d = 0; d <= max_degree; ++d) {
    const auto pp = paths_of_length(*p.graph, d);
    const auto pe = paths_of_length(f.codomain(), d);
    const auto pf = paths_of_length(g.codomain(), d);
    const auto pg = paths_of_length(f.domain(), d);
    GradedComparison gc;
    gc.degree = d;
    gc.dim_pushout = pp.size();
    gc.dim_e = pe.size();
    gc.dim_f = pf.size();
    gc.dim_g = pg.size();

    const auto iota_e = pullback_matrix<Scalar>(p.iota_e, pe, pp);
    const auto iota_f = pullback_matrix<Scalar>(p.iota_f, pf, pp);
    const auto f_star = pullback_matrix<Scalar>(f, pg, pe);
    const auto g_star = pullback_matrix<Scalar>(g, pg, pf);

    gc.commutes = (f_star * iota_e) == (g_star * iota_f);

    Matrix<Scalar> stacked(iota_e.rows() + iota_f.rows(), iota_e.cols());
    stacked << iota_e, iota_f;
    const auto image_dim = static_cast<std::size_t>(rank<Scalar>(stacked));
    gc.injective = image_dim == pp.size();

    Matrix<Scalar> constraint(f_star.rows(), f_star.cols() + g_star.cols());
    constraint << f_star, Matrix<Scalar>(-g_star);
    gc.fiber_dim = pe.size() + pf.size() - static_cast<std::size_t>(rank<Scalar>(constraint));
    // The image lies in the fibre product whenever the square commutes, so equal dimensions suffice.
    gc.surjective = gc.commutes && gc.fiber_dim == image_dim;

    report.passed = report.passed && gc.commutes && gc.injective && gc.surjective;
    report.degrees.push_back(gc);
  }
  return report;
}

/// Verifies k(E ⊔_G F) = kE x_kG kF on graded components up to max_degree.
/// Refuses (PreconditionError naming the flag) unless vertex injectivity,
/// one colour and one-sided injectivity hold.
template <typename Scalar>
PathPullbackReport verify_path_pullback(const GraphHom& f, const GraphHom& g, std::size_t max_degree) {
  const auto flags = check_theorem_preconditions(f, g);
  if (!flags.vertex_injectivity) throw PreconditionError("vertex_injectivity", "f0 and g0 must be injective");
  if (!flags.one_color) throw PreconditionError("one_color", "one-colour condition fails in the pushout");
  if (!flags.one_sided_injectivity) throw PreconditionError("one_sided_injectivity", "f1 or g1 must be injective");
  return compare_path_pullback<Scalar>(f, g, max_degree);
}

}  // namespace qp
