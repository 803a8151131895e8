#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qp/graph.hpp"
#include "qp/morphism.hpp"

namespace qp {

/// An element of X ⊔ Y: side 0 is X, side 1 is Y.
struct Tagged {
  int side = 0;
  std::string id;
  auto operator<=>(const Tagged&) const = default;
};

/// Thrown by universal_map when the cone does not commute over Z.
class IncompatibleCone : public std::invalid_argument {
 public:
  IncompatibleCone(std::string witness, const std::string& what)
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

/// Pushout of X <-f- Z -g-> Y in finite sets.
///
/// Classes are sorted by their representative, the least member with
/// X-elements before Y-elements. A class is named "<tag>:<id>" after its
/// representative, with the X or Y tag.
struct SetPushout {
  std::set<std::string> x, y, z;
  std::map<std::string, std::string> f, g;
  std::vector<std::string> names;
  std::vector<std::vector<Tagged>> members;
  std::map<std::string, std::size_t> x_class;
  std::map<std::string, std::size_t> y_class;
  std::map<std::string, std::size_t> index;

  std::size_t size() const noexcept { return names.size(); }
  const std::string& inj_x(const std::string& a) const { return names[x_class.at(a)]; }
  const std::string& inj_y(const std::string& b) const { return names[y_class.at(b)]; }
};

SetPushout set_pushout(const std::set<std::string>& x, const std::set<std::string>& y,
                       const std::set<std::string>& z, const std::map<std::string, std::string>& f,
                       const std::map<std::string, std::string>& g, const std::string& x_tag = "X",
                       const std::string& y_tag = "Y");

struct PushoutGraph {
  GraphPtr graph;
  GraphHom iota_e;
  GraphHom iota_f;
  SetPushout vertices;
  SetPushout edges;
};

/// Pushout of E <-f- G -g-> F. Class ids are prefixed "E:" / "F:".
/// Throws PreconditionError on a domain mismatch or omega-tails, and
/// std::logic_error if the induced source/target maps are not well defined.
PushoutGraph graph_pushout(const GraphHom& f, const GraphHom& g);

/// The unique h: X ⊔_Z Y -> Q with h o iota_X = jx and h o iota_Y = jy.
std::map<std::string, std::string> universal_map(const SetPushout& p, const std::map<std::string, std::string>& jx,
                                                 const std::map<std::string, std::string>& jy);

/// Graph version; jE: E -> Q and jF: F -> Q must agree over G.
GraphHom universal_map(const PushoutGraph& p, const GraphHom& f, const GraphHom& g, const GraphHom& je,
                       const GraphHom& jf);

struct TheoremFlags {
  bool vertex_injectivity = false;
  bool one_color = false;
  bool one_sided_injectivity = false;
  bool p1 = false;
  bool p2 = false;
  std::vector<std::string> witnesses;
};

TheoremFlags check_theorem_preconditions(const GraphHom& f, const GraphHom& g);
/// Same, reusing an already computed pushout of (f, g).
TheoremFlags check_theorem_preconditions(const GraphHom& f, const GraphHom& g, const PushoutGraph& p);

struct PathPushoutComparison {
  std::size_t max_length = 0;
  std::size_t classes = 0;       // |FP(E) ⊔_FP(G) FP(F)| truncated
  std::size_t target_paths = 0;  // |FP(E ⊔_G F)| truncated
  bool well_defined = false;
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  /// class name -> image path in the pushout graph
  std::map<std::string, Path> h;
  std::vector<std::string> witnesses;
};

inline constexpr std::size_t kDefaultTruncation = 4;

PathPushoutComparison path_pushout_compare(const GraphHom& f, const GraphHom& g,
                                           std::size_t max_length = kDefaultTruncation);

struct MapPullbackReport {
  std::size_t maps = 0;   // |Map(P, K)|
  std::size_t pairs = 0;  // |Map(X,K) x_{Map(Z,K)} Map(Y,K)|
  bool bijective = false;
};

/// Exhaustive check that F -> (F o iota_X, F o iota_Y) is a bijection from
/// Map(X ⊔_Z Y, K) onto the fibre product, for K = {0, ..., k-1}.
MapPullbackReport check_map_pullback(const SetPushout& p, std::size_t k);

struct BreakArrowReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
  bool holds() const noexcept { return failures.empty(); }
};

/// For every (w, p) with iota_E^{-1}(p) = {w}, compares the edges of E from w
/// into E^0 \ f(G^0) with the iota_E-preimage of the edges of P from p into
/// P^0 \ iota_F(F^0).
BreakArrowReport check_break_arrow(const GraphHom& f, const PushoutGraph& p);

struct AdmissibleUnion {
  GraphPtr intersection;
  GraphPtr graph;  // F ∪ G
  GraphHom cap_into_f;
  GraphHom cap_into_g;
  GraphHom f_into_union;
  GraphHom g_into_union;
  AdmissibilityReport cap_f;
  AdmissibilityReport cap_g;
  AdmissibilityReport cup_f;
  AdmissibilityReport cup_g;
};

/// The union as the pushout of F <- F ∩ G -> G, with all four inclusions analysed.
/// Tailed graphs are accepted here. Throws IncompatibleOverlap.
AdmissibleUnion admissible_union(const GraphPtr& f, const GraphPtr& g);

}  // namespace qp
