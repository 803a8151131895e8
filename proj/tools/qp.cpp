// qp: command-line front end. Exit codes: 0 pass, 1 check failed,
// 2 parse or input error, 3 precondition refused.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qp/io.hpp"
#include "qp/leavitt.hpp"
#include "qp/path_algebra.hpp"
#include "qp/proptest.hpp"
#include "qp/pushout.hpp"

namespace {

using qp::io::Certificate;
using qp::io::Json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;
constexpr int kRefused = 3;

Json flags_json(const qp::TheoremFlags& f) {
  return Json{{"vertex_injectivity", f.vertex_injectivity}, {"one_color", f.one_color},
              {"one_sided_injectivity", f.one_sided_injectivity}, {"P1", f.p1},
              {"P2", f.p2}, {"witnesses", f.witnesses}};
}

Json classification_json(const qp::HomClassification& c) {
  return Json{{"injective", c.injective},
              {"surjective", c.surjective},
              {"proper", c.proper},
              {"target_bijective", c.target_bijective},
              {"regular", c.regular},
              {"category", qp::to_string(c.category)},
              {"witnesses", c.witnesses}};
}

Json admissibility_json(const qp::AdmissibilityReport& a) {
  return Json{{"complement_saturated", a.complement_saturated},
              {"edges_into_image", a.edges_into_image},
              {"admissible", a.admissible},
              {"strongly", a.strongly},
              {"witnesses", a.witnesses}};
}

qp::GraphHom load_input(Certificate& cert, const std::string& path) {
  cert.add_input(path, qp::io::read_file(path));
  return qp::io::load_hom(path);
}

int emit(const Certificate& cert, bool pass) {
  std::cout << cert.str();
  return pass ? kPass : kFail;
}

int cmd_classify(const std::vector<std::string>& args, const std::string& hom_path) {
  Certificate cert("classify", args);
  const auto h = load_input(cert, hom_path);
  const auto c = classify_hom(h);
  cert.set("classification", classification_json(c));
  if (h.injective()) {
    const auto a = qp::is_admissible(h);
    cert.set("admissibility", admissibility_json(a));
    cert.add_check("admissible_iff_crtbpog", a.admissible == (c.category == qp::Category::CRTBPOG));
  } else {
    cert.set("admissibility", nullptr);
  }
  return emit(cert, true);
}

int cmd_pushout(const std::vector<std::string>& args, const std::string& f_path, const std::string& g_path,
                std::size_t check_h, const std::string& out_path) {
  Certificate cert("pushout", args);
  const auto f = load_input(cert, f_path);
  const auto g = load_input(cert, g_path);
  const auto p = qp::graph_pushout(f, g);
  const auto flags = qp::check_theorem_preconditions(f, g, p);
  cert.set("preconditions", flags_json(flags));
  cert.set("pushout", {{"vertices", p.graph->vertices().size()},
                       {"edges", p.graph->edges().size()},
                       {"vertex_classes", p.vertices.size()}});
  cert.set("truncation", check_h);
  const auto cmp = qp::path_pushout_compare(f, g, check_h);
  cert.set("h", {{"classes", cmp.classes},
                 {"target_paths", cmp.target_paths},
                 {"well_defined", cmp.well_defined},
                 {"injective", cmp.injective},
                 {"surjective", cmp.surjective},
                 {"bijective", cmp.bijective},
                 {"witnesses", cmp.witnesses}});
  const Json graph = qp::io::to_json(p);
  if (out_path.empty()) {
    cert.set("result", graph);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qp::io::ParseError(out_path, 0, 0, "cannot write file");
    out << qp::io::dump(graph);
    cert.set("result", out_path);
  }
  return emit(cert, true);
}

int cmd_union(const std::vector<std::string>& args, const std::string& f_path, const std::string& g_path,
              const std::string& out_path) {
  Certificate cert("union", args);
  cert.add_input(f_path, qp::io::read_file(f_path));
  cert.add_input(g_path, qp::io::read_file(g_path));
  const auto f = qp::io::load_graph(f_path);
  const auto g = qp::io::load_graph(g_path);
  const auto u = qp::admissible_union(f, g);
  cert.set("intersection", qp::io::to_json(*u.intersection));
  cert.set("admissibility", {{"cap_in_F", admissibility_json(u.cap_f)},
                             {"cap_in_G", admissibility_json(u.cap_g)},
                             {"F_in_union", admissibility_json(u.cup_f)},
                             {"G_in_union", admissibility_json(u.cup_g)}});
  if (u.cap_f.strongly && u.cap_g.strongly) {
    cert.add_check("union_strongly_admissible", u.cup_f.strongly && u.cup_g.strongly);
  }
  if (out_path.empty()) {
    cert.set("union", qp::io::to_json(*u.graph));
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw qp::io::ParseError(out_path, 0, 0, "cannot write file");
    out << qp::io::dump(qp::io::to_json(*u.graph));
    cert.set("union", out_path);
  }
  return emit(cert, cert.passed());
}

template <typename Scalar>
void verify_path(Certificate& cert, const qp::GraphHom& f, const qp::GraphHom& g, std::size_t n) {
  const auto r = qp::verify_path_pullback<Scalar>(f, g, n);
  cert.set("preconditions", flags_json(r.preconditions));
  cert.set("mode", r.exact ? "EXACT" : "TRUNCATED(" + std::to_string(n) + ")");
  bool commutes = true, injective = true, surjective = true;
  Json degrees = Json::array();
  std::vector<std::string> wa, wb, wc;
  for (const auto& d : r.degrees) {
    degrees.push_back({{"degree", d.degree},
                       {"dim_pushout", d.dim_pushout},
                       {"dim_E", d.dim_e},
                       {"dim_F", d.dim_f},
                       {"dim_G", d.dim_g},
                       {"fiber_dim", d.fiber_dim}});
    const std::string at = "degree " + std::to_string(d.degree);
    if (!d.commutes) commutes = false, wa.push_back(at);
    if (!d.injective) injective = false, wb.push_back(at);
    if (!d.surjective) surjective = false, wc.push_back(at);
  }
  cert.set("degrees", degrees);
  cert.add_check("(a) commutativity", commutes, wa);
  cert.add_check("(b) injectivity", injective, wb);
  cert.add_check("(c) surjectivity onto fibre product", surjective, wc);
}

template <typename Scalar>
void verify_leavitt(Certificate& cert, const qp::GraphHom& f, const qp::GraphHom& g, std::size_t n) {
  const auto r = qp::verify_leavitt_pullback<Scalar>(f, g, n);
  cert.set("preconditions", flags_json(r.preconditions));
  cert.set("mode", "TRUNCATED(" + std::to_string(n) + ")");
  cert.add_check("injections admissible", r.iotas_admissible, r.witnesses);
  if (!r.iotas_admissible) return;
  cert.add_check("(1) kernel intersection", r.kernel_intersection);
  cert.add_check("(2) surjectivity", r.surjectivity, {}, {{"generators", r.surjectivity_generators}});
  cert.add_check("(3) kernel correspondence", r.kernel_correspondence, r.break_arrow.failures,
                 {{"generators", r.kernel_generators}, {"break_arrow_pairs", r.break_arrow.pairs_checked}});
  Json windows = Json::array();
  for (const auto& w : r.windows) {
    windows.push_back({{"degree", w.degree},
                       {"dim_pushout", w.dim_pushout},
                       {"dim_E", w.dim_e},
                       {"dim_F", w.dim_f},
                       {"image_dim", w.image_dim},
                       {"fiber_dim", w.fiber_dim}});
  }
  cert.add_check("truncated rank cross-check", r.rank_consistent, {},
                 {{"windows", windows}, {"excluded_monomials", r.excluded}});
  if (!r.passed) cert.set("witnesses", r.witnesses);
}

int cmd_verify(const std::vector<std::string>& args, bool leavitt, const std::string& f_path,
               const std::string& g_path, std::size_t n, const std::string& field_text) {
  Certificate cert("verify", args);
  const auto field = qp::FieldSpec::parse(field_text);
  const auto f = load_input(cert, f_path);
  const auto g = load_input(cert, g_path);
  cert.set("theorem", leavitt ? "leavitt" : "path");
  cert.set("field", field.to_string());
  cert.set("max_degree", n);
  if (field.kind == qp::FieldSpec::Kind::Rational) {
    leavitt ? verify_leavitt<qp::Rational>(cert, f, g, n) : verify_path<qp::Rational>(cert, f, g, n);
  } else {
    qp::FpModulus::Scope scope(field.prime);
    leavitt ? verify_leavitt<qp::Fp>(cert, f, g, n) : verify_path<qp::Fp>(cert, f, g, n);
  }
  return emit(cert, cert.passed());
}

template <typename Scalar>
std::string evaluate(const qp::GraphPtr& g, const std::vector<std::string>& factors, bool leavitt,
                     const std::optional<qp::GraphHom>& pullback) {
  if (leavitt) {
    auto x = qp::io::leavitt_element<Scalar>(g, qp::io::parse_literal(factors.front()));
    for (std::size_t i = 1; i < factors.size(); ++i) {
      x = qp::l_mul(x, qp::io::leavitt_element<Scalar>(g, qp::io::parse_literal(factors[i])));
    }
    if (pullback) return qp::l_pullback(*pullback, x).to_string();
    return x.to_string();
  }
  auto x = qp::io::path_element<Scalar>(g, qp::io::parse_literal(factors.front()));
  for (std::size_t i = 1; i < factors.size(); ++i) {
    x = qp::pa_mul(x, qp::io::path_element<Scalar>(g, qp::io::parse_literal(factors[i])));
  }
  if (pullback) return qp::pa_pullback(*pullback, x).to_string();
  return x.to_string();
}

int cmd_eval(const std::string& graph_path, const std::vector<std::string>& factors, bool leavitt,
             const std::string& field_text, const std::string& hom_path) {
  const auto field = qp::FieldSpec::parse(field_text);
  std::optional<qp::GraphHom> h;
  qp::GraphPtr g;
  if (!hom_path.empty()) {
    h = qp::io::load_hom(hom_path);
    g = h->codomain_ptr();
  } else {
    g = qp::io::load_graph(graph_path);
  }
  std::string out;
  if (field.kind == qp::FieldSpec::Kind::Rational) {
    out = evaluate<qp::Rational>(g, factors, leavitt, h);
  } else {
    qp::FpModulus::Scope scope(field.prime);
    out = evaluate<qp::Fp>(g, factors, leavitt, h);
  }
  std::cout << out << "\n";
  return kPass;
}

int cmd_proptest(const std::string& suite, std::optional<std::uint64_t> seed, std::size_t cases) {
  std::uint64_t s = 0;
  if (seed) {
    s = *seed;
  } else if (const char* env = std::getenv("QP_SEED")) {
    try {
      s = std::stoull(env);
    } catch (const std::exception&) {
      throw qp::io::ParseError("QP_SEED", 0, 0, "not an unsigned integer: '" + std::string(env) + "'");
    }
  }
  const auto r = qp::prop::run_suite(suite, s, cases);
  std::cout << qp::prop::format_report(r);
  return r.ok() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph homomorphisms, pushouts, path and Leavitt path algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qp::io::kVersion);
  const std::vector<std::string> args(argv + 1, argv + argc);

  std::string hom_path, f_path, g_path, out_path, field = "q", graph_path, suite;
  std::size_t check_h = qp::kDefaultTruncation, max_degree = 4, cases = 100;
  std::optional<std::uint64_t> seed;
  bool path_mode = false, leavitt_mode = false;
  std::vector<std::string> factors;

  auto* classify = app.add_subcommand("classify", "classify a homomorphism and check admissibility");
  classify->add_option("hom", hom_path, "homomorphism JSON")->required();

  auto* pushout = app.add_subcommand("pushout", "pushout of two homs with a shared domain");
  pushout->add_option("f", f_path, "hom G -> E")->required();
  pushout->add_option("g", g_path, "hom G -> F")->required();
  pushout->add_option("--check-h", check_h, "compare path sets up to this length");
  pushout->add_option("--out", out_path, "write the pushout graph here");

  auto* uni = app.add_subcommand("union", "union of two graphs sharing ids, with admissibility of the inclusions");
  uni->add_option("F", f_path, "graph JSON")->required();
  uni->add_option("G", g_path, "graph JSON")->required();
  uni->add_option("--out", out_path, "write the union graph here");

  auto* verify = app.add_subcommand("verify", "verify a pushout-to-pullback theorem on an instance");
  auto* vp = verify->add_flag("--path", path_mode, "path algebra theorem");
  auto* vl = verify->add_flag("--leavitt", leavitt_mode, "Leavitt path algebra theorem");
  vp->excludes(vl);
  verify->add_option("f", f_path, "hom G -> E")->required();
  verify->add_option("g", g_path, "hom G -> F")->required();
  verify->add_option("--max-degree", max_degree, "truncation degree");
  verify->add_option("--field", field, "q or fp:<prime>");

  auto* eval = app.add_subcommand("eval", "evaluate a product of element literals");
  eval->add_option("graph", graph_path, "graph JSON (ignored with --pullback)")->required();
  eval->add_option("factors", factors, "element literals, multiplied left to right")->required();
  eval->add_flag("--leavitt", leavitt_mode, "work in the Leavitt path algebra");
  eval->add_option("--field", field, "q or fp:<prime>");
  eval->add_option("--pullback", hom_path, "apply the pullback along this hom (literals live on its codomain)");

  auto* proptest = app.add_subcommand("proptest", "seeded randomized property tests");
  proptest->add_option("--suite", suite, "suite name")->required();
  proptest->add_option("--seed", seed, "seed (default: $QP_SEED, else 0)");
  proptest->add_option("--cases", cases, "number of cases");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*classify) return cmd_classify(args, hom_path);
    if (*pushout) return cmd_pushout(args, f_path, g_path, check_h, out_path);
    if (*uni) return cmd_union(args, f_path, g_path, out_path);
    if (*verify) {
      if (!path_mode && !leavitt_mode) {
        std::cerr << "verify: pass --path or --leavitt\n";
        return kInputError;
      }
      return cmd_verify(args, leavitt_mode, f_path, g_path, max_degree, field);
    }
    if (*eval) return cmd_eval(graph_path, factors, leavitt_mode, field, hom_path);
    if (*proptest) return cmd_proptest(suite, seed, cases);
  } catch (const qp::PreconditionError& e) {
    std::cerr << "refused: precondition " << e.flag() << " fails: " << e.what() << "\n";
    return kRefused;
  } catch (const qp::io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInputError;
  } catch (const qp::io::InvalidInput& e) {
    std::cerr << e.what() << "\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
