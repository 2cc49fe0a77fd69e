#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "spinolab/suites.hpp"

using namespace spinolab;

namespace {

constexpr int kUsageError = 2;

struct Options {
  bool compact = false;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int samples = 100;
  std::string catalog = SPINOLAB_DEFAULT_CATALOG;

  RunConfig config() const { return {seed, tol, samples}; }
};

int emit(const Json& j, const Options& opt) {
  std::cout << (opt.compact ? j.dump() : j.dump(2)) << "\n";
  return 0;
}

int emit_report(const Report& r, const Options& opt) {
  emit(r.to_json(), opt);
  std::cerr << r.summary();
  return r.passed() ? 0 : 1;
}

int parse_alpha(const std::string& s) {
  if (s == "+1" || s == "1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  throw InvalidArgument("alpha must be +1 or -1, got '" + s + "'");
}

std::pair<int, int> parse_pq(const std::string& s) {
  const Signature sig = parse_signature(s);
  return {sig.p(), sig.q()};
}

void require_signature_args(const std::optional<int>& p, const std::optional<int>& q) {
  require(p.has_value() == q.has_value(), "--p and --q must be given together");
  if (p) require(*p >= 0 && *q >= 0 && *p + *q <= kMaxGenerators, "signature out of range");
}

Involution parse_involution(const std::string& s) {
  if (s == "grade") return Involution::grade;
  if (s == "reversion") return Involution::reversion;
  if (s == "twisted_reversion") return Involution::twisted_reversion;
  throw InvalidArgument("kind must be grade, reversion or twisted_reversion");
}

struct StructureName {
  bool spinc = false;
  int alpha = 1;
};

StructureName parse_structure(const std::string& s) {
  if (s == "spino+") return {false, 1};
  if (s == "spino-") return {false, -1};
  if (s == "spinc+") return {true, 1};
  if (s == "spinc-") return {true, -1};
  throw InvalidArgument("structure must be spino+, spino-, spinc+ or spinc-, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for Spin^o structures and real pinor representations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--json", opt.compact, "Single-line JSON on stdout");
  app.add_option("--seed", opt.seed, "Random seed")->envname("SPINOLAB_SEED");
  app.add_option("--tol", opt.tol, "Tolerance for floating point residuals")->envname("SPINOLAB_TOL");
  app.add_option("--samples", opt.samples, "Random samples per property")->envname("SPINOLAB_SAMPLES")->check(CLI::PositiveNumber);
  app.add_option("--catalog", opt.catalog, "Space catalog file")->envname("SPINOLAB_CATALOG");

  std::function<int()> action;

  // algebra
  auto* algebra = app.add_subcommand("algebra", "Clifford algebra arithmetic");
  algebra->require_subcommand(1);
  std::string sig_text, lhs, rhs, kind = "grade";
  int max_dim = 6;
  auto* alg_verify = algebra->add_subcommand("verify", "Associativity, relations, volume elements, twisted norms");
  alg_verify->add_option("--max-dim", max_dim, "Largest dimension for the random checks")->check(CLI::Range(1, 8));
  alg_verify->callback([&] { action = [&] { return emit_report(verify_algebra(opt.config(), max_dim), opt); }; });
  auto* alg_product = algebra->add_subcommand("product", "Geometric product of two multivectors");
  alg_product->add_option("--sig", sig_text, "Signature p,q")->required();
  alg_product->add_option("a", lhs)->required();
  alg_product->add_option("b", rhs)->required();
  alg_product->callback([&] {
    action = [&] {
      const Signature sig = parse_signature(sig_text);
      return emit(Json{{"signature", sig.to_string()}, {"result", to_string(parse_multivector(lhs, sig) * parse_multivector(rhs, sig))}}, opt);
    };
  });
  auto* alg_inv = algebra->add_subcommand("involution", "Grade involution, reversion or twisted reversion");
  alg_inv->add_option("--sig", sig_text, "Signature p,q")->required();
  alg_inv->add_option("--kind", kind, "grade, reversion or twisted_reversion");
  alg_inv->add_option("a", lhs)->required();
  alg_inv->callback([&] {
    action = [&] {
      const Signature sig = parse_signature(sig_text);
      return emit(Json{{"signature", sig.to_string()}, {"kind", kind}, {"result", to_string(involution(parse_multivector(lhs, sig), parse_involution(kind)))}}, opt);
    };
  });
  auto* alg_norm = algebra->add_subcommand("norm", "Twisted norm");
  alg_norm->add_option("--sig", sig_text, "Signature p,q")->required();
  alg_norm->add_option("a", lhs)->required();
  alg_norm->callback([&] {
    action = [&] {
      const Signature sig = parse_signature(sig_text);
      return emit(Json{{"signature", sig.to_string()}, {"result", to_string(twisted_norm(parse_multivector(lhs, sig)))}}, opt);
    };
  });

  // groups
  auto* groups = app.add_subcommand("groups", "O2(alpha), Pin2(alpha) and the diagrams");
  groups->require_subcommand(1);
  std::string alpha_text;
  auto* groups_verify = groups->add_subcommand("verify", "Diagrams, realizations and non-splitness");
  groups_verify->add_option("--alpha", alpha_text, "+1 or -1 (both when omitted)");
  groups_verify->callback([&] {
    action = [&] {
      if (alpha_text.empty()) return emit_report(verify_groups_all(opt.config()), opt);
      return emit_report(verify_groups(parse_alpha(alpha_text), opt.config()), opt);
    };
  });

  // spino
  std::optional<int> p, q;
  auto* spino = app.add_subcommand("spino", "Spin^o groups and their representations");
  spino->require_subcommand(1);
  auto* spino_verify = spino->add_subcommand("verify", "Group law, representations, embeddings, splittings");
  spino_verify->add_option("--p", p, "Positive generators");
  spino_verify->add_option("--q", q, "Negative generators");
  spino_verify->add_option("--alpha", alpha_text, "+1 or -1 (both when omitted)");
  spino_verify->callback([&] {
    action = [&] {
      require_signature_args(p, q);
      const auto sigs = p ? std::vector<std::pair<int, int>>{{*p, *q}} : spino_signatures();
      const auto alphas = alpha_text.empty() ? std::vector<int>{1, -1} : std::vector<int>{parse_alpha(alpha_text)};
      return emit_report(verify_spino_suite(sigs, alphas, opt.config()), opt);
    };
  });

  // rep
  auto* rep = app.add_subcommand("rep", "Elementary real pinor representations");
  rep->require_subcommand(1);
  std::string emit_path;
  auto* rep_build = rep->add_subcommand("build", "Build gamma_0, J and D");
  rep_build->add_option("--p", p)->required();
  rep_build->add_option("--q", q)->required();
  rep_build->add_option("--emit", emit_path, "Write the matrices as JSON");
  rep_build->callback([&] {
    action = [&] {
      require_signature_args(p, q);
      alpha_pq(*p, *q);
      const MatrixRep r = build_gamma0(Signature::pq(*p, *q));
      const NaturalSubspaces ns = natural_subspaces(r);
      const Json matrices = rep_to_json(r, ns.anticomm_basis[0]);
      Json out{{"p", *p}, {"q", *q}, {"N", r.N()}, {"alpha", alpha_pq(*p, *q)}, {"schur_dim", ns.schur_dim}, {"anticommutant_dim", ns.anticomm_dim}};
      if (!emit_path.empty()) {
        std::ofstream f(emit_path);
        require(static_cast<bool>(f), "cannot write " + emit_path);
        f << matrices.dump(1) << "\n";
        out["emitted"] = emit_path;
      } else {
        out["matrices"] = matrices;
      }
      return emit(out, opt);
    };
  });
  auto* rep_check = rep->add_subcommand("check", "Natural subspaces, D, gamma_o, Majorana projectors");
  rep_check->add_option("--p", p);
  rep_check->add_option("--q", q);
  rep_check->callback([&] {
    action = [&] {
      require_signature_args(p, q);
      if (!p) return emit_report(verify_pinor_suite(opt.config()), opt);
      alpha_pq(*p, *q);
      return emit_report(verify_pinor(*p, *q, opt.config()), opt);
    };
  });
  auto* rep_table = rep->add_subcommand("table", "Regenerate the table of Riemannian and Lorentzian signatures");
  rep_table->callback([&] { action = [&] { return emit_report(sugra_table(opt.config()), opt); }; });

  // semilinear
  auto* semi = app.add_subcommand("semilinear", "Semilinear structures, Gamma(r), s-Hermitian forms");
  semi->require_subcommand(1);
  std::optional<int> r_opt;
  auto* semi_check = semi->add_subcommand("check", "Gamma(r), TU(r), classification, f_h");
  semi_check->add_option("--r", r_opt, "Complex dimension (1..3 when omitted)")->check(CLI::Range(1, 8));
  semi_check->callback([&] {
    action = [&] {
      if (!r_opt) return emit_report(verify_semilinear_suite(opt.config()), opt);
      return emit_report(verify_semilinear(*r_opt, opt.config()), opt);
    };
  });

  // obstruct
  auto* obstruct = app.add_subcommand("obstruct", "Stiefel-Whitney obstructions");
  obstruct->require_subcommand(1);
  std::string space, structure, e_name, mode_text = "paper", signature_text;
  bool search = false;
  auto* ob_check = obstruct->add_subcommand("check", "Evaluate one obstruction on a catalog space");
  ob_check->add_option("--space", space, "Catalog space")->required();
  ob_check->add_option("--structure", structure, "spino+, spino-, spinc+ or spinc-")->required();
  ob_check->add_option("--E", e_name, "Characteristic rank-2 bundle (catalog name, or R^2)");
  ob_check->add_flag("--search", search, "Search catalog-built rank-2 bundles for E");
  ob_check->add_option("--mode", mode_text, "Grassmannian tangent class: paper or oracle");
  ob_check->add_option("--signature", signature_text, "Definite signature p,q (default dim,0)");
  ob_check->callback([&] {
    action = [&]() -> int {
      const Catalog catalog = Catalog::load(opt.catalog);
      const SpaceDescriptor& M = catalog.get(space);
      const StructureName st = parse_structure(structure);
      const TangentMode mode = parse_tangent_mode(mode_text);
      auto [pp, qq] = signature_text.empty() ? std::pair{M.dim, 0} : parse_pq(signature_text);
      const auto [Pp, Pm] = definite_frames(M.tangent(mode), pp, qq);
      auto evaluate = [&](const BundleDescriptor& E) {
        return st.spinc ? obstruct_spinc(Pp, Pm, E, st.alpha) : obstruct_spino(Pp, Pm, E, st.alpha, pp, qq);
      };
      require(!(search && !e_name.empty()), "--E and --search are exclusive");
      Report report("obstruct." + M.name + "." + structure, opt.config());
      Json out;
      out["space"] = M.name;
      out["dimension"] = M.dim;
      out["signature"] = std::to_string(pp) + "," + std::to_string(qq);
      out["mode"] = mode_text;
      std::optional<ObsVerdict> verdict;
      if (search) {
        const SearchResult s = search_E(M, evaluate);
        out["examined"] = s.examined;
        if (s.witness) verdict = s.witness;
        else out["detail"] = s.detail;
      } else {
        const std::string name = e_name.empty() ? (st.spinc ? "R^2" : "") : e_name;
        require(!name.empty(), "spino structures need --E or --search");
        verdict = evaluate(name == "R^2" ? trivial_bundle(M.ring, 2) : M.bundle(name));
      }
      if (verdict) {
        out["verdict"] = verdict->to_json();
        report.add("verdict", verdict->holds && verdict->lift_agrees, verdict->holds ? 0 : 1, "obstruction." + structure,
                   verdict->holds ? "holds with E = " + verdict->E : "fails with E = " + verdict->E);
      } else {
        report.add("verdict", false, 1, "obstruction." + structure, out["detail"].get<std::string>());
      }
      report.extras() = out;
      return emit_report(report, opt);
    };
  });
  auto* ob_verify = obstruct->add_subcommand("verify", "The obstruction suite");
  ob_verify->callback([&] { action = [&] { return emit_report(verify_obstructions(Catalog::load(opt.catalog), opt.config()), opt); }; });

  // catalog
  auto* cat = app.add_subcommand("catalog", "Space catalog and cohomology engine");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "Spaces with dimension, Betti numbers and w(T)");
  cat_list->callback([&] {
    action = [&] {
      const Catalog catalog = Catalog::load(opt.catalog);
      Json out = Json::array();
      for (const auto& s : catalog.spaces())
        out.push_back({{"name", s.name}, {"dimension", s.dim}, {"betti", s.ring->poincare()}, {"w(T)", s.tangent().to_string()}});
      return emit(out, opt);
    };
  });
  auto* cat_show = cat->add_subcommand("show", "One catalog entry");
  cat_show->add_option("name", space)->required();
  cat_show->callback([&] {
    action = [&] {
      const Catalog catalog = Catalog::load(opt.catalog);
      const SpaceDescriptor& s = catalog.get(space);
      Json out = Json::parse(space_to_json(s).dump());
      out["betti"] = s.ring->poincare();
      return emit(out, opt);
    };
  });
  auto* cat_verify = cat->add_subcommand("verify", "Ring axioms, RP^n, Grassmannians, Kunneth, stability");
  cat_verify->callback([&] { action = [&] { return emit_report(verify_cohomology(Catalog::load(opt.catalog), opt.config()), opt); }; });

  // all
  auto* all = app.add_subcommand("all", "Every suite");
  all->callback([&] { action = [&] { return emit_report(run_all(Catalog::load(opt.catalog), opt.config()), opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  try {
    return action();
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
