#include <CLI11.hpp>

#include <iostream>

#include "lieform/phi.hpp"
#include "lieform/recognize.hpp"
#include "lieform/report.hpp"

using namespace lieform;

namespace {

struct GlobalOpts {
  std::string backend = "exact";
  unsigned long precision = 128;
  int guardrail = 28;
  long exterior_cap = 1200;
  long tensor_cap = 360;
  std::string data_dir;
  std::string json_path;
};

Limits limits_of(const GlobalOpts& g) {
  Limits l;
  l.algebra_dim = g.guardrail;
  l.exterior_dim = g.exterior_cap;
  l.tensor_dim = g.tensor_cap;
  return l;
}

void apply_backend(const GlobalOpts& g) {
  set_float_precision(g.precision < 128 ? 128 : g.precision);
  if (g.backend == "exact") set_active_backend(Backend::exact);
  else if (g.backend == "float") set_active_backend(Backend::bigfloat);
  else throw UsageError("--backend must be exact or float");
}

void maybe_write(const GlobalOpts& g, const json& j) {
  if (!g.json_path.empty()) write_json_file(g.json_path, j);
}

int cmd_verify(const GlobalOpts& g, const std::string& algebra, const std::string& suite) {
  apply_backend(g);
  auto alg = build_algebra(algebra, limits_of(g));
  Exterior ex(alg, limits_of(g));
  VerificationReport rep = run_suite(ex, suite, g.data_dir);
  std::cout << rep.to_text();
  maybe_write(g, rep.to_json());
  return rep.passed() ? 0 : 1;
}

int cmd_table(const GlobalOpts& g, const std::string& algebra, const std::string& form) {
  apply_backend(g);
  auto alg = build_algebra(algebra, limits_of(g));
  Exterior ex(alg, limits_of(g));
  MV phi;
  if (form == "omega") phi = ex.omega();
  else if (form == "star-omega") phi = ex.rational_star(ex.omega());
  else if (form == "x5") phi = harmonic_generator(ex, 5);
  else throw UsageError("--form must be omega|star-omega|x5");
  PhiSplit s = phi_split(ex, phi);

  json degrees = json::array();
  std::cout << "phi split of " << form << " on " << algebra << "\n";
  std::cout << "  k     plus    minus\n";
  for (long k = 0; k < static_cast<long>(s.plus_dim.size()); ++k) {
    std::cout << "  " << k << (k < 10 ? " " : "") << "   ";
    auto cell = [](long v) { return v < 0 ? std::string("?") : std::to_string(v); };
    printf("%6s  %6s\n", cell(s.plus_dim[k]).c_str(), cell(s.minus_dim[k]).c_str());
    degrees.push_back(json{{"k", k}, {"plus", s.plus_dim[k]}, {"minus", s.minus_dim[k]}});
  }
  std::string golden_status = "n/a";
  if (algebra == "su3" && (form == "omega" || form == "star-omega")) {
    std::string path = find_data_file(g.data_dir, "example_5_7_su3.json");
    if (!path.empty()) {
      json gj = load_json_file(path);
      std::string mkey = (form == "omega") ? "omega-minus" : "star-omega-minus";
      std::string pkey = (form == "omega") ? "omega-plus" : "star-omega-plus";
      bool ok = gj.at("rows").at(mkey).get<std::vector<long>>() == s.minus_dim &&
                gj.at("rows").at(pkey).get<std::vector<long>>() == s.plus_dim;
      golden_status = ok ? "pass" : "fail";
      std::cout << "golden table comparison: " << (ok ? "PASS" : "FAIL") << "\n";
    }
  }
  maybe_write(g, json{{"algebra", algebra},
                      {"form", form},
                      {"degrees", degrees},
                      {"golden", golden_status}});
  return golden_status == "fail" ? 1 : 0;
}

int cmd_betti(const GlobalOpts& g, const std::string& algebra, int max_degree) {
  apply_backend(g);
  Limits lim = limits_of(g);
  auto alg = build_algebra(algebra, lim);
  Exterior ex(alg, lim);
  InvariantAlgebra inv = invariant_forms(ex);
  std::string note;
  long upto = (max_degree >= 0) ? std::min<long>(max_degree, ex.n()) : ex.n();
  std::ostringstream os;
  bool truncated = false;
  for (long k = 0; k <= upto; ++k) {
    if (inv.betti[k] < 0) { truncated = true; os << (k ? ",?" : "?"); }
    else os << (k ? "," : "") << inv.betti[k];
  }
  if (truncated) note = "degrees over the guardrail; duality completion applied where possible";
  std::cout << os.str() << "\n";
  if (!note.empty()) std::cout << "note: " << note << "\n";
  json arr = json::array();
  for (long k = 0; k <= upto; ++k) arr.push_back(inv.betti[k]);
  maybe_write(g, json{{"algebra", algebra}, {"betti", arr}, {"note", note}});
  return 0;
}

int cmd_classify(const GlobalOpts& g, const std::string& form_file,
                 const std::string& metric_file) {
  apply_backend(g);
  ParsedForm pf = form_from_json(load_json_file(form_file));
  if (!pf.is_float && pf.exact.is_zero() && pf.exact.deg != 3 && pf.exact.terms.empty() &&
      pf.exact.deg == 0)
    throw UsageError("empty form");
  std::optional<SparseMatrix> metric;
  if (!metric_file.empty()) metric = metric_from_json(load_json_file(metric_file));
  FormTypeReport rep;
  if (pf.is_float) {
    Flt tol("1e-25");
    rep = classify_3form_float(pf.flt, pf.ambient_dim, tol);
  } else {
    rep = classify_3form(pf.exact, pf.ambient_dim, metric);
  }
  json out{{"verdict", rep.verdict},
           {"stab_dim", rep.stab_dim},
           {"kernel_dim", rep.kernel_dim},
           {"killing_signature", rep.killing_signature},
           {"details", rep.details}};
  std::cout << out.dump(2) << "\n";
  maybe_write(g, out);
  return 0;
}

int cmd_stab(const GlobalOpts& g, const std::string& form_file) {
  apply_backend(g);
  ParsedForm pf = form_from_json(load_json_file(form_file));
  if (pf.is_float) throw UsageError("stab requires exact (rational) input");
  if (pf.exact.is_zero()) throw UsageError("empty form");
  Subspace s = stabilizer_algebra(pf.exact, pf.ambient_dim);
  json out{{"ambient_dim", pf.ambient_dim}, {"stab_dim", s.dim()}};
  std::cout << out.dump(2) << "\n";
  maybe_write(g, out);
  return 0;
}

int cmd_subspace(const GlobalOpts& g, const std::string& file) {
  apply_backend(g);
  json j = load_json_file(file);
  std::string algebra = j.at("algebra").get<std::string>();
  auto alg = build_algebra(algebra, limits_of(g));
  Exterior ex(alg, limits_of(g));
  std::vector<std::vector<Rat>> gens;
  for (const auto& row : j.at("basis")) {
    std::vector<Rat> v;
    for (const auto& e : row)
      v.push_back(rat_from_string(e.is_string() ? e.get<std::string>() : e.dump()));
    if (static_cast<long>(v.size()) != ex.n()) throw UsageError("basis vector length != dim g");
    gens.push_back(std::move(v));
  }
  Subspace V = Subspace::span_of(ex.n(), gens);
  SubspaceVerdict sv = subspace_test(ex, V);
  // cross-validate with the coassociative system space when V is 3-dimensional
  std::string predicate = "n/a";
  if (V.dim() == 3) {
    Subspace sys = coassoc_system_space(ex);
    bool allzero = true;
    for (long i = 0; i < sys.dim(); ++i)
      if (!restricts_to_zero(ex, ex.from_coords(3, sys.basis_vector(i)), V)) allzero = false;
    predicate = allzero ? "vanishes" : "nonzero";
    if (allzero != sv.strongly_associative())
      throw std::runtime_error("subspace criteria disagree (definition vs system space)");
  }
  json out{{"algebra", algebra},
           {"dim", V.dim()},
           {"bracket_closed", sv.bracket_closed},
           {"restricted_form_multisymplectic", sv.restricted_form_multisymplectic},
           {"induced_bracket_semisimple", sv.induced_bracket_semisimple},
           {"strongly_associative", sv.strongly_associative()},
           {"system_space_restriction", predicate}};
  std::cout << out.dump(2) << "\n";
  maybe_write(g, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus of invariant forms on compact simple Lie algebras"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--backend", g.backend, "scalar backend: exact|float");
  app.add_option("--precision", g.precision, "float mantissa bits (>= 128)");
  app.add_option("--guardrail", g.guardrail, "algebra dimension cap");
  app.add_option("--exterior-cap", g.exterior_cap, "exterior power dimension cap");
  app.add_option("--tensor-cap", g.tensor_cap, "tensor space dimension cap");
  app.add_option("--data", g.data_dir, "directory with golden data files");
  app.add_option("--json", g.json_path, "write a JSON report to this path");

  std::string algebra, suite = "all", form = "omega", form_file, metric_file, subspace_file;
  int max_degree = -1;

  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("algebra", algebra)->required();
  verify->add_option("--suite", suite, "all|differential|torsion|phi|cohomology");

  auto* table = app.add_subcommand("table", "phi-splitting dimension table");
  table->add_option("algebra", algebra)->required();
  table->add_option("--form", form, "omega|star-omega|x5");

  auto* betti = app.add_subcommand("betti", "Betti numbers of invariant forms");
  betti->add_option("algebra", algebra)->required();
  betti->add_option("--max-degree", max_degree);

  auto* classify = app.add_subcommand("classify", "classify a 3-form from JSON");
  classify->add_option("form", form_file)->required();
  classify->add_option("--metric", metric_file);

  auto* stab = app.add_subcommand("stab", "stabilizer algebra dimension of a form");
  stab->add_option("form", form_file)->required();

  auto* subspace = app.add_subcommand("subspace", "associativity tests for a subspace of g");
  subspace->add_option("basis", subspace_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(g, algebra, suite);
    if (table->parsed()) return cmd_table(g, algebra, form);
    if (betti->parsed()) return cmd_betti(g, algebra, max_degree);
    if (classify->parsed()) return cmd_classify(g, form_file, metric_file);
    if (stab->parsed()) return cmd_stab(g, form_file);
    if (subspace->parsed()) return cmd_subspace(g, subspace_file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardrailError& e) {
    std::cerr << "guardrail: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
