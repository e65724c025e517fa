#pragma once

// The tacalc command line: argument parsing, per-command computations and
// report emission. run_cli is callable in-process.

#include <CLI11.hpp>

#include <iostream>

#include "tacalc/homotopy_lie.hpp"
#include "tacalc/io.hpp"
#include "tacalc/pfaffian_complex.hpp"
#include "tacalc/report.hpp"

namespace tacalc {

struct CliOptions {
  std::string command;
  std::string format = "json";
  std::optional<std::uint32_t> modular;
  int hom_cap = 4;
  int int_cap = 10;
  int degree_cap = GradedAlgebra<Rational>::kDefaultDegreeCap;
  bool allow_non_koszul = false;

  std::vector<std::string> files;
  bool tensor = false;
  std::string module;
  std::string output;
  int size = 0;
  std::string spec;
  std::string base_change;
  int depth = 3;
  std::string complex;
  std::optional<int> position;
};

namespace cli {

template <typename T>
Json sizes(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

inline Json graded_json(const std::vector<std::map<int, std::size_t>>& g) {
  Json out = Json::array();
  for (const auto& row : g) {
    Json r = Json::array();
    for (const auto& [d, n] : row) r.push_back(Json{{"degree", d}, {"count", n}});
    out.push_back(std::move(r));
  }
  return out;
}

inline Json deviations_json(const Deviations& d) { return Json::array({d.eps1, d.eps2, d.eps3}); }

/// Coefficients of the product of two series given by coefficient lists.
inline std::vector<std::size_t> series_product(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                                               std::size_t terms) {
  std::vector<std::size_t> c(terms, 0);
  for (std::size_t i = 0; i < a.size() && i < terms; ++i)
    for (std::size_t j = 0; j < b.size() && i + j < terms; ++j) c[i + j] += a[i] * b[j];
  return c;
}

template <FieldElement K>
struct Loaded {
  AlgebraFile file;
  AlgebraPtr<K> algebra;
};

template <FieldElement K>
class Session {
 public:
  Session(const CliOptions& o, const Field& f, Report& r) : o_(o), field_(f), report_(r) {}

  int run() {
    const std::string& c = o_.command;
    if (c == "hilbert") hilbert();
    else if (c == "resolve") resolve(false);
    else if (c == "poincare") resolve(true);
    else if (c == "deviations") deviations_cmd();
    else if (c == "dual") dual();
    else if (c == "pi") pi();
    else if (c == "central") central();
    else if (c == "obstruction") obstruction();
    else if (c == "gorenstein") gorenstein();
    else if (c == "tensor") tensor_cmd();
    else if (c == "pfaffian") pfaffian();
    else if (c == "tac-check") tac_check();
    else if (c == "trm-check") trm_check();
    else fail(ErrorKind::usage, "unknown command " + c);
    return report_.exit_status();
  }

 private:
  Loaded<K> load(const std::string& path) {
    AlgebraFile f = parse_algebra_file(path);
    if (!(f.field == field_))
      report_.warn(path + " declares field " + f.field.to_string() + "; computing over " + field_.to_string());
    AlgebraSpec<K> spec = to_spec<K>(f, field_);
    return {std::move(f), GradedAlgebra<K>::build(std::move(spec), o_.degree_cap)};
  }

  const std::string& single_file() const {
    require(o_.files.size() == 1, ErrorKind::usage, o_.command + " takes exactly one algebra file");
    return o_.files[0];
  }

  GradedModule<K> module_of(const Loaded<K>& l) {
    if (o_.module.empty()) return GradedModule<K>::residue_field(l.algebra);
    return to_module<K>(l.file, l.file.module(o_.module), l.algebra);
  }

  Resolution<K> resolve_k(const AlgebraPtr<K>& a, int hom) {
    return minimal_resolution(GradedModule<K>::residue_field(a), {hom, o_.int_cap});
  }

  Json socle_json(const GradedAlgebra<K>& a) {
    const Socle<K> s = socle(a);
    return Json{{"dim", s.dim}, {"degrees", sizes(s.degrees)}, {"gorenstein", s.gorenstein}};
  }

  void hilbert() {
    const auto l = load(single_file());
    Json& r = report_.results();
    r["hilbert"] = sizes(l.algebra->hilbert());
    r["dim"] = l.algebra->total_dim();
    r["top_degree"] = l.algebra->top_degree();
    r["socle"] = socle_json(*l.algebra);
  }

  void check_composites(const Resolution<K>& res) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < res.maps.size(); ++i)
      if (!compose(res.maps[i], res.maps[i + 1]).is_zero()) ok = false;
    report_.cross_check("consecutive differentials compose to zero", ok,
                        std::to_string(res.maps.size()) + " maps checked");
  }

  void resolve(bool series) {
    const auto l = load(single_file());
    const Resolution<K> res = minimal_resolution(module_of(l), {o_.hom_cap, o_.int_cap});
    Json& r = report_.results();
    r["module"] = o_.module.empty() ? "k" : o_.module;
    if (series) {
      r["poincare"] = sizes(poincare(res));
      r["exact_through"] = res.complete ? Json("all") : Json(o_.hom_cap);
    } else {
      r["betti"] = sizes(res.betti());
      r["graded_betti"] = graded_json(res.graded_betti());
      r["linear"] = res.is_linear();
      r["complete"] = res.complete;
    }
    check_composites(res);
  }

  void deviations_cmd() {
    const auto l = load(single_file());
    const Resolution<K> res = resolve_k(l.algebra, std::max(3, o_.hom_cap));
    Json& r = report_.results();
    r["betti"] = sizes(res.betti());
    r["deviations"] = deviations_json(deviations(res.betti()));
  }

  struct KoszulData {
    std::vector<std::size_t> betti;
    QuadraticDual<K> dual;
    KoszulSmoke smoke;
  };

  KoszulData koszul_data(const AlgebraPtr<K>& a, const std::string& name) {
    const auto betti = resolve_k(a, 3).betti();
    QuadraticDual<K> d = quadratic_dual(a->spec());
    KoszulSmoke s = koszul_smoke(betti, d, 3);
    if (!s.consistent)
      report_.warn(name + ": Betti numbers differ from the dual's dimensions; the algebra is not Koszul and " +
                   "homotopy Lie extraction is unsupported for it");
    return {betti, std::move(d), std::move(s)};
  }

  Json smoke_json(const KoszulSmoke& s) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.rows.size(); ++i)
      rows.push_back(Json{{"degree", i}, {"betti", s.rows[i].first}, {"dual_dim", s.rows[i].second}});
    return Json{{"rows", rows}, {"consistent", s.consistent}};
  }

  void dual() {
    const auto l = load(single_file());
    const auto k = koszul_data(l.algebra, l.file.path);
    Json& r = report_.results();
    r["generators"] = k.dual.num_generators();
    r["coefficient_rank"] = rank(k.dual.coefficients);
    r["num_relations"] = k.dual.num_relations();
    Json rels = Json::array();
    for (std::size_t i = 0; i < k.dual.num_relations(); ++i) rels.push_back(k.dual.relation_to_string(i));
    r["relations"] = rels;
    std::vector<std::size_t> dims;
    for (int d = 0; d <= 3; ++d) dims.push_back(NcComponent<K>(k.dual.algebra, d).dim());
    r["component_dims"] = sizes(dims);
    r["koszul_smoke"] = smoke_json(k.smoke);
  }

  /// The Lie data when it can be trusted, else nothing (after a warning).
  std::optional<HomotopyLie<K>> lie_for(const KoszulData& k) {
    if (!k.smoke.consistent && !o_.allow_non_koszul) return std::nullopt;
    return HomotopyLie<K>(k.dual);
  }

  void lie_cross_checks(const HomotopyLie<K>& l, const KoszulData& k, Json& r, const std::string& name) {
    const Deviations eps = deviations(k.betti);
    const bool dims_ok = static_cast<long long>(l.num_generators()) == eps.eps1 &&
                         static_cast<long long>(l.pi2().dim()) == eps.eps2 &&
                         static_cast<long long>(l.pi3().dim()) == eps.eps3;
    const std::string detail = name + ": pi dims (" + std::to_string(l.num_generators()) + "," +
                               std::to_string(l.pi2().dim()) + "," + std::to_string(l.pi3().dim()) +
                               ") vs deviations (" + std::to_string(eps.eps1) + "," + std::to_string(eps.eps2) +
                               "," + std::to_string(eps.eps3) + ")";
    if (k.smoke.consistent) {
      report_.cross_check("pi dimensions equal deviations", dims_ok, detail);
      report_.cross_check("PBW count in degree 3", l.pbw_degree3_holds(), name);
    } else {
      r["unasserted_checks"] = Json{{"pi_equals_deviations", dims_ok}, {"pbw_degree3", l.pbw_degree3_holds()}};
    }
  }

  void pi() {
    const auto l = load(single_file());
    const auto k = koszul_data(l.algebra, l.file.path);
    Json& r = report_.results();
    r["koszul_smoke"] = smoke_json(k.smoke);
    r["deviations"] = deviations_json(deviations(k.betti));
    const auto lie = lie_for(k);
    if (!lie) return;
    auto component = [](const PiComponent<K>& c) { return Json{{"dim", c.dim()}, {"spanned_by", c.labels}}; };
    r["pi1"] = Json{{"dim", lie->num_generators()}};
    r["pi2"] = component(lie->pi2());
    r["pi3"] = component(lie->pi3());
    const long long e1 = static_cast<long long>(lie->num_generators());
    r["pbw"] = Json{{"dim_u3", lie->component(3).dim()},
                    {"count", binomial(e1, 3) + e1 * static_cast<long long>(lie->pi2().dim()) +
                                  static_cast<long long>(lie->pi3().dim())}};
    lie_cross_checks(*lie, k, r, l.file.path);
  }

  Json center_json(const HomotopyLie<K>& lie) {
    Json basis = Json::array();
    const auto c = lie.central_pi2();
    for (const auto& v : c) basis.push_back(lie.element_to_string(2, v));
    return Json{{"pi2_dim", lie.pi2().dim()}, {"center_dim", c.size()}, {"center_basis", basis}};
  }

  void central() {
    const auto l = load(single_file());
    const auto k = koszul_data(l.algebra, l.file.path);
    Json& r = report_.results();
    r["koszul_smoke"] = smoke_json(k.smoke);
    const auto lie = lie_for(k);
    if (!lie) return;
    r["center"] = center_json(*lie);
    lie_cross_checks(*lie, k, r, l.file.path);
  }

  void obstruction() {
    require(!o_.files.empty(), ErrorKind::usage, "obstruction needs at least one algebra file");
    require(o_.tensor || o_.files.size() == 1, ErrorKind::usage,
            "several algebra files need --tensor to be read as tensor factors");
    Json& r = report_.results();
    Json factors = Json::array();
    std::vector<std::size_t> dims;
    std::vector<AlgebraSpec<K>> specs;
    for (const auto& path : o_.files) {
      const auto l = load(path);
      const auto k = koszul_data(l.algebra, path);
      const auto lie = lie_for(k);
      if (!lie) {
        r["factors"] = factors;
        r["verdict"] = nullptr;
        return;
      }
      lie_cross_checks(*lie, k, r, path);
      const std::size_t c = lie->central_pi2().size();
      factors.push_back(Json{{"file", path}, {"center_dim", c}});
      dims.push_back(c);
      specs.push_back(l.algebra->spec());
    }
    const ObstructionReport o = obstruction_from_centers<K>(dims);
    r["factors"] = factors;
    r["center_dim"] = o.center_dim;
    if (specs.size() > 1) {
      AlgebraSpec<K> t = specs[0];
      for (std::size_t i = 1; i < specs.size(); ++i) t = tensor(t, specs[i]);
      const std::size_t direct = HomotopyLie<K>(quadratic_dual(t)).central_pi2().size();
      r["tensor_center_dim"] = direct;
      report_.cross_check("center of the tensor product is the sum of the factors' centers", direct == o.center_dim,
                          std::to_string(direct) + " vs " + std::to_string(o.center_dim));
    }
    r["obstructed"] = o.obstructed;
    r["verdict"] = o.verdict;
  }

  void gorenstein() {
    require(!o_.files.empty(), ErrorKind::usage, "gorenstein needs at least one algebra file");
    require(o_.tensor || o_.files.size() == 1, ErrorKind::usage,
            "several algebra files need --tensor to be read as tensor factors");
    Json& r = report_.results();
    Json factors = Json::array();
    std::size_t product = 1;
    std::vector<AlgebraSpec<K>> specs;
    for (const auto& path : o_.files) {
      const auto l = load(path);
      Json s = socle_json(*l.algebra);
      product *= s["dim"].template get<std::size_t>();
      s["file"] = path;
      factors.push_back(std::move(s));
      specs.push_back(l.algebra->spec());
    }
    r["factors"] = factors;
    if (specs.size() > 1) {
      AlgebraSpec<K> t = specs[0];
      for (std::size_t i = 1; i < specs.size(); ++i) t = tensor(t, specs[i]);
      const auto s = socle(*GradedAlgebra<K>::build(t, o_.degree_cap));
      r["tensor"] = Json{{"socle_dim", s.dim}, {"gorenstein", s.gorenstein}, {"socle_degrees", sizes(s.degrees)}};
      report_.cross_check("socle dimension of the tensor product is the product", s.dim == product,
                          std::to_string(s.dim) + " vs " + std::to_string(product));
    }
  }

  void tensor_cmd() {
    require(o_.files.size() == 2, ErrorKind::usage, "tensor takes two algebra files");
    const auto a = load(o_.files[0]);
    const auto b = load(o_.files[1]);
    const AlgebraSpec<K> t = tensor(a.algebra->spec(), b.algebra->spec());
    const auto built = GradedAlgebra<K>::build(t, o_.degree_cap);
    const std::string text = print_algebra(t);
    Json& r = report_.results();
    r["vars"] = t.num_vars();
    r["relations"] = t.relations.size();
    r["hilbert"] = sizes(built->hilbert());
    r["algebra"] = text;
    const auto expected = series_product(a.algebra->hilbert(), b.algebra->hilbert(), built->hilbert().size());
    report_.cross_check("Hilbert function is the product of the factors'", expected == built->hilbert(), "");
    if (!o_.output.empty()) {
      std::ofstream out(o_.output);
      require(static_cast<bool>(out), ErrorKind::io, "cannot write " + o_.output);
      out << text;
      r["written_to"] = o_.output;
    }
  }

  Json matrices_json(const PfaffianComplex<K>& c) {
    return Json{{"sigma", matrix_to_string(c.sigma)}, {"tau", matrix_to_string(c.tau)},
                {"sigma_transpose", matrix_to_string(c.sigma_t)}};
  }

  Json pfaffian_report_json(const PfaffianReport& p) {
    return Json{{"tau_sigma_zero", p.tau_sigma_zero},
                {"sigma_transpose_tau_zero", p.sigma_t_tau_zero},
                {"sigma_nonzero", p.sigma_nonzero},
                {"ranks", Json::array({p.ranks[0], p.ranks[1], p.ranks[2], p.ranks[3]})}};
  }

  Json acyclicity_json(const Acyclicity& a) {
    Json pos = Json::array();
    for (const auto& p : a.positions) {
      Json h = Json::array();
      for (const auto& [e, d] : p.by_degree) h.push_back(Json{{"degree", e}, {"dim", d}});
      pos.push_back(Json{{"position", p.position}, {"homology_dim", p.total()}, {"by_degree", h}});
    }
    return Json{{"exact", a.exact}, {"window_only", a.window_only}, {"positions", pos}};
  }

  void pfaffian() {
    require(o_.files.empty(), ErrorKind::usage, "pfaffian takes no positional arguments");
    require(o_.size > 0, ErrorKind::usage, "pfaffian needs --size");
    const PfaffianComplex<K> c = generic_pfaffian_complex<K>(static_cast<std::size_t>(o_.size), field_);
    Json& r = report_.results();
    r["size"] = o_.size;
    r["variables"] = c.ctx->names;
    r["generic"] = matrices_json(c);
    Json terms = Json::array();
    for (const auto& row : c.sigma) terms.push_back(row[0].term_count());
    r["sigma_term_counts"] = terms;
    const PfaffianReport pr = verify_pfaffian_complex(c);
    r["verification"] = pfaffian_report_json(pr);
    report_.cross_check("generic composites vanish", pr.passes(), "");
    if (o_.spec.empty()) return;

    const AssignmentFile af = parse_assignment_file(o_.spec);
    if (af.algebra.empty()) {
      const ContextPtr ctx = make_context(af.vars, field_);
      const auto sp = specialize(c, to_assignment<K>(af, ctx), ctx);
      r["specialized"] = matrices_json(sp);
      r["specialized_verification"] = pfaffian_report_json(verify_pfaffian_complex(sp));
      return;
    }
    const auto l = load(af.algebra);
    const FreeComplex<K> w = specialize(c, to_assignment<K>(af, l.algebra->spec().ctx), l.algebra);
    const auto poly = specialize(c, to_assignment<K>(af, l.algebra->spec().ctx), l.algebra->spec().ctx);
    r["specialized"] = matrices_json(poly);
    Json degrees = Json::array();
    for (int i = 0; i <= 3; ++i) degrees.push_back(w.module_at(i).degrees());
    const ComplexCheck cc = check_complex(w);
    r["window"] = Json{{"module_degrees", degrees}, {"is_complex", cc.is_complex}, {"is_minimal", cc.is_minimal},
                       {"acyclicity", acyclicity_json(acyclicity(w))}};
  }

  Json complex_json(const FreeComplex<K>& c) {
    const ComplexCheck cc = check_complex(c);
    Json j{{"maps", c.length()},
           {"periodic", c.periodic()},
           {"period", c.period ? Json(*c.period) : Json(nullptr)},
           {"seam_shift", c.seam_shift},
           {"is_complex", cc.is_complex},
           {"is_minimal", cc.is_minimal},
           {"failing_positions", sizes(cc.failing_positions)}};
    if (!cc.is_complex) return j;
    const TotalAcyclicity t = total_acyclicity(c);
    j["verdict"] = to_string(t.verdict);
    j["nontrivial"] = t.nontrivial;
    j["window_only"] = t.window_only;
    j["complex"] = acyclicity_json(t.complex);
    j["dual"] = acyclicity_json(t.dual);
    return j;
  }

  struct LoadedComplex {
    Loaded<K> algebra;
    FreeComplex<K> complex;
  };

  LoadedComplex load_complex(const std::string& path) {
    const ComplexFile cf = parse_complex_file(path);
    Loaded<K> l = load(cf.algebra);
    FreeComplex<K> c = to_complex<K>(cf, l.algebra);
    return {std::move(l), std::move(c)};
  }

  void tac_check() {
    const auto lc = load_complex(single_file());
    Json& r = report_.results();
    r["complex"] = complex_json(lc.complex);
    if (o_.base_change.empty()) return;
    const auto target = load(o_.base_change);
    BaseChangeInfo info;
    const FreeComplex<K> bc = base_change(lc.complex, target.algebra, &info);
    r["base_change"] = Json{{"target", o_.base_change}, {"flat_certified", info.flat_certified},
                            {"complex", complex_json(bc)}};
  }

  Json reflexivity_json(const ReflexivityReport& t) {
    auto first = [](const std::optional<int>& i) { return i ? Json(*i) : Json(nullptr); };
    return Json{{"biduality", t.biduality},
                {"ext_module", sizes(t.ext_module)},
                {"ext_dual", sizes(t.ext_dual)},
                {"first_failure_module", first(t.first_failure_module)},
                {"first_failure_dual", first(t.first_failure_dual)},
                {"conditions", Json::array({t.biduality, t.condition2(), t.condition3()})},
                {"totally_reflexive", t.passes()},
                {"scope", t.scope()}};
  }

  void trm_check() {
    Json& r = report_.results();
    if (!o_.complex.empty()) {
      require(o_.files.empty(), ErrorKind::usage, "trm-check takes either an algebra file or --complex");
      require(o_.position.has_value(), ErrorKind::usage, "--complex needs --position");
      const auto lc = load_complex(o_.complex);
      GradedModule<K> m{FreeModule<K>(lc.algebra.algebra, {}), ModuleMap<K>()};
      const auto t = totally_reflexive_certificate(lc.complex, *o_.position, o_.depth, o_.int_cap, &m);
      r["module"] = "syzygy at position " + std::to_string(*o_.position);
      r["generator_degrees"] = sizes(m.generators.degrees());
      r["report"] = reflexivity_json(t);
      return;
    }
    const auto l = load(single_file());
    const auto t = totally_reflexive_check(module_of(l), o_.depth, o_.int_cap);
    r["module"] = o_.module.empty() ? "k" : o_.module;
    r["report"] = reflexivity_json(t);
  }

  const CliOptions& o_;
  Field field_;
  Report& report_;
};

/// Field declared by the first input, overridden by --modular.
inline Field choose_field(const CliOptions& o) {
  if (o.modular) {
    require(*o.modular != 2, ErrorKind::usage, "--modular needs an odd prime");
    return Field::prime(*o.modular);
  }
  auto from_algebra = [](const std::string& p) { return parse_algebra_file(p).field; };
  if (o.command == "pfaffian") {
    if (o.spec.empty()) return Field::rationals();
    const AssignmentFile a = parse_assignment_file(o.spec);
    return a.algebra.empty() ? a.field : from_algebra(a.algebra);
  }
  if (o.command == "tac-check") return from_algebra(parse_complex_file(o.files.at(0)).algebra);
  if (o.command == "trm-check" && !o.complex.empty()) return from_algebra(parse_complex_file(o.complex).algebra);
  require(!o.files.empty(), ErrorKind::usage, o.command + " needs an input file");
  return from_algebra(o.files[0]);
}

}  // namespace cli

inline void add_common(CLI::App* sub, CliOptions& o) {
  sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--modular", o.modular, "compute over F_p (default p = 32003)")
      ->expected(0, 1)
      ->default_str("32003");
  sub->add_option("--hom-cap", o.hom_cap, "homological degree cap")->check(CLI::PositiveNumber);
  sub->add_option("--int-cap", o.int_cap, "internal degree cap")->check(CLI::PositiveNumber);
  sub->add_option("--degree-cap", o.degree_cap, "algebra degree cap")->check(CLI::Range(2, 64));
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliOptions o;
  CLI::App app{"tacalc: graded Artinian algebras, resolutions, quadratic duals and totally acyclic complexes"};
  app.require_subcommand(1);
  struct Spec {
    const char* name;
    const char* help;
  };
  const std::vector<Spec> commands{
      {"hilbert", "Hilbert function and socle"},
      {"resolve", "minimal free resolution of k or a named module"},
      {"poincare", "Poincare series coefficients"},
      {"deviations", "first three deviations"},
      {"dual", "quadratic dual and Koszul smoke test"},
      {"pi", "homotopy Lie components in degrees 2 and 3"},
      {"central", "degree-two center of the homotopy Lie algebra"},
      {"obstruction", "embedded deformation obstruction"},
      {"gorenstein", "socle dimension and Gorenstein verdict"},
      {"tensor", "tensor product of two algebras"},
      {"pfaffian", "generic grade-3 Pfaffian complex"},
      {"tac-check", "total acyclicity of a complex file"},
      {"trm-check", "total reflexivity of a module"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, o);
    const std::string name = c.name;
    if (name == "pfaffian") {
      sub->add_option("--size", o.size, "odd size d")->required();
      sub->add_option("--spec", o.spec, "assignment file")->check(CLI::ExistingFile);
      continue;
    }
    if (name == "trm-check") {
      sub->add_option("file", o.files, "algebra file")->check(CLI::ExistingFile);
      sub->add_option("--complex", o.complex, "complex file; check a syzygy of it")->check(CLI::ExistingFile);
      sub->add_option("--position", o.position, "homological position of the syzygy");
      sub->add_option("--depth", o.depth, "Ext vanishing is checked for 1..depth")->check(CLI::PositiveNumber);
      sub->add_option("--module", o.module, "named module in the algebra file (default k)");
      continue;
    }
    sub->add_option("files", o.files, name == "tensor" ? "two algebra files" : "input file")
        ->required()
        ->check(CLI::ExistingFile);
    if (name == "resolve" || name == "poincare") sub->add_option("--module", o.module, "named module (default k)");
    if (name == "obstruction" || name == "gorenstein")
      sub->add_flag("--tensor", o.tensor, "read the files as tensor factors");
    if (name == "pi" || name == "central" || name == "obstruction")
      sub->add_flag("--allow-non-koszul", o.allow_non_koszul, "extract Lie data even if the smoke test fails");
    if (name == "tensor") sub->add_option("-o,--output", o.output, "write the product algebra file here");
    if (name == "tac-check")
      sub->add_option("--base-change", o.base_change, "algebra file to base change into")
          ->check(CLI::ExistingFile);
  }

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "tacalc: " << e.what() << "\n";
    return 2;
  }
  o.command = app.get_subcommands().front()->get_name();

  Report report(o.command, std::vector<std::string>(args.begin() + 1, args.end()));
  try {
    const Field f = cli::choose_field(o);
    report.set_field(f.to_string());
    if (f.characteristic() == 3)
      report.warn("characteristic 3 is allowed but results in it have not been validated separately");
    if (f.is_rational())
      cli::Session<Rational>(o, f, report).run();
    else
      cli::Session<Zp>(o, f, report).run();
  } catch (const Error& e) {
    report.error(e);
    err << "tacalc: " << e.what() << "\n";
  }
  out << (o.format == "text" ? report.text() : report.json());
  return report.exit_status();
}

}  // namespace tacalc
