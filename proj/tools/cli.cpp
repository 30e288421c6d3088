#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "json_io.hpp"
#include "report.hpp"
#include "shimura/cartier.hpp"
#include "shimura/deuring.hpp"
#include "shimura/display.hpp"
#include "shimura/pel.hpp"
#include "shimura/random.hpp"
#include "shimura/semilinear.hpp"
#include "shimura/stability.hpp"

namespace shimura::cli {

namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every flag any subcommand understands; only the active subcommand's are set.
struct Options {
  std::string report = "json";
  std::uint64_t seed = 1;
  std::string input;

  std::optional<std::uint64_t> p;
  std::optional<int> m;
  std::optional<int> n;
  std::optional<int> d;
  std::optional<int> g;
  std::vector<int> f;
  std::optional<int> samples;
  std::string bound = "1";
  bool model = false;

  std::optional<int> truncation;
  int s = 2;
  std::string source = "phi_1";
  std::string target = "phi_1*";
  bool tune = false;
  std::string phi;

  std::optional<std::uint64_t> up_to;
  unsigned threads = 1;

  std::optional<int> rank;
  std::string kind = "flat";
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string(flag) + " is required");
  return *v;
}

Json load_input(const std::string& source) {
  if (source.empty()) throw UsageError("--input is required");
  const auto first = std::find_if_not(source.begin(), source.end(),
                                      [](unsigned char c) { return std::isspace(c); });
  if (first != source.end() && (*first == '{' || *first == '[')) return io::parse_text(source);
  std::ifstream file(source);
  if (!file) throw UsageError("cannot open input file " + source);
  std::ostringstream text;
  text << file.rdbuf();
  return io::parse_text(text.str());
}

Rational parse_rational(const std::string& text) {
  static const std::regex re(R"(^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw UsageError("malformed rational " + text);
  const std::int64_t den = m[2].matched ? std::stoll(m[2].str()) : 1;
  if (den == 0) throw UsageError("zero denominator in " + text);
  return Rational(std::stoll(m[1].str()), den);
}

Json rational_or_integer(const Rational& r) {
  if (r.denominator() == 1) return Json(r.numerator());
  return io::to_json(r);
}

PelDatum resolve_datum(const Options& o) {
  if (!o.input.empty()) return io::parse_datum(load_input(o.input));
  const int n = need(o.n, "--n");
  std::vector<int> f = o.f.empty() ? std::vector<int>{n} : o.f;
  return PelDatum::make(need(o.p, "--p"), n, std::move(f), need(o.g, "--g"));
}

// --- witt ---------------------------------------------------------------

Json witt_check(const Options& o) {
  const WittContext ctx = make_context(need(o.p, "--p"), o.m.value_or(1), o.n.value_or(4));
  const int samples = o.samples.value_or(50);
  if (samples < 1) throw UsageError("--samples must be positive");
  Rng rng(o.seed);
  const int deg = ctx.degree();
  const mpz_class p(static_cast<unsigned long>(ctx.p()));
  auto random_residue = [&] {
    std::vector<std::uint64_t> r(deg);
    for (auto& x : r) x = uniform_below(rng, ctx.p());
    return r;
  };

  bool order = true, hom = true, lifts = true, inverse = true;
  bool teich_mult = true, teich_frob = true, units = true;
  for (int i = 0; i < samples; ++i) {
    const WittElem x = random_elem(rng, ctx);
    const WittElem y = random_elem(rng, ctx);
    WittElem z = x;
    for (int k = 0; k < deg; ++k) z = z.frobenius(1);
    order = order && z == x;
    hom = hom && (x + y).frobenius(1) == x.frobenius(1) + y.frobenius(1) &&
          (x * y).frobenius(1) == x.frobenius(1) * y.frobenius(1);
    lifts = lifts && x.frobenius(1).residue() == x.pow(p).residue();
    inverse = inverse && x.frobenius(-1).frobenius(1) == x;

    const auto a = random_residue();
    const auto b = random_residue();
    const auto ab = (ctx.lift_residue(a) * ctx.lift_residue(b)).residue();
    const WittElem ta = teichmuller(ctx, a);
    teich_mult = teich_mult && ta * teichmuller(ctx, b) == teichmuller(ctx, ab);
    teich_frob = teich_frob && ta.frobenius(1) == ta.pow(p);

    const WittElem u = random_unit(rng, ctx);
    units = units && u * u.inverse() == ctx.one();
  }
  Json checks{{"sigma_order_m", order},
              {"sigma_ring_homomorphism", hom},
              {"sigma_lifts_p_power", lifts},
              {"sigma_inverse", inverse},
              {"teichmuller_multiplicative", teich_mult},
              {"teichmuller_sigma_is_p_power", teich_frob},
              {"unit_inverse", units}};
  bool ok = true;
  for (const auto& [key, value] : checks.items()) ok = ok && value.get<bool>();
  return Json{{"ctx", io::to_json(ctx)},
              {"sigma_generator", io::to_json(ctx.generator().frobenius(1))},
              {"samples", samples},
              {"checks", checks},
              {"ok", ok}};
}

// --- semilinear ---------------------------------------------------------

Json newton_slopes_cmd(const Options& o) {
  const FCrystal c = io::parse_crystal(load_input(o.input));
  return Json{{"slopes", io::to_json(newton_slopes(c, parse_rational(o.bound)))}};
}

Json p_rank_cmd(const Options& o) {
  const FCrystal c = io::parse_crystal(load_input(o.input));
  Json out{{"p_rank", p_rank(c)}};
  if (c.verschiebung()) out["v_rank"] = v_rank(c);
  return out;
}

// --- pel ----------------------------------------------------------------

Json pel_decompose(const Options& o) {
  const PelDatum datum = resolve_datum(o);
  Json embeddings = Json::array();
  for (const auto& e : build_embeddings(datum)) embeddings.push_back(label(datum, e));
  Json summands = Json::array();
  int total = 0;
  for (const auto& s : summand_table(datum)) {
    summands.push_back(Json{{"embedding", label(datum, s.embedding)},
                            {"rank_10", s.rank_10},
                            {"rank_01", s.rank_01},
                            {"deg_10", s.deg_10},
                            {"deg_01", s.deg_01},
                            {"higgs_type", std::string(name(s.higgs_type))}});
    total += s.rank_10 + s.rank_01;
  }
  return Json{{"datum", io::to_json(datum)},
              {"embeddings", embeddings},
              {"summands", summands},
              {"total_rank", total}};
}

Json frobenius_chain_cmd(const Options& o) {
  const PelDatum datum = resolve_datum(o);
  Json edges = Json::array();
  for (const auto& e : frobenius_chain(datum))
    edges.push_back(Json{{"source", label(datum, e.source)},
                         {"target", label(datum, e.target)},
                         {"tag", std::string(name(e.tag))},
                         {"may_degenerate", may_degenerate(e.tag)}});
  return Json{{"datum", io::to_json(datum)}, {"edges", edges}};
}

Json polygon_report(const NewtonPolygon& np) {
  return Json{{"slopes", io::to_json(np)},
              {"vertices", io::vertices_json(np)},
              {"height", np.height()},
              {"rise", rational_or_integer(np.total_rise())},
              {"self_dual", is_self_dual(np)}};
}

Json polygons(const Options& o) {
  const PelDatum datum = resolve_datum(o);
  const NewtonPolygon generic = assemble_global_polygon(datum, false);
  const NewtonPolygon ss = assemble_global_polygon(datum, true);
  Json out{{"datum", io::to_json(datum)},
           {"generic", polygon_report(generic)},
           {"supersingular", polygon_report(ss)},
           {"supersingular_above_generic", lies_above(ss, generic)}};
  if (o.model) {
    Json model;
    for (const bool supersingular : {false, true}) {
      const FCrystal c = orbit1_model_crystal(datum.p, datum.d(), supersingular);
      model[supersingular ? "supersingular" : "generic"] =
          newton_slopes(c) == orbit1_polygon(datum.d(), supersingular);
    }
    out["model_check"] = model;
  }
  return out;
}

Json mass_formula_cmd(const Options& o, std::ostream& err) {
  const MassFormula mf = mass_formula(need(o.p, "--p"), need(o.d, "--d"), need(o.g, "--g"));
  Json out{{"S", mf.count}, {"cycle_form", rational_or_integer(mf.cycle_form)}};
  if (mf.degenerate) {
    out["degenerate"] = true;
    err << "warning: genus below 2 lies outside the hyperbolic range; the count is formal\n";
  }
  return out;
}

// --- display ------------------------------------------------------------

struct TemplateSetup {
  PelDatum datum;
  TemplateParams params;
  Display display;
};

// Kills the constant term of the phi_1 -> phi_1* equation at s = 2.
void tune_params(TemplateParams& t) {
  t.at("a1*") = -(t.at("c1*") * t.at("b2").frobenius(1) * t.at("a2").frobenius(1).inverse());
}

TemplateSetup template_setup(const Options& o, bool tune) {
  if (!o.input.empty()) {
    const Json j = load_input(o.input);
    if (!j.is_object() || !j.contains("ctx")) raise(ErrorKind::ParseError, "missing field \"ctx\"");
    const WittContext ctx = io::parse_context(j.at("ctx"));
    const int g = j.contains("g") ? j.at("g").get<int>() : 2;
    TemplateParams params;
    if (!j.contains("params") || !j.at("params").is_object())
      raise(ErrorKind::ParseError, "missing object \"params\"");
    for (const auto& key : template_parameter_names()) {
      if (!j.at("params").contains(key)) raise(ErrorKind::ParseError, "missing parameter " + key);
      params.emplace(key, io::parse_elem(ctx, j.at("params").at(key)));
    }
    if (tune) tune_params(params);
    PelDatum datum = template_datum(ctx.p(), g);
    Display disp = pel_display_template(datum, params);
    return {std::move(datum), std::move(params), std::move(disp)};
  }
  const std::uint64_t p = o.p.value_or(3);
  const WittContext ctx = make_context(p, o.m.value_or(1), o.n.value_or(2));
  PelDatum datum = template_datum(p, o.g.value_or(2));
  Rng rng(o.seed);
  // Redraw until (A B; C D) is invertible; the seed fixes which draw wins.
  constexpr int kAttempts = 256;
  for (int attempt = 1;; ++attempt) {
    TemplateParams params = random_template_params(rng, ctx);
    if (tune) tune_params(params);
    try {
      Display disp = pel_display_template(datum, params);
      return {std::move(datum), std::move(params), std::move(disp)};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonUnitWhereUnitRequired || attempt == kAttempts) throw;
    }
  }
}

Json params_json(const TemplateParams& params) {
  Json out;
  for (const auto& key : template_parameter_names()) out[key] = io::to_json(params.at(key));
  return out;
}

Json display_deform(const Options& o) {
  const TemplateSetup setup = template_setup(o, false);
  const Display& disp = setup.display;
  const DeformedDisplay dd = deform(disp, o.truncation.value_or(0));
  if (o.s < 1) throw UsageError("--s must be positive");
  return Json{{"ctx", io::to_json(disp.context())},
              {"params", params_json(setup.params)},
              {"N", dd.truncation()},
              {"s", o.s},
              {"a_plus_tc", io::to_json(dd.a_plus_tc())},
              {"hasse_witt", io::to_json(hasse_witt_iterate(dd, o.s))}};
}

Json degeneracy(const Options& o) {
  if (o.s < 1) throw UsageError("--s must be positive");
  const TemplateSetup setup = template_setup(o, o.tune);
  const Display& disp = setup.display;
  const DeformedDisplay dd = deform(disp, o.truncation.value_or(0));
  const Embedding source = io::parse_label(setup.datum, o.source);
  const Embedding target = io::parse_label(setup.datum, o.target);
  const TPoly eq = degeneracy_equation(dd, source, target, o.s);
  const TemplateParams& t = setup.params;
  const WittElem linear =
      t.at("b1*") * t.at("a2").frobenius(1) + t.at("d1*") * t.at("b2").frobenius(1);
  const WittContext residue = disp.context().with_precision(1);
  return Json{{"source", o.source},
              {"target", o.target},
              {"s", o.s},
              {"N", dd.truncation()},
              {"tuned", o.tune},
              {"params", params_json(t)},
              {"equation", io::to_json(eq)},
              {"multiplicity", multiplicity_at_zero(eq)},
              {"linear_coefficient", io::to_json(linear.reduce_to(residue))},
              {"linear_coefficient_unit", linear.is_unit()}};
}

// --- stability ----------------------------------------------------------

Json classify_stability(const Options& o) {
  const PelDatum datum = resolve_datum(o);
  Json rows = Json::array();
  for (const auto& v : classify_summands(datum)) {
    Json history = Json::array();
    for (const auto& x : v.nu_history) history.push_back(io::to_json(x));
    rows.push_back(Json{{"embedding", label(datum, v.embedding)},
                        {"verdict", std::string(name(v.verdict))},
                        {"nu_history", history},
                        {"first_instability_step", v.first_instability_step
                                                       ? Json(*v.first_instability_step)
                                                       : Json(nullptr)},
                        {"saturates_bound", v.saturates_bound},
                        {"stable", v.stable},
                        {"p_at_least_2g", v.p_at_least_2g}});
  }
  return Json{{"datum", io::to_json(datum)}, {"verdicts", rows}};
}

Json hn_hodge(const Options& o) {
  const PelDatum datum = resolve_datum(o);
  if (o.phi.empty()) throw UsageError("--phi is required");
  const HnHodge r = hn_equals_hodge(datum, io::parse_label(datum, o.phi));
  return Json{{"embedding", o.phi},
              {"hn", io::to_json(r.hn)},
              {"hodge", io::to_json(r.hodge)},
              {"equal", r.equal},
              {"max_subline_degree", r.max_subline_degree},
              {"pullback_steps", r.chain.steps},
              {"terminal", label(datum, r.chain.terminal)}};
}

// --- deuring ------------------------------------------------------------

Json deuring_one(std::uint64_t p) {
  const SupersingularCount count = count_supersingular(p);
  const Rational mass = eichler_mass(count);
  Json js = Json::array();
  for (const auto& j : count.j_list) js.push_back(j.to_string());
  return Json{{"p", p},
              {"count", count.count},
              {"mass", std::to_string(p - 1) + "/24"},
              {"mass_reduced", io::to_json(mass)},
              {"j_list", js},
              {"squarefree", squarefree_check(p)},
              {"methods_agree", count.by_curves == count.by_polynomial}};
}

Json deuring(const Options& o) {
  if (!o.up_to) return deuring_one(need(o.p, "--p"));
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = 5; q <= *o.up_to; ++q)
    if (fp::is_prime(q)) primes.push_back(q);
  std::vector<Json> results(primes.size());
  const unsigned workers = std::max(1u, o.threads);
  // Strided work split; results land in prime order regardless of timing.
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(workers == 1 ? std::launch::deferred : std::launch::async, [&, w] {
      for (std::size_t i = w; i < primes.size(); i += workers) {
        Json r = deuring_one(primes[i]);
        r.erase("j_list");
        results[i] = std::move(r);
      }
    }));
  for (auto& job : jobs) job.get();
  bool ok = true;
  for (const auto& r : results) ok = ok && r["squarefree"].get<bool>() && r["methods_agree"].get<bool>();
  return Json{{"primes", results}, {"all_ok", ok}};
}

// --- cartier ------------------------------------------------------------

Json cartier(const Options& o) {
  ConnectionModule cm = [&] {
    if (!o.input.empty()) return io::parse_connection(load_input(o.input));
    const std::uint64_t p = o.p.value_or(5);
    const int truncation = o.truncation.value_or(static_cast<int>(2 * p));
    const int rank = o.rank.value_or(2);
    if (rank < 1) throw UsageError("--rank must be positive");
    Rng rng(o.seed);
    if (o.kind == "flat") return random_flat_trivializable(rng, p, truncation, rank);
    if (o.kind == "random")
      return ConnectionModule::make(p, truncation, random_matrix(rng, p, truncation, rank));
    throw UsageError("--kind must be flat or random");
  }();
  const PMatrix psi = p_curvature(cm);
  const bool psi_zero = is_zero_matrix(psi);
  Json out{{"connection", io::to_json(cm)},
           {"p_curvature", io::to_json(psi)},
           {"psi_zero", psi_zero},
           {"horizontal_dimension", horizontal_dimension(cm)},
           {"sections", nullptr},
           {"roundtrip", nullptr}};
  if (psi_zero) {
    try {
      out["sections"] = io::to_json(horizontal_sections(cm));
      out["roundtrip"] = descent_roundtrip(cm);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientTruncation) throw;
      out["obstruction"] = std::string(e.kind_name());
    }
  }
  return out;
}

void add_common(CLI::App* sub, Options& o, bool input, bool seed) {
  sub->add_option("--report", o.report, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
  if (input) sub->add_option("--input", o.input, "Input JSON file or inline JSON");
  if (seed) sub->add_option("--seed", o.seed, "Seed for randomized choices");
}

void add_datum(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "Prime");
  sub->add_option("--n", o.n, "Degree of the totally real field");
  sub->add_option("--f", o.f, "Local degrees, comma separated")->delimiter(',');
  sub->add_option("--g", o.g, "Genus of the Shimura curve");
  add_common(sub, o, true, false);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for Higgs bundles on PEL Shimura curves", "shimura"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::function<Json()>> handlers;

  {
    auto* sub = app.add_subcommand("witt-check", "Property checks for W_n(F_{p^m})");
    sub->add_option("--p", o.p, "Prime")->required();
    sub->add_option("--m", o.m, "Residue degree (default 1)");
    sub->add_option("--n", o.n, "Precision (default 4)");
    sub->add_option("--samples", o.samples, "Samples per check (default 50)");
    add_common(sub, o, false, true);
    handlers[sub->get_name()] = [&] { return witt_check(o); };
  }
  {
    auto* sub = app.add_subcommand("newton-slopes", "Newton slopes of an F-crystal");
    sub->add_option("--bound", o.bound, "Slope bound, e.g. 1 or 3/2");
    add_common(sub, o, true, false);
    handlers[sub->get_name()] = [&] { return newton_slopes_cmd(o); };
  }
  {
    auto* sub = app.add_subcommand("p-rank", "p-rank (and V-rank) of an F-crystal");
    add_common(sub, o, true, false);
    handlers[sub->get_name()] = [&] { return p_rank_cmd(o); };
  }
  {
    auto* sub = app.add_subcommand("pel-decompose", "Embeddings and Hodge summands");
    add_datum(sub, o);
    handlers[sub->get_name()] = [&] { return pel_decompose(o); };
  }
  {
    auto* sub = app.add_subcommand("frobenius-chain", "Tagged Frobenius chain maps");
    add_datum(sub, o);
    handlers[sub->get_name()] = [&] { return frobenius_chain_cmd(o); };
  }
  {
    auto* sub = app.add_subcommand("polygons", "Generic and supersingular Newton polygons");
    add_datum(sub, o);
    sub->add_flag("--model", o.model, "Cross-check against the model crystal");
    handlers[sub->get_name()] = [&] { return polygons(o); };
  }
  {
    auto* sub = app.add_subcommand("mass-formula", "Weighted count of Newton-jumping points");
    sub->add_option("--p", o.p, "Prime")->required();
    sub->add_option("--d", o.d, "Local degree of the distinguished prime")->required();
    sub->add_option("--g", o.g, "Genus")->required();
    add_common(sub, o, false, false);
    handlers[sub->get_name()] = [&] { return mass_formula_cmd(o, err); };
  }
  for (const char* name : {"display-deform", "degeneracy"}) {
    const bool deform_only = std::string(name) == "display-deform";
    auto* sub = app.add_subcommand(
        name, deform_only ? "Deformed 8x8 display and its Hasse-Witt iterate"
                          : "Local equation of the degeneracy locus");
    sub->add_option("--p", o.p, "Prime (default 3)");
    sub->add_option("--m", o.m, "Residue degree (default 1)");
    sub->add_option("--n", o.n, "Witt precision (default 2)");
    sub->add_option("--g", o.g, "Genus (default 2)");
    sub->add_option("--N", o.truncation, "T-truncation (default p^2 + 1)");
    sub->add_option("--s", o.s, "Iteration count (default 2)");
    if (!deform_only) {
      sub->add_option("--source", o.source, "Source embedding label (default phi_1)");
      sub->add_option("--target", o.target, "Target embedding label (default phi_1*)");
      sub->add_flag("--tune", o.tune, "Choose a1* so the constant term vanishes");
    }
    add_common(sub, o, true, true);
    handlers[sub->get_name()] = deform_only ? std::function<Json()>([&] { return display_deform(o); })
                                            : std::function<Json()>([&] { return degeneracy(o); });
  }
  {
    auto* sub = app.add_subcommand("classify-stability", "Stability verdict per summand");
    add_datum(sub, o);
    handlers[sub->get_name()] = [&] { return classify_stability(o); };
  }
  {
    auto* sub = app.add_subcommand("hn-hodge", "Harder-Narasimhan versus Hodge filtration");
    add_datum(sub, o);
    sub->add_option("--phi", o.phi, "Embedding label, e.g. phi_2")->required();
    handlers[sub->get_name()] = [&] { return hn_hodge(o); };
  }
  {
    auto* sub = app.add_subcommand("deuring", "Supersingular j-invariants and Eichler mass");
    sub->add_option("--p", o.p, "Prime >= 5");
    sub->add_option("--up-to", o.up_to, "Sweep all primes 5 <= p <= value");
    sub->add_option("--threads", o.threads, "Worker threads for the sweep (default 1)");
    add_common(sub, o, false, false);
    handlers[sub->get_name()] = [&] { return deuring(o); };
  }
  {
    auto* sub = app.add_subcommand("cartier", "p-curvature and Cartier descent");
    sub->add_option("--p", o.p, "Prime (default 5)");
    sub->add_option("--N", o.truncation, "Truncation, a multiple of p (default 2p)");
    sub->add_option("--rank", o.rank, "Rank (default 2)");
    sub->add_option("--kind", o.kind, "Random connection: flat or random (default flat)");
    add_common(sub, o, true, true);
    handlers[sub->get_name()] = [&] { return cartier(o); };
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (app.get_subcommands().empty()) err << app.help();
    return 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const Json report = handlers.at(cmd)();
    if (o.report == "table")
      out << io::render_table(report);
    else
      out << report.dump() << "\n";
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << cmd << ": " << e.what() << "\n";
    out << Json{{"error", std::string(e.kind_name())}, {"message", e.what()}}.dump() << "\n";
    return e.kind() == ErrorKind::ParseError ? 1 : 2;
  } catch (const nlohmann::json::exception& e) {
    err << cmd << ": ParseError: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace shimura::cli
