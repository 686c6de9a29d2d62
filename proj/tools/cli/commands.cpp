#include "commands.hpp"

#include "stabpair/pairs/catalog.hpp"
#include "stabpair/verify/criteria.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace stabpair::cli {

namespace {

Mode mode_of(const RunConfig& c) {
  if (c.mode == "exact") return Mode::exact;
  if (c.mode == "float") return Mode::float_mode;
  throw SchemaError("--mode must be exact or float");
}

const std::string& need(const std::string& value, const std::string& fallback, const char* flag) {
  if (!value.empty()) return value;
  if (!fallback.empty()) return fallback;
  throw SchemaError(std::string("missing ") + flag);
}

RepVector poly_input(const RunConfig& c) { return rep_vector_from(load_document(need(c.poly, c.input, "--poly")), mode_of(c)); }

FloatPolynomial float_poly_input(const RunConfig& c) {
  auto v = poly_input(c);
  if (!v.is_polynomial()) throw SchemaError("--poly must hold a polynomial");
  return std::get<FloatPolynomial>(v.to_float().storage());
}

ExactPolynomial exact_poly_input(const RunConfig& c) {
  if (mode_of(c) != Mode::exact) throw PreconditionError("this command needs exact data (--mode exact)");
  auto v = poly_input(c);
  if (!v.is_polynomial()) throw SchemaError("--poly must hold a polynomial");
  return std::get<ExactPolynomial>(v.storage());
}

Pair pair_input(const RunConfig& c) { return pair_from(load_document(need(c.pair, c.input, "--pair")), mode_of(c)); }

RationalCurve curve_input(const RunConfig& c) { return curve_from(load_document(need(c.curve, c.input, "--curve"))); }

FloatMatrix sigma_input(const RunConfig& c, int n) {
  if (c.sigma.empty()) return FloatMatrix::identity(n);
  auto s = sigma_from(load_document(c.sigma));
  require_dims(s.rows() == n, "--sigma does not match the group size");
  return s;
}

double index_input(const RunConfig& c) {
  if (c.p == "inf") return kInfinityIndex;
  try {
    std::size_t used = 0;
    double p = std::stod(c.p, &used);
    if (used != c.p.size()) throw SchemaError("bad --p");
    return p;
  } catch (const std::logic_error&) {
    throw SchemaError("bad --p \"" + c.p + "\"");
  }
}

int int_input(const std::string& text, int fallback) { return text.empty() ? fallback : int_list_from(text).at(0); }

SamplingOptions sampling_input(const RunConfig& c) {
  require(c.samples >= 1000, "--samples must be at least 1000");
  require(c.threads >= 1, "--threads must be positive");
  SamplingOptions s;
  s.samples = c.samples;
  s.seed = c.seed;
  s.threads = c.threads;
  return s;
}

DescentOptions descent_input(const RunConfig& c, int default_restarts) {
  DescentOptions d;
  d.restarts = c.restarts.value_or(default_restarts);
  require(d.restarts >= 1, "--restarts must be positive");
  d.seed = c.seed;
  return d;
}

/// XPair from --curve, or from a hypersurface given by --poly.
XPair xpair_input(const RunConfig& c) {
  auto s = sampling_input(c);
  if (!c.curve.empty() || (c.poly.empty() && !c.input.empty() && load_document(c.input).contains("gamma")) ||
      (c.poly.empty() && !c.input.empty() && load_document(c.input).contains("rational_normal")))
    return build_x_pair(curve_input(c), s);
  auto f = exact_poly_input(c);
  require_dims(f.shape().kind == VariableShape::Kind::vector && f.shape().cols >= 3,
               "hypersurface forms need n + 2 >= 3 variables");
  return build_x_pair(HypersurfaceVariety(f.shape().cols - 2, f), s);
}

Json points_json(const std::vector<WeightCharacter>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) {
    Json row = Json::array();
    for (const auto& q : p.projected()) row.push_back(to_json(q));
    out.push_back(row);
  }
  return out;
}

Json raw_points_json(const std::vector<WeightCharacter>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(p.raw);
  return out;
}

Json polytope_json(const LatticePolytope& p) {
  Json j;
  j["points"] = points_json(p.points());
  j["vertices"] = points_json(p.vertices());
  j["raw_points"] = raw_points_json(p.points());
  j["projected"] = true;
  return j;
}

Json forms_json(const ExactPolynomial& raw) {
  auto n = normalize_form(raw);
  Json j;
  j["degree"] = raw.degree();
  j["terms"] = raw.terms().size();
  j["normalization_factor"] = to_json(n.factor);
  j["normalized"] = to_json(n.form);
  j["raw"] = to_json(raw);
  return j;
}

Json estimate_json(double value, double stderr_value) {
  return Json{{"value", number(value)}, {"stderr", number(stderr_value)}};
}

// ---- handlers ----

CommandOutput cmd_polytope(const RunConfig& c) {
  Json r;
  if (!c.pair.empty()) {
    auto p = pair_input(c);
    auto nv = p.v().polytope(), nw = p.w().polytope();
    auto cont = contains(nv, nw);
    r["v"] = polytope_json(nv);
    r["w"] = polytope_json(nw);
    r["contained"] = cont.contained;
    r["witness"] = cont.witness ? to_json(*cont.witness) : Json(nullptr);
    r["minkowski_sum"] = polytope_json(minkowski_sum(nv, nw));
    return {r};
  }
  auto v = poly_input(c);
  auto poly = v.polytope();
  r = polytope_json(poly);
  r["rep_degree"] = v.rep_degree();
  r["support_size"] = v.support().size();
  if (!c.k.empty()) {
    const int k = int_input(c.k, 1);
    r["scaled"] = Json{{"k", k}, {"vertices", points_json(scale(poly, k).vertices())}};
  }
  return {r};
}

CommandOutput cmd_weight(const RunConfig& c) {
  if (c.lambda.empty()) throw SchemaError("missing --lambda");
  auto v = poly_input(c);
  auto l = lambda_from(c.lambda);
  require_dims(l.size() == v.group_size(), "--lambda length must equal N + 1");
  Json r;
  r["lambda"] = to_json(l);
  r["weight"] = v.polytope().min_pairing(l);
  if (!c.sigma.empty()) {
    auto s = sigma_input(c, v.group_size());
    auto acted = v.act(s);
    r["acted"] = to_json(acted);
    r["acted_weight"] = acted.polytope().min_pairing(l);
  }
  return {r};
}

Json torus_json(const TorusResult& t) {
  return Json{{"semistable", t.semistable}, {"witness", t.witness ? to_json(*t.witness) : Json(nullptr)}};
}

CommandOutput cmd_pair_check(const RunConfig& c) {
  auto p = pair_input(c);
  Json r;
  auto torus = torus_semistable(p);
  r["torus"] = torus_json(torus);
  std::string verdict = torus.semistable ? "torus-pass" : "torus-fail";
  if (torus.semistable) {
    const int trials = int_input(c.k, 10);
    auto probe = randomized_torus_probe(p, trials, c.seed);
    Json pj;
    pj["passed"] = probe.passed;
    pj["trials_run"] = probe.trials_run;
    pj["failing_trial"] = probe.failing_trial ? Json(*probe.failing_trial) : Json(nullptr);
    pj["conjugator_kind"] = probe.conjugator_kind;
    pj["conjugator"] = probe.conjugator ? to_json(*probe.conjugator) : Json(nullptr);
    pj["witness"] = probe.witness ? to_json(*probe.witness) : Json(nullptr);
    r["probe"] = pj;
    if (!probe.passed) verdict = "torus-fail";
  }
  r["witness"] = torus.witness ? to_json(*torus.witness) : r.contains("probe") ? r["probe"]["witness"] : Json(nullptr);
  if (c.restarts) {
    auto cert = descend(p, descent_input(c, 1));
    r["descent"] = to_json(cert);
    if (verdict == "torus-pass") verdict = to_string(cert.verdict);
  }
  if (!c.sigma.empty()) {
    auto s = sigma_input(c, p.group_size());
    r["kempf_ness"] = Json{{"value", number(kempf_ness_value(s, p))}, {"gradient", to_json(kempf_ness_gradient(s, p))}};
  }
  r["verdict"] = verdict;
  return {r};
}

CommandOutput cmd_stable_check(const RunConfig& c) {
  auto p = pair_input(c);
  const int m = c.m.value_or(1);
  auto tp = build_stable_test_pair(p, m);
  auto cert = stable_probe(p, m, int_input(c.k, 10), descent_input(c, 5));
  Json r;
  r["m"] = tp.m;
  r["q"] = tp.q;
  r["certificate"] = to_json(cert);
  r["verdict"] = to_string(cert.verdict);
  return {r};
}

CommandOutput cmd_mahler(const RunConfig& c) {
  auto p = float_poly_input(c);
  const double index = index_input(c);
  auto s = sampling_input(c);
  Json r;
  r["estimate"] = to_json(lp_norm(p, index, s));
  if (index == 0.0) {
    auto t = conformal_theta(p, s);
    r["theta"] = estimate_json(t.theta, t.stderr_value);
  }
  return {r};
}

CommandOutput cmd_supnorm(const RunConfig& c) {
  auto p = float_poly_input(c);
  SupNormOptions o;
  o.seed = c.seed;
  auto rep = sup_norm(p, o);
  Json r;
  r["log_value"] = number(rep.log_value);
  r["stationarity"] = number(rep.stationarity);
  r["converged"] = rep.converged;
  r["starts"] = rep.starts;
  Json arg = Json::array();
  for (const auto& z : rep.argmax) arg.push_back(to_json(z));
  r["argmax"] = arg;
  r["value_at_argmax"] = to_json(p.evaluate(rep.argmax));
  r["fs_pointwise_at_argmax"] = number(fs_pointwise(p, rep.argmax));
  r["lower_bound"] = true;
  return {r};
}

CommandOutput cmd_arestov(const RunConfig& c) {
  auto p = float_poly_input(c);
  auto s = sampling_input(c);
  auto a = arestov_check(p, s);
  const double index = c.p == "0" ? 2.0 : index_input(c);
  auto j = jensen_check(p, index, s);
  Json r;
  r["arestov"] = Json{{"N", a.n},
                      {"degree", a.degree},
                      {"mahler", to_json(a.mahler)},
                      {"log_sup", number(a.sup.log_value)},
                      {"lower_bound", number(a.lower_bound)},
                      {"lower_margin", number(a.lower_margin)},
                      {"upper_margin", number(a.upper_margin)},
                      {"slack", number(a.slack)},
                      {"lower_ok", a.lower_ok},
                      {"upper_ok", a.upper_ok}};
  r["jensen"] = Json{{"mahler", to_json(j.mahler)},
                     {"lp", to_json(j.lp)},
                     {"margin", number(j.margin)},
                     {"slack", number(j.slack)},
                     {"ok", j.ok}};
  return {r};
}

CommandOutput cmd_chow(const RunConfig& c) {
  if (!c.pair.empty()) {
    auto p = pair_input(c);
    if (!p.is_exact() || !p.v().is_polynomial() || !p.w().is_polynomial())
      throw PreconditionError("resultants take exact binary forms");
    auto f = binary_form_of(std::get<ExactPolynomial>(p.v().storage()));
    auto g = binary_form_of(std::get<ExactPolynomial>(p.w().storage()));
    return {Json{{"resultant", to_json(sylvester_resultant(f, g))}}};
  }
  return {forms_json(chow_form_curve(curve_input(c)))};
}

CommandOutput cmd_hurwitz(const RunConfig& c) {
  if (!c.poly.empty()) {
    auto f = binary_form_of(exact_poly_input(c));
    return {Json{{"discriminant", to_json(binary_discriminant(f))},
                  {"convention", "Res(df/ds, df/dt) / divisor"},
                  {"divisor", to_json(mpq_class(discriminant_divisor(f.degree())))}}};
  }
  return {forms_json(hurwitz_form_curve(curve_input(c)))};
}

CommandOutput cmd_chow_hyp(const RunConfig& c) {
  auto f = exact_poly_input(c);
  require_dims(f.shape().kind == VariableShape::Kind::vector && f.shape().cols >= 3,
               "hypersurface forms need n + 2 >= 3 variables");
  HypersurfaceVariety h(f.shape().cols - 2, f);
  Json r = forms_json(chow_form_hypersurface(h));
  r["n"] = h.n;
  return {r};
}

CommandOutput cmd_xpair(const RunConfig& c) { return {to_json(xpair_input(c))}; }

LogTanEstimate distance_estimate(const RunConfig& c, double index, Json& r) {
  if (!c.pair.empty()) {
    auto p = pair_input(c);
    auto est = log_tan_dist_p(sigma_input(c, p.group_size()), p, index, sampling_input(c));
    if (c.restarts) r["orbit_distance"] = to_json(orbit_distance(p, index, descent_input(c, 1), sampling_input(c)));
    return est;
  }
  auto xp = xpair_input(c);
  auto est = log_tan_dist_p(sigma_input(c, xp.ambient + 1), xp, index);
  if (c.restarts) r["orbit_distance"] = to_json(orbit_distance(xp, index, descent_input(c, 1)));
  return est;
}

CommandOutput cmd_distance(const RunConfig& c) {
  const double index = index_input(c);
  require(std::isfinite(index), "distances need a finite --p");
  Json r;
  auto est = distance_estimate(c, index, r);
  r["p"] = number(est.p);
  r["log_tan"] = number(est.log_tan);
  r["log_tan_sq"] = number(est.log_tan_sq);
  r["stderr"] = number(est.stderr_value);
  r["reported"] = "log_tan_sq";
  return {r};
}

CommandOutput cmd_kenergy(const RunConfig& c) {
  auto xp = xpair_input(c);
  auto e = k_energy_algebraic(sigma_input(c, xp.ambient + 1), xp);
  return {estimate_json(e.value, e.stderr_value)};
}

CommandOutput cmd_aubin(const RunConfig& c) {
  auto xp = xpair_input(c);
  auto e = aubin_f0_algebraic(sigma_input(c, xp.ambient + 1), xp);
  return {estimate_json(e.value, e.stderr_value)};
}

CommandOutput cmd_coercivity(const RunConfig& c) {
  auto xp = xpair_input(c);
  const int m = c.m.value_or(1), k = int_input(c.k, 1);
  auto e = coercivity_value(sigma_input(c, xp.ambient + 1), xp, m, k);
  Json r = estimate_json(e.value, e.stderr_value);
  r["m"] = m;
  r["k"] = k;
  r["q"] = static_cast<long>(xp.deg_r) * xp.deg_delta;
  return {r};
}

CommandOutput cmd_oracle(const RunConfig& c) {
  auto curve = curve_input(c);
  OracleOptions o;
  o.threads = c.threads;
  auto rep = curve_geometry_oracle(sigma_input(c, curve.ambient() + 1), curve, o);
  if (!rep.converged) throw ConvergenceError("quadrature did not converge; last change " + std::to_string(rep.last_change));
  return {to_json(rep)};
}

CommandOutput cmd_asymptotic(const RunConfig& c) {
  auto curve = curve_input(c);
  auto ks = c.k.empty() ? std::vector<int>{1, 2} : int_list_from(c.k);
  auto family = rational_normal_family(curve.degree(), ks, sampling_input(c));
  auto rows = asymptotic_report(family, descent_input(c, 1));
  Json table = Json::array();
  for (const auto& row : rows)
    table.push_back(Json{{"k", row.k},
                         {"degree", row.degree},
                         {"N", row.ambient},
                         {"inf_log_tan_sq", number(row.inf_log_tan_sq)},
                         {"neg_inf", number(row.neg_inf)},
                         {"by_k_2n", number(row.by_k_2n)},
                         {"by_k_2n1", number(row.by_k_2n1)},
                         {"by_degree_2n", number(row.by_degree_2n)},
                         {"by_degree_2n1", number(row.by_degree_2n1)},
                         {"verdict", row.verdict}});
  return {Json{{"rows", table}, {"reported", "log_tan_sq"}}};
}

CommandOutput cmd_verify(const RunConfig& c) {
  VerifyOptions o;
  o.seed = c.seed;
  o.threads = c.threads;
  o.samples = c.samples;
  require(o.samples >= 1000, "--samples must be at least 1000");
  auto suites = c.suites.empty() ? std::vector<std::string>{"all"} : c.suites;
  Json list = Json::array();
  int failed = 0;
  for (const auto& s : suites)
    for (const auto& r : run_suite(s, o)) {
      Json m;
      for (const auto& [k, v] : r.metrics) m[k] = number(v);
      list.push_back(Json{{"id", r.id},
                          {"name", r.name},
                          {"suite", r.suite},
                          {"passed", r.passed},
                          {"summary", r.summary},
                          {"metrics", m}});
      failed += !r.passed;
    }
  return {Json{{"criteria", list}, {"failed", failed}}, failed ? 1 : 0};
}

}  // namespace

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> t = {
      {"polytope", "weight polytope, containment and Minkowski sums",
       {"support", "weight_polytope", "contains", "minkowski_sum", "scale", "rep_degree"}, cmd_polytope},
      {"weight", "weight of a one-parameter subgroup, optionally after acting", {"psg_weight", "act"}, cmd_weight},
      {"pair-check", "torus test, conjugated probe, descent",
       {"torus_semistable", "randomized_torus_probe", "kempf_ness_value", "kempf_ness_gradient", "descend"},
       cmd_pair_check},
      {"stable-check", "stability probe of the tensored pair", {"build_stable_test_pair", "stable_probe"},
       cmd_stable_check},
      {"mahler", "L^p or Mahler norm estimate", {"lp_norm", "conformal_theta"}, cmd_mahler},
      {"supnorm", "sup norm lower bound", {"sup_norm", "fs_pointwise", "evaluate"}, cmd_supnorm},
      {"arestov", "Arestov sandwich and Jensen ordering", {"arestov_check", "jensen_check"}, cmd_arestov},
      {"chow", "Chow form of a rational curve, or a resultant", {"chow_form_curve", "sylvester_resultant"}, cmd_chow},
      {"hurwitz", "Hurwitz form of a rational curve, or a discriminant",
       {"hurwitz_form_curve", "binary_discriminant"}, cmd_hurwitz},
      {"chow-hyp", "Chow form of a hypersurface", {"chow_form_hypersurface", "maximal_minors"}, cmd_chow_hyp},
      {"xpair", "the pair (R, Delta) of a variety", {"build_x_pair"}, cmd_xpair},
      {"distance", "log tan^2 distance and orbit distance", {"log_tan_dist_p", "orbit_distance"}, cmd_distance},
      {"kenergy", "K-energy from norms of R and Delta", {"k_energy_algebraic"}, cmd_kenergy},
      {"aubin", "F0 from the Chow norm", {"aubin_f0_algebraic"}, cmd_aubin},
      {"coercivity", "coercivity expression", {"coercivity_value"}, cmd_coercivity},
      {"oracle", "quadrature oracle for curves", {"curve_geometry_oracle"}, cmd_oracle},
      {"asymptotic", "distance against k^2n and k^(2n+1)", {"asymptotic_report"}, cmd_asymptotic},
      {"verify", "acceptance suites", {"run"}, cmd_verify},
  };
  return t;
}

const std::vector<std::pair<std::string, std::vector<std::string>>>& module_operations() {
  static const std::vector<std::pair<std::string, std::vector<std::string>>> m = {
      {"polynomial-core", {"evaluate", "act", "sylvester_resultant", "binary_discriminant", "maximal_minors"}},
      {"weight-lattice", {"support", "weight_polytope", "psg_weight", "contains", "minkowski_sum", "scale", "rep_degree"}},
      {"pair-stability",
       {"torus_semistable", "randomized_torus_probe", "kempf_ness_value", "kempf_ness_gradient", "descend",
        "build_stable_test_pair", "stable_probe"}},
      {"variety-forms", {"chow_form_curve", "hurwitz_form_curve", "chow_form_hypersurface", "build_x_pair"}},
      {"norms-energy",
       {"fs_pointwise", "lp_norm", "sup_norm", "arestov_check", "jensen_check", "conformal_theta", "log_tan_dist_p",
        "orbit_distance", "k_energy_algebraic", "aubin_f0_algebraic", "coercivity_value", "curve_geometry_oracle",
        "asymptotic_report"}},
      {"cli", {"run"}},
  };
  return m;
}

namespace {

void render_text(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pair stability, variety forms and energy functionals"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::vector<std::pair<CLI::App*, const CommandSpec*>> subs;
  for (const auto& spec : command_table()) {
    auto* sub = app.add_subcommand(spec.name, spec.summary);
    if (spec.name == "verify")
      sub->add_option("suites", cfg.suites, "norms, weights, forms, pairs, energy or all");
    else
      sub->add_option("input", cfg.input, "input document (same as the matching flag)");
    sub->add_option("--poly", cfg.poly, "polynomial or tensor JSON");
    sub->add_option("--pair", cfg.pair, "pair JSON");
    sub->add_option("--curve", cfg.curve, "curve JSON");
    sub->add_option("--sigma", cfg.sigma, "group element JSON");
    sub->add_option("--lambda", cfg.lambda, "one-parameter subgroup, e.g. 1,-1");
    sub->add_option("--p", cfg.p, "norm index (0 is Mahler, inf allowed for mahler)");
    sub->add_option("--m", cfg.m, "tensor power m");
    sub->add_option("--k", cfg.k, "embedding power, trial count, or list of powers");
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples");
    sub->add_option("--seed", cfg.seed, "base seed");
    sub->add_option("--restarts", cfg.restarts, "descent restarts (enables descent where optional)");
    sub->add_option("--threads", cfg.threads, "worker threads");
    sub->add_option("--mode", cfg.mode, "exact or float");
    sub->add_flag("--text", cfg.text, "aligned text instead of JSON");
    subs.emplace_back(sub, &spec);
  }

  const CommandSpec* chosen = nullptr;
  auto emit_error = [&](const char* kind, const std::string& what, int code) {
    Json j;
    j["schema"] = "v1";
    j["command"] = chosen ? Json(chosen->name) : Json(nullptr);
    j["error"] = Json{{"kind", kind}, {"message", what}};
    out << j.dump(2) << "\n";
    err << "error (" << kind << "): " << what << "\n";
    return code;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return emit_error("schema", e.what(), 2);
  }
  for (const auto& [sub, spec] : subs)
    if (sub->parsed()) chosen = spec;

  try {
    CommandOutput result = chosen->handler(cfg);
    Json doc;
    doc["schema"] = "v1";
    doc["command"] = chosen->name;
    doc["config"] = Json{{"seed", cfg.seed}, {"samples", cfg.samples}, {"threads", cfg.threads}, {"mode", cfg.mode}};
    doc["result"] = result.result;
    if (cfg.text) {
      std::vector<std::pair<std::string, std::string>> rows;
      render_text(doc, "", rows);
      std::size_t width = 0;
      for (const auto& r : rows) width = std::max(width, r.first.size());
      for (const auto& [k, v] : rows) out << k << std::string(width + 2 - k.size(), ' ') << v << "\n";
    } else {
      out << doc.dump(2) << "\n";
    }
    return result.status;
  } catch (const SchemaError& e) {
    return emit_error("schema", e.what(), 2);
  } catch (const nlohmann::json::exception& e) {
    return emit_error("schema", e.what(), 2);
  } catch (const PreconditionError& e) {
    return emit_error("precondition", e.what(), 3);
  } catch (const ConvergenceError& e) {
    return emit_error("convergence", e.what(), 4);
  }
}

}  // namespace stabpair::cli
