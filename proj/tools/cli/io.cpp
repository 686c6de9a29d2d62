#include "io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stabpair::cli {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

mpq_class exact_scalar(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  throw SchemaError("exact data must be integers or \"p/q\" strings");
}

double float_scalar(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v.get<std::string>()).get_d();
  throw SchemaError("expected a number");
}

GaussianRational exact_entry(const Json& t) {
  if (t.is_object()) return GaussianRational(exact_scalar(field(t, "re")), t.contains("im") ? exact_scalar(t["im"]) : 0);
  return GaussianRational(exact_scalar(t));
}

Complex float_entry(const Json& t) {
  if (t.is_object()) return {float_scalar(field(t, "re")), t.contains("im") ? float_scalar(t["im"]) : 0.0};
  return {float_scalar(t), 0.0};
}

bool is_exact_entry(const Json& t) {
  auto ok = [](const Json& v) { return v.is_string() || v.is_number_integer(); };
  if (t.is_object()) return ok(field(t, "re")) && (!t.contains("im") || ok(t["im"]));
  return ok(t);
}

VariableShape shape_from(const Json& j) {
  const Json& s = field(j, "shape");
  const std::string kind = field(s, "kind").get<std::string>();
  const int cols = int_field(s, "cols");
  if (kind == "vector") return VariableShape::vector(cols);
  if (kind == "matrix") return VariableShape::matrix(int_field(s, "rows"), cols);
  throw SchemaError("shape kind must be \"vector\" or \"matrix\"");
}

Exponent exponent_from(const Json& t) {
  const Json& e = field(t, "exp");
  if (!e.is_array()) throw SchemaError("\"exp\" must be an array");
  Exponent out;
  for (const auto& x : e) {
    if (!x.is_number_integer()) throw SchemaError("exponents must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

template <class K, class F>
Polynomial<K> polynomial_from(const Json& j, F entry) {
  Polynomial<K> p(shape_from(j), int_field(j, "degree"));
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw SchemaError("\"terms\" must be an array");
  for (const auto& t : terms) p.add_term(exponent_from(t), entry(t));
  return p;
}

SlotKind slot_from(const std::string& s) {
  if (s == "vector") return SlotKind::vector;
  if (s == "wedge2") return SlotKind::wedge2;
  if (s == "inert") return SlotKind::inert;
  throw SchemaError("unknown slot kind \"" + s + "\"");
}

template <class K, class F>
TensorVector<K> tensor_from(const Json& j, F entry) {
  std::vector<SlotKind> slots;
  for (const auto& s : field(j, "slots")) slots.push_back(slot_from(s.get<std::string>()));
  TensorVector<K> t(int_field(j, "n"), slots);
  for (const auto& e : field(j, "entries")) t.add(field(e, "index").get<std::vector<int>>(), entry(e));
  return t;
}

const char* slot_name(SlotKind k) {
  switch (k) {
    case SlotKind::vector: return "vector";
    case SlotKind::wedge2: return "wedge2";
    case SlotKind::inert: return "inert";
  }
  return "?";
}

Json shape_json(const VariableShape& s) {
  Json j;
  j["kind"] = s.kind == VariableShape::Kind::vector ? "vector" : "matrix";
  j["rows"] = s.rows;
  j["cols"] = s.cols;
  return j;
}

template <class K>
Json tensor_json(const TensorVector<K>& t) {
  Json j;
  j["kind"] = "tensor";
  j["n"] = t.group_size();
  j["slots"] = Json::array();
  for (auto s : t.slots()) j["slots"].push_back(slot_name(s));
  j["entries"] = Json::array();
  for (const auto& [idx, c] : t.coords()) {
    Json e = to_json(c);
    e["index"] = idx;
    j["entries"].push_back(e);
  }
  return j;
}

}  // namespace

Json load_document(const std::string& source) {
  Json j;
  try {
    if (!source.empty() && (source.front() == '{' || source.front() == '[')) {
      j = Json::parse(source);
    } else {
      std::ifstream in(source);
      if (!in) throw SchemaError("cannot read \"" + source + "\"");
      j = Json::parse(in);
    }
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j["schema"] != "v1")
    throw SchemaError("input documents need \"schema\": \"v1\"");
  return j;
}

ExactPolynomial exact_polynomial_from(const Json& j) { return polynomial_from<GaussianRational>(j, exact_entry); }

FloatPolynomial float_polynomial_from(const Json& j) { return polynomial_from<Complex>(j, float_entry); }

RepVector rep_vector_from(const Json& j, Mode mode) {
  const bool tensor = j.contains("slots");
  if (mode == Mode::exact) {
    if (tensor) return tensor_from<GaussianRational>(j, exact_entry);
    return exact_polynomial_from(j);
  }
  if (tensor) return tensor_from<Complex>(j, float_entry);
  return float_polynomial_from(j);
}

Pair pair_from(const Json& j, Mode mode) {
  Pair p(rep_vector_from(field(j, "v"), mode), rep_vector_from(field(j, "w"), mode));
  if (j.contains("norm")) {
    const std::string want = p.v().is_polynomial() ? "l2" : "hermitian";
    if (j["norm"] != want) throw SchemaError("\"norm\" must be \"" + want + "\" for this data");
  }
  return p;
}

RationalCurve curve_from(const Json& j) {
  if (j.contains("rational_normal")) return RationalCurve::rational_normal(int_field(j, "rational_normal"));
  const int n = int_field(j, "N"), d = int_field(j, "d");
  const Json& gamma = field(j, "gamma");
  if (!gamma.is_array() || static_cast<int>(gamma.size()) != n + 1)
    throw SchemaError("\"gamma\" must list N + 1 binary forms");
  std::vector<ExactPolynomial> comps;
  for (const auto& terms : gamma) {
    ExactPolynomial p(VariableShape::vector(2), d);
    for (const auto& t : terms) p.add_term(exponent_from(t), exact_entry(t));
    comps.push_back(p);
  }
  return RationalCurve(comps);
}

FloatMatrix sigma_from(const Json& j) {
  const int n = int_field(j, "n");
  const Json& entries = field(j, "entries");
  if (!entries.is_array() || static_cast<int>(entries.size()) != n * n)
    throw SchemaError("\"entries\" must hold n * n values in row-major order");
  const std::string mode = j.value("mode", "float");
  if (mode == "exact") {
    ExactMatrix m(n, n);
    for (int k = 0; k < n * n; ++k) {
      if (!is_exact_entry(entries[k])) throw SchemaError("exact group elements need integer or \"p/q\" entries");
      m(k / n, k % n) = exact_entry(entries[k]);
    }
    return to_float(ExactGroupElement(m).matrix());
  }
  if (mode != "float") throw SchemaError("\"mode\" must be \"exact\" or \"float\"");
  FloatMatrix m(n, n);
  for (int k = 0; k < n * n; ++k) m(k / n, k % n) = float_entry(entries[k]);
  return FloatGroupElement(m).matrix();
}

OnePSG lambda_from(const std::string& text) {
  std::vector<long> out;
  for (int x : int_list_from(text)) out.push_back(x);
  return OnePSG(out);
}

std::vector<int> int_list_from(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '[' && c != ']' && c != ' ') s += c;
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw SchemaError("bad integer list \"" + text + "\"");
    }
    if (used != item.size()) throw SchemaError("bad integer list \"" + text + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw SchemaError("empty integer list");
  return out;
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json to_json(const mpq_class& x) { return x.get_str(); }

Json to_json(const GaussianRational& x) { return Json{{"re", to_json(x.real())}, {"im", to_json(x.imag())}}; }

Json to_json(const Complex& z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json to_json(const ExactPolynomial& p) {
  Json j;
  j["shape"] = shape_json(p.shape());
  j["degree"] = p.degree();
  j["terms"] = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["exp"] = e;
    t["re"] = to_json(c.real());
    t["im"] = to_json(c.imag());
    j["terms"].push_back(t);
  }
  return j;
}

Json to_json(const FloatPolynomial& p) {
  Json j;
  j["shape"] = shape_json(p.shape());
  j["degree"] = p.degree();
  j["terms"] = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t;
    t["exp"] = e;
    t["re"] = number(c.real());
    t["im"] = number(c.imag());
    j["terms"].push_back(t);
  }
  return j;
}

Json to_json(const RepVector& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ExactPolynomial> || std::is_same_v<T, FloatPolynomial>)
          return to_json(x);
        else
          return tensor_json(x);
      },
      v.storage());
}

Json to_json(const FloatMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Eigen::MatrixXcd& m) { return to_json(from_eigen(m)); }

Json to_json(const OnePSG& l) { return l.exponents(); }

Json to_json(const MahlerEstimate& e) {
  return Json{{"log_value", number(e.log_value)},
              {"stderr", number(e.stderr_value)},
              {"samples", e.samples},
              {"seed", e.seed},
              {"p", number(e.p)}};
}

Json to_json(const StabilityCertificate& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["witness"] = c.witness ? to_json(*c.witness) : Json(nullptr);
  j["witness_verified"] = c.witness_verified;
  j["witness_margin"] = c.witness_margin ? Json(*c.witness_margin) : Json(nullptr);
  j["conjugator"] = c.conjugator ? to_json(*c.conjugator) : Json(nullptr);
  j["inf_estimate"] = number(c.inf_estimate);
  const auto& d = c.diagnostics;
  Json diag;
  diag["iterations"] = d.iterations;
  diag["restarts"] = d.restarts;
  diag["final_gradient_norm"] = number(d.final_gradient_norm);
  diag["final_log_hs"] = number(d.final_log_hs);
  diag["converged"] = d.converged;
  diag["restart_values"] = Json::array();
  for (double v : d.restart_values) diag["restart_values"].push_back(number(v));
  diag["note"] = d.note;
  j["diagnostics"] = diag;
  j["seed"] = c.seed;
  j["caveat"] = c.caveat;
  return j;
}

Json to_json(const XPair& xp) {
  Json j;
  j["n"] = xp.n;
  j["N"] = xp.ambient;
  j["d"] = xp.degree;
  j["hypersurface"] = xp.hypersurface;
  j["deg_r"] = xp.deg_r;
  j["deg_delta"] = xp.deg_delta;
  j["r_power"] = xp.r_power();
  j["delta_power"] = xp.delta_power();
  j["r_form"] = xp.r_form ? to_json(*xp.r_form) : Json(nullptr);
  j["delta_form"] = xp.delta_form ? to_json(*xp.delta_form) : Json(nullptr);
  j["mahler_r"] = to_json(xp.mahler_r);
  j["mahler_delta"] = xp.has_delta() ? to_json(xp.mahler_delta) : Json(nullptr);
  j["note"] = xp.note;
  return j;
}

Json to_json(const CurveGeometryReport& r) {
  Json j;
  j["volume"] = number(r.volume);
  j["mu"] = number(r.mu);
  j["k_energy"] = number(r.k_energy);
  j["aubin_f0"] = number(r.aubin_f0);
  j["aubin_j"] = number(r.aubin_j);
  j["phi_mean"] = number(r.phi_mean);
  j["quadrature"] = Json{{"radial", r.radial},
                         {"angular", r.angular},
                         {"levels", r.levels},
                         {"last_change", number(r.last_change)},
                         {"converged", r.converged}};
  return j;
}

}  // namespace stabpair::cli
