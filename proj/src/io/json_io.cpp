#include "fps/json_io.hpp"

#include "fps/bridge.hpp"

namespace fps {

namespace {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Const: return "Const";
    case Kind::ImaginaryUnit: return "ImaginaryUnit";
    case Kind::Pi: return "Pi";
    case Kind::Variable: return "Variable";
    case Kind::Parameter: return "Parameter";
    case Kind::Pow: return "Pow";
    case Kind::Mul: return "Mul";
    case Kind::Add: return "Add";
    case Kind::Func: return "FunctionApp";
  }
  return "";
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw JsonSchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

void expect_type(const Json& j, const char* type) {
  if (field(j, "type") != type) throw JsonSchemaError(std::string("expected type ") + type);
}

Json poly_json(const Poly& p, const std::string& main) { return expr_to_json(from_poly(p), main); }

Poly poly_from_json(const Json& j) {
  const Field f = to_field_or_throw(expr_from_json(j));
  if (!f.is_polynomial()) throw JsonSchemaError("coefficient is not a polynomial");
  return f.num() * Poly(Rational(1) / f.den().terms().front().coef);
}

}  // namespace

Json expr_to_json(const Expr& e, const std::string& main) {
  Json j;
  j["kind"] = kind_name(e.kind());
  switch (e.kind()) {
    case Kind::Const: j["value"] = e.value().get_str(); break;
    case Kind::ImaginaryUnit:
    case Kind::Pi: break;
    case Kind::Variable:
    case Kind::Parameter:
      j["kind"] = e.name() == main ? "Variable" : "Parameter";
      j["name"] = e.name();
      break;
    case Kind::Pow:
      j["base"] = expr_to_json(e.base(), main);
      j["exponent"] = expr_to_json(e.exponent(), main);
      break;
    case Kind::Add:
    case Kind::Mul: {
      Json args = Json::array();
      for (const auto& a : e.args()) args.push_back(expr_to_json(a, main));
      j["args"] = args;
      break;
    }
    case Kind::Func: {
      j["head"] = e.name();
      Json args = Json::array();
      for (const auto& a : e.args()) args.push_back(expr_to_json(a, main));
      j["args"] = args;
      break;
    }
  }
  return j;
}

Expr expr_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "Const") {
    Rational r(field(j, "value").get<std::string>());
    r.canonicalize();
    return Expr(r);
  }
  if (kind == "ImaginaryUnit") return Expr::imaginary_unit();
  if (kind == "Pi") return Expr::pi();
  if (kind == "Variable" || kind == "Parameter") return Expr::variable(field(j, "name").get<std::string>());
  if (kind == "Pow") return pow(expr_from_json(field(j, "base")), expr_from_json(field(j, "exponent")));
  std::vector<Expr> args;
  for (const auto& a : field(j, "args")) args.push_back(expr_from_json(a));
  if (kind == "Add") return add(std::move(args));
  if (kind == "Mul") return mul(std::move(args));
  if (kind == "FunctionApp") {
    const std::string head = field(j, "head").get<std::string>();
    if (!is_known_head(head)) throw UnknownHead("unknown function head '" + head + "'");
    return func(head, std::move(args));
  }
  throw JsonSchemaError("unknown node kind '" + kind + "'");
}

Json ode_to_json(const LinearODE& ode) {
  Json coeffs = Json::array();
  for (const auto& c : ode.coeffs) coeffs.push_back(poly_json(c, ode.variable));
  return Json{{"type", "LinearODE"},
              {"variable", ode.variable},
              {"order", ode.order()},
              {"coeffs", coeffs},
              {"text", ode_to_text(ode)}};
}

LinearODE ode_from_json(const Json& j) {
  expect_type(j, "LinearODE");
  LinearODE ode;
  ode.variable = field(j, "variable").get<std::string>();
  std::vector<Field> c;
  for (const auto& p : field(j, "coeffs")) c.push_back(Field(poly_from_json(p)));
  if (c.size() < 2) throw JsonSchemaError("an ODE needs at least two coefficients");
  return make_ode(ode.variable, c);
}

Json recurrence_to_json(const LinearRecurrence& re) {
  Json coeffs = Json::array();
  for (const auto& [m, p] : re.coeffs) coeffs.push_back(Json{{"shift", m}, {"poly", poly_json(p, re.index)}});
  Json validity{{"for_all_k", re.for_all_k()}};
  if (re.valid_from) validity["from"] = *re.valid_from;
  return Json{{"type", "LinearRecurrence"},
              {"index", re.index},
              {"coeffs", coeffs},
              {"validity", validity},
              {"text", recurrence_to_text(re)}};
}

LinearRecurrence recurrence_from_json(const Json& j) {
  expect_type(j, "LinearRecurrence");
  const std::string index = field(j, "index").get<std::string>();
  std::map<int, Field> c;
  for (const auto& t : field(j, "coeffs")) c[field(t, "shift").get<int>()] += Field(poly_from_json(field(t, "poly")));
  if (c.empty()) throw JsonSchemaError("a recurrence needs coefficients");
  std::optional<long> from;
  const Json& v = field(j, "validity");
  if (!field(v, "for_all_k").get<bool>()) from = field(v, "from").get<long>();
  return make_recurrence(index, c, from);
}

Json series_to_json(const FormalSeries& s) {
  Json poly = Json::array();
  for (const auto& m : s.polynomial) {
    poly.push_back(Json{{"exponent", m.exponent}, {"coefficient", expr_to_json(m.coefficient, s.variable)}});
  }
  Json terms = Json::array();
  for (const auto& t : s.terms) {
    terms.push_back(Json{{"residue", t.residue()},
                         {"modulus", t.modulus},
                         {"offset", t.shift},
                         {"coefficient", expr_to_json(t.coefficient, "k")},
                         {"exponent", Json{{"k", t.modulus}, {"constant", t.shift}, {"denominator", s.puiseux_n}}}});
  }
  return Json{{"type", "FormalSeries"},
              {"variable", s.variable},
              {"x0", expr_to_json(s.x0, s.variable)},
              {"puiseux_n", s.puiseux_n},
              {"polynomial", poly},
              {"terms", terms},
              {"text", series_to_text(s)}};
}

FormalSeries series_from_json(const Json& j) {
  expect_type(j, "FormalSeries");
  FormalSeries s;
  s.variable = field(j, "variable").get<std::string>();
  s.x0 = expr_from_json(field(j, "x0"));
  s.puiseux_n = field(j, "puiseux_n").get<int>();
  for (const auto& m : field(j, "polynomial")) {
    s.polynomial.push_back(MonomialTerm{field(m, "exponent").get<long>(), expr_from_json(field(m, "coefficient"))});
  }
  for (const auto& t : field(j, "terms")) {
    ClosedFormTerm c;
    c.modulus = field(t, "modulus").get<int>();
    c.shift = field(t, "offset").get<long>();
    c.coefficient = expr_from_json(field(t, "coefficient"));
    s.terms.push_back(std::move(c));
  }
  return s;
}

Json convert_to_json(const ConvertResult& r) {
  const OdeSolveOutcome& o = r.outcome;
  Json j{{"type", o.solved ? "ClosedForm" : "UnsolvedODE"},
         {"recurrence", recurrence_to_json(r.recurrence)},
         {"extended_recurrence", recurrence_to_json(r.extended)},
         {"de", ode_to_json(o.ode)},
         {"attempted", o.attempted},
         {"diagnostics", o.diagnostics},
         {"strategy", o.strategy},
         {"verified", r.verified}};
  if (o.solved) {
    j["closed_form"] = expr_to_json(o.closed_form, o.ode.variable);
    j["text"] = to_text(o.closed_form);
  } else {
    j["closed_form"] = nullptr;
    j["text"] = nullptr;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fps
