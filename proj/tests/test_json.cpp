#include "doctest.h"

#include "fps/json_io.hpp"
#include "support.hpp"

using namespace fps;
using namespace fps::testing;

TEST_CASE("expression AST round trip") {
  for (const char* s : {"x^n*E^(alpha*x)", "I*Pi + 3/4", "LaguerreL[n,alpha,2*x]/n", "(1-4*x)^(-1/2)"}) {
    const Expr e = P(s);
    const Json j = expr_to_json(e, "x");
    CHECK(expr_from_json(j) == e);
    CHECK(dump(expr_to_json(expr_from_json(j), "x")) == dump(j));
  }
}

TEST_CASE("symbols other than the main variable are parameters") {
  const Json j = expr_to_json(P("alpha*x"), "x");
  std::set<std::string> kinds;
  for (const auto& a : j.at("args")) kinds.insert(a.at("kind").get<std::string>());
  CHECK(kinds == std::set<std::string>{"Parameter", "Variable"});
}

TEST_CASE("ODE and recurrence round trip") {
  for (const auto& c : de_suite()) {
    const LinearODE ode = ode_of("x", c.expected);
    const Json j = ode_to_json(ode);
    CHECK(ode_from_json(j) == ode);
    CHECK(dump(ode_to_json(ode_from_json(j))) == dump(j));
    const LinearRecurrence re = de_to_re(ode);
    const Json r = recurrence_to_json(re);
    CHECK(recurrence_from_json(r) == re);
    CHECK(dump(recurrence_to_json(recurrence_from_json(r))) == dump(r));
  }
  const LinearRecurrence partial = re_of("k", {{0, "1"}, {1, "-k"}}, 3);
  CHECK(recurrence_from_json(recurrence_to_json(partial)) == partial);
}

TEST_CASE("series round trip") {
  for (const auto& c : series_suite()) {
    const FormalSeries s = power_series(P(c.input), "x", P(c.x0));
    const Json j = series_to_json(s);
    const FormalSeries back = series_from_json(j);
    CHECK(dump(series_to_json(back)) == dump(j));
    for (long e = 0; e < 10; ++e) CHECK(back.coefficient(e) == s.coefficient(e));
  }
}

TEST_CASE("convert outcome document") {
  const ConvertResult r = convert(P("(2*k)!/k!^2*x^k"), "k", "x");
  const Json j = convert_to_json(r);
  CHECK(j.at("type") == "ClosedForm");
  CHECK(j.at("verified") == true);
  CHECK(expr_from_json(j.at("closed_form")) == r.outcome.closed_form);
  CHECK(ode_from_json(j.at("de")) == r.outcome.ode);
  const Json u = convert_to_json(convert(P("k!/(2*k)!*x^k"), "k", "x"));
  CHECK(u.at("type") == "UnsolvedODE");
  CHECK(u.at("closed_form").is_null());
}

TEST_CASE("schema violations are reported") {
  CHECK_THROWS_AS(ode_from_json(Json::parse(R"({"type": "LinearRecurrence"})")), JsonSchemaError);
  CHECK_THROWS_AS(expr_from_json(Json::parse(R"({"kind": "Matrix"})")), JsonSchemaError);
  CHECK_THROWS_AS(expr_from_json(Json::parse(R"({"kind": "FunctionApp", "head": "Nope", "args": []})")),
                  UnknownHead);
  CHECK_THROWS_AS(recurrence_from_json(Json::parse(R"({"type": "LinearRecurrence", "index": "k"})")),
                  JsonSchemaError);
}
