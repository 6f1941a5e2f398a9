#include "doctest.h"

#include "support.hpp"

using namespace fps;
using namespace fps::testing;

TEST_CASE("parser builds canonical trees") {
  CHECK(P("x + x") == P("2*x"));
  CHECK(P("x*y") == P("y*x"));
  CHECK(P("2^3") == Expr(8));
  CHECK(P("a^b^c") == pow(P("a"), pow(P("b"), P("c"))));
  CHECK(P("x - x").is_zero());
  CHECK(P("6/4") == Expr(Rational(3, 2)));
  CHECK(to_text(P("(1+x)^2/(1+x)")) == "1 + x");
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(P("2 x"), SyntaxError);
  CHECK_THROWS_AS(P("Sin[x"), SyntaxError);
  CHECK_THROWS_AS(P("(1+x"), SyntaxError);
  CHECK_THROWS_AS(P("Frobnicate[x]"), UnknownHead);
}

TEST_CASE("text output parses back to the same tree") {
  for (const char* s : {"x^n*E^(alpha*x)", "ArcSin[x^5]", "E^(-x)*LaguerreL[n,alpha,2*x]", "(1+x)^(-1/2)",
                        "Sin[Pi*k/4]*2^(k/2)/k!", "I*x + 3/7"}) {
    const Expr e = P(s);
    CHECK(P(to_text(e)) == e);
  }
}

TEST_CASE("rational functions in the field") {
  const Field f = F("(x^2-1)/(x-1)");
  CHECK(f == F("x+1"));
  CHECK(F("1/x + 1/y") == F("(x+y)/(x*y)"));
  CHECK(F("x").derivative("x") == F("1"));
  CHECK(F("1/(1-x)").derivative("x") == F("1/(1-x)^2"));
}

TEST_CASE("oracle coefficients") {
  const auto c = oracle_coefficients(P("E^x"), "x", Expr(0), 0, 5);
  REQUIRE(c.size() == 5);
  CHECK(c[4] == Field(Rational(1, 24)));
  const auto s = oracle_coefficients(P("Sin[x]/x^2"), "x", Expr(0), -1, 3);
  CHECK(s[0] == Field(1));
  CHECK(s[1].is_zero());
  CHECK(s[2] == Field(Rational(-1, 6)));
  const auto l = oracle_coefficients(P("Log[x]"), "x", Expr(1), 0, 3);
  CHECK(l[0].is_zero());
  CHECK(l[1] == Field(1));
  CHECK(l[2] == Field(Rational(-1, 2)));
}

TEST_CASE("differentiation of special functions") {
  CHECK(differentiate(P("Sin[x]"), "x") == P("Cos[x]"));
  CHECK(differentiate(P("ArcTan[x]"), "x") == P("1/(1+x^2)"));
  CHECK(differentiate(P("x^n"), "x") == P("n*x^(n-1)"));
  const Expr d = differentiate(P("AiryAi[x]"), "x");
  CHECK(differentiate(d, "x") == P("x*AiryAi[x]"));
}

TEST_CASE("zero recognition through the oracle") {
  CHECK(is_zero_semidecision(P("Sin[x]^2 + Cos[x]^2 - 1"), "x"));
  CHECK_FALSE(is_zero_semidecision(P("Sin[x]^2 - Cos[x]^2"), "x"));
}

TEST_CASE("decompose_term splits into hypergeometric terms") {
  const HypergeomTermBasis b = decompose_term(P("(1+(-1)^n)/n"), "n");
  CHECK(b.terms.size() == 2);
  for (const auto& t : b.terms) CHECK(t.coefficient == F("1/n"));
}

TEST_CASE("holonomic closure of a sum") {
  const HolonomicSequence a = holonomic_sequence(P("2^k"), "k");
  const HolonomicSequence b = holonomic_sequence(P("1/k!"), "k");
  const HolonomicSequence s = holonomic_closure(ClosureOp::Add, {a, b});
  CHECK(s.re.order() == 2);
  CHECK(annihilates(s.re, P("2^k + 1/k!"), 20));
}

TEST_CASE("find_recursion reports exhausted bounds") {
  FindRecursionOptions o;
  o.max_order = 1;
  o.max_degree = 2;
  CHECK_THROWS_AS(find_recursion(P("n + (-1)^n"), "n", o), NoRecurrenceFound);
}

TEST_CASE("ode_solve_limited returns a fundamental system") {
  const OdeSolveOutcome r = ode_solve_limited(ode_of("x", {"1", "0", "1"}), "x");
  REQUIRE(r.solved);
  CHECK(r.closed_form == P("C1*Cos[x] + C2*Sin[x]"));
  const OdeSolveOutcome u = ode_solve_limited(ode_of("x", {"-x", "0", "1"}), "x");
  CHECK_FALSE(u.solved);
}

TEST_CASE("extend_validity multiplies in the failing indices") {
  // a_k = 1 for k >= 0: the relation fails at k = -1
  const LinearRecurrence re = re_of("k", {{0, "-1"}, {1, "1"}}, 0);
  const LinearRecurrence all = extend_validity(re, 0);
  CHECK(all.for_all_k());
  CHECK(all.coeffs.at(0) == F("-(k+1)").num());
}

TEST_CASE("de_to_re keeps the common factor on request") {
  const LinearODE ode = ode_of("x", {"-1", "1"});
  const LinearRecurrence kept = de_to_re(ode, "k", false);
  const LinearRecurrence dropped = de_to_re(ode, "k");
  CHECK(re_equivalent(kept, dropped));
  CHECK(dropped.coeffs.size() == 2);
}
