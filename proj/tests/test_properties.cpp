#include "doctest.h"

#include "criteria.hpp"

using namespace fps;
using namespace fps::testing;

namespace {

void require_pass(const Failure& f) {
  INFO((f ? *f : std::string()));
  CHECK_FALSE(f.has_value());
}

}  // namespace

TEST_CASE("every emitted series agrees with the Taylor oracle") {
  for (const auto& c : series_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_oracle_fidelity(c.input, c.x0)); }
  }
  for (const auto& f : differentiation_corpus()) {
    SUBCASE(f.c_str()) { require_pass(check_oracle_fidelity(f)); }
  }
}

TEST_CASE("differentiation commutes with series expansion") {
  REQUIRE(differentiation_corpus().size() == 50);
  for (const auto& f : differentiation_corpus()) {
    SUBCASE(f.c_str()) { require_pass(check_differentiation(f)); }
  }
}

TEST_CASE("DE and RE round trip") {
  for (const auto& c : de_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_de_re_round_trip(c)); }
  }
}

TEST_CASE("find_recursion annihilates random hypergeometric sums") {
  const auto sums = random_hypergeometric_sums(30, 2024);
  REQUIRE(sums.size() == 30);
  unsigned seed = 100;
  for (const auto& t : sums) {
    SUBCASE(t.c_str()) { require_pass(check_random_sum(t, seed)); }
    ++seed;
  }
}

TEST_CASE("larger bounds keep a found solution") {
  GfOptions small;
  GfOptions large;
  large.rational_degree = 20;
  large.rational_power = 5;
  for (const char* term : {"(2*k)!/k!^2*x^k", "(-1)^k/(2*k+1)*x^k", "(k+1)^2*x^k"}) {
    const ConvertResult a = convert(P(term), "k", "x", 0, small);
    const ConvertResult b = convert(P(term), "k", "x", 0, large);
    REQUIRE(a.outcome.solved);
    CHECK(b.outcome.solved);
    CHECK(same_function(a.outcome.closed_form, b.outcome.closed_form, "x"));
  }
}

TEST_CASE("convert inverts power_series") {
  for (const char* f : {"1/(1-x)", "Exp[x]", "1/Sqrt[1-4*x]"}) {
    const FormalSeries s = power_series(P(f), "x");
    REQUIRE(s.terms.size() == 1);
    REQUIRE(s.polynomial.empty());
    const auto& t = s.terms.front();
    REQUIRE(t.modulus == 1);
    REQUIRE(t.shift == 0);
    const Expr summand = t.coefficient * pow(P("x"), P("k"));
    const ConvertResult r = convert(summand, "k", "x");
    INFO(f);
    REQUIRE(r.outcome.solved);
    CHECK(same_function(r.outcome.closed_form, P(f), "x"));
  }
}
