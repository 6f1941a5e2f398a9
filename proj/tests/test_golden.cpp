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

TEST_CASE("simple DE golden suite") {
  for (const auto& c : de_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_de_case(c, c.stress ? 600 : 5)); }
  }
}

TEST_CASE("sin^5 needs a sixth order equation") { require_pass(check_sin5()); }

TEST_CASE("DE to RE golden suite") {
  for (const auto& c : re_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_re_case(c)); }
  }
}

TEST_CASE("RE to DE on the arctan recurrence") { require_pass(check_retode_example()); }

TEST_CASE("power series golden suite") {
  for (const auto& c : series_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_series_case(c)); }
  }
}

TEST_CASE("verbose trace reports initial values") { require_pass(check_initial_value_trace()); }

TEST_CASE("find_recursion golden suite") {
  unsigned seed = 11;
  for (const auto& c : findrec_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_findrec_case(c, seed)); }
    ++seed;
  }
}

TEST_CASE("convert golden suite") {
  for (const auto& c : convert_suite()) {
    SUBCASE(c.name.c_str()) { require_pass(check_convert_case(c)); }
  }
}

TEST_CASE("convert reports its stages") {
  const ConvertResult r = convert(P("k!/(2*k)!*x^k"), "k", "x");
  CHECK(r.recurrence.order() == 1);
  CHECK(r.extended.for_all_k());
  CHECK_FALSE(r.outcome.solved);
  CHECK_FALSE(r.verified);
  CHECK_FALSE(r.outcome.attempted.empty());
  CHECK_FALSE(r.outcome.diagnostics.empty());
}

TEST_CASE("convert rejects summands without the power") {
  CHECK_THROWS_AS(convert(P("k!*y^k"), "k", "x"), ConvertStageError);
}
