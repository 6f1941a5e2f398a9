#include "doctest.h"

#include "fps/json_io.hpp"
#include "support.hpp"

using namespace fps;
using namespace fps::testing;

TEST_CASE("cli series") {
  const CliResult r = run_cli({"series", "ArcTan[x]", "--var", "x"});
  CHECK(r.code == 0);
  CHECK(r.out == "Sum[(-1)^k*x^(1 + 2*k)/(1 + 2*k), {k, 0, Infinity}]\n");
  CHECK(r.err.empty());
}

TEST_CASE("cli de") {
  const CliResult r = run_cli({"de", "AiryAi[x]", "--var", "x"});
  CHECK(r.code == 0);
  CHECK(r.out == "-x*F[x] + F''[x] == 0\n");
}

TEST_CASE("cli reports missing DE with status 2") {
  const CliResult r = run_cli({"series", "Sin[x]^5", "--var", "x"});
  CHECK(r.code == 2);
  CHECK(r.err.find("NoDEFound(5)") != std::string::npos);
  const CliResult more = run_cli({"series", "Sin[x]^5", "--var", "x", "--max-de-order", "6"});
  CHECK(more.code == 0);
  const CliResult j = run_cli({"series", "Sin[x]^5", "--format", "json"});
  CHECK(j.code == 2);
  CHECK(Json::parse(j.out).at("type") == "NoDEFound");
}

TEST_CASE("cli emits the partial result when no strategy applies") {
  const CliResult r = run_cli({"series", "AiryAi[x]*E^x", "--format", "json"});
  CHECK(r.code == 2);
  const Json j = Json::parse(r.out);
  CHECK(j.at("type") == "NotOfImplementedType");
  CHECK(j.contains("de"));
}

TEST_CASE("cli usage errors exit with 1") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"series"}).code == 1);
  CHECK(run_cli({"series", "x", "--format", "pdf"}).code == 1);
  const CliResult bad = run_cli({"series", "2 x"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("cli help exits with 0") {
  const CliResult r = run_cli({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("findrec") != std::string::npos);
}

TEST_CASE("cli de2re and re2de read JSON from stdin") {
  const CliResult de = run_cli({"de", "ArcSin[x^5]", "--format", "json"});
  REQUIRE(de.code == 0);
  const CliResult re = run_cli({"de2re", "--format", "json"}, de.out);
  REQUIRE(re.code == 0);
  CHECK(re_equivalent(recurrence_from_json(Json::parse(re.out)), re_of("k", {{0, "k^2"}, {10, "-(5+k)*(10+k)"}})));
  const CliResult back = run_cli({"re2de", "--var", "x", "--format", "json"}, re.out);
  REQUIRE(back.code == 0);
  CHECK(ode_from_json(Json::parse(back.out)).order() == 2);
  CHECK(run_cli({"re2de"}, "{not json").code == 1);
}

TEST_CASE("cli re2de extends a restricted recurrence") {
  const LinearRecurrence re = re_of("k", {{0, "-1"}, {1, "1"}}, 0);
  const CliResult r = run_cli({"re2de", "--var", "x"}, dump(recurrence_to_json(re)));
  REQUIRE(r.code == 0);
  CHECK(r.out == "F[x] + (-1 + x)*F'[x] == 0\n");
}

TEST_CASE("cli findrec and convert") {
  const CliResult f = run_cli({"findrec", "1/(2*n+1)!", "--var", "n"});
  CHECK(f.code == 0);
  CHECK(f.out.find("a[1 + n]") != std::string::npos);
  const CliResult c = run_cli({"convert", "(2*k)!/k!^2*x^k", "--var", "k", "--gf-var", "x"});
  CHECK(c.code == 0);
  CHECK(c.out == "1/Sqrt[1 - 4*x]\n");
  const CliResult u = run_cli({"convert", "k!/(2*k)!*x^k", "--format", "json"});
  CHECK(u.code == 2);
  CHECK(Json::parse(u.out).at("type") == "UnsolvedODE");
}

TEST_CASE("cli verbose trace goes to stderr") {
  const CliResult r = run_cli({"convert", "ChebyshevT[k,x]*z^k", "--gf-var", "z", "--verbose"});
  CHECK(r.code == 0);
  CHECK(r.err.find("info: 2 step(s) for RE") != std::string::npos);
  CHECK(r.err.find("info: trying to solve DE ...") != std::string::npos);
  CHECK(r.out.find("info:") == std::string::npos);
}

TEST_CASE("cli oracle check and expansion point") {
  CHECK(run_cli({"series", "Log[x]", "--at", "1", "--oracle-check", "20"}).code == 0);
  CHECK(run_cli({"series", "Sqrt[x]*Exp[x]", "--oracle-check", "12"}).code == 0);
  CHECK(run_cli({"series", "x/(1-x-x^2)", "--oracle-check", "20"}).code == 0);
}

TEST_CASE("cli strategy order") {
  const CliResult r = run_cli({"series", "1/(1-x)", "--strategy", "rational"});
  CHECK(r.code == 0);
  CHECK(run_cli({"series", "E^x", "--strategy", "rational"}).code == 2);
  CHECK(run_cli({"series", "E^x", "--strategy", "magic"}).code == 1);
}

TEST_CASE("cli latex output") {
  const CliResult r = run_cli({"re", "Exp[x]", "--format", "latex"});
  CHECK(r.code == 0);
  CHECK(r.out == "-a_{k} + \\left(1 + k\\right) a_{1 + k} = 0\n");
  const CliResult d = run_cli({"de", "ArcSin[x]^3", "--format", "latex"});
  CHECK(d.out.find("F^{(4)}(x)") != std::string::npos);
}

TEST_CASE("cli output is deterministic") {
  for (const char* format : {"text", "json", "latex"}) {
    const std::vector<std::string> args{"series", "Exp[ArcSin[x]]", "--format", format};
    CHECK(run_cli(args).out == run_cli(args).out);
  }
}
