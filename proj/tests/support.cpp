#include "support.hpp"

#include <random>
#include <sstream>

#include "cli.hpp"

namespace fps::testing {

Expr P(const std::string& text) { return parse(text); }

Field F(const std::string& text) { return to_field_or_throw(parse(text)); }

LinearODE ode_of(const std::string& var, const std::vector<std::string>& coeffs) {
  std::vector<Field> c;
  for (const auto& s : coeffs) c.push_back(F(s));
  return make_ode(var, c);
}

LinearRecurrence re_of(const std::string& index, const std::map<int, std::string>& coeffs,
                       std::optional<long> valid_from, bool remove_common_factor) {
  std::map<int, Field> c;
  for (const auto& [m, s] : coeffs) c[m] = F(s);
  return make_recurrence(index, c, valid_from, remove_common_factor);
}

namespace {

bool proportional(const std::vector<Field>& a, const std::vector<Field>& b, const std::string& var) {
  if (a.size() != b.size()) return false;
  std::size_t i0 = 0;
  while (i0 < a.size() && a[i0].is_zero()) ++i0;
  if (i0 == a.size() || b[i0].is_zero()) return false;
  const Field r = a[i0] / b[i0];
  if (r.has_symbol(var)) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != r * b[i]) return false;
  }
  return true;
}

std::map<int, Field> rebased(const LinearRecurrence& re, const std::string& index) {
  const int s = re.min_shift();
  const Field k = Field::symbol(index);
  std::map<int, Field> out;
  for (const auto& [m, p] : re.coeffs) out[m - s] = Field(p).substitute(re.index, k + Field(Rational(s)));
  return out;
}

Field specialize(Field f, const std::vector<std::pair<std::string, Rational>>& params) {
  for (const auto& [name, v] : params) f = f.substitute(name, Field(v));
  return f;
}

}  // namespace

bool ode_equivalent(const LinearODE& a, const LinearODE& b) {
  if (a.variable != b.variable) return false;
  std::vector<Field> fa;
  std::vector<Field> fb;
  for (const auto& p : a.coeffs) fa.emplace_back(p);
  for (const auto& p : b.coeffs) fb.emplace_back(p);
  return proportional(fa, fb, a.variable);
}

bool re_equivalent(const LinearRecurrence& a, const LinearRecurrence& b) {
  const auto ra = rebased(a, a.index);
  const auto rb = rebased(b, a.index);
  std::vector<Field> fa;
  std::vector<Field> fb;
  for (const auto& [m, f] : ra) {
    if (!rb.count(m)) return false;
    fa.push_back(f);
    fb.push_back(rb.at(m));
  }
  return ra.size() == rb.size() && proportional(fa, fb, a.index);
}

bool series_matches_oracle(const FormalSeries& s, const Expr& f, int n, std::string* why) {
  const std::string& x = s.variable;
  Expr g = s.x0.is_zero() ? f : substitute(f, x, Expr::variable(x) + s.x0);
  if (s.puiseux_n > 1) g = substitute(g, x, pow(Expr::variable(x), Expr(s.puiseux_n)));
  long from = 0;
  for (const auto& m : s.polynomial) from = std::min(from, m.exponent);
  for (const auto& t : s.terms) from = std::min(from, t.shift);
  const auto want = oracle_coefficients(g, x, Expr(0), static_cast<int>(from), n);
  for (int i = 0; i < n; ++i) {
    const Field got = s.coefficient(from + i);
    if (got != want[static_cast<std::size_t>(i)]) {
      if (why) {
        *why = "exponent " + std::to_string(from + i) + ": series " + to_string(got) + ", oracle " +
               to_string(want[static_cast<std::size_t>(i)]);
      }
      return false;
    }
  }
  return true;
}

bool ode_annihilates(const LinearODE& ode, const std::vector<Field>& a) {
  const Field x = Field::symbol(ode.variable);
  Field s;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * x.pow(static_cast<long>(k));
  Field r;
  for (std::size_t i = 0; i < ode.coeffs.size(); ++i) {
    if (i > 0) s = s.derivative(ode.variable);
    r += Field(ode.coeffs[i]) * s;
  }
  if (!r.den().is_constant()) return false;
  const auto c = r.num().coefficients_in(ode.variable);
  const long exact = static_cast<long>(a.size()) - ode.order();
  for (long j = 0; j < exact && j < static_cast<long>(c.size()); ++j) {
    if (!c[static_cast<std::size_t>(j)].is_zero()) return false;
  }
  return true;
}

bool annihilates(const LinearRecurrence& re, const Expr& term, int count,
                 const std::vector<std::pair<std::string, Rational>>& params) {
  Expr t = term;
  for (const auto& [name, v] : params) t = substitute(t, name, Expr(v));
  LinearRecurrence r = re;
  for (auto& [m, p] : r.coeffs) {
    const Field f = specialize(Field(p), params);
    p = f.num() * Poly(Rational(1) / f.den().terms().front().coef);
  }
  auto value = [&](long k) { return evaluate_term(t, re.index, k); };
  int done = 0;
  int skipped = 0;
  for (long k = re.valid_from.value_or(0); done < count; ++k) {
    Field res;
    try {
      res = recurrence_residual(r, k, value);
    } catch (const std::domain_error&) {
      // undefined below the first index of the sequence
      if (++skipped > 10) return false;
      continue;
    }
    if (!res.is_zero()) return false;
    ++done;
  }
  return true;
}

bool same_function(const Expr& a, const Expr& b, const std::string& var, int n) {
  const Expr sq = pow(Expr::variable(var), Expr(2));
  const auto ca = oracle_coefficients(substitute(a, var, sq), var, Expr(0), 0, 2 * n);
  const auto cb = oracle_coefficients(substitute(b, var, sq), var, Expr(0), 0, 2 * n);
  return ca == cb;
}

CliResult run_cli(const std::vector<std::string>& args, const std::string& in) {
  std::istringstream is(in);
  std::ostringstream os;
  std::ostringstream es;
  CliResult r;
  r.code = cli::run(args, is, os, es);
  r.out = os.str();
  r.err = es.str();
  return r;
}

const std::vector<DeCase>& de_suite() {
  static const std::vector<DeCase> suite{
      {"x^n*E^(alpha*x)", "x^n*E^(alpha*x)", {"-n - alpha*x", "x"}},
      {"((1+x)/(1-x))^n", "((1+x)/(1-x))^n", {"2*n", "(-1+x)*(1+x)"}},
      {"ArcSin[x^5]", "ArcSin[x^5]", {"0", "4+x^10", "-x+x^11"}},
      {"ArcSin[x]", "ArcSin[x]", {"0", "x", "-1+x^2"}},
      {"ArcSin[x]^3", "ArcSin[x]^3", {"0", "x", "-4+7*x^2", "6*x*(-1+x^2)", "(-1+x^2)^2"}},
      {"Exp[alpha*x]*Sin[beta*x]", "Exp[alpha*x]*Sin[beta*x]", {"alpha^2+beta^2", "-2*alpha", "1"}},
      {"LaguerreL[n,x]", "LaguerreL[n,x]", {"n", "1-x", "x"}},
      {"ChebyshevT[n,x]", "ChebyshevT[n,x]", {"-n^2", "x", "-1+x^2"}},
      {"BesselY[n,x]", "BesselY[n,x]", {"-n^2+x^2", "x", "x^2"}},
      {"AiryAi[x]", "AiryAi[x]", {"-x", "0", "1"}},
      {"Exp[alpha*x]*BesselI[n,x]", "Exp[alpha*x]*BesselI[n,x]", {"-n^2-alpha*x-x^2+alpha^2*x^2", "x-2*alpha*x^2", "x^2"}},
      {"Sin[m*x]*BesselJ[n,x]",
       "Sin[m*x]*BesselJ[n,x]",
       {"n^2-5*n^4+4*n^6-x^2-2*m^2*x^2+22*n^2*x^2-10*m^2*n^2*x^2-12*n^4*x^2+12*m^2*n^4*x^2-x^4+6*m^2*x^4"
        "-5*m^4*x^4+12*n^2*x^4-24*m^2*n^2*x^4+12*m^4*n^2*x^4-4*x^6+12*m^2*x^6-12*m^4*x^6+4*m^6*x^6",
        "-8*x^3-4*m^2*x^3+8*n^2*x^3+40*m^2*n^2*x^3-8*x^5+8*m^4*x^5",
        "-2*x^2+10*n^2*x^2-8*n^4*x^2+2*x^4-6*m^2*x^4+16*n^2*x^4-8*x^6+8*m^4*x^6",
        "-4*x^3+16*n^2*x^3-8*x^5+8*m^2*x^5",
        "x^4*(-1+4*n^2-4*x^2+4*m^2*x^2)"},
       true},
      {"LegendreP[n,x]^2",
       "LegendreP[n,x]^2",
       {"-4*n*x-4*n^2*x", "-2+4*n+4*n^2+6*x^2-4*n*x^2-4*n^2*x^2", "6*x*(-1+x^2)", "(-1+x^2)^2"},
       true},
      {"E^(-x)*LaguerreL[n,alpha,2*x]", "E^(-x)*LaguerreL[n,alpha,2*x]", {"1+alpha+2*n-x", "1+alpha", "x"}},
  };
  return suite;
}

const DeCase& de_case(const std::string& name) {
  for (const auto& c : de_suite()) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no DE case " + name);
}

const std::vector<ReCase>& re_suite() {
  static const std::vector<ReCase> suite{
      {"recurrence of ((1+x)/(1-x))^n", "((1+x)/(1-x))^n", {{0, "k"}, {1, "2*n"}, {2, "-(2+k)"}}},
      {"recurrence of ArcSin[x^5]", "ArcSin[x^5]", {{0, "k^2"}, {10, "-(5+k)*(10+k)"}}},
      {"recurrence of AiryAi[x]", "AiryAi[x]", {{0, "-1"}, {3, "(2+k)*(3+k)"}}},
      {"recurrence of Exp[alpha*x]*BesselI[n,x]", "Exp[alpha*x]*BesselI[n,x]", {{0, "(-1+alpha)*(1+alpha)"}, {1, "-alpha*(3+2*k)"}, {2, "(2+k-n)*(2+k+n)"}}},
      {"recurrence of Sin[m*x]*BesselJ[n,x]",
       "Sin[m*x]*BesselJ[n,x]",
       {{0, "4*(-1+m)^3*(1+m)^3"},
        {2, "(-1+m)*(1+m)*(33+32*k+8*k^2+27*m^2+32*k*m^2+8*k^2*m^2-12*n^2+12*m^2*n^2)"},
        {4,
         "-297-402*k-210*k^2-48*k^3-4*k^4+198*m^2+362*k*m^2+206*k^2*m^2+48*k^3*m^2+4*k^4*m^2+246*n^2"
         "+120*k*n^2+16*k^2*n^2+150*m^2*n^2+40*k*m^2*n^2-12*n^4+12*m^2*n^4"},
        {6, "(5+k-n)*(6+k-n)*(5+k+n)*(6+k+n)*(-1+2*n)*(1+2*n)"}},
       true},
  };
  return suite;
}

const std::vector<SeriesCase>& series_suite() {
  static const std::vector<SeriesCase> suite{
      {"Sin[x]*Exp[x]", "Sin[x]*Exp[x]", "0", {{1, 0}}, {}, ""},
      {"ArcTan[x]", "ArcTan[x]", "0", {{2, 1}}, {}, "(-1)^k/(2*k+1)"},
      {"E^x", "E^x", "0", {{1, 0}}, {}, "1/k!"},
      {"Sin[x]", "Sin[x]", "0", {{2, 1}}, {}, "(-1)^k/(2*k+1)!"},
      {"ArcSin[x]", "ArcSin[x]", "0", {{2, 1}}, {}, "(1/4)^k*(2*k)!^2/(k!^2*(1+2*k)!)"},
      {"Log[x]", "Log[x]", "1", {{1, 1}}, {}, "(-1)^k/(1+k)"},
      {"Exp[ArcSin[x]]", "Exp[ArcSin[x]]", "0", {{2, 0}, {2, 1}}, {}, ""},
      {"Exp[ArcSinh[x]]", "Exp[ArcSinh[x]]", "0", {{2, 0}}, {1}, "(-1/4)^k*(2*k)!/((1-2*k)*k!^2)"},
      {"E^x - 2*E^(-x/2)*Cos[Sqrt[3]*x/2 - Pi/3]", "E^x - 2*E^(-x/2)*Cos[Sqrt[3]*x/2 - Pi/3]", "0", {{3, 2}}, {}, "9*(1+k)/(3+3*k)!"},
      {"x/(1-x-x^2)", "x/(1-x-x^2)", "0", {{1, 0}}, {}, "(2^k*(1/(-1+Sqrt[5]))^k - (-2/(1+Sqrt[5]))^k)/Sqrt[5]"},
      {"E^x*BesselI[0,x]", "E^x*BesselI[0,x]", "0", {{1, 0}}, {}, "(1/2)^k*(2*k)!/k!^3"},
      {"E^x*BesselI[1,x]", "E^x*BesselI[1,x]", "0", {{1, 1}}, {}, "(1/2)^k*(1+2*k)!/(k!^2*(2+k)!)"},
      {"Sin[x]*BesselJ[0,x]", "Sin[x]*BesselJ[0,x]", "0", {{2, 1}}, {}, "(-1/4)^k*(1+4*k)!/((2*k)!*(1+2*k)!^2)"},
      {"Sin[x]*BesselJ[1,x]", "Sin[x]*BesselJ[1,x]", "0", {{2, 2}}, {}, "(-1/4)^k*(3+4*k)!/(2*(1+2*k)!^2*(3+2*k)!)"},
  };
  return suite;
}

const std::vector<FindrecCase>& findrec_suite() {
  static const std::vector<FindrecCase> suite{
      {"(1+(-1)^n)/n", "(1+(-1)^n)/n", "n", {{-2, "2-n"}, {0, "n"}}, {}},
      {"n+(-1)^n", "n+(-1)^n", "n", {{-2, "1-2*n"}, {-1, "-2"}, {0, "-3+2*n"}}, {}},
      {"(n+(-1)^n)/n^2",
       "(n+(-1)^n)/n^2",
       "n",
       {{-2, "4-12*n+9*n^2-2*n^3"}, {-1, "-2+4*n-2*n^2"}, {0, "-3*n^2+2*n^3"}},
       {}},
      {"1/(2*n+1)!", "1/(2*n+1)!", "n", {{-1, "1"}, {0, "-2*n*(1+2*n)"}}, {}},
      {"(2^k*(1/(-1+Sqrt[5]))^k - (-2/(1+Sqrt[5]))^k)*x^k/Sqrt[5]",
       "(2^k*(1/(-1+Sqrt[5]))^k - (-2/(1+Sqrt[5]))^k)*x^k/Sqrt[5]",
       "k",
       {{-2, "-x^2"}, {-1, "-x"}, {0, "1"}},
       {"x"}},
      {"E^(-x)*LaguerreL[n,alpha,2*x]",
       "E^(-x)*LaguerreL[n,alpha,2*x]",
       "n",
       {{-2, "-1+alpha+n"}, {-1, "1-alpha-2*n+2*x"}, {0, "n"}},
       {"alpha", "x"}},
      {"n*LaguerreL[n,alpha,2*x]",
       "n*LaguerreL[n,alpha,2*x]",
       "n",
       {{-2, "1-alpha-2*n+alpha*n+n^2"}, {-1, "-2+2*alpha+5*n-alpha*n-2*n^2-4*x+2*n*x"}, {0, "2-3*n+n^2"}},
       {"alpha", "x"}},
      {"LaguerreL[n,alpha,2*x]/n",
       "LaguerreL[n,alpha,2*x]/n",
       "n",
       {{-2, "2-2*alpha-3*n+alpha*n+n^2"}, {-1, "-1+alpha+3*n-alpha*n-2*n^2-2*x+2*n*x"}, {0, "n^2"}},
       {"alpha", "x"}},
      {"LaguerreL[n,x]^2",
       "LaguerreL[n,x]^2",
       "n",
       {{-3, "4-12*n+9*n^2-2*n^3+4*x-4*n*x+n^2*x"},
        {-2, "-6+22*n-21*n^2+6*n^3-14*x+26*n*x-11*n^2*x-7*x^2+6*n*x^2-x^3"},
        {-1, "2-10*n+15*n^2-6*n^3+6*x-18*n*x+11*n^2*x+5*x^2-6*n*x^2+x^3"},
        {0, "-3*n^2+2*n^3-n^2*x"}},
       {"x"},
       60},
  };
  return suite;
}

const std::vector<ConvertCase>& convert_suite() {
  static const std::vector<ConvertCase> suite{
      {"(2*k)!/k!^2*x^k", "(2*k)!/k!^2*x^k", "k", "x", "1/Sqrt[1-4*x]", {}},
      {"(-1)^k/(2*k+1)*x^k", "(-1)^k/(2*k+1)*x^k", "k", "x", "ArcTan[Sqrt[x]]/Sqrt[x]", {}},
      {"ChebyshevT[k,x]*z^k", "ChebyshevT[k,x]*z^k", "k", "z", "-(1/(-1+2*x*z-z^2)) + x*z/(-1+2*x*z-z^2)", {}},
      {"LaguerreL[k,a,x]*z^k", "LaguerreL[k,a,x]*z^k", "k", "z", "E^(x*z/(-1+z))*(1-z)^(-1-a)", {}},
      {"k!^2/(2*k)!*x^k", "k!^2/(2*k)!*x^k", "k", "x", "", {}},
      {"k!/(2*k)!*x^k", "k!/(2*k)!*x^k", "k", "x", "", {"1", "x-2", "-4*x"}},
  };
  return suite;
}

const std::vector<std::string>& differentiation_corpus() {
  static const std::vector<std::string> corpus{
      "E^x",
      "E^(2*x)",
      "E^(-x/3)",
      "Sin[x]",
      "Cos[x]",
      "Sin[3*x]",
      "Cos[x/2]",
      "Sin[2*x]",
      "Cos[3*x]+Sin[x]",
      "ArcTan[x]",
      "ArcSin[x]",
      "ArcSinh[x]",
      "Log[1+x^2]",
      "Log[1+x]",
      "Log[1-2*x]",
      "1/(1-x)",
      "1/(1+x)^2",
      "1/(1-x)^3",
      "x/(1-x-x^2)",
      "1/(1+x^2)",
      "1/(2-x)",
      "(1+x)/(1-x)^2",
      "1/((1-x)*(1-2*x))",
      "Sqrt[1+x]",
      "1/Sqrt[1-4*x]",
      "(1+x)^(1/3)",
      "(1-x)^(-5/2)",
      "Exp[ArcSin[x]]",
      "Exp[ArcSinh[x]]",
      "Sin[x]*Exp[x]",
      "Cos[x]*Exp[x]",
      "Sin[x]^2",
      "Cos[x]^2",
      "Sin[x]*Cos[x]",
      "ArcTan[2*x]",
      "1/(1-x^2)",
      "1/(3+x)",
      "x^3/(1-x)",
      "BesselJ[0,x]",
      "Exp[-x^2]",
      "BesselI[0,x]",
      "Cos[x]*Exp[-x]",
      "Sin[x]^3",
      "E^x*Sin[2*x]",
      "E^x + E^(-x)",
      "E^x - 2*E^(-x/2)*Cos[Sqrt[3]*x/2 - Pi/3]",
      "E^x*Cos[x]^2",
      "ArcTan[x]/x",
      "Log[1+x]/x",
      "ArcSin[x]/Sqrt[1-x^2]",
  };
  return corpus;
}

std::vector<std::string> random_hypergeometric_sums(int count, unsigned seed) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto rational = [&]() {
    int p = pick(-5, 5);
    if (p == 0) p = 1;
    return "(" + std::to_string(p) + "/" + std::to_string(pick(1, 4)) + ")";
  };
  auto term = [&]() {
    std::string t = rational() + "*" + rational() + "^n";
    switch (pick(0, 3)) {
      case 0: t += "*(n+" + std::to_string(pick(1, 3)) + ")!"; break;
      case 1: t += "/(" + std::to_string(pick(1, 2)) + "*n+" + std::to_string(pick(0, 2)) + ")!"; break;
      case 2: t += "*(n+a)"; break;
      default: t += "/(n+" + std::to_string(pick(1, 4)) + ")"; break;
    }
    return t;
  };
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back(term() + " + " + term());
  return out;
}

}  // namespace fps::testing
