#include "criteria.hpp"

#include <algorithm>
#include <chrono>
#include <random>

namespace fps::testing {

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string seconds_text(double s) { return std::to_string(s) + "s"; }

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  int p = num(rng);
  if (p == 0) p = 2;
  Rational r(p, den(rng));
  r.canonicalize();
  return r;
}

std::vector<std::pair<std::string, Rational>> draw(const std::vector<std::string>& names, std::mt19937& rng) {
  std::vector<std::pair<std::string, Rational>> out;
  for (const auto& n : names) out.emplace_back(n, random_rational(rng));
  return out;
}

std::string describe(const std::vector<std::pair<std::string, Rational>>& params) {
  std::string s;
  for (const auto& [n, v] : params) s += (s.empty() ? "" : ", ") + n + " = " + v.get_str();
  return s;
}

}  // namespace

Failure check_de_case(const DeCase& c, double budget_seconds) {
  const Timer t;
  const LinearODE got = simple_de(P(c.input), "x");
  const double s = t.seconds();
  if (!ode_equivalent(got, ode_of("x", c.expected))) return c.name + ": got " + ode_to_text(got);
  if (s > budget_seconds) return c.name + ": took " + seconds_text(s);
  return std::nullopt;
}

Failure check_sin5() {
  const Expr f = P("Sin[x]^5");
  try {
    const LinearODE ode = simple_de(f, "x", 5);
    return "order 5 found " + ode_to_text(ode);
  } catch (const NoDEFound& e) {
    if (e.max_order() != 5) return "NoDEFound reports order " + std::to_string(e.max_order());
  }
  const LinearODE got = simple_de(f, "x", 6);
  const LinearODE want = ode_of("x", {"225", "0", "259", "0", "35", "0", "1"});
  if (!(got == want)) return "order 6 gives " + ode_to_text(got);
  return std::nullopt;
}

Failure check_re_case(const ReCase& c) {
  const DeCase& d = de_case(c.de);
  const LinearRecurrence got = de_to_re(ode_of("x", d.expected), "k");
  if (!re_equivalent(got, re_of("k", c.expected))) return c.name + ": got " + recurrence_to_text(got);
  if (!got.for_all_k()) return c.name + ": validity restricted";
  // The golden ODE must also come out of the DE search.
  if (!ode_equivalent(simple_de(P(d.input), "x"), ode_of("x", d.expected))) return c.name + ": DE mismatch";
  return std::nullopt;
}

Failure check_retode_example() {
  // Taken literally: the factor k + 1 is part of the input.
  const LinearRecurrence re = re_of("k", {{0, "(k+1)*(2*k+1)"}, {1, "(k+1)*(2*k+3)"}}, std::nullopt, false);
  const LinearODE got = re_to_de(re, "x");
  const LinearODE want = ode_of("x", {"1", "3+5*x", "2*x*(1+x)"});
  if (!(got == want)) return "got " + ode_to_text(got);
  return std::nullopt;
}

Failure check_series_case(const SeriesCase& c) {
  const Timer t;
  const Expr f = P(c.input);
  const FormalSeries s = power_series(f, "x", P(c.x0));
  const double secs = t.seconds();
  const std::string head = c.name + " (" + c.input + "): ";
  if (secs > 10) return head + "took " + seconds_text(secs);
  std::string why;
  if (!series_matches_oracle(s, f, 20, &why)) return head + why;
  std::vector<std::pair<int, long>> terms;
  for (const auto& term : s.terms) terms.emplace_back(term.modulus, term.shift);
  std::sort(terms.begin(), terms.end());
  if (terms != c.terms) return head + "term structure differs: " + series_to_text(s);
  std::vector<long> poly;
  for (const auto& m : s.polynomial) poly.push_back(m.exponent);
  if (poly != c.polynomial) return head + "polynomial part differs: " + series_to_text(s);
  if (s.puiseux_n != 1) return head + "unexpected Puiseux denominator";
  if (!c.coefficient.empty()) {
    const Expr coef = P(c.coefficient);
    const auto& term = s.terms.front();
    for (long k = 0; k < 20; ++k) {
      if (evaluate_term(coef, "k", k) != s.coefficient(term.modulus * k + term.shift)) {
        return head + "closed-form coefficient differs at k = " + std::to_string(k);
      }
    }
  }
  return std::nullopt;
}

Failure check_initial_value_trace() {
  const CliResult r = run_cli({"series", "E^x - 2*E^(-x/2)*Cos[Sqrt[3]*x/2 - Pi/3]", "--var", "x", "--verbose"});
  if (r.code != 0) return "exit status " + std::to_string(r.code) + ": " + r.err;
  std::string expected;
  for (const char* line : {"info: function of hypergeometric type\n", "info: a[0] = 0\n", "info: a[1] = 0\n",
                           "info: a[2] = 3/2\n", "info: a[3] = 0\n", "info: a[4] = 0\n"}) {
    expected += line;
  }
  if (r.err.find(expected) == std::string::npos) return "trace was:\n" + r.err;
  return std::nullopt;
}

Failure check_findrec_case(const FindrecCase& c, unsigned seed) {
  const Expr term = P(c.term);
  const Timer t;
  const LinearRecurrence got = find_recursion(term, c.index);
  const double secs = t.seconds();
  const std::string head = c.name + ": ";
  if (!re_equivalent(got, re_of(c.index, c.expected))) return head + "got " + recurrence_to_text(got);
  if (secs > c.budget_seconds) return head + "took " + seconds_text(secs);
  if (c.params.empty()) {
    if (!annihilates(got, term, 20)) return head + "does not annihilate the term";
    return std::nullopt;
  }
  std::mt19937 rng(seed);
  for (int i = 0; i < 3; ++i) {
    const auto params = draw(c.params, rng);
    if (!annihilates(got, term, 20, params)) return head + "does not annihilate at " + describe(params);
  }
  return std::nullopt;
}

Failure check_convert_case(const ConvertCase& c) {
  const ConvertResult r = convert(P(c.term), c.index, c.gf_var);
  const OdeSolveOutcome& o = r.outcome;
  const std::string head = c.name + ": ";
  if (!c.closed_form.empty()) {
    if (!o.solved || !r.verified) return head + "not solved, DE " + ode_to_text(o.ode);
    if (!same_function(o.closed_form, P(c.closed_form), c.gf_var)) return head + "got " + to_text(o.closed_form);
    return std::nullopt;
  }
  if (o.solved) return head + "unexpected closed form " + to_text(o.closed_form);
  if (!c.expected_de.empty() && !ode_equivalent(o.ode, ode_of(c.gf_var, c.expected_de))) {
    return head + "DE " + ode_to_text(o.ode);
  }
  std::vector<Field> a;
  for (long k = 0; k < 30; ++k) a.push_back(evaluate_term(P(c.term) / pow(P(c.gf_var), P(c.index)), c.index, k));
  if (!ode_annihilates(o.ode, a)) return head + "DE does not annihilate the series: " + ode_to_text(o.ode);
  return std::nullopt;
}

Failure check_oracle_fidelity(const std::string& f, const std::string& x0) {
  const Expr e = P(f);
  const FormalSeries s = power_series(e, "x", P(x0));
  std::string why;
  if (!series_matches_oracle(s, e, 20, &why)) return f + ": " + why;
  return std::nullopt;
}

Failure check_de_re_round_trip(const DeCase& c) {
  const LinearODE ode = ode_of("x", c.expected);
  const LinearRecurrence re = de_to_re(ode, "k");
  const LinearODE back = re_to_de(re, "x");
  // Back from the theta form, up to a power of x.
  const Field x = Field::symbol("x");
  bool ok = false;
  for (int j = -8; j <= 8 && !ok; ++j) {
    std::vector<Field> scaled;
    for (const auto& p : ode.coeffs) scaled.push_back(Field(p) * x.pow(j));
    LinearODE candidate;
    try {
      candidate = make_ode("x", scaled);
    } catch (const std::exception&) {
      continue;
    }
    ok = ode_equivalent(back, candidate);
  }
  if (!ok) return c.name + ": DE -> RE -> DE gives " + ode_to_text(back);
  const LinearRecurrence again = de_to_re(back, "k");
  if (!re_equivalent(again, re)) return c.name + ": RE -> DE -> RE gives " + recurrence_to_text(again);
  return std::nullopt;
}

Failure check_differentiation(const std::string& f) {
  const Expr e = P(f);
  const FormalSeries s = power_series(e, "x");
  const FormalSeries ds = power_series(differentiate(e, "x"), "x");
  if (s.puiseux_n != 1 || ds.puiseux_n != 1) return f + ": Puiseux series";
  for (long j = 0; j < 20; ++j) {
    if (ds.coefficient(j) != Field(Rational(j + 1)) * s.coefficient(j + 1)) {
      return f + ": coefficient " + std::to_string(j) + " of the derivative series is " +
             to_string(ds.coefficient(j));
    }
  }
  return std::nullopt;
}

Failure check_random_sum(const std::string& term, unsigned seed) {
  const Expr e = P(term);
  const LinearRecurrence re = find_recursion(e, "n");
  std::mt19937 rng(seed);
  std::vector<std::string> params;
  if (!free_of(e, "a")) params.push_back("a");
  const auto values = draw(params, rng);
  if (!annihilates(re, e, 20, values)) return term + ": " + recurrence_to_text(re) + " fails at " + describe(values);
  return std::nullopt;
}

std::string full_suite_transcript() {
  std::string out;
  auto record = [&](const std::vector<std::string>& args) {
    for (const char* format : {"text", "json", "latex"}) {
      std::vector<std::string> a = args;
      a.push_back("--format");
      a.push_back(format);
      const CliResult r = run_cli(a);
      out += std::to_string(r.code) + "\n" + r.out + r.err;
    }
  };
  for (const auto& c : de_suite()) record({"de", c.input, "--var", "x"});
  record({"de", "Sin[x]^5", "--max-de-order", "6"});
  for (const auto& c : de_suite()) record({"re", c.input, "--var", "x"});
  for (const auto& c : series_suite()) record({"series", c.input, "--var", "x", "--at", c.x0, "--verbose"});
  for (const auto& c : findrec_suite()) record({"findrec", c.term, "--var", c.index});
  for (const auto& c : convert_suite()) record({"convert", c.term, "--var", c.index, "--gf-var", c.gf_var, "-v"});
  return out;
}

}  // namespace fps::testing
