#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fps/bridge.hpp"
#include "fps/de.hpp"
#include "fps/expr.hpp"
#include "fps/findrec.hpp"
#include "fps/gf.hpp"
#include "fps/recurrence.hpp"
#include "fps/series.hpp"
#include "fps/taylor.hpp"

namespace fps::testing {

Expr P(const std::string& text);
/// Rational function of the given text.
Field F(const std::string& text);

LinearODE ode_of(const std::string& var, const std::vector<std::string>& coeffs);
LinearRecurrence re_of(const std::string& index, const std::map<int, std::string>& coeffs,
                       std::optional<long> valid_from = std::nullopt, bool remove_common_factor = true);

/// Equal up to a factor free of the variable (content and sign).
bool ode_equivalent(const LinearODE& a, const LinearODE& b);
/// Equal up to a factor free of the index after shifting both to start at 0.
bool re_equivalent(const LinearRecurrence& a, const LinearRecurrence& b);

/// Coefficients of x^0..x^(n-1) of (x - x0)-expansion in t = (x - x0)^(1/puiseux_n).
bool series_matches_oracle(const FormalSeries& s, const Expr& f, int n, std::string* why = nullptr);

/// ode applied to sum_{k<n} a_k x^k vanishes through x^(n - order - 1).
bool ode_annihilates(const LinearODE& ode, const std::vector<Field>& a);

/// Recurrence residual on `count` indices from the validity threshold, with
/// the listed parameters specialized to the given values.
bool annihilates(const LinearRecurrence& re, const Expr& term, int count,
                 const std::vector<std::pair<std::string, Rational>>& params = {});

/// Coefficient stream agreement of two closed forms; x = t^2 handles sqrt.
bool same_function(const Expr& a, const Expr& b, const std::string& var, int n = 20);

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};
CliResult run_cli(const std::vector<std::string>& args, const std::string& in = "");

// Golden data.

struct DeCase {
  std::string name;
  std::string input;
  std::vector<std::string> expected;  // coefficients of F, F', ...
  bool stress = false;
};
const std::vector<DeCase>& de_suite();
const DeCase& de_case(const std::string& name);

struct ReCase {
  std::string name;
  std::string de;  // DeCase name
  std::map<int, std::string> expected;
  bool stress = false;
};
const std::vector<ReCase>& re_suite();

struct SeriesCase {
  std::string name;
  std::string input;
  std::string x0;
  std::vector<std::pair<int, long>> terms;  // (modulus, offset)
  std::vector<long> polynomial;             // exponents
  std::string coefficient;                  // closed form in k, "" to skip
};
const std::vector<SeriesCase>& series_suite();

struct FindrecCase {
  std::string name;
  std::string term;
  std::string index;
  std::map<int, std::string> expected;
  std::vector<std::string> params;
  double budget_seconds = 10;
};
const std::vector<FindrecCase>& findrec_suite();

struct ConvertCase {
  std::string name;
  std::string term;
  std::string index;
  std::string gf_var;
  std::string closed_form;                 // "" when UnsolvedODE is expected
  std::vector<std::string> expected_de;    // "" entries skipped when empty
};
const std::vector<ConvertCase>& convert_suite();

/// Expressions with known power series at 0 in x.
const std::vector<std::string>& differentiation_corpus();

/// Random hypergeometric term sums; fixed seed.
std::vector<std::string> random_hypergeometric_sums(int count, unsigned seed);

}  // namespace fps::testing
