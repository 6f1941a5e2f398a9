#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fps/de.hpp"
#include "fps/expr.hpp"
#include "fps/recurrence.hpp"

namespace fps {

struct GfOptions {
  int rational_power = 3;    // denominator = leading coefficient^power
  int rational_degree = 12;  // numerator degree
  int verify_terms = 15;
  int max_order = 4;         // find_recursion bounds
  int max_degree = 8;
};

/// ClosedForm when `solved`, UnsolvedODE otherwise; the DE is always attached.
struct OdeSolveOutcome {
  bool solved = false;
  Expr closed_form;
  LinearODE ode;
  std::string strategy;                // "rational", "hyperexponential", "constant coefficients", "x = t^2"
  std::vector<std::string> attempted;  // strategies tried, in order
  std::vector<std::string> diagnostics;
};

/// Result of the generating function pipeline with its intermediate stages.
struct ConvertResult {
  LinearRecurrence recurrence;  // as found for the term
  LinearRecurrence extended;    // valid for all k on the truncated stream
  OdeSolveOutcome outcome;
  bool verified = false;
};

/// A stage of convert failed; `stage` is "recurrence", "differential equation" or "solve".
class ConvertStageError : public std::runtime_error {
 public:
  ConvertStageError(std::string stage, const std::string& msg)
      : std::runtime_error(stage + ": " + msg), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Solve with the bounded strategy set; constants appear as C1, C2, ...
OdeSolveOutcome ode_solve_limited(const LinearODE& ode, const std::string& var, const GfOptions& opts = {});

/// sum_{k >= k_start} term(k) in closed form; term = a_k gf_var^k.
ConvertResult convert(const Expr& term, const std::string& index, const std::string& gf_var, long k_start = 0,
                      const GfOptions& opts = {}, const std::function<void(const std::string&)>& trace = {});

}  // namespace fps
