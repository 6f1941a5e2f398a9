#pragma once

#include <string>
#include <vector>

#include "fps/gf.hpp"

namespace fps::detail {

/// Independent solutions found by one strategy. When `squared`, the
/// functions are in `var` with x = var^2.
struct SolutionBasis {
  std::string strategy;
  std::vector<Expr> functions;
  bool squared = false;
  std::string var;
};

/// Bases from each applicable strategy, in order; failures go to diagnostics.
std::vector<SolutionBasis> solution_bases(const LinearODE& ode, const std::string& var, const GfOptions& opts,
                                          std::vector<std::string>& attempted, std::vector<std::string>& diagnostics);

}  // namespace fps::detail
