#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fps/expr.hpp"
#include "fps/field.hpp"

namespace fps {

/// Homogeneous linear ODE sum_j coeffs[j](x) F^(j)(x) = 0 with polynomial
/// coefficients (parameters allowed).
struct LinearODE {
  std::string variable;
  std::vector<Poly> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  bool operator==(const LinearODE& o) const { return variable == o.variable && coeffs == o.coeffs; }
};

/// Clear denominators, remove the common polynomial factor and fix the sign so
/// that the lex-leading coefficient of the top polynomial is positive.
LinearODE make_ode(const std::string& var, const std::vector<Field>& coeffs);

/// "c0*F[x] + c1*F'[x] + ... == 0" in the text grammar of derivatives.
std::string ode_to_text(const LinearODE& ode, const std::string& fname = "F");

class NoDEFound : public std::runtime_error {
 public:
  NoDEFound(int max_order, const std::string& detail)
      : std::runtime_error("no simple differential equation of order <= " + std::to_string(max_order) +
                           (detail.empty() ? "" : " (" + detail + ")")),
        max_order_(max_order) {}
  int max_order() const { return max_order_; }

 private:
  int max_order_;
};

class NonDecomposable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One group of rationally dependent terms: prefactor * signature.
struct KernelTerm {
  Expr signature;   // product of transcendental kernels (1 for the rational part)
  Field prefactor;  // rational in the variable, parameters allowed
};

/// Group an expression into pairwise distinct kernel signatures.
std::vector<KernelTerm> kernel_decompose(const Expr& e, const std::string& var);

/// Order bound value meaning "search until the degree guard stops it".
constexpr int kUnboundedOrder = -1;

struct DEOptions {
  int max_order = 5;
  /// Abort when an intermediate coefficient degree exceeds this bound.
  int degree_guard = 64;
};

/// Degree guard from FPS_MAX_DEGREE_GUARD, default 64.
int default_degree_guard();

/// Minimal-order simple differential equation of f.
LinearODE simple_de(const Expr& f, const std::string& var, int max_order = 5);
LinearODE simple_de(const Expr& f, const std::string& var, const DEOptions& opts);

/// Residual check: the oracle expansion of f satisfies the ODE for `terms`
/// consecutive coefficients. Tries expansion points 0, 1, 1/3 until the oracle
/// succeeds; throws OracleError if none does.
bool ode_residual_vanishes(const LinearODE& ode, const Expr& f, int terms = 0);

}  // namespace fps
