#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fps/expr.hpp"
#include "fps/field.hpp"

namespace fps {

class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated expansion sum_{k >= offset} a_k (x - x0)^k.
struct TaylorSeries {
  std::string variable;
  Expr x0;
  int offset = 0;              // true valuation (first nonzero coefficient)
  std::vector<Field> coeffs;   // a_offset, a_offset+1, ...
  bool identically_zero = false;

  Field coeff(int k) const;
  /// a_from .. a_{from+count-1}; zero below the offset.
  std::vector<Field> range(int from, int count) const;
};

/// Exact expansion with N+1 coefficients starting at the valuation.
TaylorSeries taylor_oracle(const Expr& e, const std::string& var, const Expr& x0, int n);

/// Coefficients a_from .. a_{from+count-1} of the expansion at x0.
std::vector<Field> oracle_coefficients(const Expr& e, const std::string& var, const Expr& x0, int from, int count);

/// Taylor coefficients of the database function head(params..., u) at u0,
/// up to w^n, with unknown values at u0 kept as opaque constants.
std::vector<Field> holonomic_coefficients(const std::string& head, const std::vector<Expr>& params, const Field& u0,
                                          int n);

/// Semi-decision: structural / rational check, then 10 oracle coefficients at
/// x0 and at x0 + 1/3 must all vanish.
bool is_zero_semidecision(const Expr& e, const std::string& var, const Expr& x0 = Expr(0));

}  // namespace fps
