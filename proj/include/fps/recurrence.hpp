#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "fps/de.hpp"
#include "fps/field.hpp"

namespace fps {

/// sum_m coeffs[m](k) a_{k+m} = 0, valid for all integers k or for k >= valid_from.
struct LinearRecurrence {
  std::string index = "k";
  std::map<int, Poly> coeffs;  // shift -> polynomial in the index (parameters allowed)
  std::optional<long> valid_from;

  bool for_all_k() const { return !valid_from; }
  int min_shift() const { return coeffs.begin()->first; }
  int max_shift() const { return coeffs.rbegin()->first; }
  int order() const { return max_shift() - min_shift(); }
  bool operator==(const LinearRecurrence& o) const {
    return index == o.index && coeffs == o.coeffs && valid_from == o.valid_from;
  }
};

/// Clear denominators, drop the common polynomial factor (unless asked not
/// to), re-base shifts to start at 0 and make the top coefficient's
/// lex-leading coefficient positive.
LinearRecurrence make_recurrence(const std::string& index, const std::map<int, Field>& coeffs,
                                 std::optional<long> valid_from = std::nullopt, bool remove_common_factor = true);

/// "c0*a[k] + c1*a[1 + k] + ... == 0"
std::string recurrence_to_text(const LinearRecurrence& re, const std::string& seq = "a");

/// Value of sum_m coeffs[m](k) a(k+m) at a concrete k.
Field recurrence_residual(const LinearRecurrence& re, long k, const std::function<Field(long)>& a);

class ValidityNotForAllK : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ODE -> recurrence for the coefficients of an expansion at 0:
/// x^j F^(d) -> pochhammer(k+1-j, d) a_{k+d-j}.
/// The common polynomial factor is kept when asked; it carries the points
/// where the relation does not determine the next coefficient.
LinearRecurrence de_to_re(const LinearODE& ode, const std::string& index = "k", bool remove_common_factor = true);

/// Recurrence valid for all k -> ODE for the generating function:
/// k^j a_{k+m} -> theta^j (f / x^m), theta = x d/dx.
LinearODE re_to_de(const LinearRecurrence& re, const std::string& var);

/// Make a recurrence that holds for k >= k_min hold for all k, for the stream
/// that vanishes below k_min: multiply by (k - r) for every r < k_min at which
/// the relation would involve a nonzero term.
LinearRecurrence extend_validity(const LinearRecurrence& re, long k_min);

/// Same, for a known stream: only indices where the relation fails on
/// `values` (taken as 0 below k_min) get a factor.
LinearRecurrence extend_validity(const LinearRecurrence& re, long k_min, const std::function<Field(long)>& values);

}  // namespace fps
