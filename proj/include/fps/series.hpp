#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fps/de.hpp"
#include "fps/expr.hpp"
#include "fps/field.hpp"
#include "fps/recurrence.hpp"

namespace fps {

/// a_{k+m} = R(k) a_k for k >= k0.
struct HypergeometricRE {
  int m = 1;
  Field ratio;  // R as a rational function of the index
  std::string index = "k";
  int k0 = 0;
  std::vector<Field> initial;  // A_{k0} .. A_{k0+m-1}
};

/// Hypergeometric iff the recurrence has exactly two nonzero shifts.
std::optional<HypergeometricRE> classify(const LinearRecurrence& re);

/// One subseries sum_{k>=0} coefficient(k) (x - x0)^((modulus*k + shift)/n).
struct ClosedFormTerm {
  int modulus = 1;
  long shift = 0;
  Expr coefficient;  // in the symbol "k"
  /// Residue class of the exponent numerator modulo the modulus.
  long residue() const { return ((shift % modulus) + modulus) % modulus; }
};

/// Finitely many explicit terms c (x - x0)^(exponent/n).
struct MonomialTerm {
  long exponent = 0;
  Expr coefficient;
};

/// sum over terms, with exponents divided by the Puiseux denominator n.
struct FormalSeries {
  std::string variable;
  Expr x0;
  int puiseux_n = 1;
  std::vector<MonomialTerm> polynomial;
  std::vector<ClosedFormTerm> terms;

  /// Coefficient of (x - x0)^(e/n).
  Field coefficient(long e) const;
  bool empty() const { return polynomial.empty() && terms.empty(); }
};

/// The expansion variable power (x - x0)^(e/n) as an expression.
Expr series_power(const FormalSeries& s, const Expr& exponent_numerator);
/// Inert "Sum[...]" style text and LaTeX renderings.
std::string series_to_text(const FormalSeries& s);
std::string series_to_latex(const FormalSeries& s);

class NotOfImplementedType : public std::runtime_error {
 public:
  NotOfImplementedType(const std::string& msg, std::optional<LinearODE> de, std::optional<LinearRecurrence> re)
      : std::runtime_error(msg), de_(std::move(de)), re_(std::move(re)) {}
  const std::optional<LinearODE>& de() const { return de_; }
  const std::optional<LinearRecurrence>& re() const { return re_; }

 private:
  std::optional<LinearODE> de_;
  std::optional<LinearRecurrence> re_;
};

class DenominatorFactorUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CharacteristicRootsUnsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a_start .. a_{start+count-1}; start defaults to the valuation.
struct InitialValues {
  int offset = 0;  // index of values[0]
  int valuation = 0;
  bool identically_zero = false;
  std::vector<Field> values;
};
InitialValues initial_values(const Expr& f, const std::string& var, const Expr& x0, int count,
                             std::optional<int> start = std::nullopt);

/// Closed form of prod_{i=0}^{j-1} r(i) as an expression in the symbol j.
Expr product_closed_form(const Field& r, const std::string& i, const std::string& j);

/// Subseries for a hypergeometric recurrence and initial values.
/// Residue classes that terminate are returned as explicit monomials in
/// `finite` (required if any class terminates).
std::vector<ClosedFormTerm> solve_hypergeometric(const HypergeometricRE& h,
                                                 std::vector<MonomialTerm>* finite = nullptr);

using TraceSink = std::function<void(const std::string&)>;

enum class Strategy { Hypergeometric, Rational, Exponential };

struct SeriesOptions {
  int max_de_order = 5;
  int degree_guard = 64;
  int rational_derivative_bound = 3;
  std::vector<Strategy> order{Strategy::Hypergeometric, Strategy::Rational, Strategy::Exponential};
  TraceSink trace;
};

FormalSeries rational_type_series(const Expr& f, const std::string& var, int derivative_bound = 3);
FormalSeries exponential_type_series(const Expr& f, const std::string& var, const SeriesOptions& opts = {});
FormalSeries power_series(const Expr& f, const std::string& var, const Expr& x0 = Expr(0),
                          const SeriesOptions& opts = {});

}  // namespace fps
