#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fps {

/// Exact rational number; GMP keeps numerator and denominator coprime with a
/// positive denominator after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Symbols whose name starts with '$' are square roots of the integer that
/// follows ("$2" is sqrt(2), "$-1" is the imaginary unit). They are reduced
/// on multiplication so that every surd exponent stays in {0, 1}.
bool is_surd_symbol(const std::string& name);
long surd_radicand(const std::string& name);
std::string surd_symbol(long radicand);

/// Symbols whose name starts with '@' stand for an opaque constant whose
/// value is the expression text following the marker.
bool is_opaque_symbol(const std::string& name);

class Monomial {
 public:
  using Entry = std::pair<std::string, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Entry> entries);
  static Monomial variable(const std::string& name, int exponent = 1);

  const std::vector<Entry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }
  int degree(const std::string& var) const;
  int total_degree() const;
  bool divides(const Monomial& other) const;
  Monomial without(const std::string& var) const;

  /// Product; surd exponents >= 2 are folded into `factor`.
  Monomial times(const Monomial& other, Rational& factor) const;
  Monomial divided_by(const Monomial& other) const;
  Monomial gcd(const Monomial& other) const;

  bool operator==(const Monomial&) const = default;

 private:
  std::vector<Entry> entries_;  // sorted by name, exponents > 0
};

/// Lexicographic order, earlier symbol names more significant.
int compare(const Monomial& a, const Monomial& b);

/// Sparse multivariate polynomial over Q, terms sorted descending.
class Poly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
    bool operator==(const Term&) const = default;
  };

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static Poly symbol(const std::string& name, int exponent = 1);
  static Poly monomial(Monomial m, Rational c);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  Rational constant_term() const;
  bool is_one() const;
  const Term& leading() const { return terms_.front(); }

  std::set<std::string> symbols() const;
  bool has_symbol(const std::string& name) const;
  bool has_surds() const;
  int degree(const std::string& var) const;
  int total_degree() const;

  /// Coefficients of var^0, var^1, ... as polynomials free of var.
  std::vector<Poly> coefficients_in(const std::string& var) const;
  static Poly from_coefficients(const std::string& var, const std::vector<Poly>& coeffs);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times_monomial(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned n) const;

  Poly derivative(const std::string& var) const;
  /// Replace `var` by `value` (Horner in var).
  Poly substitute(const std::string& var, const Poly& value) const;
  /// sqrt(d) -> -sqrt(d) for the given surd symbol.
  Poly conjugate(const std::string& surd) const;

  /// Exact quotient; throws if `d` does not divide *this.
  Poly exact_div(const Poly& d) const;
  /// Returns true and sets q when d divides *this.
  bool try_div(const Poly& d, Poly& q) const;

  /// Rational content c such that this / c has coprime integer coefficients
  /// and a positive leading coefficient.
  Rational rational_content() const;
  Poly integer_primitive() const;
  Poly monic() const;

  bool operator==(const Poly&) const = default;

 private:
  void canonicalize();
  std::vector<Term> terms_;
};

int compare(const Poly& a, const Poly& b);

/// Greatest common divisor over Q[symbols], monic in the lex order. Surd
/// symbols must be absent from at least one argument.
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
/// gcd of the coefficients of `p` viewed as a polynomial in var.
Poly content_in(const Poly& p, const std::string& var);

std::string to_string(const Poly& p);

}  // namespace fps
