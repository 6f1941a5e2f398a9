#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fps/poly.hpp"

namespace fps {

/// Element of Q(symbols): a quotient of polynomials kept in lowest terms
/// with a surd-free denominator that is monic in lex order.
class Field {
 public:
  Field() = default;
  Field(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Field(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Field(const Poly& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  Field(const Poly& num, const Poly& den);
  static Field symbol(const std::string& name) { return Field(Poly::symbol(name)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// True for elements of Q (no symbols at all).
  bool is_rational() const { return is_constant(); }
  Rational constant_value() const;
  bool is_polynomial() const { return den_.is_constant(); }

  std::set<std::string> symbols() const;
  bool has_symbol(const std::string& name) const { return num_.has_symbol(name) || den_.has_symbol(name); }
  bool has_surds() const { return num_.has_surds(); }

  Field operator-() const;
  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(const Field& o);
  Field& operator/=(const Field& o);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, const Field& b) { return a *= b; }
  friend Field operator/(Field a, const Field& b) { return a /= b; }
  Field pow(long n) const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

  Field derivative(const std::string& var) const;
  Field substitute(const std::string& var, const Field& value) const;
  /// Replace every symbol present in `values` simultaneously.
  Field substitute_all(const std::vector<std::pair<std::string, Field>>& values) const;
  /// Complex/surd conjugation sqrt(d) -> -sqrt(d).
  Field conjugate(const std::string& surd) const;

 private:
  void normalize();
  Poly num_;
  Poly den_{1};
};

int compare(const Field& a, const Field& b);
std::string to_string(const Field& f);

/// sqrt of a rational as a Field element (product of prime surds), or nullopt
/// when the radicand has a prime factor too large to find by trial division.
std::optional<Field> sqrt_rational(const Rational& r);

/// If r is a perfect p-th power of a rational, return the root.
std::optional<Rational> rational_root(const Rational& r, unsigned p);

// ---------------------------------------------------------------------------
// Univariate polynomials over Field.

class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Field> coeffs);
  /// View a Field polynomial in `var` (requires a var-free denominator).
  static UPoly from_field(const Field& f, const std::string& var);
  static UPoly monomial(int degree, const Field& c = Field(1));

  const std::vector<Field>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Field& lc() const { return c_.back(); }
  Field coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : Field(); }

  Field to_field(const std::string& var) const;
  Field eval(const Field& x) const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly scaled(const Field& c) const;
  UPoly monic() const;
  UPoly derivative() const;
  /// p(x + a)
  UPoly taylor_shift(const Field& a) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  void divmod(const UPoly& d, UPoly& q, UPoly& r) const;

 private:
  void trim();
  std::vector<Field> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);

/// Rational roots (with multiplicity) of a polynomial with rational coefficients.
std::vector<std::pair<Rational, int>> rational_roots(const UPoly& p);

/// Integer roots of a polynomial in `var` with coefficients in Q[params]:
/// integers r such that p(r) vanishes identically in the parameters.
std::vector<long> integer_roots(const Poly& p, const std::string& var);

/// A root r of p with its multiplicity.
struct Root {
  Field value;
  int multiplicity = 1;
};

/// Roots of a univariate polynomial over Q with irreducible factors of degree
/// at most two (surds / imaginary unit allowed), plus linear factors over the
/// parameter field. Returns nullopt if some factor is not handled.
std::optional<std::vector<Root>> solve_roots(const UPoly& p);

/// Square root of a polynomial in `var` with Field coefficients, if it is a
/// perfect square.
std::optional<Field> try_sqrt(const Field& f);

}  // namespace fps
