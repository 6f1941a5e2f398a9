#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fps/poly.hpp"

namespace fps {

enum class Kind { Const, ImaginaryUnit, Pi, Variable, Parameter, Pow, Mul, Add, Func };

class Expr;

struct Node {
  Kind kind;
  Rational value;            // Const
  std::string name;          // Variable / Parameter / Func head
  std::vector<Expr> args;    // Add / Mul terms, Pow {base, exponent}, Func args
};

/// Immutable expression handle. Builders return canonical (normalized) trees.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& v);  // NOLINT(google-explicit-constructor)

  static Expr imaginary_unit();
  static Expr pi();
  static Expr variable(const std::string& name);
  static Expr parameter(const std::string& name);

  Kind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  const std::vector<Expr>& args() const { return node_->args; }
  const Expr& arg(std::size_t i) const { return node_->args.at(i); }
  const Expr& base() const { return node_->args[0]; }
  const Expr& exponent() const { return node_->args[1]; }

  bool is_const() const { return kind() == Kind::Const; }
  bool is_zero() const { return is_const() && value() == 0; }
  bool is_one() const { return is_const() && value() == 1; }
  bool is_integer() const { return is_const() && value().get_den() == 1; }
  bool is_symbol() const { return kind() == Kind::Variable || kind() == Kind::Parameter; }
  bool is_func(const std::string& head) const { return kind() == Kind::Func && name() == head; }

  /// Raw node without normalization; used by normalize() and the JSON reader.
  static Expr raw(Kind k, std::vector<Expr> args, std::string name = {}, Rational value = 0);

  bool operator==(const Expr& o) const;
  bool operator!=(const Expr& o) const { return !(*this == o); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Total order: kind rank, then recursive lexicographic comparison.
int compare(const Expr& a, const Expr& b);
struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

// Canonical builders.
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
Expr func(const std::string& head, std::vector<Expr> args);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr sqrt(const Expr& a);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr factorial(const Expr& a);
Expr pochhammer(const Expr& a, const Expr& n);
/// Inert product of f over j = lo..hi.
Expr product(const Expr& f, const std::string& j, const Expr& lo, const Expr& hi);

/// Re-canonicalize a tree built with raw nodes.
Expr normalize(const Expr& e);

/// Known function heads and their arities (min, max).
bool is_known_head(const std::string& head);

bool free_of(const Expr& e, const std::string& var);
bool contains_head(const Expr& e, const std::string& head);
/// Collect Variable/Parameter names.
void collect_symbols(const Expr& e, std::set<std::string>& out);
Expr substitute(const Expr& e, const std::string& var, const Expr& value);
/// Bottom-up rewrite; f is applied to every rebuilt node.
Expr map_expr(const Expr& e, const std::function<Expr(const Expr&)>& f);
/// Mark every symbol except `main` as a Parameter (affects JSON output only).
Expr mark_parameters(const Expr& e, const std::string& main);

/// Split e = c * rest with c a rational constant.
std::pair<Rational, Expr> split_coefficient(const Expr& e);
/// Polynomial expansion of products and integer powers of sums.
Expr expand(const Expr& e);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownHead : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Expr parse(const std::string& text);

std::string to_text(const Expr& e);
std::string to_latex(const Expr& e);

class NoDerivativeRule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Expr differentiate(const Expr& e, const std::string& var);

/// sin/cos of q*Pi for rational q when the value is a known algebraic number.
std::optional<Expr> sin_rational_pi(const Rational& q);
std::optional<Expr> cos_rational_pi(const Rational& q);

}  // namespace fps
