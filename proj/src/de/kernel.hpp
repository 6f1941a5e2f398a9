#pragma once

#include <map>
#include <string>
#include <utility>

#include "fps/expr.hpp"
#include "fps/field.hpp"

namespace fps::detail {

/// Product of transcendental kernels, grouped by family.
struct Sig {
  std::map<Expr, Expr, ExprLess> powers;                 // base -> exponent class (non-integer, x-free)
  Expr exp_arg;                                          // exp(exp_arg); 0 when absent
  std::map<Expr, std::pair<int, int>, ExprLess> trig;    // argument -> (sin power, cos power in {0, 1})
  std::map<Expr, int, ExprLess> tans;                    // argument -> tan power
  std::map<Expr, int, ExprLess> logs;                    // log-like application -> power
  std::map<Expr, std::pair<int, int>, ExprLess> holo;    // head(params..., u) -> (F power, F' power)

  bool empty() const;
  Expr key() const;
  Expr to_expr() const;
};

using LinComb = std::map<Expr, std::pair<Sig, Field>, ExprLess>;

class KernelAlgebra {
 public:
  KernelAlgebra(std::string var, int degree_guard) : var_(std::move(var)), guard_(degree_guard) {}

  LinComb decompose(const Expr& e) const;
  LinComb derivative(const LinComb& l) const;

  /// Thrown by derivative() when a coefficient exceeds the degree guard.
  struct DegreeExceeded {
    int degree;
  };

 private:
  LinComb constant(const Field& c) const;
  LinComb single(const Sig& s, const Field& c) const;
  LinComb mul(const LinComb& a, const LinComb& b) const;
  LinComb mul_sig(const Sig& a, const Sig& b) const;
  void add_to(LinComb& out, const Sig& s, const Field& c) const;
  void add_all(LinComb& out, const LinComb& l, const Field& scale) const;
  LinComb power_of_field(const Field& b, const Field& e) const;
  LinComb pow_term(const Sig& s, const Field& c, const Expr& e) const;
  LinComb sig_derivative(const Sig& s) const;
  LinComb atom(const Expr& e) const;
  LinComb decompose_diff(const Expr& e) const;

  std::string var_;
  int guard_;
};

}  // namespace fps::detail
